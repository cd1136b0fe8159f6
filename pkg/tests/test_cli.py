import io
import json

from cosilt.cli import Report, emit_report, parse_report, run
from cosilt.derived import derived_iso
from cosilt.quiver import Quiver
from cosilt.serial import complex_from_json, complex_to_json, dumps, parse_object


def call(*argv):
    out, err = io.BytesIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--format", "json")
    return code, (json.loads(out) if out else None), err


def test_examples_suite_passes():
    code, rep, _ = call_json("examples", "--paper")
    assert code == 0
    assert set(rep["verdicts"].values()) == {"true"}


def test_examples_without_flag_is_an_input_error():
    assert call("examples")[0] == 2


def test_single_summand_reason_and_exit_code():
    code, rep, _ = call_json("check-cosilting", "--quiver", "A2", "I_2")
    assert code == 1
    assert rep["certificates"]["cosilting"]["reason"] == "summand count 1 < 2"


def test_cut_not_closed_exits_2():
    code, out, err = call("glue", "--cut", "2", "DA", "k")
    assert code == 2 and out == b""
    assert "CutNotClosed" in err


def test_glue_report_names_the_summands():
    code, rep, _ = call_json("glue", "--cut", "3", "DA", "k")
    assert code == 0
    assert sorted(rep["results"]["C"]["summands"]) == ["I_1", "I_2", "I_3"]
    assert rep["verdicts"] == {"cosilting": "true", "checks": "true", "window": "true"}
    code, text, _ = call("glue", "--cut", "3", "DA", "k")
    assert b"summands: I_1, I_2, I_3" in text


def test_json_round_trip_is_byte_identical():
    _, out, _ = call("glue", "--cut", "1,2", "A", "DA", "--format", "json")
    assert emit_report(parse_report(out), "json") == out


def test_empty_report_is_a_valid_document():
    rep = Report([], {})
    assert parse_report(emit_report(rep, "json"))["verdicts"] == {}
    assert emit_report({}, "text") == b"\n"


def test_output_is_deterministic():
    a = call("check-cosilting", "A", "--format", "json")
    b = call("check-cosilting", "A", "--format", "json")
    assert a == b


def test_verdicts_do_not_depend_on_the_seed():
    a = call_json("decompose", "I_1 + I_1 + S_2[1]", "--seed", "1")[1]
    b = call_json("decompose", "I_1 + I_1 + S_2[1]", "--seed", "99")[1]
    assert a["results"] == b["results"] and a["verdicts"] == b["verdicts"]


def test_hom_command():
    code, rep, _ = call_json("hom", "--quiver", "A2", "S_1", "S_2")
    assert code == 0
    assert rep["results"]["dims"].get("1") == 1
    assert rep["results"]["euler_characteristic"] == -1


def test_emitted_files_are_accepted(tmp_path):
    lad, val, glued, mut = (str(tmp_path / n) for n in ("l.json", "w.json", "c.json", "m.json"))
    assert call("ladder", "--cut", "3", "--emit", lad)[0] == 0
    assert call("ladder", "--ladder", lad, "--apply", "j^#", "I_1 + I_2", "--emit", val)[0] == 0
    assert call("glue", "--ladder", lad, "DA", val, "--emit", glued)[0] == 0
    assert call("check-cosilting", glued)[0] == 0
    assert call("mutate", glued, "--at", "I_2", "--emit", mut)[0] == 0
    code, rep, _ = call_json("decompose", mut)
    assert code == 0
    assert sorted(s["name"] for s in rep["results"]["summands"]) == ["I_2", "I_3[-1]", "S_2"]


def test_malformed_json_reports_its_location(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"terms": {"0": }', encoding="utf-8")
    code, out, err = call("check-cosilting", str(bad))
    assert code == 2
    assert "bad.json:1:" in err


def test_bad_matrix_reports_its_location(tmp_path):
    A3 = Quiver.linear(3)
    data = complex_to_json(parse_object("P_1", A3))
    data["terms"]["0"]["maps"]["a1"] = [[1, 2]]
    path = tmp_path / "shape.json"
    path.write_text(dumps(data), encoding="utf-8")
    code, _, err = call("check-cosilting", str(path))
    assert code == 2
    assert "terms[0]" in err


def test_unknown_object_and_quiver():
    assert call("check-cosilting", "Z_1")[0] == 2
    assert call("check-cosilting", "--quiver", "B7", "A")[0] == 2
    assert call("check-cosilting", "--field", "F_4", "A")[0] == 2


def test_compat_right_silent_is_not_a_failure():
    code, rep, _ = call_json("compat-right", "--cut", "1,2", "A", "DA", "--at", "I_1")
    assert code == 0
    assert rep["verdicts"]["compatibility"] == "silent"
    assert rep["results"]["message"].startswith("hypothesis not satisfied, theorem silent")


def test_compat_left_holds():
    code, rep, _ = call_json("compat-left", "--cut", "3", "DA", "A", "--at", "I_2")
    assert code == 0 and rep["verdicts"]["compatibility"] == "true"


def test_wrong_algebra_for_a_functor():
    assert call("ladder", "--cut", "3", "--apply", "j_*", "P_1")[0] == 2


def test_complex_json_round_trip():
    X = parse_object("I_2[-1] + S_1 + P_3[2]", Quiver.linear(3))
    data = complex_to_json(X)
    Y = complex_from_json(json.loads(dumps(data)))
    assert derived_iso(X, Y)
    assert dumps(complex_to_json(Y)) == dumps(data)


def test_timing_is_opt_in():
    assert "timing" not in call_json("check-cosilting", "A")[1]
    assert "timing" in call_json("check-cosilting", "A", "--timing")[1]
