import hashlib
import json
import random

import pytest
from click.testing import CliRunner

from braidhopf.algebras import AlgebraBundle, braided_line, builtin
from braidhopf.cli import (
    algebra_from_json,
    example_path,
    level_cap,
    load_algebra,
    main,
    serialize,
)
from braidhopf.errors import ParseError, ValidationError
from braidhopf.modcoalg import regular_module_coalgebra

BUILTINS = ["trivial", "group_c2", "group_s3", "sweedler", "anyonic_line_q"]


def _invoke(args, env=None):
    return CliRunner().invoke(main, args, env=env, catch_exceptions=False)


def _doc(result):
    return json.loads(result.output)


def _failing_names(report):
    out = [c["name"] for c in report["checks"] if not c["passed"]]
    for sub in report["subreports"]:
        out.extend(_failing_names(sub))
    return out


# -- file format -----------------------------------------------------------


def test_shipped_sweedler_loads():
    bundle = load_algebra(example_path("sweedler"))
    assert bundle.hopf.carrier.dim == 4
    assert [p.name for p in bundle.pairs] == ["eu", "eg"]


def test_shipped_sweedler_is_canonical():
    path = example_path("sweedler")
    with open(path) as fh:
        doc = json.load(fh)
    assert serialize(load_algebra(path)) == doc


@pytest.mark.parametrize("name", BUILTINS)
def test_round_trip_builtin(name):
    doc = serialize(builtin(name))
    assert serialize(algebra_from_json(doc)) == doc


def test_round_trip_cyclotomic_braided():
    """Graded braiding, graded twist, and cyclotomic scalars survive the
    file format."""
    doc = serialize(braided_line(3))
    again = algebra_from_json(doc)
    assert again.hopf.field.to_json() == {"cyclotomic": 3}
    assert serialize(again) == doc


def test_round_trip_module_coalgebra_block():
    base = builtin("sweedler")
    bundle = AlgebraBundle(base.name, base.hopf, base.pairs,
                           regular_module_coalgebra(base.hopf))
    doc = serialize(bundle)
    assert "module_coalgebra" in doc
    again = algebra_from_json(doc)
    assert again.module_coalgebra is not None
    assert serialize(again) == doc


def test_triple_order_is_irrelevant():
    doc = serialize(builtin("sweedler"))
    rng = random.Random(7)
    rng.shuffle(doc["mult"])
    rng.shuffle(doc["comult"])
    assert serialize(algebra_from_json(doc)) == serialize(builtin("sweedler"))


def test_duplicate_triples_are_summed():
    doc = serialize(builtin("group_c2"))
    i, j, k, _ = doc["mult"][0]
    doc["mult"][0] = [i, j, k, "1/3"]
    doc["mult"].append([i, j, k, "2/3"])
    assert serialize(algebra_from_json(doc)) == serialize(builtin("group_c2"))


def test_cancelling_duplicates_fail_axioms():
    """Two triples summing to zero drop the entry, which the axiom
    checker then rejects; they must not linger as an explicit zero."""
    doc = serialize(builtin("group_c2"))
    i, j, k, val = doc["mult"][0]
    doc["mult"].append([i, j, k, "-" + val])
    with pytest.raises(ValidationError):
        algebra_from_json(doc)


def test_dim_grades_mismatch():
    doc = {"field": "Q", "dim": 2, "grades": [0, 0, 0], "mult": [],
           "unit": ["1", "0"], "comult": [], "counit": ["1", "0"],
           "antipode": [["1", "0"], ["0", "1"]]}
    with pytest.raises(ParseError, match="dim is 2 but 3 grades"):
        algebra_from_json(doc)


def test_malformed_json_carries_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"field": "Q",\n  "dim": 4,,}')
    with pytest.raises(ParseError) as err:
        load_algebra(path)
    assert err.value.line == 2
    assert err.value.position is not None


def test_missing_file(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        load_algebra(tmp_path / "absent.json")


def test_unknown_and_missing_keys():
    doc = serialize(builtin("trivial"))
    doc["extra"] = 1
    with pytest.raises(ParseError, match="unknown keys: extra"):
        algebra_from_json(doc)
    doc = serialize(builtin("trivial"))
    del doc["counit"]
    with pytest.raises(ParseError, match="missing keys: counit"):
        algebra_from_json(doc)


def test_flipped_mult_sign_names_the_axiom():
    doc = serialize(builtin("sweedler"))
    flipped = next(t for t in doc["mult"] if t[3] == "-1")
    flipped[3] = "1"
    with pytest.raises(ValidationError) as err:
        algebra_from_json(doc)
    names = [c.name for c in err.value.report.failures()]
    assert any("associativity" in n or "bialgebra" in n for n in names)


def test_bad_pair_rejected_at_load():
    doc = serialize(builtin("sweedler"))
    doc["pairs"][1]["sigma"] = ["0", "0", "1", "0"]  # x is not grouplike
    with pytest.raises(ValidationError):
        algebra_from_json(doc)


def test_duplicate_pair_names():
    doc = serialize(builtin("sweedler"))
    doc["pairs"][1]["name"] = "eu"
    with pytest.raises(ParseError, match="duplicate pair name"):
        algebra_from_json(doc)


def test_level_cap_table():
    assert level_cap(1, 99) == 99
    assert level_cap(2, 6) == 6
    assert level_cap(4, 6) == 5
    assert level_cap(4, 4) == 4
    assert level_cap(6, 4) == 3


# -- commands --------------------------------------------------------------


def test_powers_sweedler_eg():
    result = _invoke(["powers", "--builtin", "sweedler", "--pair", "eg",
                      "--n-max", "4"])
    assert result.exit_code == 0
    doc = _doc(result)
    assert doc["passed"] is True
    suite = doc["suites"][0]
    assert suite["name"] == "powers"
    inner = suite["subreports"][0]
    names = [c["name"] for c in inner["checks"]]
    assert "n=4 k=4 KthPower" in names
    assert "n=4 k=5 NPlus1" in names
    assert all(c["passed"] for c in inner["checks"])


def test_relations_anyonic_with_twisted_cyclicity():
    result = _invoke(["relations", "--builtin", "anyonic_line_q",
                      "--q", "-1", "--families", "SR,PCR,TwistedCC",
                      "--n-max", "3"])
    assert result.exit_code == 0
    suite = _doc(result)["suites"][0]
    plans = {c["name"]: c["detail"] for c in suite["checks"]}
    assert "twisted involution predicate false" in plans["pair eu plan"]
    tower = next(s for s in suite["subreports"]
                 if s["name"] == "module coalgebra tower")
    assert any("TwistedCC" in c["name"] for c in tower["checks"])
    assert tower["passed"]


def test_relations_plain_cyclicity_fails_honestly():
    """CC genuinely fails on the anyonic module-coalgebra tower (the
    twist is not the identity), and asking for it must say so."""
    result = _invoke(["relations", "--builtin", "anyonic_line_q",
                      "--families", "CC", "--n-max", "2"])
    assert result.exit_code == 1
    doc = _doc(result)
    assert doc["passed"] is False
    fails = _failing_names(doc["suites"][0])
    assert fails and all("CC" in n for n in fails)


def test_eval_rotation_of_first_coface():
    """t(2).d(2,0) and d(2,2) evaluate to the same matrix."""
    rotated = _invoke(["eval", "--builtin", "group_c2",
                       "--word", "t(2).d(2,0)"])
    direct = _invoke(["eval", "--builtin", "group_c2", "--word", "d(2,2)"])
    assert rotated.exit_code == 0 and direct.exit_code == 0
    a = _doc(rotated)["result"]
    b = _doc(direct)["result"]
    assert a["rows"] == b["rows"]
    assert (a["source_level"], a["target_level"]) == (1, 2)
    assert a["normal_form"] == "d(2,2)"


def test_eval_identity_word():
    result = _invoke(["eval", "--builtin", "trivial", "--word", "id(0)"])
    assert result.exit_code == 0
    assert _doc(result)["result"]["rows"] == [["1"]]


def test_eval_beyond_level_ceiling():
    result = _invoke(["eval", "--builtin", "group_c2", "--word", "d(11,0)"])
    assert result.exit_code == 2
    assert _doc(result)["error"]["type"] == "TruncationError"


def test_eval_word_syntax_error():
    result = _invoke(["eval", "--builtin", "trivial", "--word", "q(1)"])
    assert result.exit_code == 2
    assert _doc(result)["error"]["type"] == "WordError"


def test_traces_reports_zero_dimensional_space():
    result = _invoke(["traces", "--builtin", "sweedler", "--pair", "eu",
                      "--n-max", "2"])
    assert result.exit_code == 0
    sub = _doc(result)["suites"][0]["subreports"][0]
    dim_check = next(c for c in sub["checks"]
                     if c["name"] == "solution space")
    assert "dimension 0" in dim_check["detail"]


def test_traces_trivial_has_a_nonzero_solution():
    result = _invoke(["traces", "--builtin", "trivial"])
    assert result.exit_code == 0
    sub = _doc(result)["suites"][0]["subreports"][0]
    details = {c["name"]: c["detail"] for c in sub["checks"]}
    assert details["solution space"] == "dimension 1"
    assert details["basis[0]"] == "[1]"
    assert any(s["name"] == "basis[0] tower commutation"
               for s in sub["subreports"])


def test_homology_distinguishes_certified_pairs():
    result = _invoke(["homology", "--builtin", "sweedler",
                      "--degree-bound", "3"])
    assert result.exit_code == 0
    suite = _doc(result)["suites"][0]
    by_name = {s["name"]: s for s in suite["subreports"]}
    eu = {c["name"]: c["detail"] for c in by_name["pair eu"]["checks"]}
    assert "absent" in eu["cyclicity certificate"]
    assert not any(n.startswith("HC^") for n in eu)
    eg = {c["name"]: c["detail"] for c in by_name["pair eg"]["checks"]}
    assert "HC^0" in eg and "HC^3" in eg
    assert "not trusted" in eg["HC^3"]


def test_verify_clamps_six_dimensional_algebras():
    result = _invoke(["verify", "--builtin", "group_s3", "--n-max", "4"])
    assert result.exit_code == 0
    lemmas = _doc(result)["suites"][1]
    clamp = next(c for c in lemmas["checks"]
                 if c["name"] == "truncation clamp")
    assert "4 requested, 3 used" in clamp["detail"]


def test_cyclotomic_q_flag():
    result = _invoke(["relations", "--builtin", "anyonic_line_q",
                      "--q", "-1", "--q-order", "4", "--n-max", "2"])
    assert result.exit_code == 0


def test_invalid_q_fails_axioms():
    """q = 1 breaks the mixed-term cancellation for the primitive
    generator, so the build itself must refuse."""
    result = _invoke(["relations", "--builtin", "anyonic_line_q",
                      "--q", "1", "--n-max", "2"])
    assert result.exit_code == 2
    assert _doc(result)["error"]["type"] == "ValidationError"


def test_corrupted_files_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": "Q"')
    result = _invoke(["verify", "--algebra-file", str(bad)])
    assert result.exit_code == 2
    err = _doc(result)["error"]
    assert err["type"] == "ParseError"
    assert err["line"] == 1

    doc = serialize(builtin("sweedler"))
    flipped = next(t for t in doc["mult"] if t[3] == "-1")
    flipped[3] = "1"
    bad.write_text(json.dumps(doc))
    result = _invoke(["verify", "--algebra-file", str(bad)])
    assert result.exit_code == 2
    err = _doc(result)["error"]
    assert err["type"] == "ValidationError"
    assert err["report"]["passed"] is False


def test_source_flags_are_exclusive(tmp_path):
    result = _invoke(["verify", "--builtin", "trivial",
                      "--algebra-file", str(tmp_path / "x.json")])
    assert result.exit_code == 2
    result = _invoke(["verify"])
    assert result.exit_code == 2


def test_unknown_family_is_a_usage_error():
    result = _invoke(["relations", "--builtin", "trivial",
                      "--families", "SR,XX"])
    assert result.exit_code == 2


def test_unknown_pair_is_a_usage_error():
    result = _invoke(["powers", "--builtin", "trivial", "--pair", "eg"])
    assert result.exit_code == 2


def test_file_digest_is_over_raw_bytes(tmp_path):
    path = tmp_path / "c2.json"
    body = json.dumps(serialize(builtin("group_c2")))
    path.write_text(body)
    result = _invoke(["verify", "--algebra-file", str(path), "--n-max", "1"])
    assert result.exit_code == 0
    digest = _doc(result)["input"]["digest"]
    assert digest == "sha256:" + hashlib.sha256(body.encode()).hexdigest()


def test_out_writes_report_and_summary(tmp_path):
    out = tmp_path / "report.json"
    result = _invoke(["verify", "--builtin", "trivial", "--out", str(out)])
    assert result.exit_code == 0
    assert "[PASS] axioms" in result.output
    assert json.loads(out.read_text())["passed"] is True


def test_report_runs_every_suite():
    result = _invoke(["report", "--builtin", "group_c2", "--n-max", "3",
                      "--degree-bound", "4"])
    assert result.exit_code == 0
    doc = _doc(result)
    assert [s["name"] for s in doc["suites"]] == [
        "axioms", "lemmas", "relations", "powers", "traces", "homology"]
    assert set(doc["timing"]["suites"]) == set(
        s["name"] for s in doc["suites"])


def test_reports_identical_across_thread_counts():
    args = ["report", "--builtin", "group_c2", "--n-max", "3",
            "--degree-bound", "4"]
    one = _doc(_invoke(args, env={"BRAIDHOPF_THREADS": "1"}))
    four = _doc(_invoke(args, env={"BRAIDHOPF_THREADS": "4"}))
    assert one.pop("timing")["threads"] == 1
    assert four.pop("timing")["threads"] == 4
    assert (json.dumps(one, sort_keys=True).encode()
            == json.dumps(four, sort_keys=True).encode())
