import json
import random

import pytest
from hypothesis import given, strategies as st

from sethlab.core import CnfInstance, primal_graph, verify_hub
from sethlab.harness import (KINDS, PIPELINES, Instance, PipelineSpec, check_equivalence, check_pipeline, decide,
                             gen_planted, run_pipeline, run_trial)
from sethlab.harness import registry, serialize
from sethlab.harness.cli import main
from sethlab.harness.generators import cnf_td_modulator

seeds = st.integers(0, 10 ** 6)


# ------------------------------------------------------------ generators

@pytest.mark.parametrize("kind", KINDS)
def test_gen_is_deterministic(kind):
    assert gen_planted(kind, seed=5) == gen_planted(kind, seed=5)


def test_gen_hub_verifies():
    inst = gen_planted("cnf-hub", {"sigma": 2, "delta": 2, "m": 4}, seed=3)
    assert verify_hub(primal_graph(inst.payload), inst.payload.certificate)


def test_gen_rejects_unknown_kind_and_params():
    with pytest.raises(ValueError):
        gen_planted("nope")
    with pytest.raises(ValueError):
        gen_planted("cnf-hub", {"colour": 3})


# ------------------------------------------------------------ serialization

@given(st.sampled_from(KINDS), seeds)
def test_bundle_round_trip(kind, seed):
    inst = gen_planted(kind, seed=seed)
    assert serialize.loads(serialize.dumps(inst)) == inst


@given(st.sampled_from([k for k in KINDS if k.startswith("cnf")]), seeds)
def test_dimacs_round_trip_keeps_certificate(kind, seed):
    cnf = gen_planted(kind, seed=seed).payload
    back = serialize.from_dimacs(serialize.to_dimacs(cnf))
    assert back.num_variables == cnf.num_variables
    assert back.clauses == cnf.clauses
    assert back.certificate == cnf.certificate


@given(seeds)
def test_sampled_instances_round_trip(seed):
    rng = random.Random(seed)
    red = registry.get(rng.choice(registry.ids()))
    inst = red.sample(rng)
    assert serialize.loads(serialize.dumps(inst)) == inst


def test_dimacs_minimal():
    cnf = serialize.from_dimacs("p cnf 2 1\n1 -2 0\n")
    assert cnf == CnfInstance.from_ints(2, [[1, -2]])


def test_dimacs_weighted():
    cnf = CnfInstance.from_ints(2, [[1, -2], [2]], [3, 1])
    text = serialize.to_dimacs(cnf)
    assert text.startswith("p wcnf") or "p wcnf" in text
    assert serialize.from_dimacs(text) == cnf


@pytest.mark.parametrize("text, line, column", [
    ("p cnf 2 1\n1 x 0\n", 2, 3),
    ("p cnf 2 1\n1 3 0\n", 2, 3),
    ("1 2 0\n", 1, 1),
])
def test_dimacs_parse_errors_carry_position(text, line, column):
    with pytest.raises(serialize.ParseError) as err:
        serialize.from_dimacs(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_bundle_parse_error():
    with pytest.raises(serialize.ParseError) as err:
        serialize.loads('{"format": "sethlab-bundle",\n "version": 1,\n oops}')
    assert err.value.line == 3


# ------------------------------------------------------------ trials

def test_barrington_trial_reports_width_5():
    inst = registry.get("barrington").sample(random.Random(0))
    report = run_trial("barrington", inst)
    assert report.passed
    assert ("width = 5", True) in report.certificate_checks


def test_trivially_satisfiable_trial_passes():
    cnf = cnf_td_modulator(random.Random(0), m=2, rest=3, clauses=0)
    report = run_trial("treedepth-elim", Instance("sat", cnf))
    assert report.passed and report.oracle_verdict_in == "YES"


def test_fault_is_reported():
    inst = registry.get("treedepth-elim").sample(random.Random(1))
    report = run_trial("treedepth-elim", inst, fault=True)
    assert not report.passed and not report.answers_agree
    assert any("answers differ" in f for f in report.failures())


def test_report_json_is_serializable():
    inst = registry.get("arity3").sample(random.Random(2))
    d = run_trial("arity3", inst).as_json()
    assert json.loads(json.dumps(d))["passed"] is True


def test_empty_pipeline_is_identity():
    inst = gen_planted("cnf-td-modulator", seed=4)
    report = run_pipeline(PipelineSpec(()), inst)
    assert report.passed and report.instance_summary == report.output_summary
    assert report.oracle_verdict_in == report.oracle_verdict_out == str(decide(inst))


def test_pipeline_type_check():
    with pytest.raises(TypeError):
        PipelineSpec(("barrington", "treedepth-elim"))
    with pytest.raises(ValueError):
        PipelineSpec(("barrington",), {"bp-pw5": {}})


@pytest.mark.parametrize("name", ["ld-circuit-from-pwm", "tdm-to-ld-circuit"])
def test_pipelines_preserve_answers(name):
    assert check_pipeline(name, 5, seed=3).passed
    assert len(check_pipeline(name, 2, seed=3, fault=True).failed) == 2


def test_parallel_suite_matches_serial():
    a = check_equivalence("arity3", 6, seed=9)
    b = check_equivalence("arity3", 6, seed=9, jobs=2)
    assert [r.seed for r in a.reports] == [r.seed for r in b.reports]
    assert [r.oracle_verdict_out for r in a.reports] == [r.oracle_verdict_out for r in b.reports]


def test_every_pipeline_is_registered():
    assert all(isinstance(spec, PipelineSpec) for spec in PIPELINES.values())


# ------------------------------------------------------------ command line

def test_cli_gen_solve_verify(tmp_path, capsys):
    bundle = tmp_path / "hub.json"
    assert main(["gen", "--kind", "cnf-hub", "--seed", "1", "--params", "m=3", "--out", str(bundle)]) == 0
    assert main(["verify-cert", "--in", str(bundle)]) == 0
    assert main(["solve", "--in", str(bundle), "--json"]) == 0
    out = capsys.readouterr().out
    assert "verified" in out and '"kind": "value"' in out


def test_cli_dimacs_and_reduce(tmp_path, capsys):
    cnf = tmp_path / "td.cnf"
    out = tmp_path / "out.json"
    assert main(["gen", "--kind", "cnf-td-modulator", "--dimacs", "--out", str(cnf)]) == 0
    assert "c cert" in cnf.read_text()
    assert main(["reduce", "--id", "treedepth-elim", "--in", str(cnf), "--out", str(out)]) == 0
    assert serialize.loads(out.read_text()).question == "sat"


def test_cli_check_exit_codes(capsys):
    assert main(["check-equivalence", "--id", "arity3", "--trials", "3"]) == 0
    assert main(["check-equivalence", "--id", "arity3", "--trials", "2", "--fault"]) == 1
    assert main(["pipeline", "--spec", "hornb-roundtrip", "--trials", "2", "--json"]) == 0


def test_cli_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 2 1\n1 x 0\n")
    assert main(["solve", "--in", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_cli_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["reduce", "--id", "nope", "--in", "x"])
    assert exc.value.code == 2
    assert main(["gen", "--kind", "graph", "--dimacs"]) == 2
    assert main(["list"]) == 0
