"""Acceptance suites: oracle equivalence, bound audit and fault injection.

Each criterion prints one PASS/FAIL line; run with ``pytest tests/test_acceptance.py -s``
to see them inline (they are printed with capture disabled either way).
"""

import random
import time

from sethlab.harness import PIPELINES, check_equivalence, check_pipeline, registry, run_trial
from sethlab.harness.trials import SuiteResult

SEED = 20240601

BARRINGTON = {"barrington": 500}
ELIMINATION = {"treedepth-elim": 500}
HUB = {"hub-maxsat": 300}
ANNOTATED = {rid: 100 for rid in ("annnonreach-2sat", "2sat-annnonreach", "logpw-annreach", "annreach-logpw",
                                  "complement")}
HORN = {rid: 300 for rid in ("horn-circuit", "circuit-horn", "weightk-monotone", "circuitsat-weightk")}
APPLICATIONS = {rid: 100 for rid in ("coloring-sat-td", "pw-coloring", "maxcut-maxsat", "annnonreach-knc",
                                     "knc-annnonreach", "dominating-knc", "degdel-circuit")}
SWEEP = ("maxsat-maxcut", 100)
PIPELINE_TRIALS = 50
# reductions outside the suites above; the bound audit samples them too
AUDIT_ONLY = {rid: 60 for rid in ("arity3", "bp-pw5", "psi-r", "formula-weight-k", "balance-formula",
                                  "weightk-circuit", "maxsat-lindepth", "2sat-circuit")}

# bounds that must be present on every instance of the named reduction
DECLARED = {
    "barrington": ["length<=4^depth"],
    "bp-pw5": ["pathwidth<=5"],
    "treedepth-elim": ["arity<=2^c*k", "clauses<=m^(2^c)", "vars<=modulator"],
    "coloring-sat-td": ["modulator<=ceil(m/gamma)*rho", "tree-depth<=c*q"],
    "pw-coloring": ["modulator<=ceil(m/rho)*gamma", "pathwidth<=w+8+q"],
    "knc-annnonreach": ["vertices<=n^5", "M<=k*ceil(log2 n)"],
    "complement": ["vertices<=complement_vertex_bound"],
    "annreach-logpw": ["pathwidth<=2*ceil(log2 n)+1"],
}

RESULTS = {}


def emit(capsys, number, title, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {title}: {detail}")


def suite(rid, trials):
    if rid not in RESULTS:
        RESULTS[rid] = check_equivalence(rid, trials, seed=SEED)
    return RESULTS[rid]


def run_suites(plan):
    start = time.perf_counter()
    results = {rid: suite(rid, n) for rid, n in plan.items()}
    return results, time.perf_counter() - start


def summary(results):
    parts = []
    for rid, res in results.items():
        parts.append(f"{rid} {len(res.reports) - len(res.failed)}/{len(res.reports)}")
    return ", ".join(parts)


def first_failure(results):
    for res in results.values():
        for r in res.failed:
            return f"{r.reduction_id} seed={r.seed}: {'; '.join(r.failures())}"
    return ""


def verdict(capsys, number, title, results, elapsed, limit, extra=True, extra_note=""):
    passed = all(res.passed for res in results.values())
    ok = passed and extra and elapsed < limit
    detail = f"{summary(results)} in {elapsed:.1f}s (limit {limit}s)"
    if extra_note:
        detail += f"; {extra_note}"
    if not passed:
        detail += f"; first failure {first_failure(results)}"
    emit(capsys, number, title, ok, detail)
    assert passed, first_failure(results)
    assert extra, extra_note
    assert elapsed < limit, f"{elapsed:.1f}s exceeds {limit}s"


def test_1_barrington(capsys):
    results, elapsed = run_suites(BARRINGTON)
    reports = results["barrington"].reports
    width = all(("width = 5", True) in r.certificate_checks for r in reports)
    verdict(capsys, 1, "Barrington width 5, length <= 4^d, truth tables equal", results, elapsed, 60, width,
            "width 5 on every program" if width else "a program is wider than 5")


def test_2_treedepth_elimination(capsys):
    results, elapsed = run_suites(ELIMINATION)
    verdict(capsys, 2, "resolution elimination equisatisfiable within clause and arity bounds", results,
            elapsed, 120)


def test_3_hub_maxsat(capsys):
    results, elapsed = run_suites(HUB)
    verdict(capsys, 3, "hub Max-SAT optimum identity", results, elapsed, 120)


def test_4_annotated_reachability(capsys):
    results, elapsed = run_suites(ANNOTATED)
    verdict(capsys, 4, "annotated reachability, every M-assignment", results, elapsed, 300)


def test_5_horn_and_circuits(capsys):
    results, elapsed = run_suites(HORN)
    horn = all(("Horn backdoor verifies", True) in r.certificate_checks for r in results["circuit-horn"].reports)
    verdict(capsys, 5, "Horn backdoor and weighted circuit equivalences", results, elapsed, 180, horn,
            "Horn backdoor certificates verify" if horn else "a Horn backdoor certificate failed")


def _maxcut_sweep():
    rid, count = SWEEP
    if rid in RESULTS:
        return RESULTS[rid]
    red = registry.get(rid)
    reports = []
    for i in range(count):
        inst = red.sample(random.Random(SEED + i))
        m = inst.payload.total_weight
        for t in range(m + 2):
            reports.append(run_trial(rid, inst.ask(inst.question, t=t), seed=SEED + i))
    RESULTS[rid] = SuiteResult(rid, reports)
    return RESULTS[rid]


def test_6_applications(capsys):
    start = time.perf_counter()
    results = {rid: suite(rid, n) for rid, n in APPLICATIONS.items()}
    results[SWEEP[0]] = _maxcut_sweep()
    elapsed = time.perf_counter() - start
    verdict(capsys, 6, "colouring, Max-Cut threshold sweep over all t, k-Neighborhood-Cut, degenerate deletion",
            results, elapsed, 300, extra_note=f"{SWEEP[1]} Max-SAT instances swept")


def test_7_pipelines(capsys):
    start = time.perf_counter()
    results = {}
    for name in PIPELINES:
        key = f"pipeline:{name}"
        if key not in RESULTS:
            RESULTS[key] = check_pipeline(name, PIPELINE_TRIALS, seed=SEED)
        results[name] = RESULTS[key]
    elapsed = time.perf_counter() - start
    verdict(capsys, 7, "end-to-end chains preserve answers", results, elapsed, 300)


def test_8_bound_audit(capsys):
    for rid, n in {**BARRINGTON, **ELIMINATION, **HUB, **ANNOTATED, **HORN, **APPLICATIONS, **AUDIT_ONLY}.items():
        suite(rid, n)
    _maxcut_sweep()
    violations, missing, checked = [], [], 0
    for rid in registry.ids():
        reports = RESULTS[rid].reports
        for r in reports:
            names = {b[0] for b in r.size_bounds}
            for want in DECLARED.get(rid, []):
                if want not in names:
                    missing.append(f"{rid} seed={r.seed} lacks {want}")
            if not r.size_bounds and not r.certificate_checks:
                missing.append(f"{rid} seed={r.seed} asserts nothing")
            for name, claimed, observed, ok in r.size_bounds:
                checked += 1
                if not ok:
                    violations.append(f"{rid} seed={r.seed} {name}: {observed} > {claimed}")
            for name, ok in r.certificate_checks:
                checked += 1
                if not ok:
                    violations.append(f"{rid} seed={r.seed} check {name}")
    ok = not violations and not missing
    emit(capsys, 8, "certificate and bound audit", ok,
         f"{checked} assertions over {len(registry.ids())} reductions, {len(violations)} violations, "
         f"{len(missing)} missing" + (f"; {(violations + missing)[0]}" if not ok else ""))
    assert not missing, missing[:5]
    assert not violations, violations[:5]


def test_9_fault_injection(capsys):
    undetected = []
    suites = 0
    for rid in registry.ids():
        suites += 1
        res = check_equivalence(rid, 1, seed=SEED, fault=True)
        if res.passed:
            undetected.append(rid)
    for name in PIPELINES:
        suites += 1
        res = check_pipeline(name, 1, seed=SEED, fault=True)
        if res.passed:
            undetected.append(f"pipeline {name}")
    ok = not undetected
    emit(capsys, 9, "fault injection is detected", ok,
         f"{suites - len(undetected)}/{suites} mutated suites reported failure"
         + (f"; undetected {', '.join(undetected)}" if undetected else ""))
    assert not undetected
