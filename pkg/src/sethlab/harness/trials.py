"""Equivalence trials: run a reduction or a chain, answer both ends with oracles, report."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from ..core import CircuitBuilder, Clause, CnfInstance, InvalidInstance, Literal, SimpleGraph
from .. import oracles as O
from ..reductions_apps import KncInstance
from ..reductions_circuit import embed
from . import registry
from .instances import Instance, Verdict, agree, decide
from .registry import Bound, Check


@dataclass
class TrialReport:
    reduction_id: str
    seed: int
    instance_summary: str
    oracle_verdict_in: str = ""
    oracle_verdict_out: str = ""
    answers_agree: bool = False
    certificate_checks: List[Check] = field(default_factory=list)
    size_bounds: List[Bound] = field(default_factory=list)
    elapsed: float = 0.0
    error: Optional[str] = None
    output_summary: str = ""
    fault: bool = False

    @property
    def passed(self) -> bool:
        return (self.error is None and self.answers_agree and all(ok for _, ok in self.certificate_checks)
                and all(b[3] for b in self.size_bounds))

    def failures(self) -> List[str]:
        out = [] if self.error is None else [f"error: {self.error}"]
        if self.error is None and not self.answers_agree:
            out.append(f"answers differ: {self.oracle_verdict_in} vs {self.oracle_verdict_out}")
        out += [f"check failed: {name}" for name, ok in self.certificate_checks if not ok]
        out += [f"bound violated: {name} claimed {c} observed {o}" for name, c, o, ok in self.size_bounds if not ok]
        return out

    def as_json(self) -> Dict[str, Any]:
        d = asdict(self)
        d["passed"] = self.passed
        d["certificate_checks"] = [{"name": n, "pass": ok} for n, ok in self.certificate_checks]
        d["size_bounds"] = [{"name": n, "claimed": c, "observed": o, "pass": ok} for n, c, o, ok in self.size_bounds]
        return d

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.reduction_id} seed={self.seed} {self.oracle_verdict_in} -> {self.oracle_verdict_out}"


# ------------------------------------------------------------ fault injection

def corrupt(inst: Instance, config: O.OracleConfig = O.DEFAULT) -> Instance:
    """A mutation of ``inst`` whose oracle answer differs from the current one."""
    before = decide(inst, config)
    for cand in _mutations(inst, before):
        if not agree(before, decide(cand, config)):
            return cand.with_trail("fault")
    raise ValueError(f"no answer-changing mutation for {inst.question}")


def _empty_clause(cnf: CnfInstance) -> CnfInstance:
    return replace(cnf, clauses=cnf.clauses + (Clause(()),))


def _mutations(inst: Instance, before: Verdict):
    q, p, prm = inst.question, inst.payload, inst.params
    yes = bool(before.value)
    if q in ("sat", "sat-projected"):
        yield replace(inst, payload=_empty_clause(p))
        yield replace(inst, payload=replace(p, clauses=()))
    elif q == "maxsat":
        fresh = p.num_variables + 1
        yield replace(inst, payload=replace(p, num_variables=fresh, clauses=p.clauses + (Clause((Literal(fresh, True),)),)))
    elif q == "maxsat-threshold":
        yield inst.ask(q, t=p.total_weight + 1 if yes else 0)
    elif q == "circuit":
        b = CircuitBuilder(p.num_inputs)
        out = embed(b, p, {v: b.input(v) for v in range(1, p.num_inputs + 1)})
        yield replace(inst, payload=b.build(b.not_(out)))
    elif q in ("circuit-sat", "weight-k"):
        n = max(p.num_inputs, prm.get("k", 0))
        b = CircuitBuilder(n)
        yield replace(inst, payload=b.build(b.const(not yes)))
    elif q == "bp":
        yield replace(inst, payload=replace(p, accept=p.reject, reject=p.accept))
    elif q in ("ann-reach", "ann-nonreach"):
        if p.source != p.sink:
            yield replace(inst, payload=replace(p, arcs=p.arcs + ((p.source, p.sink, None),)))
        yield replace(inst, payload=replace(p, num_vertices=p.num_vertices + 1, sink=p.num_vertices))
    elif q == "coloring":
        if yes:
            k = prm["q"] + 1
            n = p.vertex_count
            clique = tuple((n + i, n + j, 1) for i in range(1, k + 1) for j in range(i + 1, k + 1))
            yield replace(inst, payload=SimpleGraph(n + k, p.edges + clique), certificate=None)
        params = {key: v for key, v in prm.items() if key != "palette"}
        yield Instance(q, SimpleGraph(p.vertex_count, ()), params, None, inst.provenance)
    elif q == "maxcut":
        n = p.vertex_count
        yield replace(inst, payload=SimpleGraph(n + 2, p.edges + ((n + 1, n + 2, 1),)), certificate=None)
    elif q == "maxcut-threshold":
        yield inst.ask(q, target=sum(w for _, _, w in p.edges) + 1 if yes else 0)
    elif q == "dominating":
        n, k = p.vertex_count, prm["k"]
        if yes:
            yield replace(inst, payload=SimpleGraph(n + k + 1, p.edges))
        yield replace(inst, payload=SimpleGraph.from_edges(
            max(n, 1), [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]))
    elif q == "degdel":
        yield inst.ask(q, k=p.vertex_count if not yes else prm["k"])
        n, r = p.vertex_count, prm["r"]
        size = r + 2 + prm["k"] + 1
        clique = tuple((n + i, n + j, 1) for i in range(1, size + 1) for j in range(i + 1, size + 1))
        yield replace(inst, payload=SimpleGraph(n + size, p.edges + clique))
    elif q == "knc":
        g = p.graph
        yield replace(inst, payload=KncInstance(replace(g, edges=g.edges + ((p.s, p.t, 1),)), p.s, p.t, p.k))
        yield replace(inst, payload=KncInstance(replace(g, edges=()), p.s, p.t, p.k))


# ------------------------------------------------------------ trials

def run_trial(rid: str, inst: Instance, seed: int = 0, opts: Optional[Mapping[str, Any]] = None,
              fault: bool = False, config: O.OracleConfig = O.DEFAULT) -> TrialReport:
    """Apply ``rid`` to ``inst`` and compare oracle answers; semantic failures are reported, not raised.

    Oracle caps (``TooLarge``) and instances of the wrong type propagate.
    """
    red = registry.get(rid)
    inst = red.frame(inst)
    report = TrialReport(rid, seed, inst.summary(), fault=fault)
    start = time.perf_counter()
    verdict_in = decide(inst, config)
    report.oracle_verdict_in = str(verdict_in)
    try:
        outcome = red.run(inst, opts)
        out = corrupt(outcome.instance, config) if fault else outcome.instance
        report.certificate_checks = outcome.checks
        report.size_bounds = outcome.bounds
        _finish(report, verdict_in, out, config)
    except (AssertionError, InvalidInstance) as exc:
        report.error = f"{type(exc).__name__}: {exc}"
    report.elapsed = time.perf_counter() - start
    return report


def _finish(report: TrialReport, verdict_in: Verdict, out: Instance, config: O.OracleConfig) -> None:
    verdict_out = decide(out, config)
    report.oracle_verdict_out = str(verdict_out)
    report.output_summary = out.summary()
    report.answers_agree = agree(verdict_in, verdict_out)


@dataclass(frozen=True)
class PipelineSpec:
    """Reductions applied left to right; ``bindings`` maps a reduction id to its options."""

    ordered_reduction_ids: Tuple[str, ...]
    parameter_bindings: Mapping[str, Mapping[str, Any]] = field(default_factory=dict)
    theorem_tag: str = ""

    def __post_init__(self):
        object.__setattr__(self, "ordered_reduction_ids", tuple(self.ordered_reduction_ids))
        for a, b in zip(self.ordered_reduction_ids, self.ordered_reduction_ids[1:]):
            if not any(registry.accepts(b, q) for q in registry.output_questions(a)):
                raise TypeError(f"{a} produces {registry.output_questions(a)}, which {b} does not accept")
        for rid in self.parameter_bindings:
            if rid not in self.ordered_reduction_ids:
                raise ValueError(f"binding for {rid!r}, which is not in the chain")

    @property
    def name(self) -> str:
        return " > ".join(self.ordered_reduction_ids) or "identity"


PIPELINES: Dict[str, PipelineSpec] = {
    "ld-circuit-from-pwm": PipelineSpec(("barrington", "bp-pw5"), {}, "LD-circuit SETH <= pwM SETH"),
    "wsat-from-tdm": PipelineSpec(("psi-r", "formula-weight-k"), {"formula-weight-k": {"k": 2}},
                                  "tdM SETH <= W[SAT] SETH"),
    "ld-circuit-from-wsat": PipelineSpec(("balance-formula", "weightk-circuit"), {},
                                         "W[SAT] SETH <= LD-circuit SETH"),
    "tdm-to-ld-circuit": PipelineSpec(("psi-r", "formula-weight-k", "weightk-circuit"),
                                      {"formula-weight-k": {"k": 2}}, "tdM SETH <= LD-circuit SETH"),
    "circuit-from-hornb": PipelineSpec(("horn-circuit",), {}, "HornB SETH <= circuit SETH"),
    "hornb-from-circuit": PipelineSpec(("circuit-horn",), {}, "circuit SETH <= HornB SETH"),
    "monotone-wp-from-circuit": PipelineSpec(("weightk-monotone",), {"weightk-monotone": {"k": 2}},
                                             "circuit SETH <= monotone W[P] SETH"),
    "strong-wp-to-circuit": PipelineSpec(("circuitsat-weightk",), {}, "W[P] SETH <= circuit SETH"),
    "hornb-roundtrip": PipelineSpec(("circuit-horn", "horn-circuit"), {}, "circuit SETH <= HornB <= circuit"),
}


def run_pipeline(spec: PipelineSpec, inst: Instance, seed: int = 0, fault: bool = False,
                 config: O.OracleConfig = O.DEFAULT) -> TrialReport:
    """Run the chain and compare the last answer with the answer for the original instance."""
    if spec.ordered_reduction_ids:
        inst = registry.get(spec.ordered_reduction_ids[0]).frame(inst)
    report = TrialReport(spec.name, seed, inst.summary(), fault=fault)
    start = time.perf_counter()
    verdict_in = decide(inst, config)
    report.oracle_verdict_in = str(verdict_in)
    cur = inst
    try:
        for rid in spec.ordered_reduction_ids:
            outcome = registry.get(rid).run(cur, spec.parameter_bindings.get(rid))
            report.certificate_checks += [(f"{rid}: {n}", ok) for n, ok in outcome.checks]
            report.size_bounds += [(f"{rid}: {n}", c, o, ok) for n, c, o, ok in outcome.bounds]
            cur = outcome.instance
        if fault:
            cur = corrupt(cur, config)
        _finish(report, verdict_in, cur, config)
    except (AssertionError, InvalidInstance) as exc:
        report.error = f"{type(exc).__name__}: {exc}"
    report.elapsed = time.perf_counter() - start
    return report


def pipeline_sample(spec: PipelineSpec, rng: random.Random) -> Instance:
    """An input for ``spec`` drawn from its first reduction's sampler."""
    if not spec.ordered_reduction_ids:
        return registry.get("treedepth-elim").sample(rng)
    first = spec.ordered_reduction_ids[0]
    inst = registry.get(first).sample(rng)
    if first == "balance-formula" and spec.ordered_reduction_ids[1:2] == ("weightk-circuit",):
        n = max(1, inst.payload.num_inputs)
        inst = inst.ask("weight-k", k=rng.randint(1, min(3, n)))
    return inst


# ------------------------------------------------------------ suites

@dataclass
class SuiteResult:
    name: str
    reports: List[TrialReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def failed(self) -> List[TrialReport]:
        return [r for r in self.reports if not r.passed]

    def as_json(self) -> Dict[str, Any]:
        return {"name": self.name, "trials": len(self.reports), "passed": self.passed,
                "failures": len(self.failed), "reports": [r.as_json() for r in self.reports]}


def _one(job: Tuple[str, str, int, bool]) -> TrialReport:
    kind, name, seed, fault = job
    rng = random.Random(seed)
    if kind == "pipeline":
        spec = PIPELINES[name]
        return run_pipeline(spec, pipeline_sample(spec, rng), seed, fault)
    red = registry.get(name)
    return run_trial(name, red.sample(rng), seed, fault=fault)


def _run_jobs(jobs: Sequence[Tuple[str, str, int, bool]], workers: int) -> List[TrialReport]:
    if workers <= 1:
        reports = [_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_one, jobs, chunksize=4))
    return sorted(reports, key=lambda r: r.seed)


def check_equivalence(rid: str, trials: int, seed: int = 0, fault: bool = False, jobs: int = 1) -> SuiteResult:
    """``trials`` sampled instances; trial ``i`` uses seed ``seed + i``."""
    registry.get(rid)
    return SuiteResult(rid, _run_jobs([("reduction", rid, seed + i, fault) for i in range(trials)], jobs))


def check_pipeline(name: str, trials: int, seed: int = 0, fault: bool = False, jobs: int = 1) -> SuiteResult:
    if name not in PIPELINES:
        raise ValueError(f"unknown pipeline {name!r}; known: {', '.join(PIPELINES)}")
    return SuiteResult(name, _run_jobs([("pipeline", name, seed + i, fault) for i in range(trials)], jobs))
