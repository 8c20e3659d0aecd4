"""Instances with a question attached, and the oracle that answers each question."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Any, Dict, Mapping, Optional, Tuple

from ..core import (AnnotatedDag, BranchingProgram, Circuit, CnfInstance, SimpleGraph, StructureCertificate)
from ..elimination import maxcut_elimination, solve_list_coloring_elimination
from .. import oracles as O
from ..reductions_apps import KncInstance, palette_lists

# question -> payload type it is asked about
QUESTIONS: Dict[str, type] = {
    "sat": CnfInstance,
    "sat-projected": CnfInstance,
    "maxsat": CnfInstance,
    "maxsat-threshold": CnfInstance,
    "circuit": Circuit,
    "circuit-sat": Circuit,
    "weight-k": Circuit,
    "bp": BranchingProgram,
    "ann-reach": AnnotatedDag,
    "ann-nonreach": AnnotatedDag,
    "coloring": SimpleGraph,
    "maxcut": SimpleGraph,
    "maxcut-threshold": SimpleGraph,
    "dominating": SimpleGraph,
    "degdel": SimpleGraph,
    "knc": KncInstance,
}


@dataclass(frozen=True)
class Instance:
    """A payload, the question asked about it and the parameters the question needs.

    ``certificate`` holds structure for payloads that cannot carry their own
    (graphs); CNF certificates stay on the CNF.
    """

    question: str
    payload: Any
    params: Mapping[str, Any] = field(default_factory=dict)
    certificate: Optional[StructureCertificate] = None
    provenance: Tuple[str, ...] = ()

    def __post_init__(self):
        want = QUESTIONS.get(self.question)
        if want is None:
            raise ValueError(f"unknown question {self.question!r}")
        if not isinstance(self.payload, want):
            raise TypeError(f"{self.question} needs a {want.__name__}, got {type(self.payload).__name__}")
        object.__setattr__(self, "params", dict(self.params))

    def ask(self, question: str, **params: Any) -> "Instance":
        return replace(self, question=question, params={**self.params, **params})

    def with_trail(self, step: str) -> "Instance":
        return replace(self, provenance=self.provenance + (step,))

    def summary(self) -> str:
        p = self.payload
        if isinstance(p, CnfInstance):
            cert = p.certificate.kind.value if p.certificate else "none"
            body = f"cnf n={p.num_variables} clauses={p.num_clauses} cert={cert}"
        elif isinstance(p, Circuit):
            body = f"circuit inputs={p.num_inputs} gates={len(p.gates)}"
        elif isinstance(p, BranchingProgram):
            body = f"bp inputs={p.num_inputs} length={p.length} width={p.width}"
        elif isinstance(p, AnnotatedDag):
            body = f"dag vertices={p.num_vertices} arcs={len(p.arcs)} m={p.num_annotation_vars}"
        elif isinstance(p, KncInstance):
            body = f"knc vertices={p.graph.vertex_count} arcs={len(p.graph.edges)} k={p.k}"
        else:
            body = f"graph vertices={p.vertex_count} edges={len(p.edges)}"
        extra = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()) if k != "keep")
        return f"{self.question}: {body}" + (f" [{extra}]" if extra else "")


@dataclass(frozen=True)
class Verdict:
    """``bool``: yes/no; ``table``: packed set over ``width`` variables; ``value``: an optimum."""

    kind: str
    value: int
    width: int = 0

    def as_json(self) -> Dict[str, Any]:
        if self.kind == "bool":
            return {"kind": "bool", "value": bool(self.value)}
        if self.kind == "table":
            return {"kind": "table", "width": self.width, "value": hex(self.value)}
        return {"kind": "value", "value": self.value}

    def __str__(self) -> str:
        if self.kind == "bool":
            return "YES" if self.value else "NO"
        if self.kind == "table":
            return f"{bin(self.value).count('1')}/{2 ** self.width} assignments {self.value:#x}"
        return str(self.value)


def agree(a: Verdict, b: Verdict) -> bool:
    """Same answer; a table against a yes/no answer compares on non-emptiness."""
    if a.kind == b.kind:
        return a.value == b.value and a.width == b.width
    kinds = {a.kind, b.kind}
    if kinds == {"table", "bool"}:
        return bool(a.value) == bool(b.value)
    raise TypeError(f"cannot compare a {a.kind} verdict with a {b.kind} verdict")


def _yes(x: Any) -> Verdict:
    return Verdict("bool", int(x is not None and x is not False))


@lru_cache(maxsize=256)
def _maxcut_value(g: SimpleGraph, config: O.OracleConfig) -> int:
    # threshold sweeps ask the same graph once per target
    if g.vertex_count <= config.maxcut_vertices:
        return O.solve_maxcut_bruteforce(g, config)[1]
    return maxcut_elimination(g)[1]


def decide(inst: Instance, config: O.OracleConfig = O.DEFAULT) -> Verdict:
    """Answer ``inst.question`` with the ground-truth oracles."""
    q, p, prm = inst.question, inst.payload, inst.params
    if q == "sat":
        if p.num_variables <= config.sat_vars:
            return _yes(O.solve_sat_bruteforce(p, config))
        return _yes(O.solve_sat_cdcl(p))
    if q == "sat-projected":
        keep = list(prm["keep"])
        return Verdict("table", O.projected_models_cdcl(p, keep, config), len(keep))
    if q == "maxsat":
        return Verdict("value", O.maxsat_value(p, config) + prm.get("offset", 0))
    if q == "maxsat-threshold":
        return Verdict("bool", int(O.maxsat_value(p, config) >= prm["t"]))
    if q == "circuit":
        return Verdict("table", O.circuit_truth_table(p), p.num_inputs)
    if q == "circuit-sat":
        return _yes(O.solve_circuit_sat(p, config))
    if q == "weight-k":
        return _yes(O.solve_weight_k_sat(p, prm["k"], config))
    if q == "bp":
        return Verdict("table", O.bp_truth_table(p), p.num_inputs)
    if q in ("ann-reach", "ann-nonreach"):
        reach = O.ann_reach_table(p, config)
        if q == "ann-nonreach":
            reach ^= O.var_masks(p.num_annotation_vars)[1]
        return Verdict("table", reach, p.num_annotation_vars)
    if q == "coloring":
        colors = prm["q"]
        if p.vertex_count <= config.coloring_vertices:
            return _yes(O.solve_qcoloring_bruteforce(p, colors, config))
        if "palette" in prm:
            g, lists = palette_lists(p, prm["palette"], colors)
            return _yes(solve_list_coloring_elimination(g, colors, lists))
        return _yes(solve_list_coloring_elimination(p, colors))
    if q in ("maxcut", "maxcut-threshold"):
        best = _maxcut_value(p, config)
        if q == "maxcut":
            return Verdict("value", best + prm.get("offset", 0))
        return Verdict("bool", int(best >= prm["target"]))
    if q == "dominating":
        return _yes(O.solve_dominating_set_bruteforce(p, prm["k"], config))
    if q == "degdel":
        return _yes(O.solve_degdel_bruteforce(p, prm["r"], prm["k"], config))
    if q == "knc":
        return _yes(O.solve_knc_bruteforce(p.graph, p.s, p.t, p.k, config))
    raise ValueError(f"unknown question {q!r}")
