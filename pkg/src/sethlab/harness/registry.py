"""Every reduction as a uniform step: frame the input question, apply, audit certificates and size bounds."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .. import formula as fm
from ..core import (AnnotatedDag, BaseClass, CertKind, CnfInstance, StructureCertificate, circuit_depth, is_formula,
                    is_monotone, verify_backdoor, verify_certificate, verify_hub, verify_path_decomposition, verify_tree_depth_forest)
from ..reductions_apps import (KncInstance, annnonreach_to_knc, dominating_to_knc, degdel_to_circuitsat,
                               knc_to_annnonreach, maxcut_to_maxsat, maxsat_to_maxcut, pwmod_sat_to_qcoloring,
                               qcoloring_to_sat_td)
from ..reductions_circuit import (_bits, balance_formula, barrington_transform, bp_to_cnf_pw5, build_psi_r,
                                  formula_to_weight_k, is_and_not_basis, maxsat_to_lindepth_circuit,
                                  normalize_circuit, weight_k_formula_to_circuit)
from ..reductions_horn import (circuit_to_hornbackdoor, circuitsat_to_weightk, hornbackdoor_to_circuit,
                               weightk_monotone_to_circuitsat)
from ..reductions_modulator import (eliminate_hub_maxsat, eliminate_treedepth_modulator, reduce_arity_to_3,
                                    treedepth_elimination_bounds)
from ..reductions_reach import (annnonreach_to_2satbackdoor, annreach_to_logpw_sat, complement_annotated,
                                complement_vertex_bound, logpw_sat_to_annreach, twosatbackdoor_to_annnonreach,
                                twosatbackdoor_to_circuit)
from . import generators as gen
from .instances import QUESTIONS, Instance

Check = Tuple[str, bool]
Bound = Tuple[str, int, int, bool]


@dataclass
class Outcome:
    """Output instance plus the certificate checks and size bounds the reduction claims for it."""

    instance: Instance
    checks: List[Check] = field(default_factory=list)
    bounds: List[Bound] = field(default_factory=list)

    def check(self, name: str, ok: bool) -> None:
        self.checks.append((name, bool(ok)))

    def at_most(self, name: str, claimed: int, observed: int) -> None:
        self.bounds.append((name, int(claimed), int(observed), observed <= claimed))


@dataclass(frozen=True)
class Reduction:
    rid: str
    source: Tuple[str, ...]
    target: str
    apply: Callable[[Instance, Mapping[str, Any]], Outcome]
    sample: Callable[[random.Random], Instance]
    doc: str = ""

    def frame(self, inst: Instance) -> Instance:
        """Re-ask ``inst`` as this reduction's input question when it is asked something else."""
        if inst.question in self.source:
            return inst
        return frame_as(inst, self.source[0])

    def run(self, inst: Instance, opts: Optional[Mapping[str, Any]] = None) -> Outcome:
        inst = self.frame(inst)
        out = self.apply(inst, dict(opts or {}))
        out.instance = out.instance.with_trail(self.rid)
        return out


def frame_as(inst: Instance, question: str) -> Instance:
    """``inst`` asked ``question``, filling the parameters that can be read off the payload."""
    p = inst.payload
    extra: Dict[str, Any] = {}
    if question == "sat-projected":
        if isinstance(p, CnfInstance) and "keep" not in inst.params:
            extra["keep"] = sorted(p.certificate.modulator) if p.certificate else []
    if question in ("weight-k", "dominating") and "k" not in inst.params:
        extra["k"] = 2
    if not isinstance(p, QUESTIONS[question]):
        raise TypeError(f"a {type(p).__name__} cannot be asked {question!r}")
    return inst.ask(question, **extra)


def _param(inst: Instance, opts: Mapping[str, Any], key: str, default: Any = None) -> Any:
    if key in opts:
        return opts[key]
    if key in inst.params:
        return inst.params[key]
    if default is None:
        raise ValueError(f"parameter {key!r} is required")
    return default


def _out(inst: Instance, question: str, payload: Any, params: Optional[Dict[str, Any]] = None,
         certificate: Optional[StructureCertificate] = None) -> Instance:
    return Instance(question, payload, params or {}, certificate, inst.provenance)


# ------------------------------------------------------------ modulators

def _treedepth_elim(inst: Instance, opts) -> Outcome:
    cnf = inst.payload
    o = Outcome(_out(inst, "sat", eliminate_treedepth_modulator(cnf)))
    o.check("input tree-depth certificate", verify_certificate(cnf))
    for name, claimed, observed, _ in treedepth_elimination_bounds(cnf, o.instance.payload):
        o.at_most(name, claimed, observed)
    return o


def _sample_treedepth(rng: random.Random) -> Instance:
    m = rng.randint(1, 4)
    cnf = gen.cnf_td_modulator(rng, m=m, rest=rng.randint(1, 16 - m), depth=rng.randint(1, 3),
                               clauses=rng.randint(4, 14), arity=rng.randint(2, 3))
    return Instance("sat", cnf)


def _hub_maxsat(inst: Instance, opts) -> Outcome:
    cnf = inst.payload
    out, offset = eliminate_hub_maxsat(cnf)
    cert = cnf.certificate
    o = Outcome(_out(inst, "maxsat", out, {"offset": inst.params.get("offset", 0) + offset}))
    o.check("input hub certificate", verify_certificate(cnf))
    o.at_most("arity<=max(k,delta)", max(cnf.max_arity, cert.delta), out.max_arity)
    outside = {v for c in out.clauses for v in c.variables} - out.certificate.modulator
    o.at_most("variables outside hub and padding", 0, len(outside))
    return o


def _sample_hub(rng: random.Random) -> Instance:
    sigma, delta = rng.randint(1, 3), rng.randint(1, 3)
    m = rng.randint(1, 6)
    comps = rng.randint(1, (18 - m) // sigma)
    cnf = gen.cnf_hub(rng, m=m, sigma=sigma, delta=delta, components=min(comps, 4),
                      clauses_per_component=rng.randint(1, 4), max_weight=rng.randint(1, 3))
    return Instance("maxsat", cnf)


def _arity3(inst: Instance, opts) -> Outcome:
    cnf = inst.payload
    out = reduce_arity_to_3(cnf)
    o = Outcome(_out(inst, "sat", out))
    o.at_most("arity<=3", 3, out.max_arity)
    cert = cnf.certificate
    if cert is not None and cert.kind is not CertKind.BACKDOOR:
        o.check("output certificate", out.certificate is not None and verify_certificate(out))
        o.check("modulator preserved", out.certificate.modulator == cert.modulator)
        if cert.kind is CertKind.PATH_DECOMPOSITION:
            o.at_most("pathwidth+2", cert.width + 2, out.certificate.width)
    return o


def _sample_arity3(rng: random.Random) -> Instance:
    maker = rng.choice([gen.cnf_td_modulator, gen.cnf_pw_modulator])
    m = rng.randint(0, 4)
    cnf = maker(rng, m=m, rest=rng.randint(1, 8), clauses=rng.randint(1, 10), arity=rng.randint(3, 6))
    return Instance("sat", cnf)


# ------------------------------------------------------------ circuits

def _barrington(inst: Instance, opts) -> Outcome:
    c = normalize_circuit(inst.payload, "and-not")
    bp = barrington_transform(c)
    o = Outcome(_out(inst, "bp", bp))
    d = circuit_depth(c)
    o.check("and-not basis", is_and_not_basis(c))
    o.check("width = 5", bp.width == 5 and max(len(layer) for layer in bp.layers[1:-1] or [()]) <= 5)
    o.at_most("length<=4^depth", 4 ** d, bp.length)
    return o


def _sample_barrington(rng: random.Random) -> Instance:
    c = gen.circuit_depth_bounded(rng, n=rng.randint(1, 10), depth=rng.randint(1, 6), width=rng.randint(2, 5),
                                  basis="and-not")
    return Instance("circuit", c)


def _bp_pw5(inst: Instance, opts) -> Outcome:
    bp = inst.payload
    cnf = bp_to_cnf_pw5(bp)
    o = Outcome(_out(inst, "sat-projected", cnf, {"keep": list(range(1, bp.num_inputs + 1))}))
    cert = cnf.certificate
    o.check("path decomposition certificate", verify_certificate(cnf))
    o.check("modulator = inputs", cert.modulator == frozenset(range(1, bp.num_inputs + 1)))
    o.at_most("pathwidth<=5", 5, cert.width)
    o.at_most("variables<=n+3*layers", bp.num_inputs + 3 * (bp.length + 1), cnf.num_variables)
    return o


def _sample_bp(rng: random.Random) -> Instance:
    c = gen.circuit_depth_bounded(rng, n=rng.randint(1, 6), depth=rng.randint(1, 4), width=rng.randint(2, 4),
                                  basis="and-not")
    return Instance("bp", barrington_transform(normalize_circuit(c, "and-not")))


def _psi_r(inst: Instance, opts) -> Outcome:
    cnf = inst.payload
    psi = build_psi_r(cnf)
    mod = sorted(cnf.certificate.modulator)
    o = Outcome(_out(inst, "circuit", psi))
    o.check("projection is onto the sorted modulator", list(inst.params["keep"]) == mod)
    o.check("formula", is_formula(psi))
    o.at_most("inputs<=|M|", len(mod), psi.num_inputs)
    return o


def _sample_psi(rng: random.Random) -> Instance:
    cnf = gen.cnf_td_modulator(rng, m=rng.randint(1, 6), rest=rng.randint(1, 8), depth=rng.randint(1, 3),
                               clauses=rng.randint(2, 12))
    return frame_as(Instance("sat", cnf), "sat-projected")


def _formula_weight_k(inst: Instance, opts) -> Outcome:
    psi = inst.payload
    k = max(1, min(int(_param(inst, opts, "k", 2)), psi.num_inputs or 1))
    out, k = formula_to_weight_k(psi, k)
    o = Outcome(_out(inst, "weight-k", out, {"k": k}))
    o.check("input formula", is_formula(psi))
    o.check("output formula", is_formula(out))
    m = psi.num_inputs
    o.at_most("inputs<=k*2^ceil(m/k)", k * 2 ** math.ceil(m / k), out.num_inputs)
    return o


def _sample_formula(rng: random.Random, question: str = "circuit") -> Instance:
    n = rng.randint(1, 6)
    f = gen.formula(rng, n=n, leaves=rng.randint(1, 24))
    params = {"k": rng.randint(1, min(3, n))} if question == "weight-k" else {}
    return Instance(question, f, params)


def _balance(inst: Instance, opts) -> Outcome:
    f = inst.payload
    bf = balance_formula(f)
    o = Outcome(_out(inst, inst.question, bf, dict(inst.params)))
    o.check("output formula", is_formula(bf))
    leaves = max(2, fm.leaves(fm.from_circuit(f)))
    o.at_most("depth<=3*ceil(log2 L)+1", 3 * math.ceil(math.log2(leaves)) + 1, circuit_depth(bf))
    return o


def _weightk_circuit(inst: Instance, opts) -> Outcome:
    phi = inst.payload
    k = int(_param(inst, opts, "k"))
    out = weight_k_formula_to_circuit(phi, k)
    o = Outcome(_out(inst, "circuit-sat", out))
    o.check("input formula", is_formula(phi))
    o.at_most("inputs<=k*ceil(log2 N)", k * _bits(phi.num_inputs), out.num_inputs)
    return o


def _maxsat_lindepth(inst: Instance, opts) -> Outcome:
    cnf = inst.payload
    t = int(_param(inst, opts, "t"))
    out = maxsat_to_lindepth_circuit(cnf, t)
    o = Outcome(_out(inst, "circuit-sat", out))
    o.check("inputs = variables", out.num_inputs == cnf.num_variables)
    nm = cnf.num_variables + cnf.num_clauses
    o.at_most("depth<=20*ceil(log2(n+m+1))+10", 20 * math.ceil(math.log2(nm + 1)) + 10, circuit_depth(out))
    return o


def _sample_maxsat_t(rng: random.Random) -> Instance:
    n, m = rng.randint(1, 6), rng.randint(0, 9)
    cnf = gen.random_cnf(rng, n=n, clauses=m, arity=3)
    return Instance("maxsat-threshold", cnf, {"t": rng.randint(-1, m + 1)})


# ------------------------------------------------------- annotated reach

def _m_keep(d: AnnotatedDag) -> List[int]:
    return list(range(1, d.num_annotation_vars + 1))


def _nonreach_2sat(inst: Instance, opts) -> Outcome:
    d = inst.payload
    cnf = annnonreach_to_2satbackdoor(d)
    o = Outcome(_out(inst, "sat-projected", cnf, {"keep": _m_keep(d)}))
    cert = cnf.certificate
    o.check("2-SAT backdoor verifies", cert.base is BaseClass.TWO_SAT and verify_backdoor(cnf, cert))
    o.check("backdoor = M", cert.modulator == frozenset(_m_keep(d)))
    return o


def _sample_dag(rng: random.Random, question: str, n_max: int = 8, m_max: int = 7) -> Instance:
    d = gen.annotated_dag(rng, n=rng.randint(2, n_max), m=rng.randint(0, m_max), density=rng.uniform(0.2, 0.6))
    return Instance(question, d)


def _twosat_nonreach(inst: Instance, opts) -> Outcome:
    cnf = inst.payload
    d = twosatbackdoor_to_annnonreach(cnf)
    o = Outcome(_out(inst, "ann-nonreach", d))
    bd = sorted(cnf.certificate.modulator)
    o.check("input 2-SAT backdoor verifies", verify_backdoor(cnf, cnf.certificate))
    o.check("projection is onto the sorted backdoor", list(inst.params["keep"]) == bd)
    o.check("M = backdoor", d.num_annotation_vars == len(bd))
    return o


def _sample_backdoor(rng: random.Random, horn: bool, b_max: int = 6, n_max: int = 5) -> Instance:
    b, n = rng.randint(0, b_max), rng.randint(0, n_max)
    if b + n == 0:
        n = 1
    maker = gen.cnf_horn_backdoor if horn else gen.cnf_2sat_backdoor
    cnf = maker(rng, b=b, n=n, clauses=rng.randint(0, 10))
    return frame_as(Instance("sat", cnf), "sat-projected")


def _logpw_reach(inst: Instance, opts) -> Outcome:
    cnf = inst.payload
    d = logpw_sat_to_annreach(cnf)
    mod = sorted(cnf.certificate.modulator)
    o = Outcome(_out(inst, "ann-reach", d))
    o.check("input path decomposition", verify_certificate(cnf))
    o.check("projection is onto the sorted modulator", list(inst.params["keep"]) == mod)
    o.check("M = modulator", d.num_annotation_vars == len(mod))
    return o


def _sample_pw(rng: random.Random) -> Instance:
    cnf = gen.cnf_pw_modulator(rng, m=rng.randint(0, 7), rest=rng.randint(1, 8), width=rng.randint(1, 2),
                               clauses=rng.randint(1, 12))
    return frame_as(Instance("sat", cnf), "sat-projected")


def _reach_logpw(inst: Instance, opts) -> Outcome:
    d = inst.payload
    cnf = annreach_to_logpw_sat(d)
    o = Outcome(_out(inst, "sat-projected", cnf, {"keep": _m_keep(d)}))
    cert = cnf.certificate
    o.check("path decomposition verifies", verify_certificate(cnf))
    o.check("modulator = M", cert.modulator == frozenset(_m_keep(d)))
    b = _bits(d.num_vertices)
    o.at_most("pathwidth<=2*ceil(log2 n)+1", 2 * b + 1, cert.width)
    return o


def _complement(inst: Instance, opts) -> Outcome:
    d = inst.payload
    out = complement_annotated(d)
    o = Outcome(_out(inst, "ann-reach", out))
    mult = max([sum(1 for a in d.arcs if a[:2] == (u, v)) for u, v, _ in d.arcs] or [1])
    o.at_most("vertices<=complement_vertex_bound", complement_vertex_bound(d.num_vertices, mult), out.num_vertices)
    o.check("same M", out.num_annotation_vars == d.num_annotation_vars)
    return o


def _twosat_circuit(inst: Instance, opts) -> Outcome:
    cnf = inst.payload
    c = twosatbackdoor_to_circuit(cnf)
    o = Outcome(_out(inst, "circuit", c))
    o.check("input 2-SAT backdoor verifies", verify_backdoor(cnf, cnf.certificate))
    o.check("projection is onto the sorted backdoor", list(inst.params["keep"]) == sorted(cnf.certificate.modulator))
    o.at_most("inputs<=b", len(cnf.certificate.modulator), c.num_inputs)
    return o


# ---------------------------------------------------------------- Horn

def _horn_circuit(inst: Instance, opts) -> Outcome:
    cnf = inst.payload
    c = hornbackdoor_to_circuit(cnf)
    o = Outcome(_out(inst, "circuit", c))
    o.check("input Horn backdoor verifies", verify_backdoor(cnf, cnf.certificate))
    o.check("projection is onto the sorted backdoor", list(inst.params["keep"]) == sorted(cnf.certificate.modulator))
    o.at_most("inputs<=b", len(cnf.certificate.modulator), c.num_inputs)
    o.at_most("fan-in<=2", 2, max((len(g.inputs) for g in c.gates), default=0))
    return o


def _circuit_horn(inst: Instance, opts) -> Outcome:
    c = inst.payload
    cnf = circuit_to_hornbackdoor(c)
    n = c.num_inputs
    o = Outcome(_out(inst, "sat-projected", cnf, {"keep": list(range(1, n + 1))}))
    cert = cnf.certificate
    o.check("Horn backdoor verifies", cert is not None and cert.base is BaseClass.HORN and verify_backdoor(cnf, cert))
    o.check("backdoor = inputs", cert is not None and cert.modulator == frozenset(range(1, n + 1)))
    return o


def _sample_circuit(rng: random.Random, question: str = "circuit", n_max: int = 6) -> Instance:
    n = rng.randint(1, n_max)
    c = gen.circuit_depth_bounded(rng, n=n, depth=rng.randint(1, 5), width=rng.randint(1, 4))
    params = {"k": rng.randint(1, min(3, n))} if question == "weight-k" else {}
    return Instance(question, c, params)


def _weightk_monotone(inst: Instance, opts) -> Outcome:
    c = inst.payload
    k = max(1, int(_param(inst, opts, "k", 2)))
    out = weightk_monotone_to_circuitsat(c, k)
    o = Outcome(_out(inst, "weight-k", out, {"k": k}))
    o.check("output monotone", is_monotone(out))
    n = c.num_inputs
    o.at_most("inputs<=k*2^ceil(n/k)", k * 2 ** math.ceil(n / k), out.num_inputs)
    return o


def _sample_weightk_monotone(rng: random.Random) -> Instance:
    inst = _sample_circuit(rng, "circuit-sat")
    return inst.ask("circuit-sat", k=rng.randint(1, 3))


def _circuitsat_weightk(inst: Instance, opts) -> Outcome:
    c = inst.payload
    k = int(_param(inst, opts, "k"))
    out, k = circuitsat_to_weightk(c, k)
    o = Outcome(_out(inst, "circuit-sat", out))
    o.at_most("inputs<=k*ceil(log2 n)", k * _bits(c.num_inputs), out.num_inputs)
    return o


# ---------------------------------------------------------- applications

def _coloring_sat(inst: Instance, opts) -> Outcome:
    g, cert = inst.payload, inst.certificate
    q = int(_param(inst, opts, "q", 3))
    gamma, rho = _param(inst, opts, "gamma", 1), _param(inst, opts, "rho", 2)
    cnf = qcoloring_to_sat_td(g, cert, q, gamma, rho)
    o = Outcome(_out(inst, "sat", cnf))
    m = len(cert.modulator)
    o.check("input tree-depth certificate", verify_tree_depth_forest(g, cert))
    o.check("output tree-depth certificate", verify_certificate(cnf))
    o.at_most("modulator<=ceil(m/gamma)*rho", math.ceil(m / gamma) * rho, len(cnf.certificate.modulator))
    o.at_most("tree-depth<=c*q", cert.depth * q, cnf.certificate.depth)
    return o


def _sample_coloring(rng: random.Random) -> Instance:
    q = rng.choice([3, 4])
    n = rng.randint(1, 9)
    g, cert = gen.graph(rng, n=n, p=rng.random(), modulator=rng.randint(1, min(4, n)), depth=rng.randint(1, 3))
    gamma, rho = rng.choice([(1, 2), (2, 4), (1, 3)] if q == 3 else [(1, 2), (2, 4)])
    return Instance("coloring", g, {"q": q, "gamma": gamma, "rho": rho}, cert)


def _maxcut_maxsat(inst: Instance, opts) -> Outcome:
    g = inst.payload
    cnf, offset = maxcut_to_maxsat(g)
    o = Outcome(_out(inst, "maxsat", cnf, {"offset": inst.params.get("offset", 0) - offset}))
    o.check("offset = total edge weight", offset == sum(w for _, _, w in g.edges))
    o.at_most("clauses<=2|E|", 2 * len(g.edges), cnf.num_clauses)
    return o


def _sample_maxcut(rng: random.Random) -> Instance:
    g, _ = gen.graph(rng, n=rng.randint(1, 12), p=rng.random())
    return Instance("maxcut", g)


def _maxsat_maxcut(inst: Instance, opts) -> Outcome:
    cnf = inst.payload
    t = int(_param(inst, opts, "t"))
    weighted = bool(opts.get("weighted", False))
    g, target, hub = maxsat_to_maxcut(cnf, t, weighted=weighted, with_hub=True)
    o = Outcome(_out(inst, "maxcut-threshold", g, {"target": target}))
    k = max(1, cnf.max_arity)
    o.check("hub certificate verifies", verify_hub(g, hub))
    o.at_most("hub delta<=k+1", k + 1, hub.delta)
    return o


def _sample_maxsat_small(rng: random.Random) -> Instance:
    n, m = rng.randint(1, 4), rng.randint(1, 4)
    cnf = gen.random_cnf(rng, n=n, clauses=m, arity=2)
    return Instance("maxsat-threshold", cnf, {"t": rng.randint(0, m + 1)})


def _pw_coloring(inst: Instance, opts) -> Outcome:
    cnf = inst.payload
    q = int(_param(inst, opts, "q", 3))
    gamma, rho = _param(inst, opts, "gamma", 1), _param(inst, opts, "rho", 1)
    g, cert = pwmod_sat_to_qcoloring(cnf, q, gamma, rho)
    palette = list(range(g.vertex_count - q + 1, g.vertex_count + 1))
    o = Outcome(_out(inst, "coloring", g, {"q": q, "palette": palette}, cert))
    m = len(cnf.certificate.modulator)
    o.check("path decomposition verifies", verify_path_decomposition(g, cert))
    o.at_most("modulator<=ceil(m/rho)*gamma", math.ceil(m / rho) * gamma, len(cert.modulator))
    o.at_most("pathwidth<=w+8+q", cnf.certificate.width + 8 + q, cert.width)
    return o


def _sample_pw_coloring(rng: random.Random) -> Instance:
    cnf = gen.cnf_pw_modulator(rng, m=rng.randint(0, 4), rest=rng.randint(1, 5), width=1,
                               clauses=rng.randint(1, 8))
    gamma, rho = (2, 3) if rng.random() < 0.1 else (1, 1)
    return Instance("sat", cnf, {"q": 3, "gamma": gamma, "rho": rho})


def _nonreach_knc(inst: Instance, opts) -> Outcome:
    d = inst.payload
    k = int(_param(inst, opts, "k", 2))
    knc = annnonreach_to_knc(d, k)
    o = Outcome(_out(inst, "knc", knc))
    o.check("directed", knc.graph.directed)
    m = d.num_annotation_vars
    o.at_most("vertices<=n+k*(1+2^ceil(m/k))+arcs", d.num_vertices + k * (1 + 2 ** math.ceil(m / k)) + len(d.arcs),
              knc.graph.vertex_count)
    return o


def _sample_dag_knc(rng: random.Random) -> Instance:
    inst = _sample_dag(rng, "ann-nonreach", n_max=7, m_max=6)
    return inst.ask("ann-nonreach", k=rng.randint(1, 2))


def _knc_nonreach(inst: Instance, opts) -> Outcome:
    p = inst.payload
    d = knc_to_annnonreach(p.graph, p.s, p.t, p.k)
    n = p.graph.vertex_count
    o = Outcome(_out(inst, "ann-nonreach", d))
    o.at_most("vertices<=n^5", max(n, 2) ** 5, d.num_vertices)
    o.at_most("M<=k*ceil(log2 n)", p.k * _bits(n), d.num_annotation_vars)
    return o


def _sample_knc(rng: random.Random) -> Instance:
    n = rng.randint(2, 8)
    g, _ = gen.graph(rng, n=n, p=rng.random(), directed=True)
    return Instance("knc", KncInstance(g, 1, n, rng.randint(1, 2)))


def _dominating_knc(inst: Instance, opts) -> Outcome:
    g = inst.payload
    k = int(_param(inst, opts, "k"))
    knc = dominating_to_knc(g, k)
    o = Outcome(_out(inst, "knc", knc))
    o.at_most("vertices<=2n+2", 2 * g.vertex_count + 2, knc.graph.vertex_count)
    return o


def _sample_dominating(rng: random.Random) -> Instance:
    g, _ = gen.graph(rng, n=rng.randint(1, 10), p=rng.random())
    return Instance("dominating", g, {"k": rng.randint(1, 3)})


def _degdel_circuit(inst: Instance, opts) -> Outcome:
    g = inst.payload
    r, k = int(_param(inst, opts, "r")), int(_param(inst, opts, "k"))
    c = degdel_to_circuitsat(g, r, k)
    o = Outcome(_out(inst, "circuit-sat", c))
    o.at_most("inputs<=k*ceil(log2 n)", k * _bits(g.vertex_count), c.num_inputs)
    return o


def _sample_degdel(rng: random.Random) -> Instance:
    g, _ = gen.graph(rng, n=rng.randint(1, 9), p=rng.random())
    return Instance("degdel", g, {"r": rng.choice([1, 2]), "k": rng.randint(1, 2)})


# ------------------------------------------------------------- registry

_ENTRIES = [
    Reduction("treedepth-elim", ("sat",), "sat", _treedepth_elim, _sample_treedepth,
              "resolve away every variable outside a tree-depth modulator"),
    Reduction("hub-maxsat", ("maxsat",), "maxsat", _hub_maxsat, _sample_hub,
              "replace each hub component by clauses over its hub neighbours"),
    Reduction("arity3", ("sat",), "sat", _arity3, _sample_arity3, "split clauses to arity 3"),
    Reduction("barrington", ("circuit",), "bp", _barrington, _sample_barrington,
              "normalize to AND/NOT and build a width-5 permutation branching program"),
    Reduction("bp-pw5", ("bp",), "sat-projected", _bp_pw5, _sample_bp,
              "encode a width-5 branching program as CNF with a pathwidth-5 remainder"),
    Reduction("psi-r", ("sat-projected",), "circuit", _psi_r, _sample_psi,
              "formula over a tree-depth modulator accepting its extendable assignments"),
    Reduction("formula-weight-k", ("circuit",), "weight-k", _formula_weight_k,
              lambda rng: _sample_formula(rng, "circuit"), "group selectors turn models into weight-k models"),
    Reduction("balance-formula", ("circuit", "weight-k"), "circuit", _balance,
              lambda rng: _sample_formula(rng, "circuit"), "logarithmic-depth equivalent formula"),
    Reduction("weightk-circuit", ("weight-k",), "circuit-sat", _weightk_circuit,
              lambda rng: _sample_formula(rng, "weight-k"), "guess k indices instead of N bits"),
    Reduction("maxsat-lindepth", ("maxsat-threshold",), "circuit-sat", _maxsat_lindepth, _sample_maxsat_t,
              "adder tree and comparator over clause gates"),
    Reduction("annnonreach-2sat", ("ann-nonreach",), "sat-projected", _nonreach_2sat,
              lambda rng: _sample_dag(rng, "ann-nonreach"), "reachability closure as 2-CNF over M"),
    Reduction("2sat-annnonreach", ("sat-projected",), "ann-nonreach", _twosat_nonreach,
              lambda rng: _sample_backdoor(rng, horn=False), "implication graph gated by backdoor literals"),
    Reduction("logpw-annreach", ("sat-projected",), "ann-reach", _logpw_reach, _sample_pw,
              "walk bag by bag through satisfying partial assignments"),
    Reduction("annreach-logpw", ("ann-reach",), "sat-projected", _reach_logpw,
              lambda rng: _sample_dag(rng, "ann-reach"), "binary-encoded walk with consecutive-layer bags"),
    Reduction("complement", ("ann-nonreach",), "ann-reach", _complement,
              lambda rng: _sample_dag(rng, "ann-nonreach", n_max=5, m_max=6),
              "inductive counting of reachable vertices"),
    Reduction("2sat-circuit", ("sat-projected",), "circuit", _twosat_circuit,
              lambda rng: _sample_backdoor(rng, horn=False, b_max=5, n_max=4),
              "unrolled resolution closure of the 2-CNF part"),
    Reduction("horn-circuit", ("sat-projected",), "circuit", _horn_circuit,
              lambda rng: _sample_backdoor(rng, horn=True), "unrolled unit propagation"),
    Reduction("circuit-horn", ("circuit",), "sat-projected", _circuit_horn, _sample_circuit,
              "dual-rail gate variables make every clause Horn outside the inputs"),
    Reduction("weightk-monotone", ("circuit-sat",), "weight-k", _weightk_monotone, _sample_weightk_monotone,
              "monotone circuit over group selectors"),
    Reduction("circuitsat-weightk", ("weight-k",), "circuit-sat", _circuitsat_weightk,
              lambda rng: _sample_circuit(rng, "weight-k"), "guess k distinct input indices"),
    Reduction("coloring-sat-td", ("coloring",), "sat", _coloring_sat, _sample_coloring,
              "binary codes of group colourings on the modulator"),
    Reduction("maxcut-maxsat", ("maxcut",), "maxsat", _maxcut_maxsat, _sample_maxcut,
              "two clauses per edge"),
    Reduction("maxsat-maxcut", ("maxsat-threshold",), "maxcut-threshold", _maxsat_maxcut, _sample_maxsat_small,
              "odd-cycle clause gadgets through a common vertex"),
    Reduction("pw-coloring", ("sat",), "coloring", _pw_coloring, _sample_pw_coloring,
              "list-colouring gadgets with a palette clique"),
    Reduction("annnonreach-knc", ("ann-nonreach",), "knc", _nonreach_knc, _sample_dag_knc,
              "selectors delete subdivision vertices of falsified arcs"),
    Reduction("knc-annnonreach", ("knc",), "ann-nonreach", _knc_nonreach, _sample_knc,
              "vertex chains guarded by codes of non-deleting selections"),
    Reduction("dominating-knc", ("dominating",), "knc", _dominating_knc, _sample_dominating,
              "two copies of V between s and t"),
    Reduction("degdel-circuit", ("degdel",), "circuit-sat", _degdel_circuit, _sample_degdel,
              "n peeling rounds over decoded deletions"),
]

REGISTRY: Dict[str, Reduction] = {r.rid: r for r in _ENTRIES}


def get(rid: str) -> Reduction:
    try:
        return REGISTRY[rid]
    except KeyError:
        raise ValueError(f"unknown reduction {rid!r}; known: {', '.join(REGISTRY)}") from None


def output_questions(rid: str) -> Tuple[str, ...]:
    """Questions the output of ``rid`` may be asked; ``balance-formula`` keeps its input question."""
    r = get(rid)
    return r.source if rid == "balance-formula" else (r.target,)


def accepts(rid: str, question: str) -> bool:
    return question in get(rid).source


def ids() -> Sequence[str]:
    return list(REGISTRY)
