"""Random instances with planted structure; the attached certificate holds by construction."""

from __future__ import annotations

import random
from typing import Any, Callable, Dict, List, Mapping, Optional

from .. import formula as fm
from ..core import (AnnotatedDag, BaseClass, Circuit, CircuitBuilder, CnfInstance, Literal, SimpleGraph,
                    StructureCertificate, forest_levels)
from .instances import Instance

KINDS = ("cnf-td-modulator", "cnf-hub", "cnf-2sat-backdoor", "cnf-horn-backdoor", "cnf-pw-modulator",
         "circuit-depth-bounded", "annotated-dag", "graph")


def _signed(rng: random.Random, vs) -> List[int]:
    return [v if rng.random() < 0.5 else -v for v in vs]


def _forest(rng: random.Random, vertices: List[int], depth: int) -> Dict[int, int]:
    """Random rooted forest over ``vertices`` with at most ``depth`` levels."""
    parent: Dict[int, int] = {}
    level: Dict[int, int] = {}
    for v in vertices:
        cands = [u for u in parent if level[u] < depth]
        p = rng.choice(cands) if cands and rng.random() < 0.75 else 0
        parent[v] = p
        level[v] = level[p] + 1 if p else 1
    return parent


def _chain(parent: Mapping[int, int], v: int) -> List[int]:
    out = []
    while v:
        out.append(v)
        v = parent[v]
    return out


def cnf_td_modulator(rng: random.Random, m: int = 3, rest: int = 6, depth: int = 2, clauses: int = 10,
                     arity: int = 3) -> CnfInstance:
    """Modulator ``1..m``; every clause lies on one root-to-node chain of a forest of ``depth`` levels."""
    mod = list(range(1, m + 1))
    others = list(range(m + 1, m + rest + 1))
    parent = _forest(rng, others, depth)
    out = []
    for _ in range(clauses):
        size = rng.randint(1, arity)
        vs = set()
        if others and rng.random() < 0.9:
            ch = _chain(parent, rng.choice(others))
            vs |= set(rng.sample(ch, min(len(ch), rng.randint(1, size))))
        room = size - len(vs)
        if mod and room > 0:
            vs |= set(rng.sample(mod, min(m, rng.randint(0, room))))
        if not vs:
            vs = {rng.randint(1, m + rest)}
        out.append(_signed(rng, sorted(vs)))
    levels = forest_levels(parent) or {}
    cert = StructureCertificate.tree_depth(mod, parent, max(levels.values(), default=0))
    return CnfInstance.from_ints(m + rest, out, certificate=cert)


def cnf_hub(rng: random.Random, m: int = 4, sigma: int = 2, delta: int = 2, components: int = 4,
            clauses_per_component: int = 3, max_weight: int = 1) -> CnfInstance:
    """Hub ``1..m``; each component of at most ``sigma`` variables talks to at most ``delta`` hub variables."""
    n = m
    out, weights, comps = [], [], []
    for _ in range(components):
        size = rng.randint(1, sigma)
        comp = list(range(n + 1, n + size + 1))
        n += size
        comps.append(comp)
        nbrs = rng.sample(range(1, m + 1), min(m, rng.randint(0, delta)))
        # a spine keeps the component connected
        for a, b in zip(comp, comp[1:]):
            out.append(_signed(rng, [a, b]))
            weights.append(rng.randint(1, max_weight))
        for _ in range(clauses_per_component):
            vs = set(rng.sample(comp, rng.randint(1, len(comp))))
            if nbrs:
                vs |= set(rng.sample(nbrs, rng.randint(0, len(nbrs))))
            out.append(_signed(rng, sorted(vs)))
            weights.append(rng.randint(1, max_weight))
    for _ in range(rng.randint(0, 2)):
        if m:
            out.append(_signed(rng, sorted(rng.sample(range(1, m + 1), rng.randint(1, min(m, 2))))))
            weights.append(rng.randint(1, max_weight))
    cert = StructureCertificate.hub(range(1, m + 1), comps, sigma, delta)
    return CnfInstance.from_ints(n, out, weights, certificate=cert)


def _backdoor_cnf(rng: random.Random, b: int, n: int, clauses: int, horn: bool) -> CnfInstance:
    out = []
    others = list(range(b + 1, b + n + 1))
    for _ in range(clauses):
        xs = rng.sample(others, rng.randint(0, min(n, 3 if horn else 2)))
        if horn:
            lits = [-v for v in xs]
            if xs and rng.random() < 0.6:
                lits[0] = -lits[0]
        else:
            lits = _signed(rng, xs)
        lits += _signed(rng, rng.sample(range(1, b + 1), rng.randint(0, min(b, 2))))
        if not lits:
            lits = _signed(rng, [rng.randint(1, b + n)])
        out.append(lits)
    base = BaseClass.HORN if horn else BaseClass.TWO_SAT
    return CnfInstance.from_ints(b + n, out, certificate=StructureCertificate.backdoor(range(1, b + 1), base))


def cnf_2sat_backdoor(rng: random.Random, b: int = 3, n: int = 4, clauses: int = 8) -> CnfInstance:
    """Backdoor ``1..b``; each clause has at most two literals outside it."""
    return _backdoor_cnf(rng, b, n, clauses, horn=False)


def cnf_horn_backdoor(rng: random.Random, b: int = 3, n: int = 5, clauses: int = 10) -> CnfInstance:
    """Backdoor ``1..b``; each clause has at most one positive literal outside it."""
    return _backdoor_cnf(rng, b, n, clauses, horn=True)


def cnf_pw_modulator(rng: random.Random, m: int = 3, rest: int = 6, width: int = 2, clauses: int = 10,
                     arity: int = 3) -> CnfInstance:
    """Modulator ``1..m``; the others sit on a path and clauses use a window of ``width+1`` of them."""
    mod = list(range(1, m + 1))
    others = list(range(m + 1, m + rest + 1))
    win = width + 1
    out = []
    for _ in range(clauses):
        size = rng.randint(1, arity)
        vs = set()
        if others:
            i = rng.randrange(max(1, len(others) - win + 1))
            window = others[i:i + win]
            vs |= set(rng.sample(window, min(len(window), rng.randint(1, size))))
        room = size - len(vs)
        if mod and room > 0:
            vs |= set(rng.sample(mod, min(m, rng.randint(0, room))))
        if not vs:
            vs = {rng.randint(1, m + rest)}
        out.append(_signed(rng, sorted(vs)))
    bags = [others[i:i + win] for i in range(max(1, len(others) - win + 1))] if others else []
    cert = StructureCertificate.path_decomposition(mod, bags, min(width, max(len(others) - 1, 0)))
    return CnfInstance.from_ints(m + rest, out, certificate=cert)


def circuit_depth_bounded(rng: random.Random, n: int = 5, depth: int = 4, width: int = 4,
                          basis: str = "and-or-not") -> Circuit:
    """Layered circuit of depth at most ``depth`` over inputs ``1..n``.

    ``basis`` is ``and-or-not`` or ``and-not`` (fan-in 2 everywhere).
    """
    b = CircuitBuilder(n)
    layers = [[b.input(i) for i in range(1, n + 1)]]
    kinds = ["and", "not"] if basis == "and-not" else ["and", "or", "not"]
    for d in range(depth):
        pool = [g for layer in layers for g in layer]
        fresh = []
        for _ in range(width):
            kind = rng.choice(kinds)
            a = rng.choice(layers[-1])
            if kind == "not":
                fresh.append(b.not_(a))
            else:
                other = rng.choice(pool)
                fresh.append(b.and_(a, other) if kind == "and" else b.or_(a, other))
        layers.append(fresh)
    return b.build(rng.choice(layers[-1]), fan_in_bound=2)


def annotated_dag(rng: random.Random, n: int = 6, m: int = 4, density: float = 0.4,
                  annotated: float = 0.6) -> AnnotatedDag:
    """Random DAG on ``n`` vertices (shuffled), arcs annotated with probability ``annotated``."""
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                lit = Literal(rng.randint(1, m), rng.random() < 0.5) if m and rng.random() < annotated else None
                arcs.append((u, v, lit))
    perm = list(range(n))
    rng.shuffle(perm)
    arcs = [(perm[u], perm[v], lit) for u, v, lit in arcs]
    return AnnotatedDag(n, tuple(arcs), perm[0], perm[n - 1] if n > 1 else perm[0], m)


def graph(rng: random.Random, n: int = 7, p: float = 0.4, modulator: int = 0, depth: int = 3,
          directed: bool = False):
    """Random graph; with ``modulator > 0`` vertices ``1..modulator`` are a tree-depth modulator.

    Returns ``(graph, certificate)``; the certificate is None unless a modulator was asked for.
    """
    if directed:
        edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
        return SimpleGraph.from_edges(n, edges, directed=True), None
    if not modulator:
        edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
        return SimpleGraph.from_edges(n, edges), None
    mod = list(range(1, min(modulator, n) + 1))
    others = list(range(len(mod) + 1, n + 1))
    parent = _forest(rng, others, depth)
    edges = set()
    for u in mod:
        for v in range(1, n + 1):
            if v != u and rng.random() < p:
                edges.add((min(u, v), max(u, v)))
    for v in others:
        for u in _chain(parent, parent[v]):
            if rng.random() < p:
                edges.add((min(u, v), max(u, v)))
    levels = forest_levels(parent) or {}
    cert = StructureCertificate.tree_depth(mod, parent, max(levels.values(), default=0))
    return SimpleGraph.from_edges(n, sorted(edges)), cert


_MAKERS: Dict[str, Callable[..., Any]] = {
    "cnf-td-modulator": cnf_td_modulator,
    "cnf-hub": cnf_hub,
    "cnf-2sat-backdoor": cnf_2sat_backdoor,
    "cnf-horn-backdoor": cnf_horn_backdoor,
    "cnf-pw-modulator": cnf_pw_modulator,
    "circuit-depth-bounded": circuit_depth_bounded,
    "annotated-dag": annotated_dag,
    "graph": graph,
}

_DEFAULT_QUESTION = {
    "cnf-td-modulator": "sat",
    "cnf-hub": "maxsat",
    "cnf-2sat-backdoor": "sat-projected",
    "cnf-horn-backdoor": "sat-projected",
    "cnf-pw-modulator": "sat",
    "circuit-depth-bounded": "circuit",
    "annotated-dag": "ann-reach",
    "graph": "coloring",
}


def gen_planted(kind: str, params: Optional[Mapping[str, Any]] = None, seed: int = 0) -> Instance:
    """Deterministic instance of ``kind``; structural ``params`` go to the generator.

    ``question`` in ``params`` overrides the default question; the remaining
    question parameters (``q``, ``k``, ``t``, ...) are taken from ``params`` too.
    """
    if kind not in _MAKERS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    params = dict(params or {})
    question = params.pop("question", _DEFAULT_QUESTION[kind])
    qparams = {key: params.pop(key) for key in ("q", "k", "t", "r", "target") if key in params}
    rng = random.Random(seed)
    try:
        made = _MAKERS[kind](rng, **params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {kind}: {exc}") from None
    cert = None
    if kind == "graph":
        made, cert = made
    if question == "coloring":
        qparams.setdefault("q", 3)
    if question == "sat-projected" and isinstance(made, CnfInstance):
        qparams["keep"] = sorted(made.certificate.modulator) if made.certificate else []
    if question in ("weight-k", "dominating"):
        qparams.setdefault("k", 2)
    if question == "degdel":
        qparams.setdefault("r", 2)
        qparams.setdefault("k", 1)
    if question == "maxsat-threshold":
        qparams.setdefault("t", 1)
    trail = f"gen {kind} seed={seed}" + "".join(f" {k}={v}" for k, v in sorted(params.items()))
    return Instance(question, made, qparams, cert, (trail,))


def formula(rng: random.Random, n: int = 4, leaves: int = 12) -> Circuit:
    """Random read-many formula with ``leaves`` literal leaves over ``1..n``."""
    nodes = [fm.lit(rng.randint(1, n), rng.random() < 0.5) for _ in range(leaves)]
    while len(nodes) > 1:
        i = rng.randrange(len(nodes) - 1)
        nodes[i:i + 2] = [(rng.choice(["and", "or"]), (nodes[i], nodes[i + 1]))]
    b = CircuitBuilder(n)
    return b.build(fm.emit(b, nodes[0]))


def random_cnf(rng: random.Random, n: int = 4, clauses: int = 6, arity: int = 3, max_weight: int = 1) -> CnfInstance:
    """Unstructured CNF over ``1..n`` with clause sizes in ``1..arity``."""
    out = [_signed(rng, rng.sample(range(1, n + 1), rng.randint(1, min(n, arity)))) for _ in range(clauses)]
    return CnfInstance.from_ints(n, out, [rng.randint(1, max_weight) for _ in out])
