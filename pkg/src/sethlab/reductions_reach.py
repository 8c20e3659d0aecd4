"""2-SAT backdoors, log-pathwidth modulators and annotated (non-)reachability.

Annotated DAGs number their annotation variables ``1..m``. When a reduction
starts from a CNF, annotation variable ``i`` stands for the ``i``-th smallest
modulator (or backdoor) variable, and in the reverse direction the CNF keeps
the annotation variables as ``1..m`` and puts new variables after them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .core import (AnnotatedDag, BaseClass, CertKind, Circuit, CircuitBuilder, Clause, CnfInstance,
                   InvalidInstance, Literal, StructureCertificate, verify_certificate)


class DagBuilder:
    """Vertex/arc accumulator; ``path`` subdivides so every arc carries at most one literal."""

    def __init__(self, num_annotation_vars: int):
        self.m = num_annotation_vars
        self.count = 0
        self.arcs: List[Tuple[int, int, Optional[Literal]]] = []
        self.names: Dict[int, str] = {}

    def vertex(self, name: Optional[str] = None) -> int:
        self.count += 1
        if name is not None:
            self.names[self.count - 1] = name
        return self.count - 1

    def arc(self, u: int, v: int, lit: Optional[Literal] = None) -> None:
        self.arcs.append((u, v, lit))

    def path(self, u: int, v: int, lits: Sequence[Literal]) -> None:
        if not lits:
            self.arc(u, v)
            return
        cur = u
        for lit in lits[:-1]:
            nxt = self.vertex()
            self.arc(cur, nxt, lit)
            cur = nxt
        self.arc(cur, v, lits[-1])

    def build(self, source: int, sink: int) -> AnnotatedDag:
        return AnnotatedDag(self.count, tuple(self.arcs), source, sink, self.m, self.names)


def _backdoor(cnf: CnfInstance, base: BaseClass) -> List[int]:
    cert = cnf.certificate
    if cert is None or cert.kind is not CertKind.BACKDOOR or cert.base is not base or not verify_certificate(cnf):
        raise InvalidInstance(f"a verified {base.value} backdoor certificate is required")
    return sorted(cert.modulator)


# ------------------------------------------------------ 2-SAT <-> non-reach

def annnonreach_to_2satbackdoor(d: AnnotatedDag) -> CnfInstance:
    """Variables ``1..m`` are the annotations, ``m+1+v`` stands for vertex ``v``."""
    d.topological_order()
    m = d.num_annotation_vars

    def x(v: int) -> Literal:
        return Literal(m + 1 + v, True)

    clauses = []
    for u, v, lit in d.arcs:
        lits = (x(u).negate(), x(v)) + (() if lit is None else (lit.negate(),))
        clauses.append(Clause(lits))
    clauses += [Clause((x(d.source),)), Clause((x(d.sink).negate(),))]
    cert = StructureCertificate.backdoor(range(1, m + 1), BaseClass.TWO_SAT)
    return CnfInstance(m + d.num_vertices, tuple(clauses), cert)


def _split_clause(c: Clause, backdoor: Set[int]) -> Optional[Tuple[List[Literal], List[Literal]]]:
    """(non-backdoor literals, backdoor literals) with duplicates removed; None for tautologies."""
    if c.is_tautology():
        return None
    lits = list(dict.fromkeys(c.literals))
    return [l for l in lits if l.variable not in backdoor], [l for l in lits if l.variable in backdoor]


def twosatbackdoor_to_annnonreach(cnf: CnfInstance) -> AnnotatedDag:
    """No source-sink path under an assignment to the backdoor iff it extends to a model.

    Builds the layered implication DAG (2n copies) twice per non-backdoor
    variable and chains ``x_i -> not x_i -> x_i`` through the pair.
    """
    backdoor = _backdoor(cnf, BaseClass.TWO_SAT)
    bset = set(backdoor)
    ann = {v: i + 1 for i, v in enumerate(backdoor)}
    xs = [v for v in range(1, cnf.num_variables + 1) if v not in bset] or [cnf.num_variables + 1]
    xi = {v: i for i, v in enumerate(xs)}
    n = len(xs)

    def node(l: Literal) -> int:
        return 2 * xi[l.variable] + (0 if l.polarity else 1)

    implications: List[Tuple[int, int, Tuple[Literal, ...]]] = []
    for c in cnf.clauses:
        split = _split_clause(c, bset)
        if split is None:
            continue
        outside, inside = split
        guard = tuple(Literal(ann[l.variable], not l.polarity) for l in inside)
        if len(outside) == 2:
            a, b = outside
            implications.append((node(a.negate()), node(b), guard))
            implications.append((node(b.negate()), node(a), guard))
        elif len(outside) == 1:
            a = outside[0]
            implications.append((node(a.negate()), node(a), guard))
        else:
            p = Literal(xs[0], True)
            implications.append((node(p.negate()), node(p), guard))
            implications.append((node(p), node(p.negate()), guard))
    copies = 2 * n
    b = DagBuilder(len(backdoor))
    s = b.vertex("s")
    t = b.vertex("t")

    def implication_dag() -> List[List[int]]:
        layer = [[b.vertex() for _ in range(2 * n)] for _ in range(copies)]
        for c in range(copies):
            for later in range(c + 1, copies):
                for lv in range(2 * n):
                    b.arc(layer[c][lv], layer[later][lv])
        for c in range(copies - 1):
            for u, v, guard in implications:
                b.path(layer[c][u], layer[c + 1][v], guard)
        return layer

    for i in range(n):
        d0 = implication_dag()
        d1 = implication_dag()
        pos, neg = 2 * i, 2 * i + 1
        b.arc(s, d0[0][pos])
        b.arc(d0[-1][neg], d1[0][neg])
        b.arc(d1[-1][pos], t)
    return b.build(s, t)


# ---------------------------------------------------- log-pathwidth <-> reach

MAX_BAG_BITS = 12


def logpw_sat_to_annreach(cnf: CnfInstance) -> AnnotatedDag:
    """One source-sink path per model for each modulator assignment.

    Each bag is repeated so that every clause gets a private bag copy; bag
    copy ``i`` contributes vertices ``v[i,sigma,1]`` and ``v[i,sigma,2]``.
    """
    cert = cnf.certificate
    if cert is None or cert.kind is not CertKind.PATH_DECOMPOSITION or not verify_certificate(cnf):
        raise InvalidInstance("a verified path decomposition certificate is required")
    modulator = sorted(cert.modulator)
    mset = set(modulator)
    ann = {v: i + 1 for i, v in enumerate(modulator)}
    bags = [tuple(sorted(bag)) for bag in cert.bags] or [()]
    if max(len(bag) for bag in bags) > MAX_BAG_BITS:
        raise InvalidInstance(f"bag with more than {MAX_BAG_BITS} variables")
    mapped: List[List[Clause]] = [[] for _ in bags]
    for c in cnf.clauses:
        rest = c.variables - mset
        at = next(i for i, bag in enumerate(bags) if rest <= set(bag))
        mapped[at].append(c)
    seq: List[Tuple[Tuple[int, ...], Optional[Clause]]] = []
    for bag, clauses in zip(bags, mapped):
        if not clauses:
            seq.append((bag, None))
        for c in clauses:
            seq.append((bag, c))
    b = DagBuilder(len(modulator))
    s = b.vertex("s")
    t = b.vertex("t")
    prev: List[Tuple[Dict[int, bool], int]] = []
    prev_bag: Tuple[int, ...] = ()
    for i, (bag, clause) in enumerate(seq):
        shared = [v for v in bag if v in prev_bag]
        by_key: Dict[Tuple[bool, ...], List[int]] = {}
        for psig, pv2 in prev:
            by_key.setdefault(tuple(psig[v] for v in shared), []).append(pv2)
        cur = []
        for values in product((False, True), repeat=len(bag)):
            sigma = dict(zip(bag, values))
            v1, v2 = b.vertex(), b.vertex()
            if clause is None or any(l.variable in sigma and sigma[l.variable] == l.polarity
                                     for l in clause.literals):
                b.arc(v1, v2)
            else:
                for l in clause.literals:
                    if l.variable in mset:
                        b.arc(v1, v2, Literal(ann[l.variable], l.polarity))
            if i == 0:
                b.arc(s, v1)
            for pv2 in by_key.get(tuple(sigma[v] for v in shared), ()):
                b.arc(pv2, v1)
            cur.append((sigma, v2))
        prev, prev_bag = cur, bag
    for _, v2 in prev:
        b.arc(v2, t)
    return _subdivide_parallel(b.build(s, t))


def _subdivide_parallel(d: AnnotatedDag) -> AnnotatedDag:
    """Replace repeated (u, v) pairs by two-arc paths so the result is a simple digraph."""
    seen: Set[Tuple[int, int]] = set()
    arcs = []
    count = d.num_vertices
    for u, v, lit in d.arcs:
        if (u, v) in seen:
            mid = count
            count += 1
            arcs.append((u, mid, lit))
            arcs.append((mid, v, None))
        else:
            seen.add((u, v))
            arcs.append((u, v, lit))
    return AnnotatedDag(count, tuple(arcs), d.source, d.sink, d.num_annotation_vars, d.names)


def annreach_to_logpw_sat(d: AnnotatedDag) -> CnfInstance:
    """Satisfiable under an annotation assignment iff the sink is reachable.

    Vertices are padded to ``N = 2^b``; group ``i`` of ``b`` variables spells the
    ``i``-th vertex of the walk, for ``i = 1..N``.
    """
    d.topological_order()
    m = d.num_annotation_vars
    bits = max(1, math.ceil(math.log2(max(d.num_vertices, 2))))
    N = 1 << bits

    def var(i: int, j: int) -> int:
        return m + i * bits + j + 1

    def differs(i: int, code: int) -> List[Literal]:
        return [Literal(var(i, j), not bool(code >> (bits - 1 - j) & 1)) for j in range(bits)]

    arcs: Dict[Tuple[int, int], Set[Optional[Literal]]] = {}
    for u, v, lit in d.arcs:
        arcs.setdefault((u, v), set()).add(lit)
    clauses: List[Clause] = []
    for j in range(bits):
        clauses.append(Clause((Literal(var(0, j), bool(d.source >> (bits - 1 - j) & 1)),)))
        clauses.append(Clause((Literal(var(N - 1, j), bool(d.sink >> (bits - 1 - j) & 1)),)))
    for i in range(N - 1):
        for u in range(N):
            for v in range(N):
                if u == v:
                    continue
                lits = arcs.get((u, v))
                if lits is not None and None in lits:
                    continue
                extra = sorted(lits, key=lambda l: (l.variable, l.polarity)) if lits else []
                if any(l.negate() in lits for l in extra):
                    continue
                clauses.append(Clause(tuple(differs(i, u) + differs(i + 1, v) + extra)))
    bags = [{var(i, j) for j in range(bits)} | {var(i + 1, j) for j in range(bits)} for i in range(N - 1)]
    cert = StructureCertificate.path_decomposition(range(1, m + 1), bags, 2 * bits - 1)
    return CnfInstance(m + N * bits, tuple(clauses), cert, (f"{bits} bits per walk position, {N} positions",))


# ----------------------------------------------------------- complement

@dataclass
class _Layered:
    """The n-layer unrolling of the input with stay arcs and the final fan-out from s."""

    n: int
    source: int
    arcs: Dict[Tuple[int, int, int], Set[Optional[Literal]]] = field(default_factory=dict)
    out: Dict[Tuple[int, int], List[Tuple[int, Optional[Literal]]]] = field(default_factory=dict)

    def add(self, layer: int, u: int, v: int, lit: Optional[Literal]) -> None:
        self.arcs.setdefault((layer, u, v), set()).add(lit)
        self.out.setdefault((layer, u), []).append((v, lit))


def _unroll(d: AnnotatedDag) -> _Layered:
    n = d.num_vertices
    g = _Layered(n, d.source)
    for i in range(1, n):
        for v in range(n):
            g.add(i, v, v, None)
        for u, v, lit in d.arcs:
            g.add(i, u, v, lit)
    for v in range(n):
        if v != d.sink:
            g.add(n - 1, d.source, v, None)
    return g


class _ReachCopies:
    """Copies of the first i layers restricted to vertices on some structural path to a target."""

    def __init__(self, g: _Layered):
        self.g = g
        self.fwd: List[Set[int]] = [set(), {g.source}]
        for i in range(1, g.n):
            nxt = set()
            for u in self.fwd[i]:
                for v, _ in g.out.get((i, u), ()):
                    nxt.add(v)
            self.fwd.append(nxt)
        self.cache: Dict[Tuple[int, int], Optional[Tuple[List[Tuple[int, int]], List]]] = {}

    def shape(self, layer: int, target: int):
        key = (layer, target)
        if key not in self.cache:
            if target not in self.fwd[layer]:
                self.cache[key] = None
            else:
                keep = {(layer, target)}
                arcs = []
                frontier = {target}
                for i in range(layer - 1, 0, -1):
                    cur = set()
                    for u in self.fwd[i]:
                        for v, lit in self.g.out.get((i, u), ()):
                            if v in frontier:
                                cur.add(u)
                                arcs.append(((i, u), (i + 1, v), lit))
                    keep |= {(i, u) for u in cur}
                    frontier = cur
                self.cache[key] = (sorted(keep), arcs)
        return self.cache[key]

    def copy(self, b: DagBuilder, layer: int, target: int) -> Optional[Tuple[int, int]]:
        """(input, output) of a fresh copy, or None when no path can exist."""
        sh = self.shape(layer, target)
        if sh is None:
            return None
        keep, arcs = sh
        ids = {key: b.vertex() for key in keep}
        for a, c, lit in arcs:
            b.arc(ids[a], ids[c], lit)
        return ids[(1, self.g.source)], ids[(layer, target)]


def complement_vertex_bound(n: int, multiplicity: int = 1) -> int:
    """Upper bound on the vertices built by ``complement_annotated`` for n input vertices.

    The dominant term is n^2 counters times n^2 (alpha, beta) pairs times
    (n+1)^2 (gamma, delta) pairs times an n^2-vertex reachability copy: O(n^8).
    """
    checker = (n + 1) ** 2 + n * n * (n * n + (n + 1) ** 2 + (n + 1) ** 2 * (n * n + multiplicity))
    return 2 + n * n + n * n * checker


def complement_annotated(d: AnnotatedDag) -> AnnotatedDag:
    """For every annotation assignment: a path in the output iff none in the input.

    Counts reachable vertices layer by layer in the n-layer unrolling; a
    vertex is certified unreachable by listing the counted vertices of the
    previous layer that have no usable arc into it.
    """
    d.topological_order()
    n = d.num_vertices
    b = DagBuilder(d.num_annotation_vars)
    s2 = b.vertex("s2")
    t2 = b.vertex("t2")
    if d.source == d.sink:
        return b.build(s2, t2)
    g = _unroll(d)
    copies = _ReachCopies(g)
    cnt = {(i, j): b.vertex(f"s{i},{j}") for i in range(1, n + 1) for j in range(1, n + 1)}
    b.arc(s2, cnt[(1, 1)])
    b.arc(cnt[(n, n - 1)], t2)
    for i in range(1, n):
        for j in range(1, n + 1):
            x = {(a, be): b.vertex() for a in range(n + 1) for be in range(a + 1)}
            b.arc(cnt[(i, j)], x[(0, 0)])
            for be in range(1, n + 1):
                b.arc(x[(n, be)], cnt[(i + 1, be)])
            for a in range(n):
                v = a
                for be in range(a + 1):
                    adj = copies.copy(b, i + 1, v)
                    if adj is not None:
                        b.arc(x[(a, be)], adj[0])
                        b.arc(adj[1], x[(a + 1, be + 1)])
                    _non_adj(b, copies, g, i, j, v, x[(a, be)], x[(a + 1, be)])
    return b.build(s2, t2)


def _non_adj(b: DagBuilder, copies: _ReachCopies, g: _Layered, i: int, j: int, v: int, entry: int, exit_: int):
    n = g.n
    y = {(c, dl): b.vertex() for c in range(n + 1) for dl in range(min(c, j) + 1)}
    b.arc(entry, y[(0, 0)])
    if (n, j) not in y:
        return
    b.arc(y[(n, j)], exit_)
    for c in range(n):
        for dl in range(min(c, j) + 1):
            b.arc(y[(c, dl)], y[(c + 1, dl)])
        u = c
        lits = g.arcs.get((i, u, v), set())
        if None in lits:
            continue
        guard = sorted((l.negate() for l in lits), key=lambda l: (l.variable, l.polarity))
        for dl in range(min(c, j - 1) + 1):
            adj = copies.copy(b, i, u)
            if adj is None:
                continue
            b.arc(y[(c, dl)], adj[0])
            b.path(adj[1], y[(c + 1, dl + 1)], guard)


# ---------------------------------------------------- 2-SAT backdoor circuit

DEFAULT_GATE_BUDGET = 3_000_000


def twosatbackdoor_to_circuit(cnf: CnfInstance, budget: int = DEFAULT_GATE_BUDGET) -> Circuit:
    """Exhaustive resolution on the non-backdoor part, unrolled for 4n^2 rounds.

    Inputs ``1..b`` are the backdoor variables in increasing order. Gate
    ``x[t, C]`` means clause ``C`` has been derived within ``t`` rounds; the
    output is the negation of ``x[4n^2, empty]`` so that it is satisfiable
    exactly when ``cnf`` is.
    """
    backdoor = _backdoor(cnf, BaseClass.TWO_SAT)
    bset = set(backdoor)
    idx = {v: i + 1 for i, v in enumerate(backdoor)}
    xs = sorted({l.variable for c in cnf.clauses for l in c.literals} - bset)
    n = len(xs)
    lits = [Literal(v, p) for v in xs for p in (True, False)]
    universe: List[frozenset] = [frozenset()] + [frozenset([l]) for l in lits]
    for a in range(len(lits)):
        for c in range(a + 1, len(lits)):
            if lits[a].variable != lits[c].variable:
                universe.append(frozenset([lits[a], lits[c]]))
    rounds = 4 * n * n
    producers: Dict[frozenset, List[Tuple[frozenset, frozenset]]] = {C: [] for C in universe}
    for ia, p in enumerate(universe):
        for q in universe[ia + 1:]:
            for l in p:
                if l.negate() in q:
                    r = (p - {l}) | (q - {l.negate()})
                    if r in producers:
                        producers[r].append((p, q))
    estimate = len(universe) * (rounds + 1) * (1 + sum(len(v) for v in producers.values()) / max(1, len(universe)))
    if estimate > budget:
        raise InvalidInstance(f"about {int(estimate)} gates needed, budget {budget}")
    b = CircuitBuilder(len(backdoor))
    for v, i in idx.items():
        b.names[b.input(i)] = f"x{v}"
    neg_input: Dict[int, int] = {}

    def backdoor_false(l: Literal) -> int:
        g = b.input(idx[l.variable])
        if l.polarity:
            if g not in neg_input:
                neg_input[g] = b.not_(g)
            return neg_input[g]
        return g

    initial: Dict[frozenset, List[int]] = {C: [] for C in universe}
    for c in cnf.clauses:
        if any(l.negate() in c.literals for l in c.literals if l.variable not in bset):
            continue
        outside = frozenset(l for l in c.literals if l.variable not in bset)
        inside = sorted({l for l in c.literals if l.variable in bset}, key=lambda l: (l.variable, l.polarity))
        initial[outside].append(b.and_tree([backdoor_false(l) for l in inside]))
    cur = {C: b.or_tree(initial[C]) for C in universe}
    for t in range(rounds):
        nxt = {}
        for C in universe:
            terms = [cur[C]] + [b.and_(cur[p], cur[q]) for p, q in producers[C]]
            nxt[C] = b.or_tree(terms)
        cur = nxt
    out = b.not_(cur[frozenset()], name="sat")
    return b.build(out)

