"""Graph problems: q-colouring, Max-Cut, k-Neighborhood-Cut and degenerate deletion."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .core import (AnnotatedDag, CertKind, Circuit, CircuitBuilder, Clause, CnfInstance, InvalidInstance, Literal,
                   SimpleGraph, StructureCertificate, verify_certificate,
                   verify_path_decomposition, verify_tree_depth_forest)
from .reductions_circuit import _bits, _decoder, _neg, balanced_groups, threshold_at_least
from .reductions_modulator import reduce_arity_to_3
from .reductions_reach import DagBuilder


# ------------------------------------------------------------ parameters

def choose_gamma_rho(q: int, epsilon: float, mode: str = "treedepth") -> Tuple[int, int]:
    """Group parameters ``(gamma, rho)`` for the colouring reductions.

    ``treedepth``: smallest ``rho > 4 log q / eps`` with an integer ``gamma``
    such that ``2^((1-eps/2) rho) <= q^gamma <= 2^rho`` (largest such gamma).
    ``pathwidth``: smallest ``gamma >= 2 / (eps log q)`` with an integer ``rho``
    such that ``q^((1-eps/2) gamma) < 2^rho < q^gamma`` (largest such rho).
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    lq = math.log2(q)
    if mode == "treedepth":
        rho = math.floor(4 * lq / epsilon) + 1
        while True:
            gamma = 0
            while q ** (gamma + 1) <= 2 ** rho:
                gamma += 1
            if gamma >= 1 and (1 - epsilon / 2) * rho <= gamma * lq:
                return gamma, rho
            rho += 1
    if mode == "pathwidth":
        gamma = max(1, math.ceil(2 / (epsilon * lq)))
        while True:
            rho = 0
            while 2 ** (rho + 1) < q ** gamma:
                rho += 1
            if rho >= 1 and (1 - epsilon / 2) * gamma * lq < rho:
                return gamma, rho
            gamma += 1
    raise ValueError(f"unknown mode {mode!r}")


def _code_literals(bits: Sequence[int], code: int) -> List[Literal]:
    """Literals of ``bits`` (MSB first) whose disjunction says "not equal to ``code``"."""
    w = len(bits)
    return [Literal(v, not (code >> (w - 1 - i) & 1)) for i, v in enumerate(bits)]


def _proper_colorings(vertices: Sequence[int], adj: Mapping[int, set], q: int) -> List[Tuple[int, ...]]:
    out = []
    for cols in product(range(1, q + 1), repeat=len(vertices)):
        col = dict(zip(vertices, cols))
        if all(col[u] != col[v] for u in vertices for v in adj[u] if v in col):
            out.append(cols)
    return out


# ---------------------------------------------------- colouring -> SAT (td)

def qcoloring_to_sat_td(g: SimpleGraph, cert: StructureCertificate, q: int, gamma: int, rho: int) -> CnfInstance:
    """CNF satisfiable iff ``g`` is q-colourable, with a tree-depth modulator of size ``ceil(m/gamma)*rho``.

    Non-modulator vertex ``v`` gets variables ``x[v,1..q]`` (vertices in
    increasing order). The modulator is cut into ``ceil(m/gamma)`` balanced
    groups; the proper colourings of each group, in lexicographic order, are
    written in binary on ``rho`` fresh variables and unused codes are excluded.
    """
    if g.directed:
        raise InvalidInstance("colouring needs an undirected graph")
    if cert.kind is not CertKind.TREE_DEPTH_FOREST or not verify_tree_depth_forest(g, cert):
        raise InvalidInstance("a verified tree-depth modulator certificate is required")
    if q < 1 or gamma < 1 or rho < 1:
        raise ValueError("q, gamma and rho must be positive")
    if q ** gamma > 2 ** rho:
        raise InvalidInstance(f"q^gamma = {q ** gamma} exceeds 2^rho = {2 ** rho}")
    adj = g.adjacency()
    mod = sorted(cert.modulator)
    rest = [v for v in g.vertices if v not in cert.modulator]
    xvar = {v: {c: i * q + c for c in range(1, q + 1)} for i, v in enumerate(rest)}
    nxt = len(rest) * q
    tau = math.ceil(len(mod) / gamma) if mod else 0
    groups = balanced_groups(mod, tau) if tau else []
    ybits: List[List[int]] = []
    for _ in groups:
        ybits.append(list(range(nxt + 1, nxt + rho + 1)))
        nxt += rho
    group_of = {v: i for i, grp in enumerate(groups) for v in grp}
    colorings = [_proper_colorings(grp, adj, q) for grp in groups]
    clauses: Dict[FrozenSet[Literal], Clause] = {}

    def add(lits: Iterable[Literal]) -> None:
        lits = tuple(dict.fromkeys(lits))
        clauses.setdefault(frozenset(lits), Clause(lits))

    for v in rest:
        add(Literal(xvar[v][c], True) for c in range(1, q + 1))
    for i, cols in enumerate(colorings):
        for code in range(len(cols), 2 ** rho):
            add(_code_literals(ybits[i], code))
    for u, v, _ in g.edges:
        if u in group_of and v not in group_of:
            u, v = v, u
        if u not in group_of:
            if v not in group_of:
                for c in range(1, q + 1):
                    add((Literal(xvar[u][c], False), Literal(xvar[v][c], False)))
            else:
                j = group_of[v]
                pos = groups[j].index(v)
                for code, col in enumerate(colorings[j]):
                    add([Literal(xvar[u][col[pos]], False)] + _code_literals(ybits[j], code))
            continue
        i, j = group_of[u], group_of[v]
        if i == j:
            continue
        pu, pv = groups[i].index(u), groups[j].index(v)
        for a, ca in enumerate(colorings[i]):
            for b, cb in enumerate(colorings[j]):
                if ca[pu] == cb[pv]:
                    add(_code_literals(ybits[i], a) + _code_literals(ybits[j], b))
    modulator = [y for bits in ybits for y in bits]
    assert len(modulator) == tau * rho
    parent: Dict[int, int] = {}
    old_parent = cert.parent_map
    for v in rest:
        p = old_parent.get(v, 0)
        parent[xvar[v][1]] = xvar[p][q] if p else 0
        for c in range(2, q + 1):
            parent[xvar[v][c]] = xvar[v][c - 1]
    new_cert = StructureCertificate.tree_depth(modulator, parent, cert.depth * q)
    return CnfInstance(nxt, tuple(clauses.values()), new_cert)


# --------------------------------------------------------------- max-cut

def maxcut_to_maxsat(g: SimpleGraph, cert: Optional[StructureCertificate] = None) -> Tuple[CnfInstance, int]:
    """Weighted CNF whose optimum is ``offset + maxcut(g)``; returns ``(cnf, offset)``.

    Vertex ``v`` becomes variable ``v``; an edge of weight ``w`` yields
    ``(x_u or x_v)`` and ``(not x_u or not x_v)``, both of weight ``w``.
    """
    if g.directed:
        raise InvalidInstance("max-cut needs an undirected graph")
    clauses = []
    for u, v, w in g.edges:
        clauses.append(Clause((Literal(u, True), Literal(v, True)), w))
        clauses.append(Clause((Literal(u, False), Literal(v, False)), w))
    offset = sum(w for _, _, w in g.edges)
    return CnfInstance(g.vertex_count, tuple(clauses), cert), offset


@dataclass(frozen=True)
class _CutGadget:
    edges: List[Tuple[int, int, int]]
    components: List[Set[int]]
    count: int


def _maxcut_gadget(cnf: CnfInstance) -> Tuple[_CutGadget, int, int]:
    n = cnf.num_variables
    k = max(1, cnf.max_arity)
    x0 = n + 1
    count = n + 1
    edges: List[Tuple[int, int, int]] = []
    comps: List[Set[int]] = []
    m = 0
    for c in cnf.clauses:
        for _ in range(c.weight):
            m += 1
            p = list(range(count + 1, count + 4 * k + 1))
            count += 4 * k
            comp = set(p)
            ring = [x0] + p + [x0]
            for a, b in zip(ring, ring[1:]):
                edges.append((a, b, 8 * k))
            for i, lit in enumerate(c.literals):
                ends = (4 * i + 2, 4 * i + 3) if lit.polarity else (4 * i + 1, 4 * i + 2)
                for e in ends:
                    edges.append((p[e - 1], lit.variable, 1))
            for _ in range(k - len(c.literals)):
                count += 1
                comp.add(count)
                edges.append((p[0], count, 1))
            comps.append(comp)
    return _CutGadget(edges, comps, count), k, m


def maxsat_to_maxcut(cnf: CnfInstance, t: int, weighted: bool = False, with_hub: bool = False):
    """Graph and target such that some assignment satisfies ``>= t`` clauses iff ``maxcut >= target``.

    Variables keep their numbers and ``x0 = n+1``. Each clause gets a cycle of
    ``4k+1`` edges of weight ``8k`` through ``x0``; literal ``i`` (from 0) is
    joined to ``p[4i+2], p[4i+3]`` if positive and ``p[4i+1], p[4i+2]`` if
    negative, and ``k - |C|`` leaves hang on ``p[1]``. The target is
    ``32 k^2 m + k m + t``. Unless ``weighted``, each heavy edge of weight ``w``
    becomes ``w`` parallel paths of length 3 and the target grows by ``2w``.
    Clause weights are read as multiplicities. With ``with_hub`` a third value,
    a hub certificate over the variables and ``x0``, is returned.
    """
    gad, k, m = _maxcut_gadget(cnf)
    target = 32 * k * k * m + k * m + t
    edges = gad.edges
    count = gad.count
    comps = [set(c) for c in gad.components]
    owner = {v: i for i, c in enumerate(comps) for v in c}
    if not weighted:
        flat = []
        for u, v, w in edges:
            if w == 1:
                flat.append((u, v, 1))
                continue
            i = owner.get(u, owner.get(v))
            for _ in range(w):
                a, b = count + 1, count + 2
                count += 2
                flat += [(u, a, 1), (a, b, 1), (b, v, 1)]
                comps[i] |= {a, b}
            target += 2 * w
        edges = flat
    g = SimpleGraph(count, tuple(edges))
    if not with_hub:
        return g, target
    sigma = max((len(c) for c in comps), default=0)
    hub = StructureCertificate.hub(range(1, cnf.num_variables + 2), comps, sigma, k + 1)
    return g, target, hub


# ------------------------------------------------- SAT (pw) -> colouring

@dataclass
class _ListGraph:
    lists: List[FrozenSet[int]]
    edges: Set[Tuple[int, int]]

    def vertex(self, allowed: Iterable[int]) -> int:
        self.lists.append(frozenset(allowed))
        return len(self.lists)

    def edge(self, u: int, v: int) -> None:
        self.edges.add((min(u, v), max(u, v)))


def _weak_edge(lg: _ListGraph, q: int, u: int, v: int, a: int, b: int) -> List[List[int]]:
    """Forbid exactly ``u = a and v = b``; returns the new vertices as consecutive bag extensions.

    With ``a != b`` this is a path ``u - w1 - w2 - v`` with lists ``{a, z}`` and
    ``{b, z}``. With ``a == b`` a relay vertex ``r`` with list ``{c1, c2}`` sits
    between two such paths forbidding ``(u, r) = (a, c2)`` and ``(r, v) = (c1, a)``.
    """
    if a == b:
        c1, c2 = [c for c in range(1, q + 1) if c != a][:2]
        r = lg.vertex((c1, c2))
        return [[r] + part for part in _weak_edge(lg, q, u, r, a, c2) + _weak_edge(lg, q, r, v, c1, a)]
    z = next(c for c in range(1, q + 1) if c not in (a, b))
    w1, w2 = lg.vertex((a, z)), lg.vertex((b, z))
    lg.edge(u, w1), lg.edge(w1, w2), lg.edge(w2, v)
    return [[w1, w2]]


def pwmod_sat_to_qcoloring(cnf: CnfInstance, q: int, gamma: int, rho: int) -> Tuple[SimpleGraph, StructureCertificate]:
    """Graph q-colourable iff ``cnf`` is satisfiable, with a pathwidth modulator of ``ceil(m/rho)*gamma`` vertices.

    Long clauses are split to arity 3. Each block of ``rho`` modulator variables
    becomes ``gamma`` variables over ``[q]`` (its binary value in base q); other
    variables range over ``{1, 2}`` for True/False. Constraints of arity above 2
    become odd cycles with one selector per accepted tuple, forbidden pairs
    become weak edges, and lists are simulated by a q-clique whose vertex ``c``
    stands for colour ``c``. The clique occupies the last ``q`` vertices.
    """
    if q < 3:
        raise ValueError("the list gadgets need q >= 3")
    if not 2 ** rho < q ** gamma:
        raise InvalidInstance(f"2^rho = {2 ** rho} must be below q^gamma = {q ** gamma}")
    cert = cnf.certificate
    if cert is None or cert.kind is not CertKind.PATH_DECOMPOSITION or not verify_certificate(cnf):
        raise InvalidInstance("a verified pathwidth modulator certificate is required")
    if any(c.weight != 1 for c in cnf.clauses):
        raise InvalidInstance("weighted clauses are not supported")
    cnf = reduce_arity_to_3(cnf)
    cert = cnf.certificate
    mod = sorted(cert.modulator)
    tau = math.ceil(len(mod) / rho) if mod else 0
    blocks = [mod[i * rho:(i + 1) * rho] for i in range(tau)]
    block_of = {v: i for i, blk in enumerate(blocks) for v in blk}
    lg = _ListGraph([], set())
    full = range(1, q + 1)
    gvars = [[lg.vertex(full) for _ in range(gamma)] for _ in blocks]
    bvar = {v: lg.vertex((1, 2)) for v in range(1, cnf.num_variables + 1) if v not in block_of}

    def digits(code: int) -> Tuple[int, ...]:
        out = []
        for _ in range(gamma):
            code, d = divmod(code, q)
            out.append(d + 1)
        return tuple(reversed(out))

    base_bags = [frozenset(bvar[v] for v in b) for b in cert.bags]
    extra: List[List[FrozenSet[int]]] = [[] for _ in base_bags]
    tail: List[FrozenSet[int]] = []

    def anchor(rest: Set[int]) -> Tuple[List[FrozenSet[int]], FrozenSet[int]]:
        for i, bag in enumerate(base_bags):
            if rest <= bag:
                return extra[i], bag
        if rest:
            raise InvalidInstance("clause not covered by any bag")
        return tail, frozenset()

    def forbid_pairs(u: int, v: int, pairs: Iterable[Tuple[int, int]], slot: List[FrozenSet[int]],
                     bag: FrozenSet[int]) -> None:
        for a, b in pairs:
            slot.extend(bag | frozenset(part) for part in _weak_edge(lg, q, u, v, a, b))

    infeasible = False
    for c in cnf.clauses:
        blks = sorted({block_of[l.variable] for l in c.literals if l.variable in block_of})
        plain = sorted({l.variable for l in c.literals if l.variable not in block_of})
        scope = [x for i in blks for x in gvars[i]] + [bvar[v] for v in plain]
        bools = [v for i in blks for v in blocks[i]] + plain
        accepted: Set[Tuple[int, ...]] = set()
        for vals in product((False, True), repeat=len(bools)):
            a = dict(zip(bools, vals))
            if not c.satisfied_by(a):
                continue
            tup: List[int] = []
            for i in blks:
                code = 0
                for v in blocks[i]:
                    code = 2 * code + a[v]
                tup += digits(code)
            tup += [1 if a[v] else 2 for v in plain]
            accepted.add(tuple(tup))
        slot, bag = anchor({bvar[v] for v in plain})
        if not accepted:
            infeasible = True
            continue
        doms = [lg.lists[x - 1] for x in scope]
        if len(scope) == 1:
            x = scope[0]
            lg.lists[x - 1] = lg.lists[x - 1] & frozenset(t[0] for t in accepted)
        elif len(scope) == 2:
            pairs = [p for p in product(sorted(doms[0]), sorted(doms[1])) if p not in accepted]
            forbid_pairs(scope[0], scope[1], pairs, slot, bag)
        else:
            tuples = sorted(accepted)
            hub = lg.vertex((1, 2))
            ring = [hub]
            for _ in tuples:
                ring += [lg.vertex((1, 2, 3)), lg.vertex((1, 2))]
            for a, b in zip(ring, ring[1:] + ring[:1]):
                lg.edge(a, b)
            for j in range(1, len(ring) - 1):
                cyc = bag | {hub, ring[j], ring[j + 1]}
                slot.append(cyc)
                if j % 2:
                    sigma = tuples[j // 2]
                    for x, dom, want in zip(scope, doms, sigma):
                        forbid_pairs(ring[j], x, [(3, y) for y in sorted(dom) if y != want], slot, cyc)
    if infeasible:
        slot, bag = anchor(set())
        dead = lg.vertex(())
        slot.append(bag | {dead})
    pal = [lg.vertex((c,)) for c in full]
    for i, a in enumerate(pal):
        for b in pal[i + 1:]:
            lg.edge(a, b)
    for v, allowed in enumerate(lg.lists, start=1):
        if v in pal:
            continue
        for c in full:
            if c not in allowed:
                lg.edge(v, pal[c - 1])
    bags = []
    for bag, more in zip(base_bags, extra):
        bags.append(bag)
        bags += more
    bags += tail
    palette = frozenset(pal)
    bags = [b | palette for b in bags] or [palette]
    modulator = [x for row in gvars for x in row]
    assert len(modulator) == tau * gamma
    width = max(len(b) for b in bags) - 1
    assert width <= cert.width + 6 + q
    g = SimpleGraph(len(lg.lists), tuple((u, v, 1) for u, v in sorted(lg.edges)))
    out_cert = StructureCertificate.path_decomposition(modulator, bags, width)
    assert verify_path_decomposition(g, out_cert)
    return g, out_cert


def palette_lists(g: SimpleGraph, palette: Sequence[int], q: int) -> Tuple[SimpleGraph, Dict[int, List[int]]]:
    """Remove a q-clique ``palette`` (vertex ``i`` read as colour ``i+1``) and turn it into lists.

    Every q-colouring can be permuted so the clique is coloured this way, so
    the returned list instance is colourable iff ``g`` is q-colourable.
    """
    adj = g.adjacency()
    pal = list(palette)
    if len(pal) != q or any(b not in adj[a] for i, a in enumerate(pal) for b in pal[i + 1:]):
        raise InvalidInstance("palette is not a q-clique")
    keep = [v for v in g.vertices if v not in set(pal)]
    idx = {v: i + 1 for i, v in enumerate(keep)}
    lists = {idx[v]: [c for c in range(1, q + 1) if pal[c - 1] not in adj[v]] for v in keep}
    edges = [(idx[u], idx[v], 1) for u, v, _ in g.edges if u in idx and v in idx]
    return SimpleGraph(len(keep), tuple(edges)), lists


# ------------------------------------------------- k-Neighborhood-Cut

@dataclass(frozen=True)
class KncInstance:
    """Directed graph, terminals and budget; selected vertices delete their out-neighbours."""

    graph: SimpleGraph
    s: int
    t: int
    k: int


def annnonreach_to_knc(d: AnnotatedDag, k: int) -> KncInstance:
    """k-Neighborhood-Cut instance that is YES iff some M-assignment disconnects ``d``.

    DAG vertex ``v`` becomes ``v+1``. M is split into ``k`` balanced groups;
    ``x[i, sigma]`` selects an assignment of group ``i`` and blocks the guard
    ``y[i]`` on ``s -> y[i] -> t``. An annotated arc is subdivided by ``z[e]``,
    deleted by every selector falsifying its literal.
    """
    if k < 1:
        raise ValueError("k must be positive")
    groups = balanced_groups(list(range(1, d.num_annotation_vars + 1)), k)
    group_of = {v: i for i, grp in enumerate(groups) for v in grp}
    s, t = d.source + 1, d.sink + 1
    count = d.num_vertices
    edges: List[Tuple[int, int, int]] = []
    sel: List[List[Tuple[Dict[int, bool], int]]] = []
    for i, grp in enumerate(groups):
        count += 1
        y = count
        edges += [(s, y, 1), (y, t, 1)]
        row = []
        for vals in product((False, True), repeat=len(grp)):
            count += 1
            row.append((dict(zip(grp, vals)), count))
            edges.append((count, y, 1))
        sel.append(row)
    for u, v, lit in d.arcs:
        if lit is None:
            edges.append((u + 1, v + 1, 1))
            continue
        count += 1
        z = count
        edges += [(u + 1, z, 1), (z, v + 1, 1)]
        for sigma, x in sel[group_of[lit.variable]]:
            if sigma[lit.variable] != lit.polarity:
                edges.append((x, z, 1))
    return KncInstance(SimpleGraph(count, tuple(edges), directed=True), s, t, k)


def knc_to_annnonreach(g: SimpleGraph, s: int, t: int, k: int) -> AnnotatedDag:
    """Annotated DAG on ``k*ceil(log2 n)`` annotation variables, YES iff the KNC instance is.

    Group ``i`` spells the index (from 0, MSB first) of the ``i``-th selected
    vertex. Vertex ``u`` becomes ``u_in -> u_0 -> ... -> u_k -> u_out``; between
    ``u_(i-1)`` and ``u_i`` there is a path for each code that does not delete
    ``u``: codes of non-in-neighbours of ``u``, of ``s`` and ``t``, and padding
    codes. Walks run from ``s_out`` to ``t_in``.
    """
    if not g.directed:
        raise InvalidInstance("k-Neighborhood-Cut needs a directed graph")
    if k < 1:
        raise ValueError("k must be positive")
    n = g.vertex_count
    b = _bits(n)
    big = 2 ** b
    adj = g.adjacency()
    db = DagBuilder(k * b)
    ins, outs = {}, {}
    for u in g.vertices:
        ins[u] = db.vertex(f"{u}_in")
        outs[u] = db.vertex(f"{u}_out")
        chain = [db.vertex(f"{u}_{i}") for i in range(k + 1)]
        db.arc(ins[u], chain[0])
        db.arc(chain[-1], outs[u])
        for i in range(k):
            bits = list(range(i * b + 1, (i + 1) * b + 1))
            for code in range(big):
                v = code + 1
                if v <= n and v not in (s, t) and u in adj[v]:
                    continue
                lits = [Literal(x, bool(code >> (b - 1 - j) & 1)) for j, x in enumerate(bits)]
                db.path(chain[i], chain[i + 1], lits)
    for u, v, _ in g.edges:
        db.arc(outs[u], ins[v])
    assert db.count <= max(n, 2) ** 5
    return db.build(outs[s], ins[t])


def dominating_to_knc(g: SimpleGraph, k: int) -> KncInstance:
    """Two copies of V; ``u -> v'`` when ``u = v`` or ``uv`` is an edge, ``s -> V'`` and ``V' -> t``."""
    if g.directed:
        raise InvalidInstance("dominating set needs an undirected graph")
    n = g.vertex_count
    s, t = 2 * n + 1, 2 * n + 2
    edges = []
    for v in g.vertices:
        edges += [(v, n + v, 1), (s, n + v, 1), (n + v, t, 1)]
    for u, v, _ in g.edges:
        edges += [(u, n + v, 1), (v, n + u, 1)]
    return KncInstance(SimpleGraph(2 * n + 2, tuple(edges), directed=True), s, t, k)


# ------------------------------------------------- degenerate deletion

def degdel_to_circuitsat(g: SimpleGraph, r: int, k: int) -> Circuit:
    """Circuit on ``k*ceil(log2 n)`` inputs, satisfiable iff deleting at most ``k`` vertices leaves an r-degenerate graph.

    Group ``j`` spells the index (from 0, MSB first) of a deleted vertex;
    repeated or padding codes delete nothing extra. Deleted vertices start
    marked and stay marked; in each of ``n`` rounds a vertex with at most ``r``
    unmarked neighbours becomes marked. The output demands that all are marked.
    """
    if g.directed:
        raise InvalidInstance("degeneracy needs an undirected graph")
    if k < 1:
        raise ValueError("k must be positive")
    n = g.vertex_count
    w = _bits(n)
    b = CircuitBuilder(k * w)
    groups = [[b.input(j * w + i + 1) for i in range(w)] for j in range(k)]
    memo: Dict = {}
    adj = g.adjacency()
    marked = {v: b.or_tree([_decoder(b, grp, v - 1, memo) for grp in groups], name=f"del{v}") for v in g.vertices}
    for rnd in range(1, n + 1):
        nxt = {}
        for v in g.vertices:
            free = [_neg(b, marked[u], memo) for u in sorted(adj[v])]
            crowded = threshold_at_least(b, free, r + 1)
            nxt[v] = b.or_(marked[v], _neg(b, crowded, memo))
        marked = nxt
    return b.build(b.and_tree([marked[v] for v in g.vertices]))
