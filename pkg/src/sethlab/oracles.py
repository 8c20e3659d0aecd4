"""Ground-truth solvers.

Exhaustive solvers enumerate assignments in lexicographic order (variable 1 is
the most significant bit, False before True) so the witness they return is
the lexicographically first one. Most of them evaluate all assignments at once
by packing one assignment per bit of a Python integer.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from pysat.solvers import Minisat22

from .core import (AnnotatedDag, Assignment, BranchingProgram, Circuit, Clause, CnfInstance, GateKind, InvalidInstance, Literal,
                   SimpleGraph, is_horn)


class TooLarge(Exception):
    """The instance exceeds an oracle cap; this is not a 'no solution' answer."""


@dataclass(frozen=True)
class OracleConfig:
    sat_vars: int = 24
    maxsat_vars: int = 24
    weight_k_candidates: int = 1 << 22
    ann_vars: int = 16
    coloring_vertices: int = 12
    maxcut_vertices: int = 20
    subset_candidates: int = 1 << 20
    width_vertices: int = 10


DEFAULT = OracleConfig()

AssignmentLike = Union[Assignment, Mapping[int, bool], Sequence[bool]]


def _as_map(a: AssignmentLike) -> Mapping[int, bool]:
    if isinstance(a, Assignment):
        return a.values
    if isinstance(a, Mapping):
        return a
    return {i + 1: bool(b) for i, b in enumerate(a)}


# ------------------------------------------------------------ bit-parallel

def var_masks(k: int) -> Tuple[List[int], int]:
    """Masks over the 2^k lexicographically numbered assignments of k variables.

    Entry ``i`` (0-based) has bit ``idx`` set iff variable ``i+1`` is True in
    assignment ``idx``.
    """
    full = (1 << (1 << k)) - 1
    masks = []
    for i in range(k):
        period = 1 << (k - 1 - i)
        block = ((1 << period) - 1) << period
        reps = full // ((1 << (2 * period)) - 1)
        masks.append(block * reps)
    return masks, full


def eval_circuit_masks(c: Circuit, inputs: Mapping[int, int], full: int) -> int:
    """Evaluate every gate on packed assignments; ``inputs`` maps variable to mask."""
    val = [0] * len(c.gates)
    for gid, g in enumerate(c.gates):
        k = g.kind
        if k is GateKind.INPUT:
            val[gid] = inputs.get(g.var, 0)
        elif k is GateKind.AND:
            v = full
            for i in g.inputs:
                v &= val[i]
            val[gid] = v
        elif k is GateKind.OR:
            v = 0
            for i in g.inputs:
                v |= val[i]
            val[gid] = v
        elif k is GateKind.NOT:
            val[gid] = full ^ val[g.inputs[0]]
        elif k is GateKind.CONST_TRUE:
            val[gid] = full
        else:
            val[gid] = 0
    return val[c.output]


def circuit_truth_table(c: Circuit) -> int:
    masks, full = var_masks(c.num_inputs)
    return eval_circuit_masks(c, {i + 1: m for i, m in enumerate(masks)}, full)


def _lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# ------------------------------------------------------------- evaluation

def eval_circuit(c: Circuit, a: AssignmentLike) -> bool:
    vals = _as_map(a)
    out = [False] * len(c.gates)
    for gid, g in enumerate(c.gates):
        k = g.kind
        if k is GateKind.INPUT:
            out[gid] = bool(vals[g.var])
        elif k is GateKind.AND:
            out[gid] = all(out[i] for i in g.inputs)
        elif k is GateKind.OR:
            out[gid] = any(out[i] for i in g.inputs)
        elif k is GateKind.NOT:
            out[gid] = not out[g.inputs[0]]
        else:
            out[gid] = k is GateKind.CONST_TRUE
    return out[c.output]


def eval_circuit_demand(c: Circuit, a: AssignmentLike) -> bool:
    """Independent evaluator: demand-driven from the output with short-circuiting."""
    vals = _as_map(a)
    memo: Dict[int, bool] = {}
    stack = [c.output]
    while stack:
        gid = stack[-1]
        if gid in memo:
            stack.pop()
            continue
        g = c.gates[gid]
        if g.kind is GateKind.INPUT:
            memo[gid] = bool(vals[g.var])
        elif g.kind is GateKind.CONST_TRUE:
            memo[gid] = True
        elif g.kind is GateKind.CONST_FALSE:
            memo[gid] = False
        else:
            pending = None
            result = None
            for i in g.inputs:
                if i not in memo:
                    pending = i
                    break
                v = memo[i]
                if g.kind is GateKind.AND and not v:
                    result = False
                    break
                if g.kind is GateKind.OR and v:
                    result = True
                    break
            if result is None and pending is not None:
                stack.append(pending)
                continue
            if result is None:
                if g.kind is GateKind.NOT:
                    result = not memo[g.inputs[0]]
                else:
                    result = g.kind is GateKind.AND
            memo[gid] = result
        stack.pop()
    return memo[c.output]


def eval_branching_program(bp: BranchingProgram, a: AssignmentLike) -> bool:
    vals = _as_map(a)
    nxt = bp.successor()
    v = bp.start
    while v in nxt:
        v = nxt[v][int(bool(vals[bp.labels[v]]))]
    return v == bp.accept


def bp_truth_table(bp: BranchingProgram) -> int:
    """Packed acceptance over all 2^n inputs, by pushing assignment sets through the layers."""
    masks, full = var_masks(bp.num_inputs)
    nxt = bp.successor()
    at = {bp.start: full}
    for layer in bp.layers[:-1]:
        new: Dict[int, int] = {}
        for v in layer:
            s = at.get(v, 0)
            if not s:
                continue
            f, t = nxt[v]
            m = masks[bp.labels[v] - 1]
            new[t] = new.get(t, 0) | (s & m)
            new[f] = new.get(f, 0) | (s & ~m & full)
        at = new
    return at.get(bp.accept, 0)


# -------------------------------------------------------------------- SAT

_CHUNK = 16


def _clause_table(clauses: Iterable[Clause], variables: Sequence[int]) -> int:
    """Packed truth table of a clause set over ``variables`` (all clause variables must be listed)."""
    masks, full = var_masks(len(variables))
    pos = {v: i for i, v in enumerate(variables)}
    table = full
    for c in clauses:
        cm = 0
        for l in c.literals:
            m = masks[pos[l.variable]]
            cm |= m if l.polarity else full ^ m
            if cm == full:
                break
        table &= cm
        if not table:
            break
    return table


def _reduce(clauses: Sequence[Clause], fixed: Mapping[int, bool]) -> Optional[List[Clause]]:
    out = []
    for c in clauses:
        lits = []
        for l in c.literals:
            if l.variable in fixed:
                if fixed[l.variable] == l.polarity:
                    break
            else:
                lits.append(l)
        else:
            if not lits:
                return None
            out.append(Clause(tuple(lits)))
    return out


def projected_models_pd(cnf: CnfInstance, modulator: Sequence[int], bags: Sequence[Iterable[int]],
                        config: OracleConfig = DEFAULT) -> int:
    """Packed set of modulator assignments that extend to a model, by dynamic programming
    along a path decomposition of the non-modulator variables.

    Every clause's non-modulator variables must lie together in some bag. Each
    DP state (an assignment to the current bag) carries a mask over 2^|M|.
    """
    modulator = list(modulator)
    if len(modulator) > config.sat_vars:
        raise TooLarge(f"{len(modulator)} modulator variables > cap {config.sat_vars}")
    masks, full = var_masks(len(modulator))
    mpos = {v: i for i, v in enumerate(modulator)}
    bags = [tuple(sorted(b)) for b in bags] or [()]
    home: List[List[Tuple[List[Literal], int]]] = [[] for _ in bags]
    base = full
    for c in cnf.clauses:
        mpart = 0
        rest = []
        for l in c.literals:
            if l.variable in mpos:
                m = masks[mpos[l.variable]]
                mpart |= m if l.polarity else full ^ m
            else:
                rest.append(l)
        if not rest:
            base &= mpart
            continue
        vs = {l.variable for l in rest}
        at = next((i for i, b in enumerate(bags) if vs <= set(b)), None)
        if at is None:
            raise InvalidInstance(f"clause {c.to_ints()} not covered by any bag")
        home[at].append((rest, mpart))
    states: Dict[Tuple[Tuple[int, bool], ...], int] = {(): base}
    prev: Tuple[int, ...] = ()
    for bag, clauses in zip(bags, home):
        shared = [v for v in prev if v in bag]
        proj: Dict[Tuple[bool, ...], int] = {}
        for key, m in states.items():
            vals = dict(key)
            k2 = tuple(vals[v] for v in shared)
            proj[k2] = proj.get(k2, 0) | m
        fresh = [v for v in bag if v not in shared]
        nxt: Dict[Tuple[Tuple[int, bool], ...], int] = {}
        for k2, m in proj.items():
            for ext in itertools.product((False, True), repeat=len(fresh)):
                vals = dict(zip(shared, k2))
                vals.update(zip(fresh, ext))
                mm = m
                for rest, mpart in clauses:
                    if not any(vals[l.variable] == l.polarity for l in rest):
                        mm &= mpart
                        if not mm:
                            break
                if mm:
                    key = tuple((v, vals[v]) for v in bag)
                    nxt[key] = nxt.get(key, 0) | mm
        states = nxt
        prev = bag
        if not states:
            return 0
    out = 0
    for m in states.values():
        out |= m
    return out


def sat_table(cnf: CnfInstance, variables: Optional[Sequence[int]] = None) -> int:
    """Packed set of satisfying assignments over all variables (x1 most significant)."""
    variables = list(range(1, cnf.num_variables + 1)) if variables is None else list(variables)
    return _clause_table(cnf.clauses, variables)


def solve_sat_bruteforce(cnf: CnfInstance, config: OracleConfig = DEFAULT) -> Optional[Assignment]:
    n = cnf.num_variables
    if n > config.sat_vars:
        raise TooLarge(f"{n} variables > cap {config.sat_vars}")
    variables = list(range(1, n + 1))
    head, tail = variables[:max(0, n - _CHUNK)], variables[max(0, n - _CHUNK):]
    for idx in range(1 << len(head)):
        fixed = Assignment.from_index(head, idx).values if head else {}
        rest = _reduce(cnf.clauses, fixed)
        if rest is None:
            continue
        table = _clause_table(rest, tail)
        if table:
            low = Assignment.from_index(tail, _lowest_bit(table))
            return Assignment({**fixed, **low.values})
    return None


def solve_sat_cdcl(cnf: CnfInstance) -> Optional[Assignment]:
    """Any model found by an off-the-shelf CDCL solver; no size cap."""
    if any(len(c) == 0 for c in cnf.clauses):
        return None
    with Minisat22(bootstrap_with=cnf.to_ints()) as solver:
        if not solver.solve():
            return None
        model = {abs(x): x > 0 for x in solver.get_model()}
    return Assignment({v: model.get(v, False) for v in range(1, cnf.num_variables + 1)})


def projected_models_cdcl(cnf: CnfInstance, keep: Sequence[int], config: OracleConfig = DEFAULT) -> int:
    """Packed set of assignments to ``keep`` (first variable most significant) that extend to a model."""
    keep = list(keep)
    if len(keep) > config.ann_vars:
        raise TooLarge(f"{len(keep)} projected variables > cap {config.ann_vars}")
    if any(len(c) == 0 for c in cnf.clauses):
        return 0
    out = 0
    with Minisat22(bootstrap_with=cnf.to_ints()) as solver:
        for idx in range(1 << len(keep)):
            a = Assignment.from_index(keep, idx)
            if solver.solve(assumptions=[v if a[v] else -v for v in keep]):
                out |= 1 << idx
    return out


def count_models(cnf: CnfInstance) -> int:
    if cnf.num_variables > DEFAULT.sat_vars:
        raise TooLarge("too many variables to count")
    return bin(sat_table(cnf)).count("1")


def _weight_scores(clauses: Sequence[Clause], variables: Sequence[int]) -> np.ndarray:
    k = len(variables)
    pos = {v: i for i, v in enumerate(variables)}
    idx = np.arange(1 << k, dtype=np.int64)
    bits = [((idx >> (k - 1 - i)) & 1).astype(bool) for i in range(k)]
    score = np.zeros(1 << k, dtype=np.int64)
    for c in clauses:
        sat = np.zeros(1 << k, dtype=bool)
        for l in c.literals:
            b = bits[pos[l.variable]]
            sat |= b if l.polarity else ~b
        score += c.weight * sat
    return score


def solve_maxsat_bruteforce(cnf: CnfInstance, config: OracleConfig = DEFAULT) -> Tuple[Assignment, int]:
    n = cnf.num_variables
    if n > config.maxsat_vars:
        raise TooLarge(f"{n} variables > cap {config.maxsat_vars}")
    variables = list(range(1, n + 1))
    split = max(0, n - 20)
    head, tail = variables[:split], variables[split:]
    best: Optional[Tuple[int, Assignment]] = None
    for hidx in range(1 << len(head)):
        fixed = Assignment.from_index(head, hidx).values if head else {}
        base = 0
        rest = []
        for c in cnf.clauses:
            lits = []
            done = False
            for l in c.literals:
                if l.variable in fixed:
                    if fixed[l.variable] == l.polarity:
                        done = True
                        break
                else:
                    lits.append(l)
            if done:
                base += c.weight
            elif lits:
                rest.append(Clause(tuple(lits), c.weight))
        score = _weight_scores(rest, tail)
        i = int(np.argmax(score))
        val = base + int(score[i])
        if best is None or val > best[0]:
            best = (val, Assignment({**fixed, **Assignment.from_index(tail, i).values}))
    assert best is not None
    return best[1], best[0]


def maxsat_value(cnf: CnfInstance, config: OracleConfig = DEFAULT) -> int:
    return solve_maxsat_bruteforce(cnf, config)[1]


def satisfied_weight(cnf: CnfInstance, a: AssignmentLike) -> int:
    vals = _as_map(a)
    return sum(c.weight for c in cnf.clauses if c.satisfied_by(vals))


def weight_k_sets(n: int, k: int) -> List[Tuple[int, ...]]:
    """All k-subsets of 1..n in lexicographic assignment order (smallest index first)."""
    return list(itertools.combinations(range(1, n + 1), k))[::-1]


def solve_weight_k_sat(target: Union[Circuit, CnfInstance], k: int,
                       config: OracleConfig = DEFAULT) -> Optional[Assignment]:
    n = target.num_inputs if isinstance(target, Circuit) else target.num_variables
    if k < 0 or k > n:
        raise ValueError(f"weight {k} outside [0, {n}]")
    combos = weight_k_sets(n, k)
    if len(combos) > config.weight_k_candidates:
        raise TooLarge(f"{len(combos)} weight-{k} assignments")
    variables = range(1, n + 1)
    batch = 4096
    for start in range(0, len(combos), batch):
        chunk = combos[start:start + batch]
        full = (1 << len(chunk)) - 1
        masks: Dict[int, int] = {}
        for j, combo in enumerate(chunk):
            for v in combo:
                masks[v] = masks.get(v, 0) | (1 << j)
        if isinstance(target, Circuit):
            ok = eval_circuit_masks(target, masks, full)
        else:
            ok = full
            for c in target.clauses:
                cm = 0
                for l in c.literals:
                    m = masks.get(l.variable, 0)
                    cm |= m if l.polarity else full ^ m
                ok &= cm
        if ok:
            return Assignment.from_true_set(variables, chunk[_lowest_bit(ok)])
    return None


def solve_circuit_sat(c: Circuit, config: OracleConfig = DEFAULT) -> Optional[Assignment]:
    n = c.num_inputs
    if n > config.sat_vars:
        raise TooLarge(f"{n} inputs > cap {config.sat_vars}")
    variables = list(range(1, n + 1))
    split = max(0, n - _CHUNK)
    head, tail = variables[:split], variables[split:]
    masks, full = var_masks(len(tail))
    for hidx in range(1 << len(head)):
        inputs = {v: (full if b else 0) for v, b in
                  (Assignment.from_index(head, hidx).values.items() if head else ())}
        inputs.update({v: masks[i] for i, v in enumerate(tail)})
        t = eval_circuit_masks(c, inputs, full)
        if t:
            low = Assignment.from_index(tail, _lowest_bit(t))
            return Assignment({**{v: bool(inputs[v]) for v in head}, **low.values})
    return None


# ------------------------------------------------------ polynomial solvers

def _scc(nodes: int, adj: List[List[int]]) -> List[int]:
    """Tarjan, iterative. Components are numbered in reverse topological order."""
    index = [-1] * nodes
    low = [0] * nodes
    on = [False] * nodes
    comp = [-1] * nodes
    stack: List[int] = []
    counter = 0
    ncomp = 0
    for root in range(nodes):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on[root] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on[w] = True
                    work.append((w, 0))
                elif on[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
    return comp


def solve_2sat_poly(cnf: CnfInstance) -> Optional[Assignment]:
    n = cnf.num_variables

    def node(var: int, pol: bool) -> int:
        return 2 * (var - 1) + (0 if pol else 1)

    adj: List[List[int]] = [[] for _ in range(2 * n)]
    for c in cnf.clauses:
        lits = c.literals
        if len(lits) > 2:
            raise ValueError("clause with more than two literals")
        if not lits:
            return None
        a = lits[0]
        b = lits[1] if len(lits) == 2 else lits[0]
        adj[node(a.variable, not a.polarity)].append(node(b.variable, b.polarity))
        adj[node(b.variable, not b.polarity)].append(node(a.variable, a.polarity))
    comp = _scc(2 * n, adj)
    values = {}
    for v in range(1, n + 1):
        p, q = comp[node(v, True)], comp[node(v, False)]
        if p == q:
            return None
        values[v] = p < q
    return Assignment(values)


def solve_horn_poly(cnf: CnfInstance) -> Optional[Assignment]:
    """Minimal model by forward chaining from all-False."""
    if not is_horn(cnf.clauses):
        raise ValueError("formula is not Horn")
    n = cnf.num_variables
    value = [False] * (n + 1)
    missing = []
    head = []
    watch: List[List[int]] = [[] for _ in range(n + 1)]
    queue = deque()
    for ci, c in enumerate(cnf.clauses):
        neg = [l.variable for l in c.literals if not l.polarity]
        pos = [l.variable for l in c.literals if l.polarity]
        missing.append(len(neg))
        head.append(pos[0] if pos else 0)
        for v in neg:
            watch[v].append(ci)
        if not neg:
            queue.append(ci)
    while queue:
        ci = queue.popleft()
        h = head[ci]
        if h == 0:
            return None
        if value[h]:
            continue
        value[h] = True
        for cj in watch[h]:
            missing[cj] -= 1
            if missing[cj] == 0:
                queue.append(cj)
    return Assignment({v: value[v] for v in range(1, n + 1)})


# ------------------------------------------------- annotated reachability

def _lit_mask(lit, masks: List[int], full: int) -> int:
    m = masks[lit.variable - 1]
    return m if lit.polarity else full ^ m


def ann_reach_table(d: AnnotatedDag, config: OracleConfig = DEFAULT) -> int:
    """Packed set of M-assignments under which the sink is reachable."""
    if d.num_annotation_vars > config.ann_vars:
        raise TooLarge(f"{d.num_annotation_vars} annotation variables > cap {config.ann_vars}")
    masks, full = var_masks(d.num_annotation_vars)
    out: List[List[Tuple[int, int]]] = [[] for _ in range(d.num_vertices)]
    for u, v, lit in d.arcs:
        out[u].append((v, full if lit is None else _lit_mask(lit, masks, full)))
    reach = [0] * d.num_vertices
    reach[d.source] = full
    for u in d.topological_order():
        r = reach[u]
        if r:
            for v, m in out[u]:
                reach[v] |= r & m
    return reach[d.sink]


def ann_reachable(d: AnnotatedDag, a: AssignmentLike) -> bool:
    """Plain BFS on the arcs that survive under ``a``."""
    vals = _as_map(a)
    adj: List[List[int]] = [[] for _ in range(d.num_vertices)]
    for u, v, lit in d.arcs:
        if lit is None or vals[lit.variable] == lit.polarity:
            adj[u].append(v)
    seen = {d.source}
    queue = deque([d.source])
    while queue:
        u = queue.popleft()
        if u == d.sink:
            return True
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return d.sink in seen


def _ann_witness(d: AnnotatedDag, table: int) -> Optional[Assignment]:
    if not table:
        return None
    return Assignment.from_index(list(range(1, d.num_annotation_vars + 1)), _lowest_bit(table))


def solve_ann_reach(d: AnnotatedDag, config: OracleConfig = DEFAULT) -> Optional[Assignment]:
    return _ann_witness(d, ann_reach_table(d, config))


def solve_ann_nonreach(d: AnnotatedDag, config: OracleConfig = DEFAULT) -> Optional[Assignment]:
    full = (1 << (1 << d.num_annotation_vars)) - 1
    return _ann_witness(d, full ^ ann_reach_table(d, config))


# --------------------------------------------------------------- graphs

def solve_qcoloring_bruteforce(g: SimpleGraph, q: int, config: OracleConfig = DEFAULT,
                               lists: Optional[Mapping[int, Iterable[int]]] = None) -> Optional[Dict[int, int]]:
    """Lexicographically first proper coloring with colors 1..q (optionally list-restricted)."""
    n = g.vertex_count
    if n > config.coloring_vertices:
        raise TooLarge(f"{n} vertices > cap {config.coloring_vertices}")
    adj = g.adjacency()
    allowed = {v: sorted(set(lists[v]) if lists and v in lists else range(1, q + 1)) for v in g.vertices}
    color: Dict[int, int] = {}

    def go(v: int) -> bool:
        if v > n:
            return True
        for col in allowed[v]:
            if all(color.get(u) != col for u in adj[v] if u < v):
                color[v] = col
                if go(v + 1):
                    return True
        color.pop(v, None)
        return False

    return dict(color) if go(1) else None


def is_proper_coloring(g: SimpleGraph, coloring: Mapping[int, int], q: int) -> bool:
    return (all(1 <= coloring.get(v, 0) <= q for v in g.vertices)
            and all(coloring[u] != coloring[v] for u, v, _ in g.edges))


def cut_weight(g: SimpleGraph, side: Iterable[int]) -> int:
    s = set(side)
    return sum(w for u, v, w in g.edges if (u in s) != (v in s))


def solve_maxcut_bruteforce(g: SimpleGraph, config: OracleConfig = DEFAULT) -> Tuple[frozenset, int]:
    """Returns (vertices on the side opposite vertex 1, cut weight)."""
    n = g.vertex_count
    if n > config.maxcut_vertices:
        raise TooLarge(f"{n} vertices > cap {config.maxcut_vertices}")
    if n <= 1:
        return frozenset(), 0
    k = n - 1
    idx = np.arange(1 << k, dtype=np.int64)

    def side(v: int) -> np.ndarray:
        if v == 1:
            return np.zeros(1 << k, dtype=np.int64)
        return (idx >> (k - (v - 1))) & 1

    total = np.zeros(1 << k, dtype=np.int64)
    for u, v, w in g.edges:
        total += w * (side(u) ^ side(v))
    best = int(np.argmax(total))
    chosen = frozenset(v for v in range(2, n + 1) if (best >> (k - (v - 1))) & 1)
    return chosen, int(total[best])


def degeneracy(g: SimpleGraph, removed: Iterable[int] = ()) -> int:
    adj = g.adjacency()
    alive = set(g.vertices) - set(removed)
    deg = {v: len(adj[v] & alive) for v in alive}
    best = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        alive.remove(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
    return best


def _subsets_upto(candidates: Sequence[int], k: int, cap: int) -> Iterable[Tuple[int, ...]]:
    total = sum(_binom(len(candidates), j) for j in range(0, min(k, len(candidates)) + 1))
    if total > cap:
        raise TooLarge(f"{total} candidate subsets > cap {cap}")
    for j in range(0, min(k, len(candidates)) + 1):
        yield from itertools.combinations(candidates, j)


def _binom(n: int, k: int) -> int:
    return math.comb(n, k)


def solve_degdel_bruteforce(g: SimpleGraph, r: int, k: int,
                            config: OracleConfig = DEFAULT) -> Optional[frozenset]:
    """Smallest-first set of at most k vertices whose deletion leaves an r-degenerate graph."""
    for s in _subsets_upto(list(g.vertices), k, config.subset_candidates):
        if degeneracy(g, s) <= r:
            return frozenset(s)
    return None


def knc_blocked(g: SimpleGraph, s: int, t: int, selected: Iterable[int]) -> bool:
    """True if deleting the out-neighbours of ``selected`` (never s or t) separates s from t."""
    adj = g.adjacency()
    dead = set()
    for u in selected:
        dead |= adj[u]
    dead -= {s, t}
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dead and v not in seen:
                seen.add(v)
                queue.append(v)
    return t not in seen


def solve_knc_bruteforce(g: SimpleGraph, s: int, t: int, k: int,
                         config: OracleConfig = DEFAULT) -> Optional[frozenset]:
    """k-Neighborhood-Cut with at most k selected vertices other than s and t."""
    if not g.directed:
        raise ValueError("k-Neighborhood-Cut needs a directed graph")
    cands = [v for v in g.vertices if v not in (s, t)]
    for sel in _subsets_upto(cands, k, config.subset_candidates):
        if knc_blocked(g, s, t, sel):
            return frozenset(sel)
    return None


def solve_dominating_set_bruteforce(g: SimpleGraph, k: int,
                                    config: OracleConfig = DEFAULT) -> Optional[frozenset]:
    adj = g.adjacency()
    everything = set(g.vertices)
    for sel in _subsets_upto(list(g.vertices), k, config.subset_candidates):
        dom = set(sel)
        for v in sel:
            dom |= adj[v]
        if dom == everything:
            return frozenset(sel)
    return None


def _check_width_cap(g: SimpleGraph, config: OracleConfig) -> None:
    if g.vertex_count > config.width_vertices:
        raise TooLarge(f"{g.vertex_count} vertices > cap {config.width_vertices}")


def tree_depth_bruteforce(g: SimpleGraph, config: OracleConfig = DEFAULT) -> int:
    """Exact tree-depth counting levels (a single vertex has depth 1)."""
    _check_width_cap(g, config)
    adj = {v: 0 for v in g.vertices}
    for u, v, _ in g.edges:
        adj[u] |= 1 << (v - 1)
        adj[v] |= 1 << (u - 1)

    def comps(mask: int) -> List[int]:
        out = []
        while mask:
            seed = mask & -mask
            comp = seed
            frontier = seed
            while frontier:
                b = frontier & -frontier
                frontier ^= b
                nb = adj[b.bit_length()] & mask & ~comp
                comp |= nb
                frontier |= nb
            out.append(comp)
            mask &= ~comp
        return out

    @lru_cache(maxsize=None)
    def td(mask: int) -> int:
        if not mask:
            return 0
        parts = comps(mask)
        if len(parts) > 1:
            return max(td(p) for p in parts)
        best = None
        m = mask
        while m:
            b = m & -m
            m ^= b
            val = 1 + td(mask & ~b)
            if best is None or val < best:
                best = val
        return best

    return td((1 << g.vertex_count) - 1)


def pathwidth_bruteforce(g: SimpleGraph, config: OracleConfig = DEFAULT) -> int:
    """Exact pathwidth as vertex separation number, by DP over vertex subsets."""
    _check_width_cap(g, config)
    n = g.vertex_count
    if n == 0:
        return 0
    adj = [0] * n
    for u, v, _ in g.edges:
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    full = (1 << n) - 1
    f = [0] * (1 << n)
    for s in range(1, 1 << n):
        rest = full & ~s
        boundary = sum(1 for i in range(n) if s >> i & 1 and adj[i] & rest)
        best = min(f[s & ~(1 << i)] for i in range(n) if s >> i & 1)
        f[s] = max(best, boundary)
    return f[full]
