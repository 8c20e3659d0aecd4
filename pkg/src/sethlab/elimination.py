"""Exact variable elimination over finite-domain factors.

Used as a second oracle for instances whose structure (a small modulator plus a
low-width remainder) puts them beyond plain enumeration: list colouring,
CNF satisfiability with projection onto a variable subset, and weighted max cut.
Two semirings are supported: boolean (AND/OR) and max-plus.
"""

from __future__ import annotations

from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .core import Assignment, CnfInstance, SimpleGraph
from .oracles import TooLarge

NEG = np.int64(-(1 << 60))


class Factor:
    __slots__ = ("scope", "table")

    def __init__(self, scope: Sequence[Hashable], table: np.ndarray):
        self.scope = tuple(scope)
        self.table = table


def _align(f: Factor, scope: Sequence[Hashable]) -> np.ndarray:
    pos = [scope.index(v) for v in f.scope]
    order = sorted(range(len(pos)), key=lambda i: pos[i])
    t = np.transpose(f.table, order) if f.scope else f.table
    shape = [1] * len(scope)
    for i in order:
        shape[pos[i]] = f.table.shape[i]
    return t.reshape(shape)


class Eliminator:
    """Bucket elimination with a greedy min-fill order.

    ``boolean=True`` combines with AND and eliminates with OR; otherwise tables
    are integers combined by addition and eliminated by max.
    """

    def __init__(self, domains: Mapping[Hashable, int], factors: Iterable[Factor], boolean: bool,
                 table_cap: int = 1 << 22):
        self.domains = dict(domains)
        self.factors = list(factors)
        self.boolean = boolean
        self.table_cap = table_cap

    def _combine(self, factors: Sequence[Factor]) -> Factor:
        scope: List[Hashable] = []
        for f in factors:
            for v in f.scope:
                if v not in scope:
                    scope.append(v)
        size = 1
        for v in scope:
            size *= self.domains[v]
        if size > self.table_cap:
            raise TooLarge(f"intermediate table of {size} entries")
        shape = tuple(self.domains[v] for v in scope)
        if self.boolean:
            out = np.ones(shape, dtype=bool)
            for f in factors:
                out = out & _align(f, scope)
        else:
            out = np.zeros(shape, dtype=np.int64)
            for f in factors:
                out = out + _align(f, scope)
            out = np.maximum(out, NEG)
        return Factor(scope, out)

    def order(self, eliminate: Iterable[Hashable]) -> List[Hashable]:
        todo = set(eliminate)
        nbr: Dict[Hashable, set] = {v: set() for v in self.domains}
        for f in self.factors:
            for v in f.scope:
                nbr[v].update(f.scope)
        for v in nbr:
            nbr[v].discard(v)
        order = []
        while todo:
            def cost(v):
                ns = list(nbr[v])
                fill = 0
                for i, a in enumerate(ns):
                    for b in ns[i + 1:]:
                        if b not in nbr[a]:
                            fill += 1
                return (fill, len(ns), repr(v))
            v = min(todo, key=cost)
            order.append(v)
            todo.discard(v)
            ns = nbr.pop(v)
            for a in ns:
                nbr[a].discard(v)
                nbr[a].update(ns - {a})
        return order

    def run(self, keep: Sequence[Hashable] = (), with_witness: bool = False
            ) -> Tuple[Factor, Optional[Dict[Hashable, int]]]:
        """Eliminate every variable outside ``keep``; return the factor over ``keep``.

        With ``with_witness`` the best (or any satisfying) completion of the best
        ``keep`` entry is recovered by replaying buckets in reverse.
        """
        keep = list(keep)
        elim = self.order([v for v in self.domains if v not in set(keep)])
        pool = list(self.factors)
        trail = []
        for v in elim:
            bucket = [f for f in pool if v in f.scope]
            pool = [f for f in pool if v not in f.scope]
            if not bucket:
                trail.append((v, Factor((), np.ones((), bool) if self.boolean else np.zeros((), np.int64)), []))
                continue
            joint = self._combine(bucket)
            axis = joint.scope.index(v)
            red = joint.table.any(axis=axis) if self.boolean else joint.table.max(axis=axis)
            pool.append(Factor(joint.scope[:axis] + joint.scope[axis + 1:], red))
            trail.append((v, joint, bucket))
        final = self._combine(pool + [Factor(keep, np.ones(tuple(self.domains[v] for v in keep), bool)
                                             if self.boolean else
                                             np.zeros(tuple(self.domains[v] for v in keep), np.int64))])
        result = Factor(keep, _align(final, keep).reshape(tuple(self.domains[v] for v in keep)))
        if not with_witness:
            return result, None
        flat = result.table.reshape(-1)
        best = int(np.argmax(flat))
        if self.boolean and not flat[best]:
            return result, None
        values: Dict[Hashable, int] = {}
        if keep:
            for v, x in zip(keep, np.unravel_index(best, result.table.shape)):
                values[v] = int(x)
        for v, joint, _ in reversed(trail):
            if not joint.scope:
                values[v] = 0
                continue
            idx = tuple(slice(None) if u == v else values[u] for u in joint.scope)
            values[v] = int(np.argmax(joint.table[idx]))
        return result, values


def _clause_factor(clause) -> Factor:
    lits = {}
    for l in clause.literals:
        lits.setdefault(l.variable, set()).add(l.polarity)
    scope = sorted(lits)
    table = np.ones((2,) * len(scope), dtype=bool)
    falsifier = []
    for v in scope:
        pols = lits[v]
        if len(pols) == 2:
            return Factor((), np.ones((), bool))
        falsifier.append(0 if True in pols else 1)
    table[tuple(falsifier)] = False
    return Factor(scope, table)


def projected_models(cnf: CnfInstance, keep: Sequence[int], fixed: Mapping[int, bool] = None,
                     table_cap: int = 1 << 22) -> np.ndarray:
    """Boolean array over 2^|keep| (first variable most significant): extendable to a model?"""
    fixed = dict(fixed or {})
    factors = []
    for c in cnf.clauses:
        lits = []
        sat = False
        for l in c.literals:
            if l.variable in fixed:
                if fixed[l.variable] == l.polarity:
                    sat = True
                    break
            else:
                lits.append(l)
        if sat:
            continue
        if not lits:
            return np.zeros(1 << len(keep), dtype=bool)
        factors.append(_clause_factor(type(c)(tuple(lits))))
    domains = {v: 2 for v in range(1, cnf.num_variables + 1) if v not in fixed}
    for v in keep:
        domains[v] = 2
    res, _ = Eliminator(domains, factors, True, table_cap).run(list(keep))
    return res.table.reshape(-1)


def solve_sat_elimination(cnf: CnfInstance, table_cap: int = 1 << 22) -> Optional[Assignment]:
    domains = {v: 2 for v in range(1, cnf.num_variables + 1)}
    factors = []
    for c in cnf.clauses:
        if not c.literals:
            return None
        factors.append(_clause_factor(c))
    res, wit = Eliminator(domains, factors, True, table_cap).run((), with_witness=True)
    if wit is None:
        return None
    return Assignment({v: bool(wit[v]) for v in domains})


def solve_list_coloring_elimination(g: SimpleGraph, q: int, lists: Optional[Mapping[int, Iterable[int]]] = None,
                                    table_cap: int = 1 << 22) -> Optional[Dict[int, int]]:
    """Proper colouring with colours 1..q respecting optional lists, or None."""
    domains = {v: q for v in g.vertices}
    factors = []
    if lists:
        for v, allowed in lists.items():
            t = np.zeros(q, dtype=bool)
            for col in allowed:
                t[col - 1] = True
            factors.append(Factor((v,), t))
    neq = ~np.eye(q, dtype=bool)
    seen = set()
    for u, v, _ in g.edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        factors.append(Factor(key, neq))
    res, wit = Eliminator(domains, factors, True, table_cap).run((), with_witness=True)
    if wit is None:
        return None
    return {v: wit[v] + 1 for v in g.vertices}


def maxcut_elimination(g: SimpleGraph, table_cap: int = 1 << 22) -> Tuple[frozenset, int]:
    """Exact max cut; returns (side opposite vertex 1, weight)."""
    if g.vertex_count == 0:
        return frozenset(), 0
    domains = {v: 2 for v in g.vertices}
    weights: Dict[Tuple[int, int], int] = {}
    for u, v, w in g.edges:
        key = (min(u, v), max(u, v))
        weights[key] = weights.get(key, 0) + w
    factors = [Factor(k, np.array([[0, w], [w, 0]], dtype=np.int64)) for k, w in weights.items()]
    factors.append(Factor((1,), np.array([0, NEG], dtype=np.int64)))
    res, wit = Eliminator(domains, factors, False, table_cap).run((), with_witness=True)
    assert wit is not None
    side = frozenset(v for v in g.vertices if wit[v] == 1)
    return side, int(res.table.reshape(-1)[0])
