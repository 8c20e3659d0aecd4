"""Circuit satisfiability, Horn backdoors and weighted circuit satisfiability."""

from __future__ import annotations

from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .core import (BaseClass, Circuit, CircuitBuilder, Clause, CnfInstance, GateKind, InvalidInstance, Literal,
                   StructureCertificate)
from .reductions_circuit import _bits, _decoder, _neg, _xor, balanced_groups, embed, normalize_circuit
from .reductions_reach import _backdoor


class _Folding:
    """Thin wrapper over a builder that folds constants in AND/OR trees."""

    def __init__(self, b: CircuitBuilder):
        self.b = b

    def tree(self, kind: GateKind, args: Sequence[int], name: Optional[str] = None) -> int:
        absorbing = kind is GateKind.OR
        kept = []
        for a in args:
            c = self.b.is_const(a)
            if c is None:
                kept.append(a)
            elif c == absorbing:
                return self.b.const(absorbing)
        return self.b.tree(kind, kept, name)


def propagation_gate_name(var: int, t: int) -> str:
    return f"x{var}@{t}"


def hornbackdoor_to_circuit(cnf: CnfInstance) -> Circuit:
    """Circuit over the backdoor (inputs ``1..b`` in increasing variable order).

    For each of the ``n`` non-backdoor variables occurring in ``cnf``, gates
    ``x[i, t]`` for ``t = 0..n+1`` replay forward chaining from all-False; a
    copy of the formula over ``x[i, n+1]`` and the inputs forms the output.
    """
    backdoor = _backdoor(cnf, BaseClass.HORN)
    bset = set(backdoor)
    idx = {v: i + 1 for i, v in enumerate(backdoor)}
    xs = sorted({l.variable for c in cnf.clauses for l in c.literals} - bset)
    n = len(xs)
    b = CircuitBuilder(len(backdoor))
    f = _Folding(b)
    for v, i in idx.items():
        b.names[b.input(i)] = f"x{v}"
    memo: Dict = {}

    def backdoor_lit(l: Literal) -> int:
        g = b.input(idx[l.variable])
        return g if l.polarity else _neg(b, g, memo)

    def negate(g: int) -> int:
        val = b.is_const(g)
        return _neg(b, g, memo) if val is None else b.const(not val)

    heads: Dict[int, List[Clause]] = {v: [] for v in xs}
    for c in cnf.clauses:
        for l in c.literals:
            if l.polarity and l.variable not in bset:
                heads[l.variable].append(c)
    cur = {v: b.const(False) for v in xs}
    for t in range(1, n + 2):
        nxt = {}
        for v in xs:
            forcing = []
            for c in heads[v]:
                body = [cur[l.variable] for l in c.literals if l.variable not in bset and not l.polarity]
                body += [backdoor_lit(l.negate()) for l in c.literals if l.variable in bset]
                forcing.append(f.tree(GateKind.AND, body))
            g = f.tree(GateKind.OR, [cur[v]] + forcing)
            if b.is_const(g) is None and g not in b.names:
                b.names[g] = propagation_gate_name(v, t)
            nxt[v] = g
        cur = nxt
    clause_gates = []
    for c in cnf.clauses:
        lits = []
        for l in c.literals:
            if l.variable in bset:
                lits.append(backdoor_lit(l))
            else:
                lits.append(cur[l.variable] if l.polarity else negate(cur[l.variable]))
        clause_gates.append(f.tree(GateKind.OR, lits))
    out = f.tree(GateKind.AND, clause_gates)
    return b.build(out)


def circuit_to_hornbackdoor(c: Circuit) -> CnfInstance:
    """Dual-rail CNF: gate ``g`` gets ``g^p`` and ``g^n``; inputs ``1..n`` form a Horn backdoor.

    Negations are first pushed to the inputs. Gate variables follow the
    inputs in gate order, ``g^p`` before ``g^n``.
    """
    c = normalize_circuit(c, "nnf")
    n = c.num_inputs
    live = c.reachable()
    var: Dict[int, Tuple[int, int]] = {}
    nxt = n
    for gid in range(len(c.gates)):
        if live[gid]:
            var[gid] = (nxt + 1, nxt + 2)
            nxt += 2
    clauses: List[Clause] = []

    def cl(*lits: Literal) -> None:
        clauses.append(Clause(tuple(dict.fromkeys(lits))))

    def P(g: int, pol: bool = True) -> Literal:
        return Literal(var[g][0], pol)

    def N(g: int, pol: bool = True) -> Literal:
        return Literal(var[g][1], pol)

    for gid, g in enumerate(c.gates):
        if not live[gid]:
            continue
        cl(P(gid, False), N(gid, False))
        k = g.kind
        if k is GateKind.INPUT:
            x = g.var
            cl(Literal(x, False), P(gid)), cl(Literal(x, True), P(gid, False))
            cl(Literal(x, False), N(gid, False)), cl(Literal(x, True), N(gid))
        elif k is GateKind.NOT:
            x = c.gates[g.inputs[0]].var
            cl(Literal(x, False), P(gid, False)), cl(Literal(x, True), P(gid))
            cl(Literal(x, False), N(gid)), cl(Literal(x, True), N(gid, False))
        elif k is GateKind.CONST_TRUE:
            cl(P(gid)), cl(N(gid, False))
        elif k is GateKind.CONST_FALSE:
            cl(P(gid, False)), cl(N(gid))
        elif k is GateKind.AND:
            a, b2 = g.inputs
            cl(P(a, False), P(b2, False), P(gid))
            cl(N(a, False), N(gid)), cl(N(b2, False), N(gid))
            cl(P(gid, False), P(a)), cl(P(gid, False), P(b2))
        else:
            a, b2 = g.inputs
            cl(N(a, False), N(b2, False), N(gid))
            cl(P(a, False), P(gid)), cl(P(b2, False), P(gid))
            cl(N(gid, False), N(a)), cl(N(gid, False), N(b2))
    cl(P(c.output))
    cl(N(c.output, False))
    cert = StructureCertificate.backdoor(range(1, n + 1), BaseClass.HORN)
    return CnfInstance(nxt, tuple(clauses), cert)


def weightk_monotone_to_circuitsat(c: Circuit, k: int) -> Circuit:
    """Monotone circuit with a weight-k model iff ``c`` is satisfiable.

    Inputs are split into ``k`` balanced groups; each group assignment
    ``sigma`` gets a selector input ``g[i, sigma]`` (numbered group by group,
    assignments in lexicographic order). Old inputs and input negations become
    disjunctions of selectors, and one gate per group demands a selector.
    """
    if k < 1:
        raise ValueError("k must be positive")
    c = normalize_circuit(c, "nnf")
    groups = balanced_groups(list(range(1, c.num_inputs + 1)), k)
    sel: List[List[Tuple[Tuple[bool, ...], int]]] = []
    count = 0
    for grp in groups:
        row = []
        for sigma in product((False, True), repeat=len(grp)):
            count += 1
            row.append((sigma, count))
        sel.append(row)
    b = CircuitBuilder(count)
    for gi, row in enumerate(sel):
        for sigma, x in row:
            b.names[b.input(x)] = f"g{gi + 1},{''.join('1' if s else '0' for s in sigma) or 'e'}"
    pos: Dict[int, int] = {}
    neg: Dict[int, int] = {}
    for gi, grp in enumerate(groups):
        for p, v in enumerate(grp):
            pos[v] = b.or_tree([b.input(x) for sigma, x in sel[gi] if sigma[p]], name=f"x{v}")
            neg[v] = b.or_tree([b.input(x) for sigma, x in sel[gi] if not sigma[p]], name=f"not x{v}")
    remap: Dict[int, int] = {}
    live = c.reachable()
    for gid, g in enumerate(c.gates):
        if not live[gid]:
            continue
        if g.kind is GateKind.INPUT:
            remap[gid] = pos[g.var]
        elif g.kind is GateKind.NOT:
            remap[gid] = neg[c.gates[g.inputs[0]].var]
        elif g.kind in (GateKind.CONST_TRUE, GateKind.CONST_FALSE):
            remap[gid] = b.const(g.kind is GateKind.CONST_TRUE)
        else:
            remap[gid] = b._add(type(g)(g.kind, tuple(remap[i] for i in g.inputs)))
    picks = [b.or_tree([b.input(x) for _, x in row], name=f"t{gi + 1}") for gi, row in enumerate(sel)]
    out = b.and_tree(picks + [remap[c.output]])
    return b.build(out, fan_in_bound=2)


DEFAULT_INPUT_BUDGET = 64


def circuitsat_to_weightk(c: Circuit, k: int = 2, input_budget: int = DEFAULT_INPUT_BUDGET) -> Tuple[Circuit, int]:
    """Circuit on ``k*ceil(log2 n)`` inputs, satisfiable iff ``c`` has a weight-k model.

    Group ``j`` spells the index of the ``j``-th True input (MSB first). Codes
    at or above ``n`` are rejected by a per-group validity gate, since a padded
    dummy index would stand for fewer than ``k`` True inputs. Distinct groups
    must differ in some bit.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = c.num_inputs
    w = _bits(n)
    if k * w > input_budget:
        raise InvalidInstance(f"{k * w} inputs exceed the budget of {input_budget}")
    if k > n:
        b = CircuitBuilder(k * w)
        return b.build(b.const(False)), k
    b = CircuitBuilder(k * w)
    groups = [[b.input(j * w + i + 1) for i in range(w)] for j in range(k)]
    for j, grp in enumerate(groups):
        for i, g in enumerate(grp):
            b.names[g] = f"I{j + 1}.bit{i}"
    memo: Dict = {}
    inputs = {}
    for i in range(1, n + 1):
        terms = [_decoder(b, grp, i - 1, memo) for grp in groups]
        inputs[i] = b.or_tree(terms, name=f"c{i}")
    body = embed(b, c, inputs)
    checks = [body]
    if n < 2 ** w:
        for grp in groups:
            checks.append(b.or_tree([_decoder(b, grp, x, memo) for x in range(n)]))
    for j in range(k):
        for jj in range(j + 1, k):
            checks.append(b.or_tree([_xor(b, x, y, memo) for x, y in zip(groups[j], groups[jj])]))
    return b.build(b.and_tree(checks)), k
