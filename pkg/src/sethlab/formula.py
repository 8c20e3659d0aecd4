"""Negation-normal-form expression trees.

An expression is a nested tuple:

* ``("c", value)`` constant
* ``("v", var, polarity)`` literal
* ``("and", children)`` / ``("or", children)`` with a tuple of children

The smart constructors fold constants and flatten nested operators, so every
expression they return is simplified.
"""

from __future__ import annotations

import sys
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .core import Circuit, CircuitBuilder, GateKind

Expr = tuple

TRUE: Expr = ("c", True)
FALSE: Expr = ("c", False)


def lit(var: int, polarity: bool = True) -> Expr:
    return ("v", var, polarity)


def _nary(op: str, children: Iterable[Expr]) -> Expr:
    absorbing = op == "or"
    flat: List[Expr] = []
    for ch in children:
        if ch[0] == "c":
            if ch[1] == absorbing:
                return ("c", absorbing)
            continue
        if ch[0] == op:
            flat.extend(ch[1])
        else:
            flat.append(ch)
    if not flat:
        return ("c", not absorbing)
    if len(flat) == 1:
        return flat[0]
    return (op, tuple(flat))


def conj(children: Iterable[Expr]) -> Expr:
    return _nary("and", children)


def disj(children: Iterable[Expr]) -> Expr:
    return _nary("or", children)


def substitute(e: Expr, values: Mapping[int, bool]) -> Expr:
    tag = e[0]
    if tag == "c":
        return e
    if tag == "v":
        if e[1] in values:
            return ("c", values[e[1]] == e[2])
        return e
    kids = [substitute(ch, values) for ch in e[1]]
    return conj(kids) if tag == "and" else disj(kids)


def replace_literals(e: Expr, table: Mapping[Tuple[int, bool], Expr]) -> Expr:
    tag = e[0]
    if tag == "c":
        return e
    if tag == "v":
        return table.get((e[1], e[2]), e)
    kids = [replace_literals(ch, table) for ch in e[1]]
    return conj(kids) if tag == "and" else disj(kids)


def evaluate(e: Expr, values: Mapping[int, bool]) -> bool:
    tag = e[0]
    if tag == "c":
        return e[1]
    if tag == "v":
        return values[e[1]] == e[2]
    if tag == "and":
        return all(evaluate(ch, values) for ch in e[1])
    return any(evaluate(ch, values) for ch in e[1])


def leaves(e: Expr) -> int:
    if e[0] in ("c", "v"):
        return 1
    return sum(leaves(ch) for ch in e[1])


def variables(e: Expr) -> set:
    if e[0] == "v":
        return {e[1]}
    if e[0] == "c":
        return set()
    out = set()
    for ch in e[1]:
        out |= variables(ch)
    return out


def binarize(e: Expr) -> Expr:
    """Split n-ary nodes into balanced binary trees (not re-flattened)."""
    if e[0] in ("c", "v"):
        return e
    kids = [binarize(ch) for ch in e[1]]
    while len(kids) > 2:
        nxt = [(e[0], (kids[i], kids[i + 1])) for i in range(0, len(kids) - 1, 2)]
        if len(kids) % 2:
            nxt.append(kids[-1])
        kids = nxt
    return (e[0], tuple(kids))


def from_circuit(c: Circuit, gate: Optional[int] = None) -> Expr:
    """Expand the cone of ``gate`` into an NNF tree (shared gates are duplicated)."""
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10000))
    memo: Dict[Tuple[int, bool], Expr] = {}

    def go(gid: int, neg: bool) -> Expr:
        key = (gid, neg)
        if key in memo:
            return memo[key]
        g = c.gates[gid]
        if g.kind is GateKind.INPUT:
            out = lit(g.var, not neg)
        elif g.kind is GateKind.CONST_TRUE:
            out = ("c", not neg)
        elif g.kind is GateKind.CONST_FALSE:
            out = ("c", neg)
        elif g.kind is GateKind.NOT:
            out = go(g.inputs[0], not neg)
        else:
            kids = [go(i, neg) for i in g.inputs]
            is_and = (g.kind is GateKind.AND) != neg
            out = conj(kids) if is_and else disj(kids)
        memo[key] = out
        return out

    try:
        return go(c.output if gate is None else gate, False)
    finally:
        sys.setrecursionlimit(limit)


def emit(b: CircuitBuilder, e: Expr, inputs: Optional[Mapping[int, int]] = None) -> int:
    """Write ``e`` into ``b`` as a fan-in-2 formula. ``inputs`` maps a variable to an existing gate."""
    stack: List[Tuple[Expr, bool]] = [(e, False)]
    results: List[int] = []
    while stack:
        node, done = stack.pop()
        tag = node[0]
        if tag == "c":
            results.append(b.const(node[1]))
        elif tag == "v":
            g = inputs[node[1]] if inputs is not None else b.input(node[1])
            results.append(g if node[2] else b.not_(g))
        elif not done:
            stack.append((node, True))
            for ch in reversed(node[1]):
                stack.append((ch, False))
        else:
            k = len(node[1])
            args = results[-k:]
            del results[-k:]
            results.append(b.tree(GateKind.AND if tag == "and" else GateKind.OR, args))
    return results[0]


def to_circuit(e: Expr, num_inputs: int) -> Circuit:
    b = CircuitBuilder(num_inputs)
    out = emit(b, e)
    return b.build(out)
