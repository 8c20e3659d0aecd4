"""Circuits, branching programs, formulas and weighted satisfiability.

Covers basis normalisation, Barrington's width-5 permutation programs, the
CNF encoding of a branching program with a pathwidth-5 remainder, the
bottom-up formula over a tree-depth modulator, the weight-k encodings in both
directions, formula balancing, and a logarithmic-depth threshold circuit for
Max-SAT.
"""

from __future__ import annotations

import math
from itertools import permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

from . import formula as fm
from .core import (BranchingProgram, CertKind, Circuit, CircuitBuilder, Clause, CnfInstance, Gate, GateKind,
                   InvalidInstance, Literal, StructureCertificate, forest_levels, is_formula,
                   verify_certificate)

Perm = Tuple[int, ...]


# -------------------------------------------------------------- plumbing

def prune(c: Circuit) -> Circuit:
    """Drop gates that do not feed the output and renumber."""
    live = c.reachable()
    remap: Dict[int, int] = {}
    gates = []
    for gid, g in enumerate(c.gates):
        if live[gid]:
            remap[gid] = len(gates)
            gates.append(Gate(g.kind, tuple(remap[i] for i in g.inputs), g.var))
    names = {remap[g]: n for g, n in c.names.items() if g in remap}
    return Circuit(tuple(gates), remap[c.output], c.num_inputs, c.fan_in_bound, names)


def embed(b: CircuitBuilder, c: Circuit, inputs: Dict[int, int], prefix: str = "") -> int:
    """Copy ``c`` into ``b`` with input variables wired to existing gates; returns the output gate."""
    remap: Dict[int, int] = {}
    live = c.reachable()
    for gid, g in enumerate(c.gates):
        if not live[gid]:
            continue
        k = g.kind
        if k is GateKind.INPUT:
            remap[gid] = inputs[g.var]
        elif k is GateKind.CONST_TRUE or k is GateKind.CONST_FALSE:
            remap[gid] = b.const(k is GateKind.CONST_TRUE)
        else:
            name = f"{prefix}{c.names[gid]}" if gid in c.names else None
            remap[gid] = b._add(Gate(k, tuple(remap[i] for i in g.inputs)), name)
    return remap[c.output]


def is_and_not_basis(c: Circuit) -> bool:
    live = c.reachable()
    for gid, g in enumerate(c.gates):
        if not live[gid]:
            continue
        if g.kind is GateKind.OR or (g.kind is GateKind.AND and len(g.inputs) != 2):
            return False
    return True


def is_nnf_basis(c: Circuit) -> bool:
    live = c.reachable()
    for gid, g in enumerate(c.gates):
        if not live[gid]:
            continue
        if g.kind in (GateKind.AND, GateKind.OR) and len(g.inputs) != 2:
            return False
        if g.kind is GateKind.NOT and c.gates[g.inputs[0]].kind is not GateKind.INPUT:
            return False
    return True


def normalize_circuit(c: Circuit, basis: str = "and-not") -> Circuit:
    """Rewrite into fan-in-2 ``and-not`` ({AND, NOT}) or ``nnf`` ({AND, OR}, NOT only on inputs).

    Every gate is represented by a pair (value, negation), so a depth-d fan-in-2
    circuit becomes depth at most 2d+1 in ``and-not`` and d+1 in ``nnf``.
    """
    if basis not in ("and-not", "nnf"):
        raise ValueError(f"unknown basis {basis}")
    if (basis == "and-not" and is_and_not_basis(c)) or (basis == "nnf" and is_nnf_basis(c)):
        return c
    b = CircuitBuilder(c.num_inputs)
    pos: Dict[int, Optional[int]] = {}
    neg: Dict[int, Optional[int]] = {}

    def get(table, other, gid):
        if table[gid] is None:
            table[gid] = b.not_(other[gid])
        return table[gid]

    def p(gid):
        return get(pos, neg, gid)

    def n(gid):
        if basis == "nnf" and neg[gid] is None:
            neg[gid] = b.not_(pos[gid])
            return neg[gid]
        return get(neg, pos, gid)

    live = c.reachable()
    for gid, g in enumerate(c.gates):
        if not live[gid]:
            continue
        k = g.kind
        if k is GateKind.INPUT:
            pos[gid], neg[gid] = b.input(g.var), None
        elif k in (GateKind.CONST_TRUE, GateKind.CONST_FALSE):
            val = k is GateKind.CONST_TRUE
            pos[gid], neg[gid] = b.const(val), b.const(not val)
        elif k is GateKind.NOT:
            a = g.inputs[0]
            pos[gid], neg[gid] = neg[a], pos[a]
            if pos[gid] is None:
                pos[gid] = n(a)
            if neg[gid] is None:
                neg[gid] = p(a)
        else:
            is_and = k is GateKind.AND
            if basis == "and-not":
                if is_and:
                    pos[gid], neg[gid] = b.and_tree([p(i) for i in g.inputs]), None
                else:
                    pos[gid], neg[gid] = None, b.and_tree([n(i) for i in g.inputs])
            else:
                mk_pos = b.and_tree if is_and else b.or_tree
                mk_neg = b.or_tree if is_and else b.and_tree
                pos[gid] = mk_pos([p(i) for i in g.inputs])
                neg[gid] = mk_neg([n(i) for i in g.inputs])
    out = p(c.output)
    return prune(b.build(out, fan_in_bound=2))


# ------------------------------------------------------------ Barrington

IDENTITY: Perm = (0, 1, 2, 3, 4)
SIGMA: Perm = (1, 2, 3, 4, 0)


def compose(f: Perm, g: Perm) -> Perm:
    """f after g."""
    return tuple(f[g[i]] for i in range(5))


def inverse(p: Perm) -> Perm:
    out = [0] * 5
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def is_five_cycle(p: Perm) -> bool:
    x, steps = 0, 0
    while True:
        x = p[x]
        steps += 1
        if x == 0:
            return steps == 5


def conjugator(src: Perm, dst: Perm) -> Perm:
    """theta with theta . src . theta^-1 == dst, both 5-cycles."""
    theta = [0] * 5
    a = b = 0
    for _ in range(5):
        theta[a] = b
        a, b = src[a], dst[b]
    return tuple(theta)


def _find_commutator_pair() -> Tuple[Perm, Perm]:
    cycles = [p for p in permutations(range(5)) if is_five_cycle(p)]
    for a in cycles:
        for b in cycles:
            if is_five_cycle(compose(inverse(b), compose(inverse(a), compose(b, a)))):
                return a, b
    raise AssertionError("no commuting pair")


ALPHA, BETA = _find_commutator_pair()

Instruction = Tuple[int, Perm, Perm]


def _conj(prog: List[Instruction], theta: Perm) -> List[Instruction]:
    if theta == IDENTITY:
        return prog
    ti = inverse(theta)
    return [(v, compose(theta, compose(f, ti)), compose(theta, compose(t, ti))) for v, f, t in prog]


def _inv(prog: List[Instruction]) -> List[Instruction]:
    return [(v, inverse(f), inverse(t)) for v, f, t in reversed(prog)]


def program_composite(prog: Sequence[Instruction], values: Dict[int, bool]) -> Perm:
    p = IDENTITY
    for v, f, t in prog:
        p = compose(t if values[v] else f, p)
    return p


def permutation_program(c: Circuit) -> List[Instruction]:
    """A program whose composite is SIGMA on accepted inputs and the identity otherwise."""
    if c.num_inputs < 1:
        raise ValueError("at least one input variable is needed to label instructions")
    if not is_and_not_basis(c):
        raise ValueError("circuit must use the fan-in-2 {AND, NOT} basis; normalize it first")
    to_alpha = conjugator(SIGMA, ALPHA)
    to_beta = conjugator(SIGMA, BETA)
    commutator = compose(inverse(BETA), compose(inverse(ALPHA), compose(BETA, ALPHA)))
    back = conjugator(commutator, SIGMA)
    sigma_inv = inverse(SIGMA)
    to_sigma_from_inv = conjugator(sigma_inv, SIGMA)
    live = c.reachable()
    progs: Dict[int, List[Instruction]] = {}
    for gid, g in enumerate(c.gates):
        if not live[gid]:
            continue
        k = g.kind
        if k is GateKind.INPUT:
            progs[gid] = [(g.var, IDENTITY, SIGMA)]
        elif k is GateKind.CONST_TRUE:
            progs[gid] = [(1, SIGMA, SIGMA)]
        elif k is GateKind.CONST_FALSE:
            progs[gid] = [(1, IDENTITY, IDENTITY)]
        elif k is GateKind.NOT:
            base = list(progs[g.inputs[0]])
            v, f, t = base[-1]
            base[-1] = (v, compose(sigma_inv, f), compose(sigma_inv, t))
            progs[gid] = _conj(base, to_sigma_from_inv)
        else:
            p1 = _conj(progs[g.inputs[0]], to_alpha)
            p2 = _conj(progs[g.inputs[1]], to_beta)
            progs[gid] = _conj(p1 + p2 + _inv(p1) + _inv(p2), back)
    return progs[c.output]


def program_to_bp(prog: Sequence[Instruction], num_inputs: int) -> BranchingProgram:
    """Layered width-5 program; only positions reachable from the start are kept."""
    ids: Dict[Tuple[int, int], int] = {(0, 0): 0}
    layers: List[List[int]] = [[0]]
    positions = [0]
    arcs: List[Tuple[int, int, bool]] = []
    labels: Dict[int, int] = {}
    last = len(prog)
    accept_pos = SIGMA[0]
    for t, (v, f, tr) in enumerate(prog):
        nxt: List[int] = []
        for j in positions:
            labels[ids[(t, j)]] = v
            for val, perm in ((False, f), (True, tr)):
                k = perm[j]
                if t + 1 == last and k != accept_pos:
                    k = 0
                if (t + 1, k) not in ids:
                    ids[(t + 1, k)] = len(ids)
                    nxt.append(k)
                arcs.append((ids[(t, j)], ids[(t + 1, k)], val))
        if t + 1 == last:
            for k in (0, accept_pos):
                if (t + 1, k) not in ids:
                    ids[(t + 1, k)] = len(ids)
                    nxt.append(k)
        positions = sorted(nxt)
        layers.append([ids[(t + 1, j)] for j in positions])
    return BranchingProgram(num_inputs, tuple(tuple(l) for l in layers), 5, 0,
                            ids[(last, accept_pos)], ids[(last, 0)], labels, tuple(arcs))


def barrington_transform(c: Circuit) -> BranchingProgram:
    """Width-5 branching program; length (instruction layers) at most 4^depth."""
    return program_to_bp(permutation_program(c), c.num_inputs)


# ------------------------------------------------- BP -> CNF, pathwidth 5

def _code_clause(vars3: Sequence[int], code: int) -> List[Literal]:
    """Literals that are all False exactly when ``vars3`` spell ``code`` (MSB first)."""
    return [Literal(v, not bool(code >> (2 - i) & 1)) for i, v in enumerate(vars3)]


def bp_to_cnf_pw5(bp: BranchingProgram) -> CnfInstance:
    if bp.width > 5 or any(len(l) > 5 for l in bp.layers):
        raise InvalidInstance("branching program wider than 5")
    n = bp.num_inputs
    y = [[n + 3 * t + j + 1 for j in range(3)] for t in range(len(bp.layers))]
    code: Dict[int, int] = {}
    for t, layer in enumerate(bp.layers):
        for i, v in enumerate(layer):
            code[v] = i
    clauses: List[Clause] = []
    for t, layer in enumerate(bp.layers):
        for c in range(len(layer), 8):
            clauses.append(Clause(tuple(_code_clause(y[t], c))))
    nxt = bp.successor()
    for t, layer in enumerate(bp.layers[:-1]):
        for u in layer:
            x = bp.labels[u]
            guard = _code_clause(y[t], code[u])
            for val, target in ((False, nxt[u][0]), (True, nxt[u][1])):
                cond = Literal(x, not val)
                tc = code[target]
                for j in range(3):
                    clauses.append(Clause(tuple(guard + [cond, Literal(y[t + 1][j], bool(tc >> (2 - j) & 1))])))
    for j in range(3):
        clauses.append(Clause((Literal(y[0][j], bool(code[bp.start] >> (2 - j) & 1)),)))
        clauses.append(Clause((Literal(y[-1][j], bool(code[bp.accept] >> (2 - j) & 1)),)))
    bags = [set(y[t]) | set(y[t + 1]) for t in range(len(bp.layers) - 1)] or [set(y[0])]
    cert = StructureCertificate.path_decomposition(range(1, n + 1), bags, 5)
    return CnfInstance(n + 3 * len(bp.layers), tuple(clauses), cert,
                       (f"inputs 1..{n}; layer t uses variables {n}+3t+1..{n}+3t+3",))


# ------------------------------------------- tree-depth modulator formula

def _clause_expr(c: Clause) -> fm.Expr:
    return fm.disj(fm.lit(l.variable, l.polarity) for l in c.literals)


def build_psi_r_expr(cnf: CnfInstance) -> Tuple[fm.Expr, List[int]]:
    """NNF expression over the original modulator variable numbers, and the sorted modulator."""
    cert = cnf.certificate
    if cert is None or cert.kind is not CertKind.TREE_DEPTH_FOREST or not verify_certificate(cnf):
        raise InvalidInstance("a verified tree-depth forest certificate is required")
    modulator = sorted(cert.modulator)
    parent = cert.parent_map
    level = forest_levels(parent) or {}
    clauses = [c for c in cnf.clauses if not c.is_tautology()]
    pad_var = cnf.num_variables + 1
    padded = []
    for c in clauses:
        if c.variables <= cert.modulator:
            padded.append(Clause(c.literals + (Literal(pad_var, True),)))
            padded.append(Clause(c.literals + (Literal(pad_var, False),)))
        else:
            padded.append(c)
    if any(pad_var in c.variables for c in padded):
        parent = {**parent, pad_var: 0}
        level = {**level, pad_var: 1}
    children: Dict[int, List[int]] = {v: [] for v in parent}
    for v, p in parent.items():
        if p:
            children[p].append(v)
    own: Dict[int, List[Clause]] = {v: [] for v in parent}
    for c in padded:
        deepest = max((v for v in c.variables if v in parent), key=lambda v: level[v])
        own[deepest].append(c)
    psi: Dict[int, fm.Expr] = {}
    for v in sorted(parent, key=lambda u: -level[u]):
        branches = []
        for val in (False, True):
            parts = [fm.substitute(_clause_expr(c), {v: val}) for c in own[v]]
            parts += [fm.substitute(psi[ch], {v: val}) for ch in children[v]]
            branches.append(fm.conj(parts))
        psi[v] = fm.disj(branches)
    roots = sorted(v for v, p in parent.items() if p == 0)
    return fm.conj(psi[r] for r in roots), modulator


def build_psi_r(cnf: CnfInstance) -> Circuit:
    """Formula whose inputs ``1..|M|`` are the modulator variables in increasing order.

    It accepts exactly the modulator assignments that extend to a model of ``cnf``.
    """
    expr, modulator = build_psi_r_expr(cnf)
    index = {v: i + 1 for i, v in enumerate(modulator)}
    expr = fm.replace_literals(expr, {(v, pol): fm.lit(index[v], pol) for v in modulator for pol in (False, True)})
    b = CircuitBuilder(len(modulator))
    out = fm.emit(b, expr)
    for v, i in index.items():
        if i in b._inputs:
            b.names[b._inputs[i]] = f"x{v}"
    return b.build(out)


# --------------------------------------------------- weight-k encodings

def balanced_groups(items: Sequence[int], k: int) -> List[List[int]]:
    """Contiguous groups with sizes differing by at most one."""
    base, extra = divmod(len(items), k)
    out, pos = [], 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        out.append(list(items[pos:pos + size]))
        pos += size
    return out


def formula_to_weight_k(psi: Circuit, k: int) -> Tuple[Circuit, int]:
    """Selector encoding: one input ``x_{i,sigma}`` per group ``i`` and group assignment ``sigma``.

    Weight-k models of the output correspond one-to-one to models of ``psi``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    groups = balanced_groups(list(range(1, psi.num_inputs + 1)), k)
    selector: List[List[Tuple[Tuple[bool, ...], int]]] = []
    nxt = 1
    for grp in groups:
        row = []
        for sigma in product((False, True), repeat=len(grp)):
            row.append((sigma, nxt))
            nxt += 1
        selector.append(row)
    table: Dict[Tuple[int, bool], fm.Expr] = {}
    for gi, grp in enumerate(groups):
        for pos, y in enumerate(grp):
            for pol in (False, True):
                table[(y, pol)] = fm.disj(fm.lit(x) for sigma, x in selector[gi] if sigma[pos] == pol)
    body = fm.replace_literals(fm.from_circuit(psi), table)
    onehot = [fm.disj(fm.lit(x) for _, x in row) for row in selector]
    b = CircuitBuilder(nxt - 1)
    for gi, row in enumerate(selector):
        for sigma, x in row:
            b.names[b.input(x)] = f"x_{gi + 1},{''.join('1' if s else '0' for s in sigma) or 'e'}"
    out = fm.emit(b, fm.conj(onehot + [body]))
    return b.build(out), k


def balance_expr(e: fm.Expr) -> fm.Expr:
    """Depth at most 3*ceil(log2 L) for an NNF tree with L leaves (literals at depth 0)."""
    e = fm.binarize(e)

    def size(x):
        return 1 if x[0] in ("c", "v") else sum(size(ch) for ch in x[1])

    def go(x) -> fm.Expr:
        total = size(x)
        if total <= 2 or x[0] in ("c", "v"):
            return x
        path = [x]
        node = x
        while size(node) > total / 2:
            kids = node[1]
            node = max(kids, key=size)
            path.append(node)
        v = path[-1]
        p = path[-2]
        w = p[1][0] if p[1][1] is v else p[1][1]
        # context with the hole at p
        def plug(value: fm.Expr) -> fm.Expr:
            out = value
            for anc, child in zip(reversed(path[:-2]), reversed(path[1:-1])):
                other = anc[1][0] if anc[1][1] is child else anc[1][1]
                out = fm.conj([out, other]) if anc[0] == "and" else fm.disj([out, other])
            return out
        c0 = go(fm.binarize(plug(fm.FALSE)))
        c1 = go(fm.binarize(plug(fm.TRUE)))
        inner_v, inner_w = go(v), go(w)
        inner = (p[0], (inner_v, inner_w))
        if c0 == fm.FALSE and c1 == fm.TRUE:
            return inner
        hole = _mk2("and", c1, inner)
        return _mk2("or", c0, hole)

    return go(e)


def _mk2(op: str, a: fm.Expr, b: fm.Expr) -> fm.Expr:
    """Binary node with constant folding but no flattening, to keep the depth shape."""
    absorbing = op == "or"
    for x, y in ((a, b), (b, a)):
        if x[0] == "c":
            return ("c", absorbing) if x[1] == absorbing else y
    return (op, (a, b))


def expr_depth(e: fm.Expr) -> int:
    if e[0] == "c":
        return 0
    if e[0] == "v":
        return 0 if e[2] else 1
    return 1 + max(expr_depth(ch) for ch in e[1])


def balance_formula(f: Circuit) -> Circuit:
    if not is_formula(f):
        raise InvalidInstance("balancing needs a formula (internal out-degree at most 1)")
    e = balance_expr(fm.from_circuit(f))
    b = CircuitBuilder(f.num_inputs)
    out = _emit_shape(b, e)
    return b.build(out, fan_in_bound=2)


def _emit_shape(b: CircuitBuilder, e: fm.Expr) -> int:
    """Emit binary nodes exactly as shaped (no re-flattening)."""
    tag = e[0]
    if tag == "c":
        return b.const(e[1])
    if tag == "v":
        g = b.input(e[1])
        return g if e[2] else b.not_(g)
    kids = [_emit_shape(b, ch) for ch in e[1]]
    return b.tree(GateKind.AND if tag == "and" else GateKind.OR, kids)


def _bits(n: int) -> int:
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


def _decoder(b: CircuitBuilder, bits: Sequence[int], value: int, memo: Dict) -> int:
    key = (tuple(bits), value)
    if key not in memo:
        w = len(bits)
        lits = []
        for i, g in enumerate(bits):
            want = bool(value >> (w - 1 - i) & 1)
            lits.append(g if want else _neg(b, g, memo))
        memo[key] = b.and_tree(lits)
    return memo[key]


def _neg(b: CircuitBuilder, g: int, memo: Dict) -> int:
    key = ("not", g)
    if key not in memo:
        memo[key] = b.not_(g)
    return memo[key]


def _xor(b: CircuitBuilder, x: int, y: int, memo: Dict) -> int:
    return b.or_(b.and_(x, _neg(b, y, memo)), b.and_(_neg(b, x, memo), y))


def weight_k_formula_to_circuit(phi: Circuit, k: int) -> Circuit:
    """Circuit on ``k*ceil(log2 N)`` inputs, satisfiable iff ``phi`` has a weight-k model.

    Groups of input bits name the True variables. Each group must name an
    existing variable (code < N) and different groups must differ.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if not is_formula(phi):
        raise InvalidInstance("phi must be a formula")
    N = phi.num_inputs
    w = _bits(N)
    b = CircuitBuilder(k * w)
    groups = [[b.input(j * w + i + 1) for i in range(w)] for j in range(k)]
    for j, grp in enumerate(groups):
        for i, g in enumerate(grp):
            b.names[g] = f"g{j + 1}.bit{i}"
    memo: Dict = {}
    selected: Dict[int, int] = {}
    for x in range(1, N + 1):
        selected[x] = b.or_tree([_decoder(b, grp, x - 1, memo) for grp in groups], name=f"x{x}")
    body = _emit_shape_inputs(b, balance_expr(fm.from_circuit(phi)), selected, memo)
    checks = [body]
    if N < 2 ** w:
        for grp in groups:
            checks.append(b.or_tree([_decoder(b, grp, x, memo) for x in range(N)]))
    for j in range(k):
        for jj in range(j + 1, k):
            checks.append(b.or_tree([_xor(b, x, y, memo) for x, y in zip(groups[j], groups[jj])]))
    out = b.and_tree(checks)
    return b.build(out)


def _emit_shape_inputs(b: CircuitBuilder, e: fm.Expr, inputs: Dict[int, int], memo: Dict) -> int:
    tag = e[0]
    if tag == "c":
        return b.const(e[1])
    if tag == "v":
        g = inputs[e[1]]
        return g if e[2] else _neg(b, g, memo)
    kids = [_emit_shape_inputs(b, ch, inputs, memo) for ch in e[1]]
    return b.tree(GateKind.AND if tag == "and" else GateKind.OR, kids)


# -------------------------------------------- Max-SAT threshold circuit

def _full_adder(b: CircuitBuilder, x: int, y: int, z: int, memo: Dict) -> Tuple[int, int]:
    s1 = _xor(b, x, y, memo)
    s = _xor(b, s1, z, memo)
    carry = b.or_(b.and_(x, y), b.and_(s1, z))
    return s, carry


def _half_adder(b: CircuitBuilder, x: int, y: int, memo: Dict) -> Tuple[int, int]:
    return _xor(b, x, y, memo), b.and_(x, y)


def threshold_at_least(b: CircuitBuilder, bits: Sequence[int], t: int) -> int:
    """Gate that is True iff at least ``t`` of ``bits`` are True (carry-save tree, depth O(log m))."""
    m = len(bits)
    if t <= 0:
        return b.const(True)
    if t > m:
        return b.const(False)
    width = max(1, m.bit_length())
    while (1 << width) <= m:
        width += 1
    offset = (1 << width) - t
    cols: List[List[int]] = [[] for _ in range(width + 2)]
    cols[0] = list(bits)
    for i in range(width + 1):
        if offset >> i & 1:
            cols[i].append(b.const(True))
    memo: Dict = {}
    while any(len(col) > 2 for col in cols):
        new: List[List[int]] = [[] for _ in range(len(cols) + 1)]
        for i, col in enumerate(cols):
            j = 0
            while len(col) - j >= 3:
                s, c = _full_adder(b, col[j], col[j + 1], col[j + 2], memo)
                new[i].append(s)
                new[i + 1].append(c)
                j += 3
            new[i].extend(col[j:])
        cols = new
    carry = None
    out_bits = []
    for i in range(width + 1):
        col = list(cols[i]) if i < len(cols) else []
        if carry is not None:
            col.append(carry)
        if not col:
            out_bits.append(b.const(False))
            carry = None
        elif len(col) == 1:
            out_bits.append(col[0])
            carry = None
        elif len(col) == 2:
            s, carry = _half_adder(b, col[0], col[1], memo)
            out_bits.append(s)
        else:
            s, carry = _full_adder(b, col[0], col[1], col[2], memo)
            out_bits.append(s)
    # count + offset < 2^(width+1), so bit ``width`` alone decides count >= t
    return out_bits[width]


def maxsat_to_lindepth_circuit(cnf: CnfInstance, t: int) -> Circuit:
    """n-input circuit that is satisfiable iff some assignment satisfies at least ``t`` clauses.

    Clause weights are honoured as multiplicities.
    """
    b = CircuitBuilder(cnf.num_variables)
    memo: Dict = {}
    bits = []
    for ci, c in enumerate(cnf.clauses):
        lits = [b.input(l.variable) if l.polarity else _neg(b, b.input(l.variable), memo) for l in c.literals]
        g = b.or_tree(lits, name=f"clause{ci + 1}")
        bits.extend([g] * c.weight)
    out = threshold_at_least(b, bits, t)
    return prune(b.build(out))
