"""Resolution over a tree-depth modulator's complement, hub elimination for
Max-SAT, and arity reduction to 3-CNF."""

from __future__ import annotations

from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .core import (CertKind, Clause, CnfInstance, InvalidInstance, Literal, SimpleGraph, StructureCertificate,
                   _components, forest_levels, primal_graph, verify_certificate)


def _key(c: Clause) -> FrozenSet[Literal]:
    return frozenset(c.literals)


def _dedup(clauses: Iterable[Clause]) -> List[Clause]:
    seen = set()
    out = []
    for c in clauses:
        lits = tuple(sorted(set(c.literals)))
        k = frozenset(lits)
        if k not in seen:
            seen.add(k)
            out.append(Clause(lits))
    return out


def exhaustive_resolve(cnf: CnfInstance, x: int) -> CnfInstance:
    """Add every non-tautological resolvent on ``x``, then drop clauses mentioning ``x``."""
    pos = [c for c in cnf.clauses if Literal(x, True) in c.literals]
    neg = [c for c in cnf.clauses if Literal(x, False) in c.literals]
    rest = [c for c in cnf.clauses if x not in c.variables]
    resolvents = []
    for p in pos:
        for q in neg:
            lits = set(p.literals) | set(q.literals)
            lits.discard(Literal(x, True))
            lits.discard(Literal(x, False))
            if any(l.negate() in lits for l in lits):
                continue
            resolvents.append(Clause(tuple(sorted(lits))))
    return CnfInstance(cnf.num_variables, tuple(_dedup(rest + resolvents)), None, cnf.notes)


def eliminate_treedepth_modulator(cnf: CnfInstance) -> CnfInstance:
    cert = cnf.certificate
    if cert is None or cert.kind is not CertKind.TREE_DEPTH_FOREST or not verify_certificate(cnf):
        raise InvalidInstance("a verified tree-depth forest certificate is required")
    level = forest_levels(cert.parent_map) or {}
    out = CnfInstance(cnf.num_variables, tuple(_dedup(c for c in cnf.clauses if not c.is_tautology())))
    for depth in range(cert.depth, 0, -1):
        for v in sorted(u for u, l in level.items() if l == depth):
            out = exhaustive_resolve(out, v)
    return out.with_certificate(None).with_notes(f"eliminated forest of depth {cert.depth}; variables ⊆ modulator")


def treedepth_elimination_bounds(inp: CnfInstance, out: CnfInstance) -> List[Tuple[str, int, int, bool]]:
    """Rows of (bound, claimed, observed, holds)."""
    c = inp.certificate.depth
    m = inp.num_clauses
    k = inp.max_arity
    rows = [("arity<=2^c*k", (2 ** c) * k, out.max_arity, out.max_arity <= (2 ** c) * k)]
    outside = {v for cl in out.clauses for v in cl.variables} - inp.certificate.modulator
    rows.append(("vars<=modulator", 0, len(outside), not outside))
    bound = m ** (2 ** c)
    rows.append(("clauses<=m^(2^c)", bound, out.num_clauses, out.num_clauses <= bound))
    return rows


def hub_to_treedepth_cert(cert: StructureCertificate, graph: Optional[SimpleGraph] = None) -> StructureCertificate:
    """Each hub component becomes a rooted path, so depth is at most sigma."""
    if cert.kind is not CertKind.HUB:
        raise InvalidInstance("hub certificate expected")
    comps: Sequence[Iterable[int]] = cert.components
    if graph is not None:
        comps = _components(set(graph.vertices) - cert.modulator, graph.adjacency())
    elif not comps:
        raise InvalidInstance("hub components unknown; pass the graph")
    parent: Dict[int, int] = {}
    depth = 0
    for comp in comps:
        chain = sorted(comp)
        for i, v in enumerate(chain):
            parent[v] = chain[i - 1] if i else 0
        depth = max(depth, len(chain))
    return StructureCertificate.tree_depth(cert.modulator, parent, max(depth, cert.sigma))


def eliminate_hub_maxsat(cnf: CnfInstance, pad: bool = True) -> Tuple[CnfInstance, int]:
    """Replace each hub component by clauses over its neighbours.

    Returns ``(out, offset)`` with ``maxsat(out) + offset == maxsat(cnf)``.
    With ``pad`` every component gets exactly ``delta`` neighbours by adding fresh
    dummy variables after ``n``.
    """
    cert = cnf.certificate
    if cert is None or cert.kind is not CertKind.HUB or not verify_certificate(cnf):
        raise InvalidInstance("a verified hub certificate is required")
    g = primal_graph(cnf)
    adj = g.adjacency()
    hub = cert.modulator
    comps = _components(set(g.vertices) - hub, adj)
    comp_of = {v: i for i, comp in enumerate(comps) for v in comp}
    touching: List[List[Clause]] = [[] for _ in comps]
    kept: List[Clause] = []
    for c in cnf.clauses:
        ids = {comp_of[v] for v in c.variables if v in comp_of}
        if ids:
            touching[ids.pop()].append(c)
        else:
            kept.append(c)
    next_var = cnf.num_variables
    new: List[Clause] = []
    offset = 0
    dummies: List[int] = []
    for comp, clauses in zip(comps, touching):
        nbrs = sorted({w for u in comp for w in adj[u]} & hub)
        weights = []
        for s in product((False, True), repeat=len(nbrs)):
            fixed = dict(zip(nbrs, s))
            best = 0
            for a in product((False, True), repeat=len(comp)):
                vals = {**fixed, **dict(zip(comp, a))}
                best = max(best, sum(c.weight for c in clauses if c.satisfied_by(vals)))
            weights.append(best)
        if pad and len(nbrs) < cert.delta:
            extra = list(range(next_var + 1, next_var + 1 + cert.delta - len(nbrs)))
            next_var += len(extra)
            dummies += extra
            nbrs = nbrs + extra
            weights = [w for w in weights for _ in range(2 ** len(extra))]
        if not nbrs:
            offset += weights[0]
            continue
        total = sum(weights)
        for s, ws in zip(product((False, True), repeat=len(nbrs)), weights):
            w = total - ws
            if w > 0:
                new.append(Clause(tuple(Literal(v, not b) for v, b in zip(nbrs, s)), w))
        offset -= (2 ** len(nbrs) - 2) * total
    notes = [f"hub elimination offset {offset}"]
    if dummies:
        notes.append(f"dummy neighbours {dummies[0]}..{dummies[-1]}")
    n_out = next_var
    rest = [v for v in range(1, n_out + 1) if v not in hub and v not in dummies]
    out_cert = StructureCertificate.hub(hub | set(dummies), (), 1 if rest else 0, 0)
    out = CnfInstance(n_out, tuple(kept + new), out_cert, tuple(notes))
    return out, offset


def _path_forest(path: Sequence[int], attach: int, parent: Dict[int, int]) -> int:
    """Hang ``path`` below ``attach`` as a balanced tree; returns its depth."""
    if not path:
        return 0
    mid = len(path) // 2
    parent[path[mid]] = attach
    return 1 + max(_path_forest(path[:mid], path[mid], parent), _path_forest(path[mid + 1:], path[mid], parent))


def reduce_arity_to_3(cnf: CnfInstance) -> CnfInstance:
    """Split long clauses into chains with fresh variables; the certificate is updated to match."""
    cert = cnf.certificate
    notes = list(cnf.notes)
    if cert is not None and cert.kind is CertKind.HUB:
        cert = hub_to_treedepth_cert(cert, primal_graph(cnf))
    if cert is not None and cert.kind is CertKind.BACKDOOR:
        notes.append("backdoor certificate dropped by arity reduction")
        cert = None
    modulator = cert.modulator if cert is not None else frozenset()
    n = cnf.num_variables
    clauses: List[Clause] = []
    chains: List[Tuple[FrozenSet[int], List[int]]] = []
    for c in cnf.clauses:
        r = len(c.literals)
        if r <= 3:
            clauses.append(c)
            continue
        zs = list(range(n + 1, n + r - 2))
        n += r - 3
        lits = c.literals
        clauses.append(Clause((lits[0], lits[1], Literal(zs[0], True)), c.weight))
        for i in range(1, r - 3):
            clauses.append(Clause((Literal(zs[i - 1], False), lits[i + 1], Literal(zs[i], True)), c.weight))
        clauses.append(Clause((Literal(zs[-1], False), lits[-2], lits[-1]), c.weight))
        chains.append((c.variables - modulator, zs))
    if cert is None or not chains:
        new_cert = cert
    elif cert.kind is CertKind.PATH_DECOMPOSITION:
        bags = [set(b) for b in cert.bags]
        for k, zs in chains:
            at = next((i for i, b in enumerate(bags) if k <= b), None)
            base = bags[at] if at is not None else set()
            block = [base | {zs[i], zs[i + 1]} for i in range(len(zs) - 1)] or [base | {zs[0]}]
            pos = at + 1 if at is not None else len(bags)
            bags[pos:pos] = block
        new_cert = StructureCertificate.path_decomposition(cert.modulator, bags, cert.width + 2)
    else:
        parent = cert.parent_map
        level = forest_levels(parent) or {}
        extra = 0
        for k, zs in chains:
            attach = max(k, key=lambda v: (level[v], v)) if k else 0
            extra = max(extra, _path_forest(zs, attach, parent))
        new_cert = StructureCertificate.tree_depth(cert.modulator, parent, cert.depth + extra)
    return CnfInstance(n, tuple(clauses), new_cert, tuple(notes))
