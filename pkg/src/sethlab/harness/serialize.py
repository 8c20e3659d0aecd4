"""JSON instance bundles and DIMACS import/export with ``c cert`` directives."""

from __future__ import annotations

import json
from typing import Any, Dict, List, Optional, Tuple

from ..core import (AnnotatedDag, BaseClass, BranchingProgram, CertKind, Circuit, Clause, CnfInstance, Gate,
                    GateKind, InvalidInstance, Literal, SimpleGraph, StructureCertificate)
from ..reductions_apps import KncInstance
from .instances import Instance

FORMAT = "sethlab-bundle"
VERSION = 1


class ParseError(ValueError):
    """Malformed input; ``line`` and ``column`` are 1-based, 0 when unknown."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message, self.line, self.column = message, line, column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


# ------------------------------------------------------------ encode

def _lit(l: Optional[Literal]) -> int:
    return 0 if l is None else l.to_int()


def cert_to_json(cert: Optional[StructureCertificate]) -> Optional[Dict[str, Any]]:
    if cert is None:
        return None
    out: Dict[str, Any] = {"kind": cert.kind.value, "modulator": sorted(cert.modulator)}
    if cert.kind is CertKind.TREE_DEPTH_FOREST:
        out.update(parent=[list(p) for p in cert.parent], depth=cert.depth)
    elif cert.kind is CertKind.PATH_DECOMPOSITION:
        out.update(bags=[sorted(b) for b in cert.bags], width=cert.width)
    elif cert.kind is CertKind.HUB:
        out.update(components=[sorted(c) for c in cert.components], sigma=cert.sigma, delta=cert.delta)
    else:
        out.update(base=cert.base.value)
    return out


def payload_to_json(p: Any) -> Dict[str, Any]:
    if isinstance(p, CnfInstance):
        return {"type": "cnf", "n": p.num_variables, "clauses": [list(c.to_ints()) for c in p.clauses],
                "weights": [c.weight for c in p.clauses], "certificate": cert_to_json(p.certificate),
                "notes": list(p.notes)}
    if isinstance(p, Circuit):
        return {"type": "circuit", "num_inputs": p.num_inputs, "output": p.output, "fan_in_bound": p.fan_in_bound,
                "gates": [[g.kind.value, list(g.inputs), g.var] for g in p.gates],
                "names": {str(k): v for k, v in p.names.items()}}
    if isinstance(p, BranchingProgram):
        return {"type": "bp", "num_inputs": p.num_inputs, "layers": [list(l) for l in p.layers], "width": p.width,
                "start": p.start, "accept": p.accept, "reject": p.reject,
                "labels": {str(k): v for k, v in p.labels.items()}, "arcs": [[u, v, b] for u, v, b in p.arcs]}
    if isinstance(p, AnnotatedDag):
        return {"type": "annotated-dag", "num_vertices": p.num_vertices, "source": p.source, "sink": p.sink,
                "m": p.num_annotation_vars, "arcs": [[u, v, _lit(l)] for u, v, l in p.arcs],
                "names": {str(k): v for k, v in p.names.items()}}
    if isinstance(p, SimpleGraph):
        return {"type": "graph", "n": p.vertex_count, "directed": p.directed, "edges": [list(e) for e in p.edges]}
    if isinstance(p, KncInstance):
        return {"type": "knc", "graph": payload_to_json(p.graph), "s": p.s, "t": p.t, "k": p.k}
    raise TypeError(f"cannot serialize {type(p).__name__}")


def dumps(inst: Instance) -> str:
    """Self-describing bundle: payload, certificate, question parameters and provenance."""
    return json.dumps({"format": FORMAT, "version": VERSION, "question": inst.question, "params": dict(inst.params),
                       "payload": payload_to_json(inst.payload), "certificate": cert_to_json(inst.certificate),
                       "provenance": list(inst.provenance)}, indent=1, sort_keys=True)


# ------------------------------------------------------------ decode

def cert_from_json(d: Optional[Dict[str, Any]]) -> Optional[StructureCertificate]:
    if d is None:
        return None
    kind = CertKind(d["kind"])
    mod = d.get("modulator", [])
    if kind is CertKind.TREE_DEPTH_FOREST:
        return StructureCertificate.tree_depth(mod, {v: p for v, p in d["parent"]}, d["depth"])
    if kind is CertKind.PATH_DECOMPOSITION:
        return StructureCertificate.path_decomposition(mod, d["bags"], d["width"])
    if kind is CertKind.HUB:
        return StructureCertificate.hub(mod, d["components"], d["sigma"], d["delta"])
    return StructureCertificate.backdoor(mod, BaseClass(d["base"]))


def payload_from_json(d: Dict[str, Any]) -> Any:
    t = d["type"]
    if t == "cnf":
        cl = tuple(Clause(tuple(Literal.from_int(x) for x in c), w) for c, w in zip(d["clauses"], d["weights"]))
        return CnfInstance(d["n"], cl, cert_from_json(d.get("certificate")), tuple(d.get("notes", ())))
    if t == "circuit":
        gates = tuple(Gate(GateKind(k), tuple(ins), var) for k, ins, var in d["gates"])
        return Circuit(gates, d["output"], d["num_inputs"], d.get("fan_in_bound"),
                       {int(k): v for k, v in d.get("names", {}).items()})
    if t == "bp":
        return BranchingProgram(d["num_inputs"], tuple(tuple(l) for l in d["layers"]), d["width"], d["start"],
                                d["accept"], d["reject"], {int(k): v for k, v in d["labels"].items()},
                                tuple((u, v, bool(b)) for u, v, b in d["arcs"]))
    if t == "annotated-dag":
        arcs = tuple((u, v, Literal.from_int(x) if x else None) for u, v, x in d["arcs"])
        return AnnotatedDag(d["num_vertices"], arcs, d["source"], d["sink"], d["m"],
                            {int(k): v for k, v in d.get("names", {}).items()})
    if t == "graph":
        return SimpleGraph(d["n"], tuple(tuple(e) for e in d["edges"]), d["directed"])
    if t == "knc":
        return KncInstance(payload_from_json(d["graph"]), d["s"], d["t"], d["k"])
    raise ValueError(f"unknown payload type {t!r}")


def loads(text: str) -> Instance:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(d, dict) or d.get("format") != FORMAT:
        raise ParseError(f"not a {FORMAT} document", 1, 1)
    try:
        return Instance(d["question"], payload_from_json(d["payload"]), d.get("params", {}),
                        cert_from_json(d.get("certificate")), tuple(d.get("provenance", ())))
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError, InvalidInstance) as exc:
        raise ParseError(f"invalid bundle: {exc}") from None


# ------------------------------------------------------------ DIMACS

def cert_directives(cert: Optional[StructureCertificate]) -> List[str]:
    if cert is None:
        return []
    mod = " ".join(map(str, sorted(cert.modulator)))
    if cert.kind is CertKind.BACKDOOR:
        return [f"c cert backdoor {cert.base.value} {mod}".rstrip()]
    out = [f"c cert modulator {mod}".rstrip()]
    if cert.kind is CertKind.TREE_DEPTH_FOREST:
        out.append(f"c cert treedepth depth={cert.depth}")
        out += [f"c cert parent {v} {p}" for v, p in cert.parent]
    elif cert.kind is CertKind.PATH_DECOMPOSITION:
        out.append(f"c cert pathwidth width={cert.width}")
        out += ["c cert bag " + " ".join(map(str, sorted(b))) for b in cert.bags]
    else:
        out.append(f"c cert hub sigma={cert.sigma} delta={cert.delta}")
        out += ["c cert component " + " ".join(map(str, sorted(c))) for c in cert.components]
    return out


def to_dimacs(cnf: CnfInstance) -> str:
    """``p cnf``, or ``p wcnf`` with a leading weight per clause when any weight differs from 1."""
    weighted = any(c.weight != 1 for c in cnf.clauses)
    lines = cert_directives(cnf.certificate)
    lines.append(f"p {'wcnf' if weighted else 'cnf'} {cnf.num_variables} {cnf.num_clauses}")
    for c in cnf.clauses:
        body = " ".join(map(str, c.to_ints() + (0,)))
        lines.append(f"{c.weight} {body}" if weighted else body)
    return "\n".join(lines) + "\n"


def _ints(tokens: List[str], lineno: int, col: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno, col) from None


def _kv(tokens: List[str], lineno: int) -> Dict[str, int]:
    out = {}
    for t in tokens:
        key, eq, val = t.partition("=")
        if not eq:
            raise ParseError(f"expected key=value, got {t!r}", lineno, 1)
        out[key] = _ints([val], lineno, 1)[0]
    return out


def _cert_from_directives(rows: List[Tuple[int, List[str]]]) -> Optional[StructureCertificate]:
    if not rows:
        return None
    kind, modulator, info = None, [], {}
    parent: Dict[int, int] = {}
    groups: List[List[int]] = []
    base = None
    for lineno, tok in rows:
        head, rest = tok[0], tok[1:]
        if head == "modulator":
            modulator = _ints(rest, lineno, 10)
        elif head == "backdoor":
            if not rest:
                raise ParseError("backdoor directive needs a base class", lineno, 1)
            kind, base, modulator = CertKind.BACKDOOR, rest[0], _ints(rest[1:], lineno, 10)
        elif head in ("treedepth", "pathwidth", "hub"):
            kind = {"treedepth": CertKind.TREE_DEPTH_FOREST, "pathwidth": CertKind.PATH_DECOMPOSITION,
                    "hub": CertKind.HUB}[head]
            info = _kv(rest, lineno)
        elif head == "parent":
            v, p = _ints(rest, lineno, 10)
            parent[v] = p
        elif head in ("bag", "component"):
            groups.append(_ints(rest, lineno, 10))
        else:
            raise ParseError(f"unknown certificate directive {head!r}", lineno, 3)
    try:
        if kind is CertKind.BACKDOOR:
            return StructureCertificate.backdoor(modulator, BaseClass(base))
        if kind is CertKind.TREE_DEPTH_FOREST:
            return StructureCertificate.tree_depth(modulator, parent, info["depth"])
        if kind is CertKind.PATH_DECOMPOSITION:
            return StructureCertificate.path_decomposition(modulator, groups, info["width"])
        if kind is CertKind.HUB:
            return StructureCertificate.hub(modulator, groups, info["sigma"], info["delta"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"incomplete certificate: {exc}", rows[0][0], 1) from None
    raise ParseError("modulator given without a structure directive", rows[0][0], 1)


def from_dimacs(text: str) -> CnfInstance:
    """Parse ``p cnf`` / ``p wcnf``; clauses may span lines and end with 0."""
    header = None
    rows: List[Tuple[int, List[str]]] = []
    clauses: List[Clause] = []
    cur: List[int] = []
    weight: Optional[int] = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        tok = line.split()
        if not tok or tok[0] == "%":
            continue
        if tok[0] == "c":
            if len(tok) > 2 and tok[1] == "cert":
                rows.append((lineno, tok[2:]))
            continue
        if tok[0] == "p":
            if header is not None:
                raise ParseError("second problem line", lineno, 1)
            if len(tok) < 4 or tok[1] not in ("cnf", "wcnf"):
                raise ParseError("expected 'p cnf N M' or 'p wcnf N M'", lineno, 1)
            header = (tok[1], *_ints(tok[2:4], lineno, 3))
            continue
        if header is None:
            raise ParseError("clause before the problem line", lineno, 1)
        col = 1
        for t in tok:
            x = _ints([t], lineno, col)[0]
            col += len(t) + 1
            if header[0] == "wcnf" and weight is None:
                if x < 1:
                    raise ParseError("clause weight must be positive", lineno, col - len(t) - 1)
                weight = x
                continue
            if x == 0:
                try:
                    clauses.append(Clause(tuple(Literal.from_int(v) for v in cur), weight or 1))
                except InvalidInstance as exc:
                    raise ParseError(str(exc), lineno, col - 2) from None
                cur, weight = [], None
            else:
                if abs(x) > header[1]:
                    raise ParseError(f"variable {abs(x)} exceeds declared {header[1]}", lineno, col - len(t) - 1)
                cur.append(x)
    if header is None:
        raise ParseError("missing problem line", 1, 1)
    if cur:
        raise ParseError("last clause not terminated by 0", len(text.splitlines()), 1)
    if len(clauses) != header[2]:
        raise ParseError(f"declared {header[2]} clauses, found {len(clauses)}", 1, 1)
    try:
        return CnfInstance(header[1], tuple(clauses), _cert_from_directives(rows))
    except InvalidInstance as exc:
        raise ParseError(str(exc)) from None


def read(text: str) -> Instance:
    """A bundle, or a DIMACS file (asked ``sat``, or ``maxsat`` when weighted)."""
    if text.lstrip().startswith("{"):
        return loads(text)
    cnf = from_dimacs(text)
    weighted = any(line.split()[:2] == ["p", "wcnf"] for line in text.splitlines())
    return Instance("maxsat" if weighted else "sat", cnf, {}, None, ("dimacs",))
