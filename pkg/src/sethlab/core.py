"""Instance and certificate types shared by every reduction, plus verifiers.

Conventions used across the package:

* CNF variables are the integers ``1..n``.
* ``SimpleGraph`` vertices are ``1..vertex_count`` so that the primal graph of
  a formula uses variable indices as vertex names.
* ``AnnotatedDag`` and ``BranchingProgram`` vertices are ``0..N-1``.
* Circuit gate ids are list positions and every gate only references earlier
  gates, so the gate list is already a topological order.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple


class InvalidInstance(ValueError):
    """Raised when a value breaks a type invariant."""


class Literal(NamedTuple):
    variable: int
    polarity: bool = True

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        if lit == 0:
            raise InvalidInstance("literal 0 is not a variable")
        return cls(abs(lit), lit > 0)

    def to_int(self) -> int:
        return self.variable if self.polarity else -self.variable

    def negate(self) -> "Literal":
        return Literal(self.variable, not self.polarity)

    def value(self, assignment: Mapping[int, bool]) -> bool:
        return assignment[self.variable] == self.polarity

    def __str__(self) -> str:
        return f"x{self.variable}" if self.polarity else f"~x{self.variable}"


@dataclass(frozen=True)
class Clause:
    literals: Tuple[Literal, ...]
    weight: int = 1

    def __post_init__(self):
        lits = tuple(self.literals)
        object.__setattr__(self, "literals", lits)
        if len(set(lits)) != len(lits):
            raise InvalidInstance(f"repeated literal in clause {lits}")
        for lit in lits:
            if lit.variable < 1:
                raise InvalidInstance(f"variable index {lit.variable} < 1")
        if self.weight < 1:
            raise InvalidInstance("clause weight must be positive")

    @classmethod
    def of(cls, *lits: int, weight: int = 1) -> "Clause":
        return cls(tuple(Literal.from_int(x) for x in lits), weight)

    @property
    def variables(self) -> FrozenSet[int]:
        return frozenset(l.variable for l in self.literals)

    def is_tautology(self) -> bool:
        seen = set(self.literals)
        return any(l.negate() in seen for l in self.literals)

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return any(assignment[l.variable] == l.polarity for l in self.literals)

    def to_ints(self) -> Tuple[int, ...]:
        return tuple(l.to_int() for l in self.literals)

    def __len__(self) -> int:
        return len(self.literals)


class CertKind(enum.Enum):
    TREE_DEPTH_FOREST = "tree-depth"
    PATH_DECOMPOSITION = "path-decomposition"
    HUB = "hub"
    BACKDOOR = "backdoor"


class BaseClass(enum.Enum):
    TWO_SAT = "2sat"
    HORN = "horn"


@dataclass(frozen=True)
class StructureCertificate:
    """A modulator or backdoor together with the structure it promises.

    Only the fields of the relevant kind are populated. ``parent`` lists
    ``(vertex, parent)`` pairs with parent 0 for roots; ``depth`` counts levels,
    so a forest of isolated roots has depth 1.
    """

    kind: CertKind
    modulator: FrozenSet[int] = frozenset()
    parent: Tuple[Tuple[int, int], ...] = ()
    depth: int = 0
    bags: Tuple[FrozenSet[int], ...] = ()
    width: int = 0
    components: Tuple[FrozenSet[int], ...] = ()
    sigma: int = 0
    delta: int = 0
    base: Optional[BaseClass] = None

    @classmethod
    def tree_depth(cls, modulator: Iterable[int], parent: Mapping[int, int], depth: int) -> "StructureCertificate":
        return cls(CertKind.TREE_DEPTH_FOREST, frozenset(modulator),
                   parent=tuple(sorted((int(v), int(p or 0)) for v, p in parent.items())), depth=depth)

    @classmethod
    def path_decomposition(cls, modulator: Iterable[int], bags: Sequence[Iterable[int]],
                           width: int) -> "StructureCertificate":
        return cls(CertKind.PATH_DECOMPOSITION, frozenset(modulator),
                   bags=tuple(frozenset(b) for b in bags), width=width)

    @classmethod
    def hub(cls, modulator: Iterable[int], components: Sequence[Iterable[int]], sigma: int,
            delta: int) -> "StructureCertificate":
        return cls(CertKind.HUB, frozenset(modulator),
                   components=tuple(frozenset(c) for c in components), sigma=sigma, delta=delta)

    @classmethod
    def backdoor(cls, variables: Iterable[int], base: BaseClass) -> "StructureCertificate":
        return cls(CertKind.BACKDOOR, frozenset(variables), base=base)

    @property
    def parent_map(self) -> Dict[int, int]:
        return dict(self.parent)


@dataclass(frozen=True)
class CnfInstance:
    num_variables: int
    clauses: Tuple[Clause, ...]
    certificate: Optional[StructureCertificate] = None
    notes: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        object.__setattr__(self, "notes", tuple(self.notes))
        if self.num_variables < 0:
            raise InvalidInstance("negative variable count")
        for c in self.clauses:
            for lit in c.literals:
                if lit.variable > self.num_variables:
                    raise InvalidInstance(f"variable {lit.variable} exceeds n={self.num_variables}")

    @classmethod
    def from_ints(cls, n: int, clauses: Iterable[Iterable[int]], weights: Optional[Sequence[int]] = None,
                  certificate: Optional[StructureCertificate] = None) -> "CnfInstance":
        cl = [Clause.of(*c) for c in clauses]
        if weights is not None:
            cl = [Clause(c.literals, w) for c, w in zip(cl, weights)]
        return cls(n, tuple(cl), certificate)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @property
    def max_arity(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    @property
    def total_weight(self) -> int:
        return sum(c.weight for c in self.clauses)

    def with_certificate(self, cert: Optional[StructureCertificate]) -> "CnfInstance":
        return CnfInstance(self.num_variables, self.clauses, cert, self.notes)

    def with_notes(self, *notes: str) -> "CnfInstance":
        return CnfInstance(self.num_variables, self.clauses, self.certificate, self.notes + notes)

    def to_ints(self) -> List[Tuple[int, ...]]:
        return [c.to_ints() for c in self.clauses]


class GateKind(enum.Enum):
    INPUT = "input"
    AND = "and"
    OR = "or"
    NOT = "not"
    CONST_TRUE = "true"
    CONST_FALSE = "false"


class Gate(NamedTuple):
    kind: GateKind
    inputs: Tuple[int, ...] = ()
    var: int = 0


@dataclass(frozen=True)
class Circuit:
    """Gate DAG. ``num_inputs`` declares the input variables ``1..n``; some may be unused."""

    gates: Tuple[Gate, ...]
    output: int
    num_inputs: int
    fan_in_bound: Optional[int] = None
    names: Mapping[int, str] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "names", MappingProxyType(dict(self.names)))
        if not 0 <= self.output < len(gates):
            raise InvalidInstance("output gate out of range")
        for gid, g in enumerate(gates):
            if g.kind is GateKind.INPUT:
                if g.inputs or not 1 <= g.var <= self.num_inputs:
                    raise InvalidInstance(f"bad input gate {gid}")
            elif g.kind in (GateKind.CONST_TRUE, GateKind.CONST_FALSE):
                if g.inputs:
                    raise InvalidInstance(f"constant gate {gid} has inputs")
            elif g.kind is GateKind.NOT:
                if len(g.inputs) != 1:
                    raise InvalidInstance(f"NOT gate {gid} needs exactly one input")
            elif not g.inputs:
                raise InvalidInstance(f"{g.kind.value} gate {gid} has no inputs")
            for i in g.inputs:
                if not 0 <= i < gid:
                    raise InvalidInstance(f"gate {gid} references {i}: not a topological DAG")
            if self.fan_in_bound is not None and len(g.inputs) > self.fan_in_bound:
                raise InvalidInstance(f"gate {gid} exceeds fan-in bound")

    @property
    def size(self) -> int:
        """Number of wires."""
        return sum(len(g.inputs) for g in self.gates)

    def input_gates(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = defaultdict(list)
        for gid, g in enumerate(self.gates):
            if g.kind is GateKind.INPUT:
                out[g.var].append(gid)
        return dict(out)

    def reachable(self) -> List[bool]:
        """Which gates feed the output."""
        live = [False] * len(self.gates)
        live[self.output] = True
        for gid in range(len(self.gates) - 1, -1, -1):
            if live[gid]:
                for i in self.gates[gid].inputs:
                    live[i] = True
        return live

    def out_degrees(self) -> List[int]:
        deg = [0] * len(self.gates)
        live = self.reachable()
        for gid, g in enumerate(self.gates):
            if live[gid]:
                for i in g.inputs:
                    deg[i] += 1
        return deg


_LEAF_KINDS = (GateKind.INPUT, GateKind.CONST_TRUE, GateKind.CONST_FALSE)


def is_formula(c: Circuit) -> bool:
    """True if every live internal gate has out-degree at most 1 (leaves may be shared)."""
    deg = c.out_degrees()
    return all(d <= 1 or c.gates[g].kind in _LEAF_KINDS for g, d in enumerate(deg))


def is_monotone(c: Circuit) -> bool:
    live = c.reachable()
    return not any(live[g] and gate.kind is GateKind.NOT for g, gate in enumerate(c.gates))


def negations_at_inputs(c: Circuit) -> bool:
    live = c.reachable()
    return all(not live[g] or gate.kind is not GateKind.NOT or c.gates[gate.inputs[0]].kind is GateKind.INPUT
               for g, gate in enumerate(c.gates))


class CircuitBuilder:
    """Incremental circuit construction with shared leaves and fan-in-2 helpers."""

    def __init__(self, num_inputs: int):
        self.num_inputs = num_inputs
        self.gates: List[Gate] = []
        self.names: Dict[int, str] = {}
        self._inputs: Dict[int, int] = {}
        self._consts: Dict[bool, int] = {}

    def _add(self, gate: Gate, name: Optional[str] = None) -> int:
        self.gates.append(gate)
        gid = len(self.gates) - 1
        if name is not None:
            self.names[gid] = name
        return gid

    def input(self, var: int) -> int:
        if var not in self._inputs:
            self._inputs[var] = self._add(Gate(GateKind.INPUT, (), var), f"x{var}")
        return self._inputs[var]

    def const(self, value: bool) -> int:
        if value not in self._consts:
            kind = GateKind.CONST_TRUE if value else GateKind.CONST_FALSE
            self._consts[value] = self._add(Gate(kind))
        return self._consts[value]

    def is_const(self, gid: int) -> Optional[bool]:
        kind = self.gates[gid].kind
        if kind is GateKind.CONST_TRUE:
            return True
        if kind is GateKind.CONST_FALSE:
            return False
        return None

    def not_(self, a: int, name: Optional[str] = None) -> int:
        return self._add(Gate(GateKind.NOT, (a,)), name)

    def and_(self, *args: int, name: Optional[str] = None) -> int:
        return self._add(Gate(GateKind.AND, tuple(args)), name)

    def or_(self, *args: int, name: Optional[str] = None) -> int:
        return self._add(Gate(GateKind.OR, tuple(args)), name)

    def tree(self, kind: GateKind, args: Sequence[int], name: Optional[str] = None) -> int:
        """Balanced fan-in-2 tree; the empty AND is True and the empty OR is False."""
        args = list(args)
        if not args:
            return self.const(kind is GateKind.AND)
        while len(args) > 1:
            nxt = [self._add(Gate(kind, (args[i], args[i + 1]))) for i in range(0, len(args) - 1, 2)]
            if len(args) % 2:
                nxt.append(args[-1])
            args = nxt
        if name is not None:
            self.names.setdefault(args[0], name)
        return args[0]

    def and_tree(self, args: Sequence[int], name: Optional[str] = None) -> int:
        return self.tree(GateKind.AND, args, name)

    def or_tree(self, args: Sequence[int], name: Optional[str] = None) -> int:
        return self.tree(GateKind.OR, args, name)

    def build(self, output: int, fan_in_bound: Optional[int] = None) -> Circuit:
        return Circuit(tuple(self.gates), output, self.num_inputs, fan_in_bound, self.names)


@dataclass(frozen=True)
class BranchingProgram:
    num_inputs: int
    layers: Tuple[Tuple[int, ...], ...]
    width: int
    start: int
    accept: int
    reject: int
    labels: Mapping[int, int]
    arcs: Tuple[Tuple[int, int, bool], ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(tuple(l) for l in self.layers))
        object.__setattr__(self, "labels", MappingProxyType(dict(self.labels)))
        object.__setattr__(self, "arcs", tuple(self.arcs))
        layer_of = {}
        for i, layer in enumerate(self.layers):
            if len(layer) > self.width:
                raise InvalidInstance(f"layer {i} wider than {self.width}")
            for v in layer:
                if v in layer_of:
                    raise InvalidInstance(f"vertex {v} in two layers")
                layer_of[v] = i
        if not self.layers or self.layers[0] != (self.start,):
            raise InvalidInstance("first layer must be exactly the start vertex")
        last = len(self.layers) - 1
        if layer_of.get(self.accept) != last or layer_of.get(self.reject) != last or self.accept == self.reject:
            raise InvalidInstance("accept/reject must be distinct vertices of the last layer")
        out: Dict[int, Dict[bool, int]] = defaultdict(dict)
        for u, v, b in self.arcs:
            if u not in layer_of or v not in layer_of or layer_of[v] != layer_of[u] + 1:
                raise InvalidInstance(f"arc {u}->{v} does not join consecutive layers")
            if b in out[u]:
                raise InvalidInstance(f"vertex {u} has two {b}-arcs")
            out[u][b] = v
        for v, layer in layer_of.items():
            if v in out:
                if len(out[v]) != 2 or v not in self.labels:
                    raise InvalidInstance(f"vertex {v} needs a label and one arc per value")
                if not 1 <= self.labels[v] <= self.num_inputs:
                    raise InvalidInstance(f"vertex {v} labeled with unknown variable")
            elif layer != last:
                raise InvalidInstance(f"non-final vertex {v} has no out-arcs")

    @property
    def length(self) -> int:
        """Number of instruction layers, i.e. layers minus one."""
        return len(self.layers) - 1

    def successor(self) -> Dict[int, Tuple[int, int]]:
        """vertex -> (False-successor, True-successor)."""
        nxt: Dict[int, List[int]] = defaultdict(lambda: [0, 0])
        for u, v, b in self.arcs:
            nxt[u][int(b)] = v
        return {u: (p[0], p[1]) for u, p in nxt.items()}


@dataclass(frozen=True)
class AnnotatedDag:
    num_vertices: int
    arcs: Tuple[Tuple[int, int, Optional[Literal]], ...]
    source: int
    sink: int
    num_annotation_vars: int
    names: Mapping[int, str] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        arcs = tuple((u, v, lit) for u, v, lit in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "names", MappingProxyType(dict(self.names)))
        n = self.num_vertices
        for v in (self.source, self.sink):
            if not 0 <= v < n:
                raise InvalidInstance("source/sink out of range")
        for u, v, lit in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInstance(f"arc {u}->{v} out of range")
            if lit is not None and not 1 <= lit.variable <= self.num_annotation_vars:
                raise InvalidInstance(f"annotation {lit} outside M")
        self.topological_order()

    def topological_order(self) -> List[int]:
        indeg = [0] * self.num_vertices
        adj: List[List[int]] = [[] for _ in range(self.num_vertices)]
        for u, v, _ in self.arcs:
            adj[u].append(v)
            indeg[v] += 1
        order = [v for v in range(self.num_vertices) if indeg[v] == 0]
        for u in order:
            for v in adj[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    order.append(v)
        if len(order) != self.num_vertices:
            raise InvalidInstance("annotated graph has a cycle")
        return order


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    edges: Tuple[Tuple[int, int, int], ...]
    directed: bool = False

    def __post_init__(self):
        edges = tuple((int(u), int(v), int(w)) for u, v, w in self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v, w in edges:
            if not (1 <= u <= self.vertex_count and 1 <= v <= self.vertex_count):
                raise InvalidInstance(f"edge {u}-{v} out of range")
            if u == v and not self.directed:
                raise InvalidInstance("self-loop in undirected graph")
            if w < 1:
                raise InvalidInstance("edge weight must be positive")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], directed: bool = False) -> "SimpleGraph":
        return cls(n, tuple((e[0], e[1], e[2] if len(e) > 2 else 1) for e in edges), directed)

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def adjacency(self) -> Dict[int, set]:
        adj: Dict[int, set] = {v: set() for v in self.vertices}
        for u, v, _ in self.edges:
            adj[u].add(v)
            if not self.directed:
                adj[v].add(u)
        return adj

    def edge_set(self) -> FrozenSet[Tuple[int, int]]:
        if self.directed:
            return frozenset((u, v) for u, v, _ in self.edges)
        return frozenset((min(u, v), max(u, v)) for u, v, _ in self.edges)


@dataclass(frozen=True)
class CspInstance:
    """Variables ``1..len(domains)`` with values in ``1..q``."""

    q: int
    domains: Tuple[FrozenSet[int], ...]
    constraints: Tuple[Tuple[Tuple[int, ...], FrozenSet[Tuple[int, ...]]], ...]

    def __post_init__(self):
        object.__setattr__(self, "domains", tuple(frozenset(d) for d in self.domains))
        object.__setattr__(self, "constraints",
                           tuple((tuple(s), frozenset(map(tuple, t))) for s, t in self.constraints))
        for d in self.domains:
            if not d <= set(range(1, self.q + 1)):
                raise InvalidInstance("domain value outside [q]")
        for scope, tuples in self.constraints:
            for v in scope:
                if not 1 <= v <= len(self.domains):
                    raise InvalidInstance(f"constraint on unknown variable {v}")
            for t in tuples:
                if len(t) != len(scope):
                    raise InvalidInstance("tuple arity differs from scope")
                if any(x not in self.domains[v - 1] for x, v in zip(t, scope)):
                    raise InvalidInstance("tuple value outside variable domain")

    @property
    def num_variables(self) -> int:
        return len(self.domains)


@dataclass(frozen=True)
class Assignment:
    """Total truth assignment over a declared set of variables."""

    values: Mapping[int, bool]

    def __post_init__(self):
        object.__setattr__(self, "values", MappingProxyType({int(k): bool(v) for k, v in sorted(self.values.items())}))

    @classmethod
    def from_index(cls, variables: Sequence[int], index: int) -> "Assignment":
        """Lexicographic numbering: the first variable is the most significant bit."""
        k = len(variables)
        return cls({v: bool(index >> (k - 1 - i) & 1) for i, v in enumerate(variables)})

    @classmethod
    def from_true_set(cls, variables: Iterable[int], true_vars: Iterable[int]) -> "Assignment":
        t = set(true_vars)
        return cls({v: v in t for v in variables})

    def __getitem__(self, var: int) -> bool:
        return self.values[var]

    def __contains__(self, var: int) -> bool:
        return var in self.values

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __hash__(self) -> int:
        return hash(tuple(self.values.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Assignment) and dict(self.values) == dict(other.values)

    @property
    def weight(self) -> int:
        return sum(self.values.values())

    def true_set(self) -> FrozenSet[int]:
        return frozenset(v for v, b in self.values.items() if b)

    def restrict(self, variables: Iterable[int]) -> "Assignment":
        return Assignment({v: self.values[v] for v in variables})


def all_assignments(variables: Sequence[int]) -> Iterator[Assignment]:
    for idx in range(1 << len(variables)):
        yield Assignment.from_index(variables, idx)


# ---------------------------------------------------------------- graph ops

def primal_graph(cnf: CnfInstance) -> SimpleGraph:
    edges = set()
    for c in cnf.clauses:
        vs = sorted(c.variables)
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                edges.add((u, v))
    return SimpleGraph(cnf.num_variables, tuple((u, v, 1) for u, v in sorted(edges)))


def _components(vertices: Iterable[int], adj: Mapping[int, set]) -> List[List[int]]:
    vs = set(vertices)
    seen = set()
    comps = []
    for v in sorted(vs):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w in vs and w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def forest_levels(parent: Mapping[int, int]) -> Optional[Dict[int, int]]:
    """Level of each node (roots are level 1), or None if the parent map is malformed."""
    level: Dict[int, int] = {}
    for v in parent:
        path: List[int] = []
        on_path = set()
        u = v
        while True:
            if u in level:
                base = level[u]
                break
            if u in on_path or u not in parent:
                return None
            path.append(u)
            on_path.add(u)
            if parent[u] == 0:
                base = 0
                break
            u = parent[u]
        for w in reversed(path):
            base += 1
            level[w] = base
    return level


def verify_tree_depth_forest(graph: SimpleGraph, cert: StructureCertificate) -> bool:
    if cert.kind is not CertKind.TREE_DEPTH_FOREST:
        return False
    parent = cert.parent_map
    rest = set(graph.vertices) - cert.modulator
    if set(parent) != rest or not cert.modulator <= set(graph.vertices):
        return False
    if any(p != 0 and p not in rest for p in parent.values()):
        return False
    level = forest_levels(parent)
    if level is None:
        return False
    if max(level.values(), default=0) > cert.depth:
        return False
    for u, v, _ in graph.edges:
        if u in cert.modulator or v in cert.modulator:
            continue
        if level[u] > level[v]:
            u, v = v, u
        w = v
        while w != 0 and w != u:
            w = parent[w]
        if w != u:
            return False
    return True


def verify_path_decomposition(graph: SimpleGraph, cert: StructureCertificate) -> bool:
    if cert.kind is not CertKind.PATH_DECOMPOSITION:
        return False
    rest = set(graph.vertices) - cert.modulator
    if not cert.modulator <= set(graph.vertices):
        return False
    if any(len(b) - 1 > cert.width for b in cert.bags):
        return False
    span: Dict[int, List[int]] = defaultdict(list)
    for i, b in enumerate(cert.bags):
        if not b <= rest:
            return False
        for v in b:
            span[v].append(i)
    if set(span) != rest:
        return False
    for idx in span.values():
        if idx[-1] - idx[0] + 1 != len(idx):
            return False
    for u, v, _ in graph.edges:
        if u in cert.modulator or v in cert.modulator:
            continue
        lo, hi = max(span[u][0], span[v][0]), min(span[u][-1], span[v][-1])
        if lo > hi:
            return False
    return True


def verify_hub(graph: SimpleGraph, cert: StructureCertificate) -> bool:
    if cert.kind is not CertKind.HUB:
        return False
    if not cert.modulator <= set(graph.vertices):
        return False
    adj = graph.adjacency()
    comps = _components(set(graph.vertices) - cert.modulator, adj)
    if cert.components and sorted(map(sorted, cert.components)) != sorted(comps):
        return False
    for comp in comps:
        if len(comp) > cert.sigma:
            return False
        nbrs = {w for u in comp for w in adj[u]} & cert.modulator
        if len(nbrs) > cert.delta:
            return False
    return True


def verify_backdoor(cnf: CnfInstance, cert: StructureCertificate) -> bool:
    if cert.kind is not CertKind.BACKDOOR or cert.base is None:
        return False
    if any(not 1 <= v <= cnf.num_variables for v in cert.modulator):
        return False
    for c in cnf.clauses:
        outside = [l for l in c.literals if l.variable not in cert.modulator]
        if cert.base is BaseClass.TWO_SAT and len(outside) > 2:
            return False
        if cert.base is BaseClass.HORN and sum(l.polarity for l in outside) > 1:
            return False
    return True


def verify_certificate(cnf: CnfInstance, cert: Optional[StructureCertificate] = None) -> bool:
    cert = cert if cert is not None else cnf.certificate
    if cert is None:
        return True
    if cert.kind is CertKind.BACKDOOR:
        return verify_backdoor(cnf, cert)
    g = primal_graph(cnf)
    return {
        CertKind.TREE_DEPTH_FOREST: verify_tree_depth_forest,
        CertKind.PATH_DECOMPOSITION: verify_path_decomposition,
        CertKind.HUB: verify_hub,
    }[cert.kind](g, cert)


def simplify(cnf: CnfInstance, partial: Mapping[int, bool]) -> Optional[List[Clause]]:
    """Clauses left after fixing ``partial``; None if some clause is falsified."""
    out = []
    for c in cnf.clauses:
        lits = []
        sat = False
        for l in c.literals:
            if l.variable in partial:
                if partial[l.variable] == l.polarity:
                    sat = True
                    break
            else:
                lits.append(l)
        if sat:
            continue
        if not lits:
            return None
        out.append(Clause(tuple(lits), c.weight))
    return out


def is_horn(clauses: Iterable[Clause]) -> bool:
    return all(sum(l.polarity for l in c.literals) <= 1 for c in clauses)


def circuit_depth(c: Circuit) -> int:
    depth = [0] * len(c.gates)
    for gid, g in enumerate(c.gates):
        if g.inputs:
            depth[gid] = 1 + max(depth[i] for i in g.inputs)
    return depth[c.output]
