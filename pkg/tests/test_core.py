import itertools
import random

import pytest
from hypothesis import given, strategies as st

from sethlab.core import (Assignment, BaseClass, CircuitBuilder, Clause, CnfInstance, InvalidInstance, Literal,
                          SimpleGraph, StructureCertificate, all_assignments, circuit_depth, forest_levels, is_horn,
                          primal_graph, simplify, verify_backdoor, verify_hub, verify_path_decomposition,
                          verify_tree_depth_forest)
from sethlab.harness import generators as gen
from sethlab import oracles as O

from conftest import random_cnf, random_graph


def path(n):
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def complete(n):
    return SimpleGraph.from_edges(n, list(itertools.combinations(range(1, n + 1), 2)))


# ------------------------------------------------------------ primal graph

def test_primal_graph_path():
    cnf = CnfInstance.from_ints(3, [[1, 2], [2, 3]])
    assert primal_graph(cnf).edge_set() == path(3).edge_set()


def test_primal_graph_empty_formula():
    g = primal_graph(CnfInstance(3, ()))
    assert g.vertex_count == 3 and not g.edges


@given(st.integers(0, 10 ** 6))
def test_primal_graph_matches_double_loop(seed):
    cnf = random_cnf(random.Random(seed), 6, 8)
    want = set()
    for c in cnf.clauses:
        vs = sorted(c.variables)
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                want.add((vs[i], vs[j]))
    assert set(primal_graph(cnf).edge_set()) == want


def test_primal_graph_ignores_weights_and_duplicates():
    a = CnfInstance.from_ints(3, [[1, -2], [2, 3]])
    b = CnfInstance.from_ints(3, [[1, -2], [1, -2], [2, 3]], [5, 1, 2])
    assert primal_graph(a).edge_set() == primal_graph(b).edge_set()


# ------------------------------------------------------------ tree-depth

def test_tree_depth_path3_middle_root():
    cert = StructureCertificate.tree_depth([], {2: 0, 1: 2, 3: 2}, 2)
    assert verify_tree_depth_forest(path(3), cert)


def test_tree_depth_triangle_rejects_depth2():
    for root in (1, 2, 3):
        leaves = [v for v in (1, 2, 3) if v != root]
        cert = StructureCertificate.tree_depth([], {root: 0, leaves[0]: root, leaves[1]: root}, 2)
        assert not verify_tree_depth_forest(complete(3), cert)


def test_tree_depth_claimed_depth_too_small():
    cert = StructureCertificate.tree_depth([], {1: 0, 2: 1, 3: 2}, 2)
    assert not verify_tree_depth_forest(path(3), cert)


def test_tree_depth_cycle_in_parent_map_is_rejected():
    cert = StructureCertificate.tree_depth([], {1: 2, 2: 1}, 5)
    assert forest_levels(cert.parent_map) is None
    assert not verify_tree_depth_forest(path(2), cert)


def test_tree_depth_modulator_removed_before_check():
    cert = StructureCertificate.tree_depth([1], {2: 0, 3: 0}, 1)
    star = SimpleGraph.from_edges(3, [(1, 2), (1, 3)])
    assert verify_tree_depth_forest(star, cert)


def _dfs_forest(g):
    """Chain every component of ``g`` into a root-to-leaf path (always valid)."""
    parent, seen = {}, set()
    adj = g.adjacency()
    for r in g.vertices:
        if r in seen:
            continue
        prev, stack = 0, [r]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            parent[v] = prev
            prev = v
            stack.extend(sorted(adj[v] - seen))
    return parent


@given(st.integers(0, 10 ** 6))
def test_tree_depth_chain_forest_always_verifies(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 8), rng.random())
    parent = _dfs_forest(g)
    depth = max(forest_levels(parent).values())
    assert verify_tree_depth_forest(g, StructureCertificate.tree_depth([], parent, depth))


@given(st.integers(0, 10 ** 6))
def test_planted_td_generator_verifies(seed):
    rng = random.Random(seed)
    cnf = gen.cnf_td_modulator(rng, m=rng.randint(0, 4), rest=rng.randint(1, 8), depth=rng.randint(1, 3))
    assert verify_tree_depth_forest(primal_graph(cnf), cnf.certificate)
    assert cnf.certificate.depth <= 3


# ------------------------------------------------------------ path decompositions

def test_path_decomposition_examples():
    good = StructureCertificate.path_decomposition([], [{1, 2}, {2, 3}], 1)
    bad = StructureCertificate.path_decomposition([], [{1, 2}, {2, 3}], 0)
    assert verify_path_decomposition(path(3), good)
    assert not verify_path_decomposition(path(3), bad)


def test_path_decomposition_needs_contiguity_and_coverage():
    g = path(3)
    assert not verify_path_decomposition(g, StructureCertificate.path_decomposition([], [{1, 2}, {3}, {2, 3}], 1))
    assert not verify_path_decomposition(g, StructureCertificate.path_decomposition([], [{1, 2}, {3}], 1))
    assert not verify_path_decomposition(g, StructureCertificate.path_decomposition([], [{1, 2}], 1))


@given(st.integers(0, 10 ** 6))
def test_planted_pw_generator_verifies(seed):
    rng = random.Random(seed)
    cnf = gen.cnf_pw_modulator(rng, m=rng.randint(0, 4), rest=rng.randint(1, 8), width=rng.randint(1, 3))
    assert verify_path_decomposition(primal_graph(cnf), cnf.certificate)


# ------------------------------------------------------------ hubs

def test_hub_examples():
    star = SimpleGraph.from_edges(5, [(1, v) for v in range(2, 6)])
    comps = [{v} for v in range(2, 6)]
    assert verify_hub(star, StructureCertificate.hub([1], comps, 1, 1))
    assert not verify_hub(complete(4), StructureCertificate.hub([], [set(range(1, 5))], 1, 0))


def test_hub_generator_sigma2_delta2_m4():
    for seed in range(20):
        cnf = gen.cnf_hub(random.Random(seed), m=4, sigma=2, delta=2)
        assert verify_hub(primal_graph(cnf), cnf.certificate)


# ------------------------------------------------------------ backdoors

def test_backdoor_examples():
    x, y, b, z = 1, 2, 3, 4
    cnf = CnfInstance.from_ints(4, [[x, y, b]])
    assert verify_backdoor(cnf, StructureCertificate.backdoor([b], BaseClass.TWO_SAT))
    cnf = CnfInstance.from_ints(4, [[x, y, z]])
    assert not verify_backdoor(cnf, StructureCertificate.backdoor([], BaseClass.TWO_SAT))


@given(st.integers(0, 10 ** 6))
def test_horn_backdoor_matches_every_simplification(seed):
    rng = random.Random(seed)
    cnf = random_cnf(rng, 6, 7, arity=3)
    bd = sorted(rng.sample(range(1, 7), rng.randint(0, 4)))
    cert = StructureCertificate.backdoor(bd, BaseClass.HORN)
    semantic = True
    for a in all_assignments(bd):
        # keep falsified clauses as empty ones so no clause escapes the check
        rest = [Clause(tuple(l for l in c.literals if l.variable not in a.values))
                for c in cnf.clauses if not any(a.values.get(l.variable) == l.polarity for l in c.literals)]
        if not is_horn(rest):
            semantic = False
    assert verify_backdoor(cnf, cert) == semantic
    if semantic:
        for a in all_assignments(bd):
            rest = simplify(cnf, a.values)
            assert rest is None or is_horn(rest)


# ------------------------------------------------------------ circuits

def test_circuit_depth_examples():
    b = CircuitBuilder(1)
    assert circuit_depth(b.build(b.input(1))) == 0
    b = CircuitBuilder(1)
    assert circuit_depth(b.build(b.not_(b.input(1)))) == 1
    b = CircuitBuilder(8)
    out = b.and_tree([b.input(i) for i in range(1, 9)])
    assert circuit_depth(b.build(out, fan_in_bound=2)) == 3


@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_depth_bounded_generator(seed, d):
    c = gen.circuit_depth_bounded(random.Random(seed), n=4, depth=d)
    assert circuit_depth(c) <= d


def test_circuit_rejects_forward_reference():
    from sethlab.core import Circuit, Gate, GateKind
    with pytest.raises(InvalidInstance):
        Circuit((Gate(GateKind.NOT, (1,)), Gate(GateKind.INPUT, (), 1)), 0, 1)


# ------------------------------------------------------------ basic values

def test_literal_and_clause_basics():
    assert Literal.from_int(-3) == Literal(3, False)
    assert Literal(3, False).to_int() == -3
    c = Clause.of(1, -1)
    assert c.is_tautology
    with pytest.raises(InvalidInstance):
        Clause.of(2, 2)
    with pytest.raises(InvalidInstance):
        CnfInstance.from_ints(1, [[2]])


def test_assignment_lex_order():
    a = Assignment.from_index([1, 2, 3], 0b110)
    assert a.values == {1: True, 2: True, 3: False}
    assert a.weight == 2
    masks, full = O.var_masks(3)
    assert masks[0] >> 0b110 & 1 and masks[1] >> 0b110 & 1 and not masks[2] >> 0b110 & 1
