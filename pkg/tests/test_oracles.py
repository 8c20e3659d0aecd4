import itertools
import random

import pytest
from hypothesis import given, strategies as st

from sethlab import oracles as O
from sethlab.core import (AnnotatedDag, Assignment, BranchingProgram, CircuitBuilder, Clause, CnfInstance, Literal,
                          SimpleGraph, all_assignments, is_horn)
from sethlab.elimination import (maxcut_elimination, projected_models, solve_list_coloring_elimination,
                                 solve_sat_elimination)
from sethlab.harness import generators as gen

from conftest import packed, random_cnf, random_graph

seeds = st.integers(0, 10 ** 6)


def complete(n):
    return SimpleGraph.from_edges(n, list(itertools.combinations(range(1, n + 1), 2)))


def path(n):
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(1, n)])


# ------------------------------------------------------------ circuits

def test_eval_circuit_examples():
    b = CircuitBuilder(2)
    c = b.build(b.and_(b.input(1), b.input(2)))
    assert O.eval_circuit(c, {1: True, 2: True})
    b = CircuitBuilder(0)
    assert not O.eval_circuit(b.build(b.not_(b.const(True))), {})


@given(seeds)
def test_circuit_evaluators_agree(seed):
    rng = random.Random(seed)
    c = gen.circuit_depth_bounded(rng, n=rng.randint(1, 6), depth=rng.randint(1, 6), width=4)
    table = O.circuit_truth_table(c)
    for idx, a in enumerate(all_assignments(range(1, c.num_inputs + 1))):
        assert O.eval_circuit(c, a) == O.eval_circuit_demand(c, a) == bool(table >> idx & 1)


# ------------------------------------------------------------ branching programs

def _single_test_bp():
    return BranchingProgram(1, ((0,), (1, 2)), 2, 0, 1, 2, {0: 1}, ((0, 1, True), (0, 2, False)))


def test_branching_program_examples():
    bp = _single_test_bp()
    assert O.eval_branching_program(bp, {1: True})
    assert not O.eval_branching_program(bp, {1: False})
    assert O.bp_truth_table(bp) == 0b10  # index 1 is x1 = True


# ------------------------------------------------------------ SAT

def test_sat_examples():
    assert O.solve_sat_bruteforce(CnfInstance.from_ints(1, [[1], [-1]])) is None
    a = O.solve_sat_bruteforce(CnfInstance(3, ()))
    assert a is not None and not any(a.values.values())


@given(seeds)
def test_sat_three_routes_agree(seed):
    rng = random.Random(seed)
    cnf = random_cnf(rng, rng.randint(1, 10), rng.randint(0, 30))
    brute = O.solve_sat_bruteforce(cnf)
    assert (brute is None) == (O.solve_sat_cdcl(cnf) is None) == (solve_sat_elimination(cnf) is None)
    if brute is not None:
        assert all(c.satisfied_by(brute.values) for c in cnf.clauses)


@given(seeds)
def test_projection_routes_agree(seed):
    rng = random.Random(seed)
    cnf = gen.cnf_pw_modulator(rng, m=rng.randint(0, 4), rest=rng.randint(1, 7), width=rng.randint(1, 2))
    keep = sorted(cnf.certificate.modulator)
    want = 0
    full = O.sat_table(cnf)
    n = cnf.num_variables
    for idx in range(1 << n):
        if full >> idx & 1:
            a = Assignment.from_index(range(1, n + 1), idx)
            sub = 0
            for v in keep:
                sub = 2 * sub + a[v]
            want |= 1 << sub
    assert O.projected_models_cdcl(cnf, keep) == want
    assert O.projected_models_pd(cnf, keep, cnf.certificate.bags) == want
    assert packed(projected_models(cnf, keep)) == want


def test_projected_cap():
    cnf = CnfInstance(20, ())
    with pytest.raises(O.TooLarge):
        O.projected_models_cdcl(cnf, list(range(1, 18)))


# ------------------------------------------------------------ Max-SAT

def test_maxsat_examples():
    assert O.maxsat_value(CnfInstance.from_ints(1, [[1], [-1]])) == 1
    cnf = CnfInstance.from_ints(3, [[1, 2], [3], [2, 3]])
    _, w = O.solve_maxsat_bruteforce(cnf)
    assert w == 3 == O.satisfied_weight(cnf, {1: True, 2: True, 3: True})


@given(seeds)
def test_maxsat_weights_equal_duplicates(seed):
    rng = random.Random(seed)
    cnf = random_cnf(rng, rng.randint(1, 6), rng.randint(1, 8), max_weight=3)
    dup = CnfInstance(cnf.num_variables, tuple(Clause(c.literals) for c in cnf.clauses for _ in range(c.weight)))
    assert O.maxsat_value(cnf) == O.maxsat_value(dup)


# ------------------------------------------------------------ weight-k

def test_weight_k_examples():
    b = CircuitBuilder(2)
    c = b.build(b.or_(b.input(1), b.input(2)))
    a = O.solve_weight_k_sat(c, 1)
    assert a is not None and a.weight == 1
    b = CircuitBuilder(2)
    assert O.solve_weight_k_sat(b.build(b.and_(b.input(1), b.input(2))), 1) is None


@given(seeds)
def test_weight_k_matches_filtered_brute_force(seed):
    rng = random.Random(seed)
    cnf = random_cnf(rng, rng.randint(1, 7), rng.randint(0, 8))
    k = rng.randint(0, cnf.num_variables)
    table = O.sat_table(cnf)
    n = cnf.num_variables
    want = any(table >> i & 1 and bin(i).count("1") == k for i in range(1 << n))
    got = O.solve_weight_k_sat(cnf, k)
    assert (got is not None) == want
    if got is not None:
        assert got.weight == k


# ------------------------------------------------------------ 2-SAT and Horn

def test_2sat_examples():
    assert O.solve_2sat_poly(CnfInstance.from_ints(2, [[1, 2], [-1, 2], [1, -2], [-1, -2]])) is None
    assert O.solve_2sat_poly(CnfInstance.from_ints(1, [[1]])).values[1]


@given(seeds)
def test_2sat_poly_matches_brute(seed):
    rng = random.Random(seed)
    cnf = random_cnf(rng, rng.randint(1, 16), rng.randint(0, 40), arity=2)
    got = O.solve_2sat_poly(cnf)
    assert (got is None) == (O.solve_sat_bruteforce(cnf) is None)
    if got is not None:
        assert all(c.satisfied_by(got.values) for c in cnf.clauses)


def test_horn_examples():
    a = O.solve_horn_poly(CnfInstance.from_ints(2, [[1], [-1, 2]]))
    assert a.values == {1: True, 2: True}
    a = O.solve_horn_poly(CnfInstance.from_ints(1, [[-1]]))
    assert a.values == {1: False}


@given(seeds)
def test_horn_poly_matches_brute(seed):
    rng = random.Random(seed)
    cnf = gen.cnf_horn_backdoor(rng, b=0, n=rng.randint(1, 10), clauses=rng.randint(0, 20))
    assert is_horn(cnf.clauses)
    got = O.solve_horn_poly(cnf)
    assert (got is None) == (O.solve_sat_bruteforce(cnf) is None)
    if got is not None:
        assert all(c.satisfied_by(got.values) for c in cnf.clauses)


# ------------------------------------------------------------ annotated reachability

def test_ann_examples():
    d = AnnotatedDag(2, ((0, 1, None),), 0, 1, 1)
    assert O.solve_ann_reach(d) is not None and O.solve_ann_nonreach(d) is None
    d = AnnotatedDag(2, ((0, 1, Literal(1, True)),), 0, 1, 1)
    assert O.solve_ann_reach(d).values == {1: True}
    assert O.solve_ann_nonreach(d).values == {1: False}


@given(seeds)
def test_ann_table_matches_bfs(seed):
    rng = random.Random(seed)
    d = gen.annotated_dag(rng, n=rng.randint(2, 8), m=rng.randint(0, 5))
    table = O.ann_reach_table(d)
    for idx, a in enumerate(all_assignments(range(1, d.num_annotation_vars + 1))):
        assert bool(table >> idx & 1) == O.ann_reachable(d, a)


# ------------------------------------------------------------ graphs

def test_graph_examples():
    tri = complete(3)
    assert O.solve_qcoloring_bruteforce(tri, 3) is not None
    assert O.solve_qcoloring_bruteforce(tri, 2) is None
    assert O.solve_maxcut_bruteforce(complete(4))[1] == 4
    for r in range(0, 4):
        assert O.degeneracy(complete(r + 2)) == r + 1


@given(seeds)
def test_coloring_brute_matches_elimination(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 9), rng.random())
    q = rng.randint(2, 4)
    brute = O.solve_qcoloring_bruteforce(g, q)
    assert (brute is None) == (solve_list_coloring_elimination(g, q) is None)
    if brute is not None:
        assert O.is_proper_coloring(g, brute, q)


@given(seeds)
def test_maxcut_brute_matches_elimination(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 12), rng.random())
    side, value = O.solve_maxcut_bruteforce(g)
    assert O.cut_weight(g, side) == value == maxcut_elimination(g)[1]


@given(seeds)
def test_knc_on_dominating_gadget_matches_dominating_set(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 8), rng.random())
    n, k = g.vertex_count, rng.randint(1, 3)
    s, t = 2 * n + 1, 2 * n + 2
    edges = [(v, n + v) for v in g.vertices] + [(s, n + v) for v in g.vertices] + [(n + v, t) for v in g.vertices]
    edges += [(u, n + v) for u, v, _ in g.edges] + [(v, n + u) for u, v, _ in g.edges]
    gadget = SimpleGraph.from_edges(2 * n + 2, edges, directed=True)
    want = O.solve_dominating_set_bruteforce(g, k) is not None
    assert (O.solve_knc_bruteforce(gadget, s, t, k) is not None) == want


@given(seeds)
def test_degdel_solution_is_checked_by_degeneracy(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 8), rng.random())
    r, k = rng.randint(1, 2), rng.randint(1, 2)
    got = O.solve_degdel_bruteforce(g, r, k)
    if got is not None:
        assert len(got) <= k and O.degeneracy(g, got) <= r
    else:
        for size in range(k + 1):
            for dele in itertools.combinations(g.vertices, size):
                assert O.degeneracy(g, dele) > r


def test_width_examples():
    assert O.tree_depth_bruteforce(path(4)) == 3
    for n in range(1, 6):
        assert O.tree_depth_bruteforce(complete(n)) == n
        assert O.pathwidth_bruteforce(path(n)) == min(1, n - 1)
