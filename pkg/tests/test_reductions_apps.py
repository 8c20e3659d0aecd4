import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from sethlab import oracles as O
from sethlab.core import (AnnotatedDag, CnfInstance, Literal, SimpleGraph, StructureCertificate, verify_certificate,
                          verify_hub, verify_path_decomposition)
from sethlab.elimination import maxcut_elimination, solve_list_coloring_elimination
from sethlab.harness import generators as gen
from sethlab.reductions_apps import (annnonreach_to_knc, choose_gamma_rho, degdel_to_circuitsat, dominating_to_knc,
                                     knc_to_annnonreach, maxcut_to_maxsat, maxsat_to_maxcut, palette_lists,
                                     pwmod_sat_to_qcoloring, qcoloring_to_sat_td)

from conftest import random_cnf

seeds = st.integers(0, 10 ** 6)


def complete(n):
    return SimpleGraph.from_edges(n, list(itertools.combinations(range(1, n + 1), 2)))


def sat(cnf):
    return O.solve_sat_cdcl(cnf) is not None


def knc_yes(inst):
    return O.solve_knc_bruteforce(inst.graph, inst.s, inst.t, inst.k) is not None


def nonreach_somewhere(d):
    return O.ann_reach_table(d) != O.var_masks(d.num_annotation_vars)[1]


def colourable(g, q):
    palette = list(range(g.vertex_count - q + 1, g.vertex_count + 1))
    h, lists = palette_lists(g, palette, q)
    return solve_list_coloring_elimination(h, q, lists) is not None


# ------------------------------------------------------------ colouring to SAT

def test_triangle_colouring_to_sat():
    tri = complete(3)
    cert = StructureCertificate.tree_depth([], {1: 0, 2: 1, 3: 2}, 3)
    assert sat(qcoloring_to_sat_td(tri, cert, 3, 1, 2))
    assert not sat(qcoloring_to_sat_td(tri, cert, 2, 1, 1))


@given(seeds)
def test_colouring_to_sat_equivalence(seed):
    rng = random.Random(seed)
    q = rng.choice([3, 4])
    n = rng.randint(1, 9)
    g, cert = gen.graph(rng, n=n, p=rng.random(), modulator=rng.randint(1, min(4, n)), depth=rng.randint(1, 3))
    gamma, rho = rng.choice([(1, 2), (2, 4)] + ([(1, 3)] if q == 3 else []))
    cnf = qcoloring_to_sat_td(g, cert, q, gamma, rho)
    assert verify_certificate(cnf)
    assert len(cnf.certificate.modulator) <= math.ceil(len(cert.modulator) / gamma) * rho
    assert cnf.certificate.depth <= cert.depth * q
    assert sat(cnf) == (O.solve_qcoloring_bruteforce(g, q) is not None)


@pytest.mark.parametrize("args, want", [((3, 1), (4, 7)), ((3, 1, "pathwidth"), (2, 3)), ((3, 0.5), (8, 13)),
                                        ((4, 0.3, "pathwidth"), (4, 7))])
def test_choose_gamma_rho_values(args, want):
    assert choose_gamma_rho(*args) == want


@given(st.integers(2, 9), st.floats(0.05, 1.0))
def test_choose_gamma_rho_inequalities(q, eps):
    lq = math.log2(q)
    gamma, rho = choose_gamma_rho(q, eps)
    assert rho > 4 * lq / eps
    assert (1 - eps / 2) * rho <= gamma * lq <= rho
    gamma, rho = choose_gamma_rho(q, eps, "pathwidth")
    assert gamma >= 2 / (eps * lq)
    assert (1 - eps / 2) * gamma * lq < rho < gamma * lq


def test_choose_gamma_rho_grows_as_epsilon_shrinks():
    for q in (3, 4, 5):
        rhos = [choose_gamma_rho(q, e)[1] for e in (1.0, 0.5, 0.25, 0.1)]
        assert rhos == sorted(rhos)


def test_choose_gamma_rho_rejects_bad_input():
    for args in ((1, 0.5), (3, 0), (3, 1.5)):
        with pytest.raises(ValueError):
            choose_gamma_rho(*args)


# ------------------------------------------------------------ max-cut and Max-SAT

def test_single_edge_maxcut_to_maxsat():
    cnf, offset = maxcut_to_maxsat(SimpleGraph.from_edges(2, [(1, 2)]))
    assert O.maxsat_value(cnf) == 2 and O.maxsat_value(cnf) - offset == 1


def test_triangle_maxcut_to_maxsat():
    cnf, offset = maxcut_to_maxsat(complete(3))
    assert O.maxsat_value(cnf) == 5 and offset == 3


@given(seeds)
def test_maxcut_to_maxsat_identity(seed):
    rng = random.Random(seed)
    g, _ = gen.graph(rng, n=rng.randint(1, 14), p=rng.random())
    cnf, offset = maxcut_to_maxsat(g)
    assert O.maxsat_value(cnf) - offset == maxcut_elimination(g)[1]


def test_unit_clause_gadget():
    cnf = CnfInstance.from_ints(1, [[1]])
    for weighted in (True, False):
        g, target = maxsat_to_maxcut(cnf, 1, weighted=weighted)
        assert maxcut_elimination(g)[1] >= target
        g, target = maxsat_to_maxcut(cnf, 2, weighted=weighted)
        assert maxcut_elimination(g)[1] < target


@settings(max_examples=15)
@given(seeds)
def test_maxsat_to_maxcut_threshold_sweep(seed):
    rng = random.Random(seed)
    cnf = random_cnf(rng, rng.randint(1, 3), rng.randint(1, 3), arity=2)
    best = O.maxsat_value(cnf)
    g, _, hub = maxsat_to_maxcut(cnf, 0, with_hub=True)
    assert verify_hub(g, hub) and hub.delta <= max(1, cnf.max_arity) + 1
    value = maxcut_elimination(g)[1]
    for t in range(cnf.num_clauses + 2):
        _, target = maxsat_to_maxcut(cnf, t)
        assert (value >= target) == (best >= t)


# ------------------------------------------------------------ SAT with a pathwidth modulator to colouring

def pw_cnf(n, clauses, modulator, bags, width):
    return CnfInstance.from_ints(n, clauses).with_certificate(
        StructureCertificate.path_decomposition(modulator, bags, width))


def test_trivially_satisfiable_is_colourable():
    cnf = pw_cnf(2, [[1, 2]], [1], [{2}], 0)
    g, cert = pwmod_sat_to_qcoloring(cnf, 3, 1, 1)
    assert verify_path_decomposition(g, cert) and colourable(g, 3)


def test_empty_clause_is_not_colourable():
    cnf = pw_cnf(2, [[1, 2], []], [1], [{2}], 0)
    g, _ = pwmod_sat_to_qcoloring(cnf, 3, 1, 1)
    assert not colourable(g, 3)


def test_pwmod_needs_three_colours():
    with pytest.raises(ValueError):
        pwmod_sat_to_qcoloring(pw_cnf(1, [[1]], [], [{1}], 0), 2, 1, 1)


@settings(max_examples=30)
@given(seeds)
def test_pwmod_to_colouring_equivalence(seed):
    rng = random.Random(seed)
    cnf = gen.cnf_pw_modulator(rng, m=rng.randint(0, 4), rest=rng.randint(1, 5), width=1, clauses=rng.randint(1, 8))
    gamma, rho = rng.choice([(1, 1), (2, 3)])
    g, cert = pwmod_sat_to_qcoloring(cnf, 3, gamma, rho)
    assert len(cert.modulator) <= math.ceil(len(cnf.certificate.modulator) / rho) * gamma
    assert cert.width <= cnf.certificate.width + 8 + 3
    assert colourable(g, 3) == sat(cnf)


# ------------------------------------------------------------ k-Neighborhood-Cut

def test_plain_arc_knc_is_no():
    d = AnnotatedDag(2, ((0, 1, None),), 0, 1, 1)
    assert not nonreach_somewhere(d) and not knc_yes(annnonreach_to_knc(d, 1))


def test_annotated_arc_knc_is_yes():
    d = AnnotatedDag(2, ((0, 1, Literal(1, True)),), 0, 1, 1)
    assert nonreach_somewhere(d) and knc_yes(annnonreach_to_knc(d, 1))


@given(seeds)
def test_annnonreach_to_knc_equivalence(seed):
    rng = random.Random(seed)
    d = gen.annotated_dag(rng, n=rng.randint(2, 6), m=rng.randint(0, 6), density=rng.uniform(0.2, 0.6))
    k = rng.randint(1, 2)
    assert knc_yes(annnonreach_to_knc(d, k)) == nonreach_somewhere(d)


def test_direct_arc_cannot_be_cut():
    g = SimpleGraph.from_edges(2, [(1, 2)], directed=True)
    assert O.solve_knc_bruteforce(g, 1, 2, 1) is None
    assert not nonreach_somewhere(knc_to_annnonreach(g, 1, 2, 1))


def test_isolated_sink_is_cut():
    g = SimpleGraph.from_edges(3, [(1, 2)], directed=True)
    assert nonreach_somewhere(knc_to_annnonreach(g, 1, 3, 1))


@given(seeds)
def test_knc_to_annnonreach_equivalence(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    g, _ = gen.graph(rng, n=n, p=rng.random(), directed=True)
    k = rng.randint(1, 2)
    d = knc_to_annnonreach(g, 1, n, k)
    assert d.num_vertices <= max(n, 2) ** 5
    assert nonreach_somewhere(d) == (O.solve_knc_bruteforce(g, 1, n, k) is not None)


def test_dominating_examples():
    assert knc_yes(dominating_to_knc(complete(5), 1))
    assert not knc_yes(dominating_to_knc(SimpleGraph.from_edges(3, []), 1))


@given(seeds)
def test_dominating_to_knc_equivalence(seed):
    rng = random.Random(seed)
    g, _ = gen.graph(rng, n=rng.randint(1, 10), p=rng.random())
    k = rng.randint(1, 3)
    assert knc_yes(dominating_to_knc(g, k)) == (O.solve_dominating_set_bruteforce(g, k) is not None)


# ------------------------------------------------------------ degenerate deletion

def circuit_sat(c):
    return O.solve_circuit_sat(c) is not None


@pytest.mark.parametrize("r", [1, 2, 3])
def test_clique_needs_one_deletion(r):
    g = complete(r + 2)
    assert O.degeneracy(g) == r + 1
    assert circuit_sat(degdel_to_circuitsat(g, r, 1))


def test_already_degenerate_graph():
    g = SimpleGraph.from_edges(4, [(1, 2), (2, 3), (3, 4)])
    assert circuit_sat(degdel_to_circuitsat(g, 1, 1))


@given(seeds)
def test_degdel_equivalence(seed):
    rng = random.Random(seed)
    g, _ = gen.graph(rng, n=rng.randint(1, 9), p=rng.random())
    r, k = 2, rng.randint(1, 2)
    assert circuit_sat(degdel_to_circuitsat(g, r, k)) == (O.solve_degdel_bruteforce(g, r, k) is not None)
