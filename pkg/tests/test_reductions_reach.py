import random

from hypothesis import given, settings, strategies as st

from sethlab import oracles as O
from sethlab.core import (AnnotatedDag, BaseClass, CnfInstance, Literal, StructureCertificate, primal_graph,
                          verify_backdoor, verify_path_decomposition)
from sethlab.harness import generators as gen
from sethlab.reductions_reach import (annnonreach_to_2satbackdoor, annreach_to_logpw_sat, complement_annotated,
                                      complement_vertex_bound, logpw_sat_to_annreach, twosatbackdoor_to_annnonreach,
                                      twosatbackdoor_to_circuit)

seeds = st.integers(0, 10 ** 6)


def everything(m):
    return (1 << (1 << m)) - 1


def reach(d):
    return O.ann_reach_table(d)


def nonreach(d):
    return everything(d.num_annotation_vars) & ~reach(d)


def projected(cnf, keep):
    return O.projected_models_cdcl(cnf, list(keep))


def dag(rng, n_max=8, m_max=6):
    return gen.annotated_dag(rng, n=rng.randint(2, n_max), m=rng.randint(0, m_max), density=rng.uniform(0.2, 0.6))


def two_sat(b, n, clauses, backdoor):
    return CnfInstance.from_ints(b + n, clauses).with_certificate(
        StructureCertificate.backdoor(backdoor, BaseClass.TWO_SAT))


# ------------------------------------------------------------ non-reach to 2-SAT backdoor

def test_no_arcs_is_always_satisfiable():
    d = AnnotatedDag(3, (), 0, 2, 2)
    cnf = annnonreach_to_2satbackdoor(d)
    assert projected(cnf, [1, 2]) == everything(2)


def test_plain_arc_is_never_satisfiable():
    d = AnnotatedDag(2, ((0, 1, None),), 0, 1, 2)
    assert projected(annnonreach_to_2satbackdoor(d), [1, 2]) == 0


@given(seeds)
def test_nonreach_to_2sat_per_assignment(seed):
    d = dag(random.Random(seed))
    cnf = annnonreach_to_2satbackdoor(d)
    assert verify_backdoor(cnf, cnf.certificate)
    assert cnf.certificate.modulator == frozenset(range(1, d.num_annotation_vars + 1))
    assert projected(cnf, range(1, d.num_annotation_vars + 1)) == nonreach(d)


# ------------------------------------------------------------ 2-SAT backdoor to non-reach

def test_contradiction_core_gives_path_everywhere():
    cnf = two_sat(2, 1, [[3], [-3], [1, 2]], [1, 2])
    d = twosatbackdoor_to_annnonreach(cnf)
    assert d.num_annotation_vars == 2 and reach(d) == everything(2)


def test_empty_formula_never_has_path():
    d = twosatbackdoor_to_annnonreach(two_sat(2, 2, [], [1, 2]))
    assert reach(d) == 0


@given(seeds)
def test_2sat_to_nonreach_per_assignment(seed):
    rng = random.Random(seed)
    cnf = gen.cnf_2sat_backdoor(rng, b=rng.randint(0, 6), n=rng.randint(1, 6), clauses=rng.randint(0, 12))
    d = twosatbackdoor_to_annnonreach(cnf)
    assert nonreach(d) == projected(cnf, sorted(cnf.certificate.modulator))


# ------------------------------------------------------------ path decomposition to reach

def test_single_bag_satisfiable_everywhere():
    cnf = CnfInstance.from_ints(3, [[1, 3], [2, 3]])
    cnf = cnf.with_certificate(StructureCertificate.path_decomposition([1, 2], [{3}], 0))
    assert reach(logpw_sat_to_annreach(cnf)) == everything(2)


def test_unsat_remainder_never_reaches():
    cnf = CnfInstance.from_ints(3, [[2], [-2, 3], [-3]])
    cnf = cnf.with_certificate(StructureCertificate.path_decomposition([1], [{2, 3}], 1))
    assert reach(logpw_sat_to_annreach(cnf)) == 0


@given(seeds)
def test_logpw_to_reach_per_assignment(seed):
    rng = random.Random(seed)
    cnf = gen.cnf_pw_modulator(rng, m=rng.randint(0, 6), rest=rng.randint(1, 8), width=rng.randint(1, 3),
                               clauses=rng.randint(1, 12))
    d = logpw_sat_to_annreach(cnf)
    assert d.num_annotation_vars == len(cnf.certificate.modulator)
    assert reach(d) == projected(cnf, sorted(cnf.certificate.modulator))


# ------------------------------------------------------------ reach to path decomposition

def test_plain_arc_always_satisfiable():
    cnf = annreach_to_logpw_sat(AnnotatedDag(2, ((0, 1, None),), 0, 1, 1))
    assert projected(cnf, [1]) == everything(1)


def test_isolated_sink_never_satisfiable():
    cnf = annreach_to_logpw_sat(AnnotatedDag(3, ((0, 1, Literal(1, True)),), 0, 2, 1))
    assert projected(cnf, [1]) == 0


@given(seeds)
def test_reach_to_logpw_per_assignment(seed):
    d = dag(random.Random(seed))
    cnf = annreach_to_logpw_sat(d)
    assert verify_path_decomposition(primal_graph(cnf), cnf.certificate)
    assert projected(cnf, range(1, d.num_annotation_vars + 1)) == reach(d)


# ------------------------------------------------------------ complement

def test_complement_of_arcless_dag_always_reaches():
    d = AnnotatedDag(3, (), 0, 2, 1)
    assert reach(complement_annotated(d)) == everything(1)


def test_complement_of_plain_arc_never_reaches():
    d = AnnotatedDag(2, ((0, 1, None),), 0, 1, 1)
    assert reach(complement_annotated(d)) == 0


@settings(max_examples=25)
@given(seeds)
def test_complement_per_assignment(seed):
    d = dag(random.Random(seed), n_max=5, m_max=4)
    out = complement_annotated(d)
    assert out.num_annotation_vars == d.num_annotation_vars
    mult = max([sum(1 for a in d.arcs if a[:2] == (u, v)) for u, v, _ in d.arcs] or [1])
    assert out.num_vertices <= complement_vertex_bound(d.num_vertices, mult)
    assert reach(out) == nonreach(d)


# ------------------------------------------------------------ 2-SAT backdoor to circuit

def test_backdoor_everything_matches_truth_table():
    cnf = two_sat(3, 0, [[1, -2], [2, 3], [-1, -3]], [1, 2, 3])
    c = twosatbackdoor_to_circuit(cnf)
    assert O.circuit_truth_table(c) == O.sat_table(cnf)


def test_remainder_contradiction_is_false():
    c = twosatbackdoor_to_circuit(two_sat(1, 1, [[2], [-2]], [1]))
    assert O.circuit_truth_table(c) == 0


@settings(max_examples=25)
@given(seeds)
def test_2sat_circuit_per_assignment(seed):
    rng = random.Random(seed)
    cnf = gen.cnf_2sat_backdoor(rng, b=rng.randint(0, 5), n=rng.randint(1, 4), clauses=rng.randint(0, 8))
    c = twosatbackdoor_to_circuit(cnf)
    assert O.circuit_truth_table(c) == projected(cnf, sorted(cnf.certificate.modulator))
