import math
from itertools import combinations
import random

from hypothesis import given, strategies as st

from sethlab import formula as fm
from sethlab import oracles as O
from sethlab.core import (BranchingProgram, CircuitBuilder, CnfInstance, GateKind, StructureCertificate,
                          circuit_depth, is_formula, primal_graph, verify_path_decomposition)
from sethlab.harness import generators as gen
from sethlab.reductions_circuit import (balance_formula, barrington_transform, bp_to_cnf_pw5, build_psi_r,
                                        formula_to_weight_k, is_and_not_basis, maxsat_to_lindepth_circuit,
                                        normalize_circuit, weight_k_formula_to_circuit)

from conftest import random_cnf

seeds = st.integers(0, 10 ** 6)


def table(c):
    return O.circuit_truth_table(c)


def weight_count(c, k):
    inputs = range(1, c.num_inputs + 1)
    return sum(O.eval_circuit(c, {v: v in on for v in inputs}) for on in map(set, combinations(inputs, k)))


def random_bp(rng, n, length):
    layers, arcs, labels = [[0]], [], {}
    nxt = 1
    for t in range(length):
        size = 2 if t == length - 1 else rng.randint(1, 5)
        layer = list(range(nxt, nxt + size))
        nxt += size
        for u in layers[-1]:
            labels[u] = rng.randint(1, n)
            arcs += [(u, rng.choice(layer), False), (u, rng.choice(layer), True)]
        layers.append(layer)
    return BranchingProgram(n, layers, 5, 0, layers[-1][0], layers[-1][1], labels, arcs)


# ------------------------------------------------------------ normalization

def test_de_morgan():
    b = CircuitBuilder(2)
    c = b.build(b.or_(b.input(1), b.input(2)))
    out = normalize_circuit(c)
    kinds = sorted(g.kind.value for g in out.gates)
    assert is_and_not_basis(out) and GateKind.OR not in {g.kind for g in out.gates}
    assert kinds.count(GateKind.NOT.value) == 3 and kinds.count(GateKind.AND.value) == 1
    assert table(out) == table(c) == 0b1110


def test_normalized_circuit_is_unchanged():
    b = CircuitBuilder(2)
    c = b.build(b.not_(b.and_(b.input(1), b.input(2))))
    assert normalize_circuit(c) is c


@given(seeds, st.sampled_from(["and-not", "nnf"]))
def test_normalize_preserves_function(seed, basis):
    rng = random.Random(seed)
    c = gen.circuit_depth_bounded(rng, n=rng.randint(1, 10), depth=rng.randint(1, 5))
    out = normalize_circuit(c, basis)
    assert table(out) == table(c)
    assert circuit_depth(out) <= 2 * circuit_depth(c) + 1


# ------------------------------------------------------------ Barrington

def test_barrington_identity():
    b = CircuitBuilder(1)
    bp = barrington_transform(b.build(b.input(1)))
    assert bp.width == 5 and O.bp_truth_table(bp) == 0b10


def test_barrington_nand_accepts_three():
    b = CircuitBuilder(2)
    bp = barrington_transform(b.build(b.not_(b.and_(b.input(1), b.input(2)))))
    assert bp.width == 5 and O.bp_truth_table(bp) == 0b0111


@given(seeds)
def test_barrington_matches_circuit(seed):
    rng = random.Random(seed)
    c = gen.circuit_depth_bounded(rng, n=rng.randint(1, 10), depth=rng.randint(1, 5), basis="and-not")
    bp = barrington_transform(c)
    assert bp.width == 5 and all(len(layer) <= 5 for layer in bp.layers)
    assert bp.length <= 4 ** circuit_depth(c)
    assert O.bp_truth_table(bp) == table(c)


# ------------------------------------------------------------ BP to CNF

def _constant_bp(accept):
    target = 1 if accept else 2
    return BranchingProgram(1, [[0], [1, 2]], 5, 0, 1, 2, {0: 1}, [(0, target, False), (0, target, True)])


def test_constant_bps():
    assert O.solve_sat_bruteforce(bp_to_cnf_pw5(_constant_bp(True))) is not None
    assert O.solve_sat_bruteforce(bp_to_cnf_pw5(_constant_bp(False))) is None


@given(seeds)
def test_bp_cnf_projects_to_accepted_inputs(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    bp = random_bp(rng, n, rng.randint(1, 6))
    cnf = bp_to_cnf_pw5(bp)
    assert cnf.certificate.width <= 5
    assert verify_path_decomposition(primal_graph(cnf), cnf.certificate)
    assert O.projected_models_cdcl(cnf, list(range(1, n + 1))) == O.bp_truth_table(bp)


def test_barrington_output_cnf_has_pathwidth_5():
    rng = random.Random(7)
    c = gen.circuit_depth_bounded(rng, n=4, depth=3, basis="and-not")
    cnf = bp_to_cnf_pw5(barrington_transform(c))
    assert cnf.certificate.width == 5
    assert verify_path_decomposition(primal_graph(cnf), cnf.certificate)


# ------------------------------------------------------------ psi over a modulator

def test_psi_single_tree_node():
    y, a = 1, 2
    cnf = CnfInstance.from_ints(2, [[y, a]]).with_certificate(StructureCertificate.tree_depth([a], {y: 0}, 1))
    psi = build_psi_r(cnf)
    assert psi.num_inputs == 1 and table(psi) == 0b11


def test_psi_unsat_forest_core_is_false():
    cnf = CnfInstance.from_ints(3, [[2], [-2], [1, 3]])
    cnf = cnf.with_certificate(StructureCertificate.tree_depth([1], {2: 0, 3: 0}, 1))
    assert table(build_psi_r(cnf)) == 0


@given(seeds)
def test_psi_accepts_extendable_modulator_assignments(seed):
    rng = random.Random(seed)
    cnf = gen.cnf_td_modulator(rng, m=rng.randint(1, 6), rest=rng.randint(1, 8), depth=rng.randint(1, 3),
                               clauses=rng.randint(1, 12))
    psi = build_psi_r(cnf)
    assert is_formula(psi)
    assert table(psi) == O.projected_models_cdcl(cnf, sorted(cnf.certificate.modulator))


# ------------------------------------------------------------ weight-k encodings

def test_weight_k_with_singleton_groups_doubles_inputs():
    f = gen.formula(random.Random(1), n=3, leaves=6)
    out, k = formula_to_weight_k(f, 3)
    assert k == 3 and out.num_inputs == 6
    assert weight_count(out, 3) == bin(table(f)).count("1")


def test_weight_k_of_unsat_formula():
    b = CircuitBuilder(2)
    x = b.input(1)
    out, k = formula_to_weight_k(b.build(b.and_(x, b.not_(x))), 1)
    assert O.solve_weight_k_sat(out, k) is None


@given(seeds)
def test_weight_k_model_counts(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 8)
    f = gen.formula(rng, n=m, leaves=rng.randint(1, 16))
    k = rng.randint(1, min(3, m))
    out, k = formula_to_weight_k(f, k)
    assert is_formula(out)
    assert weight_count(out, k) == bin(table(f)).count("1")


def test_selector_circuit_examples():
    b = CircuitBuilder(2)
    c = weight_k_formula_to_circuit(b.build(b.or_(b.input(1), b.input(2))), 1)
    assert c.num_inputs == 1 and table(c) == 0b11
    b = CircuitBuilder(2)
    c = weight_k_formula_to_circuit(b.build(b.and_(b.input(1), b.input(2))), 1)
    assert table(c) == 0


@given(seeds)
def test_selector_circuit_matches_weight_k(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    f = gen.formula(rng, n=n, leaves=rng.randint(1, 14))
    k = rng.randint(1, min(3, n))
    c = weight_k_formula_to_circuit(f, k)
    assert c.num_inputs == k * max(1, math.ceil(math.log2(n)))
    assert (table(c) != 0) == (O.solve_weight_k_sat(f, k) is not None)


# ------------------------------------------------------------ balancing

def test_balance_and_chain_of_eight():
    b = CircuitBuilder(8)
    g = b.input(1)
    for i in range(2, 9):
        g = b.and_(g, b.input(i))
    chain = b.build(g)
    assert circuit_depth(chain) == 7
    bal = balance_formula(chain)
    assert circuit_depth(bal) <= 3 * 3 + 1 and table(bal) == table(chain)


def test_balance_of_balanced_input_stays_shallow():
    b = CircuitBuilder(8)
    f = b.build(b.and_tree([b.input(i) for i in range(1, 9)]), fan_in_bound=2)
    assert circuit_depth(balance_formula(f)) <= circuit_depth(f) + 1


@given(seeds)
def test_balance_preserves_function(seed):
    rng = random.Random(seed)
    f = gen.formula(rng, n=rng.randint(1, 10), leaves=rng.randint(1, 40))
    bal = balance_formula(f)
    leaves = max(2, fm.leaves(fm.from_circuit(f)))
    assert is_formula(bal) and table(bal) == table(f)
    assert circuit_depth(bal) <= 3 * math.ceil(math.log2(leaves)) + 1


# ------------------------------------------------------------ Max-SAT threshold circuit

def test_threshold_circuit_edges():
    cnf = CnfInstance.from_ints(2, [[1], [-1, 2], [-2]])
    n = cnf.num_variables
    assert table(maxsat_to_lindepth_circuit(cnf, 0)) == (1 << (1 << n)) - 1
    assert table(maxsat_to_lindepth_circuit(cnf, 4)) == 0
    sat = CnfInstance.from_ints(2, [[1, 2], [-1]])
    assert table(maxsat_to_lindepth_circuit(sat, sat.num_clauses)) != 0


@given(seeds)
def test_threshold_circuit_every_t(seed):
    rng = random.Random(seed)
    cnf = random_cnf(rng, rng.randint(1, 8), rng.randint(0, 10), max_weight=2)
    best = O.maxsat_value(cnf)
    total = sum(c.weight for c in cnf.clauses)
    for t in range(total + 2):
        assert (table(maxsat_to_lindepth_circuit(cnf, t)) != 0) == (best >= t)
