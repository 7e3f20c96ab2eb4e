import itertools

import numpy as np
import pytest

from orthoproof.hilbert import (
    HilbertError, Subspace, check_fold_criterion, closure_agreement_sweep,
    fold_agreement_sweep, full, join, leq, measurement_sweep, meet, ortho,
    parse_subspace, projector, random_subspace, same, sasaki_closure,
    sasaki_lattice, sequential_measure, subspace, verify, zero,
)
from orthoproof.lattice import boolean

RT2 = 1 / np.sqrt(2)
E1 = subspace([[1], [0]])
E2 = subspace([[0], [1]])
DIAG = subspace([[RT2], [RT2]])


# --- construction -----------------------------------------------------------

def test_subspace_orthonormalizes_and_ranks():
    s = subspace([[1, 2], [0, 0]])          # two parallel columns
    assert s.dim == 1 and s.n == 2
    assert same(s, E1)


def test_zero_and_full():
    assert zero(3).dim == 0 and full(3).dim == 3
    assert same(ortho(zero(3)), full(3))
    assert same(ortho(full(3)), zero(3))


def test_zero_columns_dropped():
    s = subspace([[0, 1], [0, 0]])
    assert s.dim == 1
    assert subspace(np.zeros((3, 2))).dim == 0


def test_empty_spanning_set_needs_dimension():
    with pytest.raises(HilbertError):
        subspace(np.zeros((0, 0)))


def test_non_orthonormal_basis_rejected():
    with pytest.raises(HilbertError, match="orthonormal"):
        Subspace(np.array([[1.0], [1.0]], dtype=complex))


def test_random_subspace_is_reproducible():
    a = random_subspace(np.random.default_rng(5), 4, 2)
    b = random_subspace(np.random.default_rng(5), 4, 2)
    assert a.dim == 2 and same(a, b)


# --- projectors -------------------------------------------------------------

def test_projector_examples():
    assert np.allclose(projector(full(2)), np.eye(2))
    assert np.allclose(projector(zero(2)), np.zeros((2, 2)))
    assert np.allclose(projector(DIAG), [[0.5, 0.5], [0.5, 0.5]])


def test_projector_algebra():
    rng = np.random.default_rng(11)
    for _ in range(50):
        n = int(rng.integers(2, 7))
        p = projector(random_subspace(rng, n))
        assert np.abs(p @ p - p).max() < 1e-10
        assert np.abs(p.conj().T - p).max() < 1e-10


# --- lattice operations -----------------------------------------------------

def test_join_meet_of_distinct_lines():
    assert same(join(E1, DIAG), full(2))
    assert same(meet(E1, DIAG), zero(2))


def test_meet_is_idempotent():
    assert same(meet(E1, E1), E1)
    assert same(join(DIAG, DIAG), DIAG)


def test_ortho_is_an_involution():
    rng = np.random.default_rng(3)
    for _ in range(25):
        a = random_subspace(rng, int(rng.integers(2, 6)))
        assert same(ortho(ortho(a)), a)
        assert same(meet(a, ortho(a)), zero(a.n))
        assert same(join(a, ortho(a)), full(a.n))


def test_leq_is_containment():
    assert leq(zero(2), E1) and leq(E1, full(2)) and leq(E1, E1)
    assert not leq(E1, DIAG) and not leq(full(2), E1)


def test_dimension_mismatch_raises():
    with pytest.raises(HilbertError, match="ambient"):
        join(E1, full(3))
    with pytest.raises(HilbertError, match="ambient"):
        meet(full(3), E2)


def test_two_orthogonal_lines_form_a_boolean_ortholattice():
    # {0, the two axes, C^2} against the four-element boolean lattice,
    # checked by exhausting bijections.
    elems = [zero(2), E1, E2, full(2)]
    L = boolean(2)
    found = False
    for perm in itertools.permutations(range(L.n)):
        ok = True
        for i, j in itertools.product(range(4), repeat=2):
            mt = next(k for k in range(4) if same(meet(elems[i], elems[j]), elems[k]))
            jn = next(k for k in range(4) if same(join(elems[i], elems[j]), elems[k]))
            if L.meet[perm[i], perm[j]] != perm[mt] or L.join[perm[i], perm[j]] != perm[jn]:
                ok = False
                break
        if ok and all(
            L.neg[perm[i]]
            == perm[next(k for k in range(4) if same(ortho(elems[i]), elems[k]))]
            for i in range(4)
        ):
            found = True
            break
    assert found


# --- the sequential connective, both routes ---------------------------------

def test_sasaki_example_line_onto_diagonal():
    assert same(sasaki_lattice(E1, DIAG), DIAG)
    assert same(sasaki_closure(E1, DIAG), DIAG)


def test_sasaki_against_full_space_is_identity():
    assert same(sasaki_lattice(E1, full(2)), E1)
    assert same(sasaki_closure(E1, full(2)), E1)


def test_sasaki_of_orthogonal_pair_is_zero():
    assert same(sasaki_lattice(E2, E1), zero(2))
    assert same(sasaki_closure(E2, E1), zero(2))


def test_closure_agreement_sweep_dims_2_to_6():
    rng = np.random.default_rng(0)
    row = closure_agreement_sweep(rng, [2, 3, 4, 5, 6], 200)
    assert row.passed and row.instances == 200
    assert row.worst < 1e-8


# --- sequential measurement -------------------------------------------------

def test_measurement_example():
    tr = sequential_measure([1, 0], [DIAG])
    assert tr.survived
    assert tr.final_probability == pytest.approx(0.5, abs=1e-15)
    assert np.allclose(tr.final_state, [RT2, RT2])


def test_measurement_of_state_already_inside():
    tr = sequential_measure([RT2, RT2], [DIAG])
    assert tr.final_probability == pytest.approx(1.0, abs=1e-14)


def test_measurement_annihilation():
    tr = sequential_measure([RT2, -RT2], [DIAG])
    assert not tr.survived
    assert tr.steps[0].probability == 0.0
    assert tr.steps[0].state is None
    assert tr.steps[0].annihilated


def test_annihilation_truncates_the_trace():
    tr = sequential_measure([RT2, -RT2], [DIAG, E1, E2])
    assert len(tr.steps) == 1


def test_empty_chain():
    tr = sequential_measure([1, 0], [])
    assert tr.survived and tr.final_probability == 1.0
    assert np.allclose(tr.final_state, [1, 0])


def test_probabilities_are_cumulative_and_decreasing():
    rng = np.random.default_rng(9)
    for _ in range(25):
        n = int(rng.integers(2, 5))
        chain = [random_subspace(rng, n, k=int(rng.integers(1, n + 1)))
                 for _ in range(3)]
        g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        tr = sequential_measure(g / np.linalg.norm(g), chain)
        ps = [s.probability for s in tr.steps]
        assert all(a >= b - 1e-12 for a, b in zip(ps, ps[1:]))
        for s in tr.steps:
            if not s.annihilated:
                assert np.linalg.norm(s.state) == pytest.approx(1.0, abs=1e-10)


def test_non_unit_initial_state_rejected():
    with pytest.raises(HilbertError, match="unit"):
        sequential_measure([1, 1], [E1])


def test_state_chain_dimension_mismatch_rejected():
    with pytest.raises(HilbertError):
        sequential_measure([1, 0], [full(3)])


# --- fold criterion ---------------------------------------------------------

def test_fold_criterion_empty_chain():
    assert check_fold_criterion([], full(2)) == (True, True)
    assert check_fold_criterion([], DIAG) == (False, False)


def test_fold_criterion_single_link():
    assert check_fold_criterion([E1], E1) == (True, True)
    assert check_fold_criterion([E1], DIAG) == (False, False)
    assert check_fold_criterion([E1], full(2)) == (True, True)


def test_fold_agreement_sweep():
    rng = np.random.default_rng(1)
    row = fold_agreement_sweep(rng, [2, 3, 4], 100)
    assert row.passed and row.instances == 100


def test_measurement_consistency_sweep():
    rng = np.random.default_rng(2)
    row = measurement_sweep(rng, [2, 3, 4], 100)
    assert row.passed and row.instances == 100


def test_verify_reports_three_green_rows():
    rows = verify(3, 40, 0)
    assert [r.name for r in rows] == [
        "sasaki-closure-agreement",
        "fold-criterion-agreement",
        "measurement-consistency",
    ]
    assert all(r.passed for r in rows)


# --- text format -------------------------------------------------------------

def test_parse_identity_matrix():
    assert same(parse_subspace("1 0\n0 1"), full(2))


def test_parse_complex_entries():
    s = parse_subspace("0.5+0.5i\n0.5-0.5i")
    assert s.dim == 1
    assert same(s, subspace(np.array([0.5 + 0.5j, 0.5 - 0.5j])))


def test_parse_negative_and_exponent_entries():
    s = parse_subspace("-1 0\n0 1e0")
    assert same(s, full(2))


def test_parse_rejects_garbage():
    with pytest.raises(HilbertError, match="entry"):
        parse_subspace("1 frog\n0 1")
    with pytest.raises(HilbertError, match="ragged"):
        parse_subspace("1 0\n0")
    with pytest.raises(HilbertError, match="empty"):
        parse_subspace("   \n  ")
