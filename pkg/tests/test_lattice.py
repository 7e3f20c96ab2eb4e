import numpy as np
import pytest

from orthoproof.lattice import (
    FiniteOML, LatticeFileError, OMLElement, battery, boolean, by_name,
    free_oml2, generated_subalgebra, mo, o6, parse_lattice, product,
    sasaki_and, sasaki_arrow, verify_oml,
)


def test_battery_names_and_sizes():
    B = battery()
    assert [L.name for L in B] == ["2", "2^2", "MO2", "2xMO2", "F2"]
    assert [L.n for L in B] == [2, 4, 6, 12, 96]
    for L in B:
        assert verify_oml(L) is None


def test_by_name():
    assert by_name("MO2").n == 6
    with pytest.raises(KeyError):
        by_name("MO3")


def test_boolean_edge_cases():
    assert boolean(0).n == 1
    assert verify_oml(boolean(0)) is None
    two = boolean(1)
    assert two.bottom == 0 and two.top == 1
    assert boolean(3).n == 8


def test_mo_structure():
    M = mo(2)
    assert M.n == 6 and M.bottom == 0 and M.top == 5
    atoms = [1, 2, 3, 4]
    for a in atoms:
        for b in atoms:
            if a != b:
                assert M.meet[a, b] == 0 and M.join[a, b] == 5
    assert M.neg.tolist() == [5, 2, 1, 4, 3, 0]


def test_product_indexing_is_row_major():
    P = product(boolean(1), mo(2))
    # element i = i1 * 6 + i2
    assert P.n == 12
    assert P.bottom == 0 and P.top == 11
    assert P.meet[7, 2] == 0 * 6 + 0      # (1,a) & (0,a') = (0,bot)
    assert P.join[7, 2] == 1 * 6 + 5      # (1,a) | (0,a') = (1,top)
    assert P.neg[7] == 0 * 6 + 2          # ~(1,a) = (0,a')


def test_o6_rejected_at_a_b():
    bad = verify_oml(o6())
    assert bad is not None
    assert bad.law == "orthomodular"
    assert bad.elements == (1, 2)
    assert "orthomodular" in str(bad)


def test_verify_rejects_cycle():
    leq = np.eye(3, dtype=bool)
    leq[0, 1] = leq[1, 0] = True  # 0 <= 1 <= 0 with 0 != 1
    bad = verify_oml(FiniteOML(leq, np.array([2, 1, 0])))
    assert bad is not None
    assert bad.law in ("antisymmetry", "transitivity")


def test_verify_rejects_missing_meet():
    # diamond without the middle: two incomparable elements, no top
    leq = np.eye(2, dtype=bool)
    bad = verify_oml(FiniteOML(leq, np.array([1, 0])))
    assert bad is not None
    assert bad.law == "bounds"


def test_verify_rejects_non_unique_meet():
    # bot, two incomparable atoms x y, two incomparable coatoms that both
    # dominate x and y, top: meet of the coatoms has two maximal lower bounds
    n = 6
    leq = np.eye(n, dtype=bool)
    bot, x, y, u, v, top = range(6)
    for e in range(n):
        leq[bot, e] = True
        leq[e, top] = True
    for a in (x, y):
        for b in (u, v):
            leq[a, b] = True
    bad = verify_oml(FiniteOML(leq, np.array([top, v, u, y, x, bot])))
    assert bad is not None
    assert bad.law in ("meet", "join")


def test_sasaki_examples():
    two = boolean(1)
    assert sasaki_arrow(two, 1, 0) == 0
    assert sasaki_arrow(two, 0, 0) == 1
    assert sasaki_arrow(two, 0, 1) == 1
    M = mo(2)
    # (b | a') & a = top & a = a
    assert sasaki_and(M, 3, 1) == 1
    for a in range(M.n):
        assert sasaki_and(M, a, M.top) == a


def _arrow_column(L, b):
    # sasaki_arrow(a, b) for every a at once
    return L.join[L.neg, L.meet[:, b]]


@pytest.mark.parametrize("name", ["2", "2^2", "MO2", "2xMO2", "F2"])
def test_sasaki_adjunction(name):
    # a & b <= c  iff  a <= b -> c, for all elements, vectorized per b
    L = by_name(name)
    for b in range(L.n):
        sa = L.meet[L.join[:, L.neg[b]], b]            # sasaki_and(a, b) over a
        arrow = L.join[L.neg[b], L.meet[b, :]]         # sasaki_arrow(b, c) over c
        assert (L.leq[sa, :] == L.leq[:, arrow]).all()


@pytest.mark.parametrize("name", ["2", "2^2", "MO2", "2xMO2", "F2"])
def test_excluded_middle_inequality(name):
    # (a -> b) /\ (~a -> b) <= b everywhere
    L = by_name(name)
    for b in range(L.n):
        arrows = _arrow_column(L, b)
        assert L.leq[L.meet[arrows, arrows[L.neg]], b].all()


@pytest.mark.parametrize("name", ["2", "2^2", "MO2", "2xMO2", "F2"])
def test_de_morgan(name):
    L = by_name(name)
    assert (L.neg[L.meet] == L.join[np.ix_(L.neg, L.neg)]).all()
    assert (L.neg[L.join] == L.meet[np.ix_(L.neg, L.neg)]).all()


class TestGeneratedSubalgebra:
    def test_mo2_single_atom(self):
        assert generated_subalgebra(mo(2), (1,)) == frozenset({0, 1, 2, 5})

    def test_trivial_seeds(self):
        F2, _ = free_oml2()
        assert len(generated_subalgebra(F2, (F2.bottom, F2.top))) == 2
        assert len(generated_subalgebra(F2, ())) == 2

    def test_free_oml2_generators(self):
        F2, (g1, g2) = free_oml2()
        assert F2.n == 96
        assert F2.generators == (g1, g2)
        assert len(generated_subalgebra(F2, (g1, g2))) == 96

    def test_embedded_pair_is_first_lexicographic(self):
        # re-derive the embedded constant: scan pairs in lexicographic order
        # and stop at the first whose closure is everything
        F2, pair = free_oml2()
        for g1 in range(pair[0] + 1):
            for g2 in range(F2.n if g1 < pair[0] else pair[1] + 1):
                full = len(generated_subalgebra(F2, (g1, g2))) == 96
                assert full == ((g1, g2) == pair), (g1, g2)


def test_element_sugar():
    M = mo(2)
    a, b = M.element(1), M.element(3)
    assert (a & b).index == 0
    assert (a | b).index == 5
    assert (~a).index == 2
    assert a <= M.element(5)
    assert not (a <= b)


class TestLatticeFile:
    def mo2_text(self):
        M = mo(2)
        lines = ["# MO2, atoms listed pairwise", "oml 6"]
        for i in range(6):
            for j in range(6):
                if M.leq[i, j] and i != j:
                    lines.append(f"leq {i} {j}")
        lines += ["neg 0 5", "neg 1 2", "neg 3 4"]
        return "\n".join(lines)

    def test_round_trip(self):
        M = mo(2)
        L = parse_lattice(self.mo2_text(), "mo2")
        assert (L.leq == M.leq).all()
        assert (L.meet == M.meet).all()
        assert (L.join == M.join).all()
        assert L.neg.tolist() == M.neg.tolist()

    def test_transitive_closure_applied(self):
        # 2^2 with the composite pair 0 <= 3 left out; closure restores it
        txt = "oml 4\nleq 0 1\nleq 0 2\nleq 1 3\nleq 2 3\nneg 0 3\nneg 1 2"
        L = parse_lattice(txt)
        assert L.le(0, 3)
        assert (L.leq == boolean(2).leq).all()

    def test_rejects_o6(self):
        hexa = o6()
        lines = ["oml 6"]
        lines += [f"leq {i} {j}" for i in range(6) for j in range(6)
                  if hexa.leq[i, j] and i != j]
        lines += [f"neg {i} {int(hexa.neg[i])}" for i in range(3)]
        with pytest.raises(LatticeFileError, match="orthomodular"):
            parse_lattice("\n".join(lines))

    @pytest.mark.parametrize("text, hint", [
        ("leq 0 1", "header"),
        ("oml 2\noml 2\nleq 0 1\nneg 0 1", "duplicate"),
        ("oml 2\nleq 0 7\nneg 0 1", "range"),
        ("oml 2\nleq 0 1", "orthocomplement"),
        ("oml 2\nleq 0 1\nneg 0 1\nneg 0 0", "conflicting"),
        ("oml 2\nwat 0 1", "parse|expected"),
        ("oml 0", "element"),
        ("", "header"),
    ])
    def test_rejects_malformed(self, text, hint):
        with pytest.raises(LatticeFileError, match=hint):
            parse_lattice(text)

    def test_rejects_cycle(self):
        txt = "oml 3\nleq 0 1\nleq 1 0\nneg 0 2\nneg 1 1"
        with pytest.raises(LatticeFileError):
            parse_lattice(txt)
