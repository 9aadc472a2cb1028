"""Matrix pictures, the polynomial module, and the pairing route."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvkraw import hyperg, kappa, liemod, linalg
from mvkraw.numeric import DegreeMismatchError, enumerate_lattice


def classical():
    # d = 1, symmetric weights; u = [[1,1],[1,-1]], nu = 2
    return kappa.griffiths_from_p([F(1, 2), F(1, 2)])


def milch2():
    return kappa.family_milch([F(1, 2), F(1, 4), F(1, 4)])


class TestBasis:
    def test_matrix_unit(self):
        assert liemod.basis_e(2, 0, 2) == ((0, 0, 1), (0, 0, 0), (0, 0, 0))
        with pytest.raises(IndexError):
            liemod.basis_e(2, 1, 1)
        with pytest.raises(IndexError):
            liemod.basis_e(2, 0, 3)

    def test_cartan_element(self):
        phi = liemod.basis_phi(1, 1)
        assert phi == ((F(-1, 2), 0), (0, F(1, 2)))
        assert linalg.trace(liemod.basis_phi(3, 2)) == 0

    def test_phi_zero_is_minus_sum(self):
        d = 3
        total = liemod.basis_phi(d, 0)
        for j in range(1, d + 1):
            total = linalg.mat_add(total, liemod.basis_phi(d, j))
        assert total == linalg.mat_scale(0, total)


class TestConjugator:
    def test_hand_value(self):
        conj = liemod.conjugator(classical())
        assert conj.rhat == ((F(1, 2), F(1, 2)), (F(1, 2), F(-1, 2)))
        assert conj.rhat_inv == ((1, 1), (1, -1))

    def test_inverse_pair(self):
        k = milch2()
        conj = liemod.conjugator(k)
        assert linalg.mat_mul(conj.rhat, conj.rhat_inv) == linalg.identity(3)

    def test_seal_rejects_corrupt_set(self):
        # bypass validation on purpose: this u breaks the defining identity
        k = classical()
        corrupt = kappa.ParameterSet(k.d, k.nu, k.p, k.pt, ((1, 1), (1, 1)))
        with pytest.raises(AssertionError, match="corrupt"):
            liemod.conjugator(corrupt)


class TestDualElements:
    def test_dual_phi_hand_values(self):
        k = classical()
        assert liemod.dual_phi(k, 1) == ((0, F(-1, 2)), (F(-1, 2), 0))
        assert liemod.dual_phi(k, 0) == ((0, F(1, 2)), (F(1, 2), 0))

    def test_dual_phi_zero_columns_constant(self):
        # off-diagonal entries of the conjugated phi_0 only see the row's
        # dual weight
        k = milch2()
        m = liemod.dual_phi(k, 0)
        for r in range(3):
            for c in range(3):
                want = k.pt[r] - (F(1, 3) if r == c else 0)
                assert m[r][c] == want

    def test_dual_e_is_conjugation(self):
        k = milch2()
        conj = liemod.conjugator(k)
        e = liemod.basis_e(2, 1, 2)
        want = linalg.mat_mul(linalg.mat_mul(conj.rhat, e), conj.rhat_inv)
        assert liemod.dual_e(k, 1, 2) == want

    def test_dual_phi_index_range(self):
        with pytest.raises(IndexError):
            liemod.dual_phi(milch2(), 3)


class TestAntiauto:
    def test_fixes_cartan(self):
        k = milch2()
        for i in range(3):
            phi = liemod.basis_phi(2, i)
            assert liemod.antiauto(k, phi) == phi

    def test_transports_matrix_units(self):
        k = milch2()
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                got = liemod.antiauto(k, liemod.basis_e(2, i, j))
                want = linalg.mat_scale(
                    F(k.pt[j], 1) / k.pt[i], liemod.basis_e(2, j, i)
                )
                assert got == want

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**30))
    def test_antimultiplicative_and_involutive(self, seed):
        k = kappa.family_ds(F(2), 2)
        rng = random.Random(seed)

        def rand():
            return tuple(
                tuple(F(rng.randint(-4, 4)) for _ in range(3)) for _ in range(3)
            )

        a, b = rand(), rand()
        assert liemod.antiauto(k, linalg.mat_mul(a, b)) == linalg.mat_mul(
            liemod.antiauto(k, b), liemod.antiauto(k, a)
        )
        assert liemod.antiauto(k, liemod.antiauto(k, a)) == a


FAMILIES = [
    pytest.param(kappa.griffiths_from_p([F(1, 2), F(1, 2)]), id="classical-d1"),
    pytest.param(kappa.family_milch([F(1, 2), F(1, 4), F(1, 4)]), id="milch-d2"),
    pytest.param(kappa.family_hoare_rahman(1, 2, 3, 4), id="hr"),
    pytest.param(kappa.family_ds(F(2), 3), id="ds-d3"),
]


class TestStructureChecks:
    @pytest.mark.parametrize("k", FAMILIES)
    def test_conjugation_check_passes(self, k):
        rep = liemod.check_conjugation(k)
        assert rep.passed and rep.failures == []

    @pytest.mark.parametrize("k", FAMILIES)
    def test_antiauto_suite_passes(self, k):
        rep = liemod.check_lemma21(k)
        assert rep.passed and rep.failures == []
        assert rep.check == "lemma21"

    @pytest.mark.parametrize("k", FAMILIES)
    def test_generation_suite_passes(self, k):
        rep = liemod.check_generation(k)
        assert rep.passed and rep.failures == []
        assert rep.check == "lemma22"

    def test_conjugation_check_detects_denormalized_set(self):
        # doubling u and shrinking pt keeps nu P u Pt u^t = I but breaks
        # the normalization the closed forms rely on
        k = classical()
        bad = kappa.ParameterSet(
            k.d,
            k.nu,
            k.p,
            tuple(x / 4 for x in k.pt),
            tuple(tuple(2 * x for x in row) for row in k.u),
        )
        rep = liemod.check_conjugation(bad)
        assert not rep.passed
        assert len(rep.failures) == 2


class TestPolynomials:
    def test_monomial_and_arithmetic(self):
        f = liemod.monomial((2, 0, 1))
        g = liemod.monomial((1, 1, 1), 3)
        s = f + g
        assert s.degree == 3
        assert s.coeffs == {(2, 0, 1): 1, (1, 1, 1): 3}
        assert (s - s).coeffs == {}
        assert s.scale(0).coeffs == {}

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            liemod.monomial((1, 0)) + liemod.monomial((1, 1))

    def test_poly_mul(self):
        f = liemod.monomial((1, 0)) + liemod.monomial((0, 1))
        sq = liemod.poly_mul(f, f)
        assert sq.coeffs == {(2, 0): 1, (1, 1): 2, (0, 2): 1}

    def test_act_moves_one_unit(self):
        out = liemod.act(liemod.basis_e(2, 1, 0), liemod.monomial((2, 0, 0)))
        assert out.coeffs == {(1, 1, 0): 2}
        # annihilates when the source exponent is zero
        out = liemod.act(liemod.basis_e(2, 0, 2), liemod.monomial((2, 0, 0)))
        assert out.coeffs == {}

    def test_act_diagonal(self):
        out = liemod.act(liemod.basis_phi(1, 1), liemod.monomial((1, 2)))
        assert out.coeffs == {(1, 2): 2 - F(3, 2)}

    def test_act_is_representation(self):
        # acting by a commutator equals the commutator of the actions
        rng = random.Random(7)
        pts = list(enumerate_lattice(2, 3))
        for _ in range(50):
            a = tuple(
                tuple(F(rng.randint(-3, 3)) for _ in range(3)) for _ in range(3)
            )
            b = tuple(
                tuple(F(rng.randint(-3, 3)) for _ in range(3)) for _ in range(3)
            )
            f = liemod.monomial(rng.choice(pts))
            lhs = liemod.act(linalg.commutator(a, b), f)
            rhs = liemod.act(a, liemod.act(b, f)) - liemod.act(
                b, liemod.act(a, f)
            )
            assert liemod.polys_equal(lhs, rhs)


class TestSubstitutedBasis:
    def test_hand_expansion(self):
        k = classical()
        xt = liemod.xtilde_monomial(k, 2, (1, 1))
        assert xt.coeffs == {(2, 0): F(1, 4), (0, 2): F(-1, 4)}

    def test_degree_guard(self):
        with pytest.raises(DegreeMismatchError):
            liemod.xtilde_monomial(classical(), 3, (1, 1))

    def test_round_trip_through_dual_coords(self):
        k = milch2()
        for lam in enumerate_lattice(2, 2):
            xt = liemod.xtilde_monomial(k, 2, lam)
            back = liemod.to_dual_coords(k, xt)
            assert liemod.polys_equal(back, liemod.monomial(lam))

    def test_weight_property(self):
        # substituted monomials are joint eigenvectors of the conjugated
        # Cartan elements, eigenvalue lam_i - N/(d+1)
        k = milch2()
        N = 3
        conj = liemod.conjugator(k)
        for lam in enumerate_lattice(2, N):
            xt = liemod.xtilde_monomial(k, N, lam, conj)
            for i in range(3):
                moved = liemod.act(liemod.dual_phi(k, i, conj), xt)
                want = xt.scale(lam[i] - F(N, 3))
                assert liemod.polys_equal(moved, want)


class TestBilinearForm:
    def test_hand_norms(self):
        k = classical()
        x11 = liemod.monomial((1, 1))
        assert liemod.bilinear(k, 2, x11, x11) == 16
        xt20 = liemod.xtilde_monomial(k, 2, (2, 0))
        assert liemod.bilinear(k, 2, xt20, xt20) == 8

    def test_diagonal_on_monomials(self):
        k = milch2()
        assert (
            liemod.bilinear(k, 2, liemod.monomial((2, 0, 0)), liemod.monomial((1, 1, 0)))
            == 0
        )

    def test_degree_guard(self):
        with pytest.raises(DegreeMismatchError):
            liemod.bilinear(classical(), 2, liemod.monomial((1, 0)), liemod.monomial((1, 1)))

    @pytest.mark.parametrize("k", FAMILIES)
    def test_dual_norms_check(self, k):
        rep = liemod.check_dual_norms(k, 2)
        assert rep.passed and rep.failures == []

    @pytest.mark.parametrize("k", FAMILIES)
    def test_adjoint_check(self, k):
        rep = liemod.check_adjoint(k, 2)
        assert rep.passed and rep.failures == []


class TestPairingRoute:
    @pytest.mark.parametrize(
        "k,N",
        [
            (kappa.griffiths_from_p([F(1, 2), F(1, 2)]), 4),
            (kappa.family_milch([F(1, 2), F(1, 4), F(1, 4)]), 3),
            (kappa.family_ds(F(2), 2), 2),
        ],
        ids=["classical-d1", "milch-d2", "ds-d2"],
    )
    def test_matches_kernel_sum(self, k, N):
        conj = liemod.conjugator(k)
        cache = {}
        for n in enumerate_lattice(k.d, N):
            for nt in enumerate_lattice(k.d, N):
                via_pairing = liemod.pairing_eval(k, N, n, nt, conj, cache)
                via_series = hyperg.eval_hypergeometric(k, N, n[1:], nt[1:])
                assert via_pairing == via_series

    def test_degree_guard(self):
        with pytest.raises(DegreeMismatchError):
            liemod.pairing_eval(classical(), 3, (1, 1), (2, 1))


class TestLatticeChecks:
    @pytest.mark.parametrize("k", FAMILIES)
    def test_adjacency(self, k):
        rep = liemod.check_adjacency(k, 2)
        assert rep.passed and rep.failures == []

    @pytest.mark.parametrize("k", FAMILIES)
    def test_transition(self, k):
        rep = liemod.check_transition(k, 2)
        assert rep.passed and rep.failures == []
