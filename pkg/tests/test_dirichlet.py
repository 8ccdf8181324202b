import math
from fractions import Fraction

import pytest

from gcdzeta.arith import factorize
from gcdzeta.dirichlet import (
    DirichletPair,
    LocalPolynomial,
    convolve,
    convolve_eval,
    f_r,
    f_r_local,
    fr_as_convolution,
    inverse,
    inverse_local,
    local_convolve,
    verify_fr_structure,
)
from gcdzeta.errors import DomainError
from gcdzeta.gcdsum import a_eval, a_local
from gcdzeta.multfun import (
    MultiplicativeFunction,
    mu,
    one,
    phi_normalized,
    pointwise_product,
    tau,
    tau_k,
)


class TestLocalPolynomial:
    def test_trims_trailing_zeros(self):
        assert LocalPolynomial((1, 2, 0, 0)).coefficients == (1, 2)
        assert LocalPolynomial((0, 0)).is_zero

    def test_degree_and_constant(self):
        p = LocalPolynomial((0, -3, 1))
        assert p.degree == 2
        assert p.constant_term == 0
        assert LocalPolynomial(()).degree == -1

    def test_evaluate_exactly(self):
        p = LocalPolynomial((0, -3, 1))
        assert p.evaluate(Fraction(1, 3)) == Fraction(-8, 9)

    def test_arithmetic(self):
        a = LocalPolynomial((1, 1))
        b = LocalPolynomial((0, -1))
        assert (a + b).coefficients == (1,)
        assert (a * b).coefficients == (0, -1, -1)
        assert a.scaled(-2).coefficients == (-2, -2)

    def test_string_forms(self):
        assert str(LocalPolynomial((0, -3, 1))) == "-3u + u^2"
        assert str(LocalPolynomial((0, -1))) == "-u"
        assert str(LocalPolynomial(())) == "0"
        assert str(LocalPolynomial((1, 2))) == "1 + 2u"
        assert str(LocalPolynomial((0, 3, -1))) == "3u - u^2"


class TestFrLocal:
    def test_r1_k1_is_minus_u(self):
        assert f_r_local(1, 1).coefficients == (0, -1)

    def test_r2_k1(self):
        # A_2(p) - 3 expanded in u = 1/p
        assert f_r_local(2, 1).coefficients == (0, -3, 1)

    def test_vanishing_beyond_r(self):
        assert f_r_local(3, 4).is_zero
        for r in range(1, 7):
            for k in range(r + 1, r + 7):
                assert f_r_local(r, k).is_zero

    def test_zero_constant_term(self):
        for r in range(1, 7):
            for k in range(1, r + 1):
                assert f_r_local(r, k).constant_term == 0

    def test_degree_bounded_by_r(self):
        for r in range(1, 7):
            for k in range(1, r + 4):
                assert f_r_local(r, k).degree <= r

    def test_arguments_validated(self):
        with pytest.raises(DomainError):
            f_r_local(0, 1)
        with pytest.raises(DomainError):
            f_r_local(1, 0)


class TestFrAsConvolution:
    def test_examples(self):
        assert fr_as_convolution(1, 2, 1) == Fraction(-1, 2)
        assert fr_as_convolution(1, 2, 1) == a_local(2, 1, 1) - 2
        assert fr_as_convolution(2, 3, 1) == Fraction(-8, 9)
        assert fr_as_convolution(2, 5, 3) == 0

    def test_matches_symbolic_polynomial(self):
        for r in range(1, 6):
            for k in range(1, r + 4):
                poly = f_r_local(r, k)
                for p in (2, 3, 5, 7):
                    assert poly.evaluate(Fraction(1, p)) == fr_as_convolution(
                        r, p, k
                    )


class TestVerifyFrStructure:
    def test_r1_all_pass(self):
        report = verify_fr_structure(1, 6)
        assert report.passed and not report.failures
        # rows for k >= 2 are absent because those polynomials are zero
        assert all(k == 1 for k, _, _ in report.rows)

    def test_r4_kmax10_passes(self):
        assert verify_fr_structure(4, 10).passed

    def test_r2_constant_terms_zero(self):
        report = verify_fr_structure(2, 2)
        assert report.passed
        assert all(c == 0 for k, i, c in report.rows if i == 0)


class TestConvolution:
    def test_phibar_conv_one_is_a1(self):
        assert convolve_eval(phi_normalized(), one(), 4) == 2
        for n in range(1, 200):
            assert convolve_eval(phi_normalized(), one(), n) == a_eval(n, 1)

    def test_mu_conv_tau_is_one(self):
        for n in (1, 12, 360, 1024, 9699690):
            assert convolve_eval(mu(), tau(), factorize(n)) == 1

    def test_tau2_conv_f1_at_primes(self):
        f1 = f_r(1)
        for p in (2, 3, 5, 101):
            assert local_convolve(tau_k(2), f1, p, 1) == 2 - Fraction(1, p)

    def test_factorization_identity(self):
        for r in (1, 2, 3):
            fr = f_r(r)
            taur = tau_k(r + 1)
            for n in range(1, 501):
                fi = factorize(n)
                assert convolve_eval(taur, fr, fi) == a_eval(fi, r)

    def test_chained_convolution_builds_a_r(self):
        # r applications of h -> (phibar * h) conv one, starting from one
        phibar = phi_normalized()
        for r in (1, 2, 3):
            h: MultiplicativeFunction = one()
            for _ in range(r):
                h = convolve(pointwise_product(phibar, h), one())
            for n in range(1, 2001):
                fi = factorize(n)
                assert h(fi) == a_eval(fi, r)


class TestInverse:
    def test_inverse_of_one_is_mu(self):
        g = inverse(one())
        for p in (2, 5):
            assert g.local(p, 1) == -1
            assert g.local(p, 2) == 0
            assert g.local(p, 3) == 0

    def test_inverse_local_of_f1(self):
        assert inverse_local(f_r(1), 2, 1) == Fraction(1, 2)

    def test_fr_inverse_identity(self):
        for r in range(1, 5):
            fr = f_r(r)
            gr = inverse(fr)
            for p in (2, 3, 5):
                assert local_convolve(fr, gr, p, 0) == 1
                for k in range(1, 11):
                    assert local_convolve(fr, gr, p, k) == 0

    def test_convolving_with_inverse_recovers_identity_function(self):
        f = tau()
        g = inverse(f)
        for n in (2, 12, 100, 243):
            assert convolve_eval(f, g, n) == (1 if n == 1 else 0)


class TestDirichletPair:
    def test_accepts_true_inverse(self):
        f = f_r(2)
        pair = DirichletPair(f, inverse(f), "inverse", verification_depth=8)
        assert pair.relation == "inverse"

    def test_rejects_non_inverse(self):
        with pytest.raises(DomainError):
            DirichletPair(tau(), mu(), "inverse")

    def test_rejects_unknown_relation(self):
        with pytest.raises(DomainError):
            DirichletPair(tau(), mu(), "quotient")

    def test_convolution_relation_is_unchecked(self):
        DirichletPair(tau(), mu(), "convolution")


class TestPowerSumCancellation:
    def test_alternating_power_sums_vanish(self):
        # sum_{l=0}^{n} (-1)^l l^j C(n, l) = 0 for 0 <= j <= n-1
        for n in range(1, 13):
            for j in range(0, n):
                total = sum(
                    (-1 if l % 2 else 1) * l**j * math.comb(n, l)
                    for l in range(n + 1)
                )
                assert total == 0
