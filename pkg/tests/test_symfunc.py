import cmath
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from matkloost.errors import IndexOutOfRange, NonPolynomialResult, SizeMismatch, ZeroParameterT
from matkloost.symfunc import (IntPolynomial, Partition, WeakComposition, charge_word, eval_basis,
                               green_polynomial, kostka_foulkes, kostka_number,
                               modified_hl_eval, modified_hl_eval_powersum,
                               modified_hl_monomial_coeffs, p_mu_lambda, partitions_of, phi_l,
                               q_binomial, symgroup_character, weak_compositions)

import oracles

P = Partition


def random_points(rng, k):
    return [complex(rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)) for _ in range(k)]


def test_partitions_of():
    assert partitions_of(0) == [()]
    assert partitions_of(3) == [(3,), (2, 1), (1, 1, 1)]
    assert len(partitions_of(8)) == 22


def test_partition_statistics():
    mu = P((3, 1, 1))
    assert mu.size == 5 and mu.length == 3
    assert mu.z == 3 * 2
    assert mu.n == 0 * 3 + 1 + 2
    assert mu.conjugate == (3, 1, 1)
    assert P((2, 2)).conjugate == (2, 2)
    assert P.parse("3,1,1") == mu and str(mu) == "3,1,1"
    with pytest.raises(ValueError):
        P((1, 2))
    with pytest.raises(ValueError):
        P((2, 0))


def test_weak_compositions():
    comps = list(weak_compositions(2, 3))
    assert len(comps) == math.comb(4, 2)
    assert len(set(comps)) == len(comps)
    assert all(c.size == 2 for c in comps)
    assert WeakComposition((0, 2, 1)).to_partition() == (2, 1)


def test_kostka_numbers():
    assert kostka_number(P((2, 1)), P((2, 1))) == 1
    assert kostka_number(P((2, 1)), P((1, 1, 1))) == 2
    assert kostka_number(P((1, 1)), P((2,))) == 0
    with pytest.raises(SizeMismatch):
        kostka_number(P((2,)), P((1,)))


@pytest.mark.parametrize("b", range(1, 6))
def test_kostka_numbers_match_brute_fillings(b):
    for rho in partitions_of(b):
        for lam in partitions_of(b):
            assert kostka_number(rho, lam) == oracles.ssyt_brute(rho, lam)


def test_kostka_foulkes_frozen():
    assert kostka_foulkes(P((2,)), P((1, 1))) == IntPolynomial([0, 1])
    assert kostka_foulkes(P((2, 1)), P((1, 1, 1))) == IntPolynomial([0, 1, 1])
    assert kostka_foulkes(P((3,)), P((1, 1, 1))) == IntPolynomial([0, 0, 0, 1])
    assert kostka_foulkes(P((3, 1)), P((2, 2))) == IntPolynomial([0, 1])
    assert kostka_foulkes(P((2, 2)), P((2, 2))) == 1


@pytest.mark.parametrize("b", range(1, 7))
def test_kostka_foulkes_against_kostant_formula(b):
    for rho in partitions_of(b):
        for mu in partitions_of(b):
            assert kostka_foulkes(rho, mu) == oracles.kostant_kostka_foulkes(rho, mu)


@pytest.mark.parametrize("b", range(1, 7))
def test_kostka_foulkes_at_one_is_kostka(b):
    for rho in partitions_of(b):
        for mu in partitions_of(b):
            assert kostka_foulkes(rho, mu)(1) == kostka_number(rho, mu)


def test_charge_of_standard_words():
    # the one-row tableau 1 2 ... n carries the largest charge, C(n, 2)
    assert charge_word([1]) == 0
    assert charge_word([1, 2]) == 1
    assert charge_word([2, 1]) == 0
    assert charge_word([1, 2, 3]) == 3
    assert charge_word([3, 2, 1]) == 0


def test_symgroup_characters():
    assert symgroup_character(P((1, 1)), P((2,))) == -1
    for lam in partitions_of(4):
        assert symgroup_character(P((4,)), lam) == 1
    # dimensions from the hook length formula
    assert symgroup_character(P((3, 2)), P((1,) * 5)) == 5
    assert symgroup_character(P((2, 2, 1)), P((1,) * 5)) == 5


@pytest.mark.parametrize("b", range(1, 7))
def test_character_orthogonality(b):
    parts = partitions_of(b)
    for rho in parts:
        for sigma in parts:
            inner = sum(symgroup_character(rho, lam) * symgroup_character(sigma, lam) / lam.z
                        for lam in parts)
            assert inner == pytest.approx(1.0 if rho == sigma else 0.0, abs=1e-12)


def test_green_polynomials_frozen():
    assert green_polynomial(P((1,)), P((1,))) == 1
    assert str(green_polynomial(P((2,)), P((1, 1)))) == "1 - t"
    assert green_polynomial(P((1, 1)), P((1, 1))) == IntPolynomial([1, 1])
    # the identity class gives the number of flags fixed by a unipotent: (1+t)(1+t+t^2)
    assert green_polynomial(P((1, 1, 1)), P((1, 1, 1))) == IntPolynomial([1, 2, 2, 1])


@pytest.mark.parametrize("b", range(1, 7))
def test_green_polynomials_are_polynomials(b):
    for lam in partitions_of(b):
        for mu in partitions_of(b):
            Q = green_polynomial(lam, mu)
            assert Q.degree <= mu.n


def test_reversal_guard():
    with pytest.raises(NonPolynomialResult):
        IntPolynomial([0, 0, 1]).reversed(1)


def test_p_mu_lambda_frozen():
    assert p_mu_lambda(P((1,)), P((1,))) == 1
    assert p_mu_lambda(P((1, 1)), P((1, 1))) == IntPolynomial([1, 1])
    assert p_mu_lambda(P((2,)), P((1, 1))) == 1


def test_q_binomial_and_phi():
    assert q_binomial(2, 1) == IntPolynomial([1, 1])
    assert q_binomial(5, 0) == 1
    assert phi_l(1) == 1
    assert phi_l(3) == IntPolynomial([1, -1, -1, 1])
    assert str(phi_l(3)) == "1 - t - t^2 + t^3"
    with pytest.raises(IndexOutOfRange):
        q_binomial(2, 3)
    with pytest.raises(IndexOutOfRange):
        phi_l(0)


@pytest.mark.parametrize("n", range(7))
def test_q_binomial_counts_subspaces(n):
    for k in range(n + 1):
        assert q_binomial(n, k)(1) == math.comb(n, k)
        for q in (2, 3):
            assert q_binomial(n, k)(q) == oracles.gaussian_binomial_count(q, n, k)


def test_basis_evaluation_examples():
    assert eval_basis("powersum", P((2,)), [1, 1]) == 2
    x, y = 1.5 - 0.5j, 0.25 + 2j
    assert eval_basis("monomial", P((1, 1)), [x, y]) == pytest.approx(x * y)
    assert eval_basis("schur", P((2, 1)), [1, 1, 1]) == pytest.approx(8)
    assert eval_basis("schur", P((2, 1)), [1, 1]) == pytest.approx(2)
    assert eval_basis("schur", P((1, 1, 1)), [1, 2]) == 0
    assert eval_basis("monomial", P((1, 1, 1)), [1, 2]) == 0
    assert eval_basis("complete", 0, [3]) == 1


def test_schur_degenerate_points_use_monomial_fallback():
    # repeated points make the bialternant 0/0
    pts = [0.7, 0.7, 0.7 + 1e-12]
    for rho in partitions_of(4):
        direct = sum(kostka_number(rho, lam) * eval_basis("monomial", lam, pts)
                     for lam in partitions_of(4))
        assert eval_basis("schur", rho, pts) == pytest.approx(direct)


@pytest.mark.parametrize("b", range(1, 6))
def test_schur_expansions_at_random_points(b):
    rng = random.Random(1000 + b)
    for k in (2, 3, 4):
        pts = random_points(rng, k)
        for rho in partitions_of(b):
            s = eval_basis("schur", rho, pts)
            via_m = sum(kostka_number(rho, lam) * eval_basis("monomial", lam, pts)
                        for lam in partitions_of(b))
            via_p = sum(symgroup_character(rho, lam) / lam.z * eval_basis("powersum", lam, pts)
                        for lam in partitions_of(b))
            assert s == pytest.approx(via_m, rel=1e-9, abs=1e-9)
            assert s == pytest.approx(via_p, rel=1e-9, abs=1e-9)


def test_modified_hl_examples():
    rng = random.Random(7)
    pts = random_points(rng, 3)
    t = 2.5 - 0.5j
    for b in range(1, 5):
        assert modified_hl_eval(P((b,)), pts, t) == pytest.approx(eval_basis("complete", b, pts))
    s2, s11 = eval_basis("schur", P((2,)), pts), eval_basis("schur", P((1, 1)), pts)
    assert modified_hl_eval(P((1, 1)), pts, t) == pytest.approx(s2 + t * s11)
    assert modified_hl_eval(P((1,)), pts, t) == pytest.approx(sum(pts))


@pytest.mark.parametrize("b", range(1, 6))
def test_modified_hl_routes_agree(b):
    rng = random.Random(b)
    for _ in range(3):
        pts = random_points(rng, rng.randint(1, 4))
        t = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        for mu in partitions_of(b):
            a = modified_hl_eval(mu, pts, t)
            c = modified_hl_eval_powersum(mu, pts, t)
            assert abs(a - c) <= 1e-9 * max(1.0, abs(a))


def test_modified_hl_monomial_coeffs():
    coeffs = modified_hl_monomial_coeffs(P((1, 1)), 2, 3)
    assert coeffs == {P((2,)): 1, P((1, 1)): 4}
    assert set(modified_hl_monomial_coeffs(P((1, 1, 1)), 2, 2)) == {P((3,)), P((2, 1))}
    with pytest.raises(ZeroParameterT):
        modified_hl_monomial_coeffs(P((1,)), 1, 0)


polys = st.lists(st.integers(-20, 20), max_size=6).map(IntPolynomial)


@settings(max_examples=100, deadline=None)
@given(polys, polys, st.integers(-5, 5))
def test_int_polynomial_ring(f, g, t):
    assert (f + g)(t) == f(t) + g(t)
    assert (f * g)(t) == f(t) * g(t)
    assert (f - g)(t) == f(t) - g(t)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7).flatmap(lambda b: st.sampled_from(partitions_of(b))))
def test_conjugation_is_an_involution(mu):
    assert mu.conjugate.conjugate == mu
    assert mu.conjugate.size == mu.size
    assert kostka_number(mu, mu) == 1
