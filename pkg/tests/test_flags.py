import itertools
import math

import pytest

from matkloost.errors import CompositionMismatch, SizeMismatch
from matkloost.flags import (count_fixed_flags_formula, count_fixed_length_k_weak_flags,
                             count_fixed_weak_flags_bruteforce, enumerate_subspaces,
                             invariant_subspaces, jordan_over, subspace_count)
from matkloost.gf import field_of_order
from matkloost.glq import MatrixFq, scalar_matrix
from matkloost.symfunc import Partition, modified_hl_monomial_coeffs, partitions_of

import oracles

P = Partition


@pytest.mark.parametrize("q,b", [(2, 3), (3, 2), (4, 2), (2, 4)])
def test_subspace_enumeration(q, b):
    F = field_of_order(q)
    subs = list(enumerate_subspaces(F, b))
    assert len(subs) == len(set(subs)) == subspace_count(q, b)
    for d in range(b + 1):
        assert sum(1 for W in subs if W.dim == d) == oracles.gaussian_binomial_count(q, b, d)


def test_examples():
    for q in (2, 3, 4):
        F = field_of_order(q)
        xi = F.generator if q > 2 else 1
        assert count_fixed_weak_flags_bruteforce((2,), jordan_over(q, P((2,)))) == 1
        assert count_fixed_weak_flags_bruteforce((1, 1), scalar_matrix(F, xi, 2)) == q + 1
        assert count_fixed_weak_flags_bruteforce((1, 1), jordan_over(q, P((2,)))) == 1
    assert count_fixed_flags_formula(P((1, 1)), P((1, 1)), 3) == 4
    assert count_fixed_flags_formula(P((1,)), P((1,)), 7) == 1
    for b in range(1, 6):
        assert count_fixed_flags_formula(P((b,)), P((1,) * b), 5) == 1


def test_errors():
    g = jordan_over(2, P((2,)))
    with pytest.raises(CompositionMismatch):
        count_fixed_weak_flags_bruteforce((1,), g)
    with pytest.raises(SizeMismatch):
        count_fixed_flags_formula(P((2,)), P((1,)), 2)


@pytest.mark.parametrize("qa", [2, 3, 4])
def test_bruteforce_equals_formula_and_hl_coefficient(qa):
    for b in range(1, 5):
        coeff_cache = {}
        for mu in partitions_of(b):
            g = jordan_over(qa, mu)
            inv = invariant_subspaces(g)
            coeff_cache[mu] = modified_hl_monomial_coeffs(mu, b, qa)
            for lam in partitions_of(b):
                brute = count_fixed_weak_flags_bruteforce(lam, g, inv)
                assert brute == count_fixed_flags_formula(mu, lam, qa) == coeff_cache[mu][lam]


def test_reordering_and_padding_invariance():
    for qa, mu in [(2, P((2, 1))), (3, P((2, 1))), (2, P((3, 1))), (2, P((2, 2)))]:
        g = jordan_over(qa, mu)
        inv = invariant_subspaces(g)
        for lam in partitions_of(mu.size):
            base = count_fixed_weak_flags_bruteforce(lam, g, inv)
            padded = tuple(lam) + (0,)
            for comp in set(itertools.permutations(padded)):
                assert count_fixed_weak_flags_bruteforce(comp, g, inv) == base


def test_length_k_counts():
    for b in range(1, 5):
        for k in range(1, 5):
            assert count_fixed_length_k_weak_flags(P((b,)), 3, k) == math.comb(b + k - 1, k - 1)
    assert count_fixed_length_k_weak_flags(P((1,)), 2, 4) == 4
    assert count_fixed_length_k_weak_flags(P((2, 1)), 2, 1) == 1


def test_length_k_counts_match_bruteforce_total():
    qa, k = 2, 3
    for mu in partitions_of(3):
        g = jordan_over(qa, mu)
        inv = invariant_subspaces(g)
        total = 0
        for comp in itertools.product(range(4), repeat=k):
            if sum(comp) == 3:
                total += count_fixed_weak_flags_bruteforce(comp, g, inv)
        assert total == count_fixed_length_k_weak_flags(mu, qa, k)


def test_invariance_does_not_depend_on_eigenvalue():
    F = field_of_order(4)
    for xi in range(1, 4):
        g = MatrixFq(F, [[xi, 1, 0], [0, xi, 0], [0, 0, xi]])
        assert count_fixed_weak_flags_bruteforce((1, 1, 1), g) == \
            count_fixed_flags_formula(P((2, 1)), P((1, 1, 1)), 4)
