"""Twisted Kloosterman sums over extension fields and their Frobenius roots."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .chars import AdditiveCharacter, CharacterTuple
from .errors import RootFindingFailure, ScaleExceeded, TowerMismatch, ZeroElement
from .gf import Field, FieldElement, extension

ENUMERATION_BUDGET = 10 ** 7


def level_field(psi: AdditiveCharacter, xi: FieldElement, m: int | None) -> tuple[Field, int]:
    """The field ``F_{q^m}`` in which the level-``m`` sum lives, and ``m``.

    ``xi`` may live in any intermediate field ``F_{q^d}`` with ``d | m``; the
    sum is then taken over the degree ``m/d`` extension of ``xi``'s field.
    """
    F, X = psi.field, xi.field
    if not X.has_subfield(F):
        raise TowerMismatch(f"{F!r} is not a subfield of {X!r}")
    d = X.degree_over(F)
    if m is None:
        m = d
    if m % d:
        raise TowerMismatch(f"xi lives in degree {d}, which does not divide level {m}")
    return extension(X, m // d), m


def term_weights(alpha: CharacterTuple, psi: AdditiveCharacter, E: Field) -> np.ndarray:
    """``w[i, e] = alpha_i(N(g^e)) psi_E(g^e)`` for the generator ``g`` of ``E``."""
    F = psi.field
    if alpha.field is not F:
        raise TowerMismatch("alpha and psi must live on the same field")
    exp = E.exp_table
    norms = E.norm_table(F)[exp]
    add = psi.on(E).values()[exp]
    return np.stack([chi.values()[norms] * add for chi in alpha])


def kloosterman_scalar(alpha: CharacterTuple, psi: AdditiveCharacter, xi: FieldElement,
                       m: int | None = None, budget: int = ENUMERATION_BUDGET) -> complex:
    """``Kl_m(alpha, psi, xi)``: sum over ``t_1 ... t_k = xi`` in ``F_{q^m}^x``.

    The tuples are enumerated through discrete-log exponents: ``t_1..t_{k-1}``
    range freely and ``t_k`` is forced by the product constraint.  The last
    free coordinate is vectorised.
    """
    if xi.value == 0:
        raise ZeroElement("Kloosterman sums need xi != 0")
    E, _ = level_field(psi, xi, m)
    k = alpha.k
    M = E.size - 1
    if M ** (k - 1) > budget:
        raise ScaleExceeded(f"{M}^{k - 1} terms exceeds budget {budget}")
    w = term_weights(alpha, psi, E)
    target = E.dlog(xi.value)
    if k == 1:
        return complex(w[0, target])
    rng = np.arange(M)
    total = 0j
    for head in itertools.product(range(M), repeat=k - 2):
        coeff = 1 + 0j
        for i, e in enumerate(head):
            coeff *= w[i, e]
        rest = (target - sum(head) - rng) % M
        total += coeff * complex(np.sum(w[k - 2] * w[k - 1, rest]))
    return total


def kloosterman_terms(alpha: CharacterTuple, xi: FieldElement, m: int | None = None) -> int:
    E = xi.field if m is None else extension(xi.field, m // xi.field.degree_over(alpha.field))
    return (E.size - 1) ** (alpha.k - 1)


@dataclass(frozen=True)
class FrobeniusRoots:
    """The ``k`` roots ``omega_i`` with ``prod (1 - omega_i T) = L(T)^{(-1)^k}``."""

    q: int
    a: int
    alpha: tuple[int, ...]
    xi: tuple[int, ...]
    roots: tuple[complex, ...]
    l_coeffs: tuple[complex, ...]
    power_sums: tuple[complex, ...]

    @property
    def k(self) -> int:
        return len(self.roots)

    @property
    def weight_modulus(self) -> float:
        return self.q ** (self.a * (self.k - 1) / 2)

    def power_sum(self, m: int) -> complex:
        return complex(sum(w ** m for w in self.roots))


def newton_elementary(power_sums) -> list[complex]:
    """Elementary symmetric values ``e_0..e_k`` from power sums ``p_1..p_k``."""
    e = [1 + 0j]
    for m in range(1, len(power_sums) + 1):
        acc = 0j
        for i in range(1, m + 1):
            acc += (-1) ** (i - 1) * e[m - i] * power_sums[i - 1]
        e.append(acc / m)
    return e


def roots_from_power_sums(power_sums, rtol: float = 1e-8) -> tuple[list[complex], list[complex]]:
    """Roots of ``prod (T - omega_i)`` whose power sums are ``p_1..p_k``."""
    e = newton_elementary(power_sums)
    k = len(power_sums)
    monic = [(-1) ** j * e[j] for j in range(k + 1)]   # T^k - e1 T^{k-1} + ...
    roots = np.roots(monic) if k else np.array([])
    poly = np.poly1d(monic)
    dpoly = poly.deriv()
    polished = []
    for r in roots:
        for _ in range(3):
            d = dpoly(r)
            if d == 0:
                break
            r = r - poly(r) / d
        polished.append(complex(r))
    scale = max(abs(c) for c in monic)
    for r in polished:
        if abs(poly(r)) > rtol * scale:
            raise RootFindingFailure(f"residual {abs(poly(r)):.3g} at root {r}")
    polished.sort(key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    return polished, e


def frobenius_roots(alpha: CharacterTuple, psi: AdditiveCharacter, xi: FieldElement,
                    a: int | None = None, budget: int = ENUMERATION_BUDGET) -> FrobeniusRoots:
    """Roots at ``xi`` of the Kloosterman family over ``F_{q^a}``.

    Uses ``p_m(omega) = (-1)^{k-1} Kl_{am}(alpha, psi, xi)`` for ``m = 1..k``,
    Newton's identities, and a numerical root finder.
    """
    F = psi.field
    d = xi.field.degree_over(F)
    if a is None:
        a = d
    k = alpha.k
    p = [(-1) ** (k - 1) * kloosterman_scalar(alpha, psi, xi, a * m, budget) for m in range(1, k + 1)]
    roots, e = roots_from_power_sums(p)
    l_coeffs = tuple((-1) ** j * e[j] for j in range(k + 1))
    return FrobeniusRoots(q=F.size, a=a, alpha=alpha.exponents, xi=xi.field.coeffs(xi.value),
                          roots=tuple(roots), l_coeffs=l_coeffs, power_sums=tuple(p))


def sym_power_trace(roots: FrobeniusRoots, b: int) -> complex:
    """``h_b(omega_1..omega_k)``: trace of Frobenius on the ``b``-th symmetric power."""
    from .symfunc import eval_basis
    return eval_basis("complete", b, roots.roots)
