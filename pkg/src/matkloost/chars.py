"""Additive and multiplicative characters of finite fields, and Gauss sums.

Character values are double-precision complex numbers.  Multiplicative
characters are indexed by an exponent against the field's deterministic
generator, so every run sees the same character for the same index.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import FieldMismatch, TowerMismatch, ZeroElement
from .gf import Field, FieldElement, extension, trace_to

TWO_PI_I = 2j * np.pi


@dataclass(frozen=True, eq=False)
class AdditiveCharacter:
    """``x -> exp(2 pi i Tr_{F/F_p}(b x) / p)`` on ``field``, with ``b != 0``."""

    field: Field
    b: int = 1

    def __post_init__(self):
        if not 0 < self.b < self.field.size:
            raise ValueError("twist element must be a nonzero field element")

    def __call__(self, x: FieldElement) -> complex:
        return lift_additive(self, 1)(x)

    def values(self) -> np.ndarray:
        """Values on every element of ``field`` indexed by encoding."""
        F = self.field
        key = ("psi", self.b)
        if key not in F._cache:
            bx = _scaled(F, self.b)
            tr = F.trace_table(F.prime_field)[bx]
            F._cache[key] = np.exp(TWO_PI_I * tr / F.p)
        return F._cache[key]

    def on(self, E: Field) -> LiftedAdditiveCharacter:
        return LiftedAdditiveCharacter(self, E)


def _scaled(F: Field, b: int) -> np.ndarray:
    """Encodings of ``b * x`` for every ``x`` in ``F``."""
    out = np.zeros(F.size, dtype=np.int64)
    order = F.size - 1
    out[1:] = F.exp_table[(F.log_table[1:] + F.dlog(b)) % order]
    return out


@dataclass(frozen=True, eq=False)
class LiftedAdditiveCharacter:
    """``psi o Tr_{E/F}`` for an additive character ``psi`` of a subfield ``F`` of ``E``."""

    psi: AdditiveCharacter
    field: Field

    def __post_init__(self):
        self.field.degree_over(self.psi.field)

    def values(self) -> np.ndarray:
        E, F = self.field, self.psi.field
        key = ("psi_lift", id(F), self.psi.b)
        if key not in E._cache:
            E._cache[key] = self.psi.values()[E.trace_table(F)]
        return E._cache[key]

    def __call__(self, x: FieldElement) -> complex:
        if x.field is not self.field:
            raise FieldMismatch(f"{x!r} is not in {self.field!r}")
        t = trace_to(x, self.psi.field)
        F = self.psi.field
        s = trace_to(FieldElement(F, F.mul(self.psi.b, t.value)), F.prime_field)
        return cmath.exp(TWO_PI_I * s.value / F.p)


def lift_additive(psi: AdditiveCharacter, m: int) -> LiftedAdditiveCharacter:
    """``psi_m = psi o Tr_{F_{q^m}/F_q}`` on the default degree-``m`` extension."""
    return LiftedAdditiveCharacter(psi, extension(psi.field, m))


def eval_additive(psi, x: FieldElement) -> complex:
    return psi(x)


@dataclass(frozen=True, eq=False)
class MultiplicativeCharacter:
    """``generator ** j -> exp(2 pi i c j / (|F| - 1))``."""

    field: Field
    c: int = 0

    def __post_init__(self):
        object.__setattr__(self, "c", self.c % (self.field.size - 1))

    @property
    def order_modulus(self) -> int:
        return self.field.size - 1

    @property
    def is_trivial(self) -> bool:
        return self.c == 0

    def __call__(self, x: FieldElement) -> complex:
        if x.field is not self.field:
            raise FieldMismatch(f"{x!r} is not in {self.field!r}")
        if x.value == 0:
            raise ZeroElement("multiplicative character at zero")
        return cmath.exp(TWO_PI_I * (self.c * self.field.dlog(x.value) % self.order_modulus)
                         / self.order_modulus)

    def values(self) -> np.ndarray:
        """Values indexed by encoding, with 0 at the zero element."""
        F = self.field
        key = ("chi", self.c)
        if key not in F._cache:
            out = np.zeros(F.size, dtype=complex)
            N = self.order_modulus
            out[1:] = np.exp(TWO_PI_I * ((self.c * F.log_table[1:]) % N) / N)
            F._cache[key] = out
        return F._cache[key]

    def power(self, e: int) -> MultiplicativeCharacter:
        return MultiplicativeCharacter(self.field, self.c * e)

    def pullback(self, E: Field) -> MultiplicativeCharacter:
        """``self o N_{E/F}`` as a character of the extension ``E``."""
        F = self.field
        E.degree_over(F)
        nu = F.dlog(int(E.norm_table(F)[E.generator]))
        c = self.c * nu * ((E.size - 1) // (F.size - 1))
        return MultiplicativeCharacter(E, c)

    def __eq__(self, other):
        return (isinstance(other, MultiplicativeCharacter) and other.field is self.field
                and other.c == self.c)

    def __hash__(self):
        return hash((id(self.field), self.c))


def eval_mult(chi: MultiplicativeCharacter, x: FieldElement) -> complex:
    return chi(x)


class CharacterTuple(tuple):
    """``alpha = alpha_1 x ... x alpha_k``: a nonempty tuple of characters of one field."""

    def __new__(cls, chars: Sequence[MultiplicativeCharacter]):
        chars = tuple(chars)
        if not chars:
            raise ValueError("a character tuple needs at least one character")
        F = chars[0].field
        if any(c.field is not F for c in chars):
            raise FieldMismatch("all characters of a tuple must live on one field")
        return super().__new__(cls, chars)

    @classmethod
    def from_exponents(cls, F: Field, exps: Sequence[int]) -> CharacterTuple:
        return cls(MultiplicativeCharacter(F, c) for c in exps)

    @classmethod
    def trivial(cls, F: Field, k: int) -> CharacterTuple:
        return cls.from_exponents(F, [0] * k)

    @property
    def field(self) -> Field:
        return self[0].field

    @property
    def k(self) -> int:
        return len(self)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(c.c for c in self)


def gauss_sum(theta: MultiplicativeCharacter, chi: MultiplicativeCharacter,
              psi: AdditiveCharacter) -> complex:
    """``-sum_{t in E^x} theta(t) chi(N_{E/F}(t)) psi(Tr_{E/F}(t))``.

    ``theta`` lives on an extension ``E`` of the common field ``F`` of ``chi``
    and ``psi``; the level ``n = [E : F]`` is read off the tower.
    """
    F, E = psi.field, theta.field
    if chi.field is not F:
        raise TowerMismatch("chi and psi must share a field")
    if not E.has_subfield(F):
        raise TowerMismatch(f"{F!r} is not a subfield of {E!r}")
    vals = theta.values()[1:] * chi.values()[E.norm_table(F)[1:]] * psi.on(E).values()[1:]
    return -complex(vals.sum())


def hasse_davenport_pair(theta: MultiplicativeCharacter, chi: MultiplicativeCharacter,
                         psi: AdditiveCharacter, b: int) -> tuple[complex, complex]:
    """``(tau_a(theta)^b, tau_ab(theta o N))`` for ``theta`` on ``F_{q^a}``."""
    E = theta.field
    Eb = extension(E, b)
    lhs = gauss_sum(theta, chi, psi) ** b
    rhs = gauss_sum(theta.pullback(Eb), chi, psi)
    return lhs, rhs


def parse_alpha(F: Field, spec: str) -> CharacterTuple:
    """``"c1,c2,...,ck"`` (optionally prefixed ``alpha=``)."""
    spec = spec.strip()
    if spec.startswith("alpha="):
        spec = spec[len("alpha="):]
    return CharacterTuple.from_exponents(F, [int(c) for c in spec.split(",")])
