"""Exact partition combinatorics and evaluated symmetric functions.

Polynomials in ``t`` carry Python integers, so nothing overflows.  Symmetric
functions are never expanded symbolically in the variables; they are either
evaluated at explicit points or expanded in the monomial basis by Kostka
numbers.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (EmptyPartition, IndexOutOfRange, NonPolynomialResult, SizeMismatch,
                     ZeroParameterT)


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> Partition:
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        return cls(int(x) for x in text.replace(" ", "").split(",") if x)

    @classmethod
    def sorted(cls, parts: Iterable[int]) -> Partition:
        return cls(sorted((x for x in parts if x), reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))

    @property
    def z(self) -> int:
        out = 1
        for j, m in Counter(self).items():
            out *= j ** m * math.factorial(m)
        return out

    @property
    def n(self) -> int:
        """``sum (j - 1) mu_j``."""
        return sum(i * x for i, x in enumerate(self))

    @property
    def conjugate(self) -> Partition:
        if not self:
            return Partition(())
        return Partition(sum(1 for x in self if x > j) for j in range(self[0]))

    def __str__(self) -> str:
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"


class WeakComposition(tuple):
    """Fixed-length tuple of nonnegative integers."""

    def __new__(cls, parts: Iterable[int]):
        parts = tuple(int(x) for x in parts)
        if any(x < 0 for x in parts):
            raise ValueError(f"weak composition parts must be nonnegative: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def to_partition(self) -> Partition:
        return Partition.sorted(self)


def weak_compositions(n: int, k: int) -> Iterator[WeakComposition]:
    """All weak compositions of ``n`` with ``k`` parts (stars and bars order)."""
    if k == 0:
        if n == 0:
            yield WeakComposition(())
        return
    for bars in itertools.combinations(range(n + k - 1), k - 1):
        prev, parts = -1, []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(n + k - 2 - prev)
        yield WeakComposition(parts)


def partitions_of(b: int) -> list[Partition]:
    """Partitions of ``b`` in reverse-lexicographic order."""
    if b < 0:
        raise ValueError("b must be nonnegative")
    return [Partition(p) for p in _partitions(b, b)]


@lru_cache(maxsize=None)
def _partitions(b: int, cap: int) -> tuple[tuple[int, ...], ...]:
    if b == 0:
        return ((),)
    out = []
    for first in range(min(b, cap), 0, -1):
        for rest in _partitions(b - first, first):
            out.append((first,) + rest)
    return tuple(out)


def _check_sizes(a: Partition, b: Partition) -> tuple[Partition, Partition]:
    a, b = Partition(a), Partition(b)
    if a.size != b.size:
        raise SizeMismatch(f"|{a}| = {a.size} but |{b}| = {b.size}")
    return a, b


# ---------------------------------------------------------------------------
# Integer polynomials in t


class IntPolynomial:
    """Polynomial with integer coefficients, ascending in degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, d: int, c: int = 1) -> IntPolynomial:
        return cls([0] * d + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-x for x in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = IntPolynomial([1])
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, t):
        """Horner evaluation; exact for ``int`` and ``Fraction`` arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def reversed(self, n: int) -> IntPolynomial:
        """``t^n P(1/t)``; raises if ``deg P > n``."""
        if self.degree > n:
            raise NonPolynomialResult(f"degree {self.degree} exceeds reversal bound {n}")
        return IntPolynomial(tuple(reversed(self.coeffs + (0,) * (n + 1 - len(self.coeffs)))))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                mono = "t" if d == 1 else f"t^{d}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


def _as_poly(x) -> IntPolynomial:
    return x if isinstance(x, IntPolynomial) else IntPolynomial([x])


# ---------------------------------------------------------------------------
# Tableaux, Kostka numbers and charge


def _horizontal_strips(inner: tuple[int, ...], size: int, max_rows: int) -> Iterator[tuple[int, ...]]:
    """Shapes ``outer`` with ``outer / inner`` a horizontal strip of ``size`` boxes."""
    inner = tuple(inner) + (0,)
    rows = min(len(inner), max_rows)

    def rec(i, left, acc):
        if i == rows:
            if left == 0:
                yield tuple(x for x in acc if x)
            return
        cap = inner[i - 1] if i > 0 else inner[0] + left
        hi = min(cap, inner[i] + left) if i > 0 else inner[0] + left
        for row in range(hi, inner[i] - 1, -1):
            yield from rec(i + 1, left - (row - inner[i]), acc + [row])

    yield from rec(0, size, [])


def ssyt(shape: Partition, content: Sequence[int]) -> Iterator[list[list[int]]]:
    """Semistandard tableaux of ``shape`` with ``content[i]`` entries equal to ``i + 1``."""
    shape = Partition(shape)
    if shape.size != sum(content):
        return
    chains: list[tuple[int, ...]] = [()]

    def rec(step, current):
        if step == len(content):
            if current == tuple(shape):
                yield list(chains)
            return
        for nxt in _horizontal_strips(current, content[step], len(shape)):
            if len(nxt) > len(shape) or any(x > y for x, y in zip(nxt, shape)):
                continue
            chains.append(nxt)
            yield from rec(step + 1, nxt)
            chains.pop()

    for chain in rec(0, ()):
        rows = [[] for _ in shape]
        for letter in range(1, len(chain)):
            prev, cur = chain[letter - 1], chain[letter]
            for r in range(len(cur)):
                before = prev[r] if r < len(prev) else 0
                rows[r].extend([letter] * (cur[r] - before))
        yield rows


@lru_cache(maxsize=None)
def _kostka(rho: tuple[int, ...], lam: tuple[int, ...]) -> int:
    return sum(1 for _ in ssyt(Partition(rho), lam))


def kostka_number(rho: Partition, lam: Partition) -> int:
    """Number of semistandard tableaux of shape ``rho`` and content ``lam``."""
    rho, lam = _check_sizes(rho, lam)
    return _kostka(tuple(rho), tuple(lam))


def reading_word(tableau: list[list[int]]) -> list[int]:
    """Rows from bottom to top, each read left to right."""
    return [x for row in reversed(tableau) for x in row]


def charge_word(word: Sequence[int]) -> int:
    """Charge of a word with partition content.

    Repeatedly extracts standard subwords: starting at the rightmost ``1``,
    scan leftwards (cyclically) for ``2``, ``3``, ...; each wrap-around bumps
    the index, and the charge of the subword is the sum of indices.
    """
    word = list(word)
    total = 0
    while word:
        n = len(word)
        used = [False] * n
        top = max(word)
        pos = max(i for i in range(n) if word[i] == 1)
        used[pos] = True
        index = 0
        for r in range(2, top + 1):
            found = None
            for step in range(1, n + 1):
                j = (pos - step) % n
                if word[j] == r and not used[j]:
                    found = j
                    if j > pos:
                        index += 1
                    break
            if found is None:
                break
            used[found] = True
            total += index
            pos = found
        word = [x for i, x in enumerate(word) if not used[i]]
    return total


@lru_cache(maxsize=None)
def _kostka_foulkes(rho: tuple[int, ...], mu: tuple[int, ...]) -> IntPolynomial:
    coeffs = Counter(charge_word(reading_word(t)) for t in ssyt(Partition(rho), mu))
    if not coeffs:
        return IntPolynomial()
    return IntPolynomial(coeffs.get(d, 0) for d in range(max(coeffs) + 1))


def kostka_foulkes(rho: Partition, mu: Partition) -> IntPolynomial:
    """``K_{rho,mu}(t)``: charge generating function over SSYT of shape ``rho``, content ``mu``."""
    rho, mu = _check_sizes(rho, mu)
    return _kostka_foulkes(tuple(rho), tuple(mu))


# ---------------------------------------------------------------------------
# Symmetric group characters


@lru_cache(maxsize=None)
def _mn(beta: frozenset[int], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1
    r, rest = cycles[0], cycles[1:]
    total = 0
    for x in beta:
        y = x - r
        if y < 0 or y in beta:
            continue
        # sign is (-1)^(number of beads strictly between y and x)
        height = sum(1 for z in beta if y < z < x)
        total += (-1) ** height * _mn((beta - {x}) | {y}, rest)
    return total


def symgroup_character(rho: Partition, lam: Partition) -> int:
    """``chi^rho`` at cycle type ``lam`` by Murnaghan-Nakayama on beta-sets."""
    rho, lam = _check_sizes(rho, lam)
    L = len(rho)
    beta = frozenset(rho[i] + (L - 1 - i) for i in range(L))
    return _mn(beta, tuple(lam))


# ---------------------------------------------------------------------------
# Green polynomials, P_{mu,lambda}, q-binomials


@lru_cache(maxsize=None)
def _green(lam: tuple[int, ...], mu: tuple[int, ...]) -> IntPolynomial:
    X = IntPolynomial()
    for rho in partitions_of(sum(mu)):
        chi = symgroup_character(rho, Partition(lam))
        if chi:
            X = X + chi * _kostka_foulkes(tuple(rho), mu)
    return X.reversed(Partition(mu).n)


def green_polynomial(lam: Partition, mu: Partition) -> IntPolynomial:
    """``Q_lam^mu(t) = t^{n(mu)} X(1/t)`` with ``X = sum_rho chi^rho_lam K_{rho,mu}(t)``."""
    lam, mu = _check_sizes(lam, mu)
    return _green(tuple(lam), tuple(mu))


def green_x(lam: Partition, mu: Partition) -> IntPolynomial:
    lam, mu = _check_sizes(lam, mu)
    return sum((symgroup_character(rho, lam) * kostka_foulkes(rho, mu)
                for rho in partitions_of(mu.size)), IntPolynomial())


@lru_cache(maxsize=None)
def _p_mu_lambda(mu: tuple[int, ...], lam: tuple[int, ...]) -> IntPolynomial:
    out = IntPolynomial()
    for rho in partitions_of(sum(mu)):
        k = _kostka(tuple(rho), lam)
        if k:
            out = out + k * _kostka_foulkes(tuple(rho), mu)
    return out


def p_mu_lambda(mu: Partition, lam: Partition) -> IntPolynomial:
    """``sum_rho K_{rho,lam} K_{rho,mu}(t)``."""
    mu, lam = _check_sizes(mu, lam)
    return _p_mu_lambda(tuple(mu), tuple(lam))


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> IntPolynomial:
    """Gaussian binomial coefficient as a polynomial in ``q``."""
    if n < 0 or not 0 <= k <= n:
        raise IndexOutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    if k == 0 or k == n:
        return IntPolynomial([1])
    return q_binomial(n - 1, k - 1) + IntPolynomial.monomial(k) * q_binomial(n - 1, k)


def phi_l(l: int) -> IntPolynomial:
    """``prod_{j=1}^{l-1} (1 - T^j)``."""
    if l < 1:
        raise IndexOutOfRange(f"l must be positive, got {l}")
    out = IntPolynomial([1])
    for j in range(1, l):
        out = out * (IntPolynomial([1]) - IntPolynomial.monomial(j))
    return out


# ---------------------------------------------------------------------------
# Evaluation at points


def _monomial_eval(lam: Partition, x: Sequence[complex]) -> complex:
    k = len(x)
    if len(lam) > k:
        return 0j
    exps = tuple(lam) + (0,) * (k - len(lam))
    total = 0j
    for perm in set(itertools.permutations(exps)):
        term = 1 + 0j
        for xi, e in zip(x, perm):
            if e:
                term *= xi ** e
        total += term
    return total


def _power_eval(lam: Partition, x: Sequence[complex]) -> complex:
    out = 1 + 0j
    for r in lam:
        out *= sum(xi ** r for xi in x)
    return out


def _complete_eval(b: int, x: Sequence[complex]) -> complex:
    # b h_b = sum_{i=1}^b p_i h_{b-i}
    p = [sum(xi ** i for xi in x) for i in range(b + 1)]
    h = [1 + 0j]
    for m in range(1, b + 1):
        h.append(sum(p[i] * h[m - i] for i in range(1, m + 1)) / m)
    return complex(h[b])


def _schur_eval(rho: Partition, x: Sequence[complex]) -> complex:
    k = len(x)
    if len(rho) > k:
        return 0j
    xs = np.asarray(x, dtype=complex)
    parts = tuple(rho) + (0,) * (k - len(rho))
    gaps = [abs(xs[i] - xs[j]) for i in range(k) for j in range(i + 1, k)]
    scale = max([1.0] + [abs(v) for v in xs])
    if not gaps or min(gaps) > 1e-3 * scale:
        num = np.array([[xi ** (parts[j] + k - 1 - j) for j in range(k)] for xi in xs])
        den = np.array([[xi ** (k - 1 - j) for j in range(k)] for xi in xs])
        d = np.linalg.det(den)
        if abs(d) > 1e-8 * scale ** (k * (k - 1) // 2):
            return complex(np.linalg.det(num) / d)
    return sum((kostka_number(rho, lam) * _monomial_eval(lam, x)
                for lam in partitions_of(rho.size) if len(lam) <= k), 0j)


def eval_basis(basis: str, index, points: Sequence[complex]) -> complex:
    """Evaluate ``m``, ``p``, ``s`` or ``h`` at ``points``.

    ``index`` is a partition, or an integer for the one-row case.
    """
    pts = [complex(v) for v in points]
    if not pts:
        raise ValueError("need at least one point")
    if isinstance(index, int):
        lam = Partition((index,)) if index else Partition(())
    else:
        lam = Partition(index)
    if basis in ("monomial", "m"):
        return _monomial_eval(lam, pts)
    if basis in ("powersum", "p"):
        return _power_eval(lam, pts)
    if basis in ("schur", "s"):
        return _schur_eval(lam, pts)
    if basis in ("complete", "h"):
        out = 1 + 0j
        for r in lam:
            out *= _complete_eval(r, pts)
        return out
    raise ValueError(f"unknown basis {basis!r}")


def modified_hl_schur_coeffs(mu: Partition) -> dict[Partition, IntPolynomial]:
    """``rho -> t^{n(mu)} K_{rho,mu}(1/t)``."""
    mu = Partition(mu)
    return {rho: kostka_foulkes(rho, mu).reversed(mu.n) for rho in partitions_of(mu.size)}


def modified_hl_eval(mu: Partition, points: Sequence[complex], t: complex) -> complex:
    """``H~_mu(x; t) = sum_rho t^{n(mu)} K_{rho,mu}(1/t) s_rho(x)``."""
    mu = Partition(mu)
    total = 0j
    for rho, c in modified_hl_schur_coeffs(mu).items():
        if len(rho) <= len(points):
            total += c(complex(t)) * eval_basis("schur", rho, points)
    return total


def modified_hl_eval_powersum(mu: Partition, points: Sequence[complex], t: complex) -> complex:
    """``sum_lam Q_lam^mu(t) / z_lam * p_lam(x)``; independent of the Schur route."""
    mu = Partition(mu)
    total = 0j
    for lam in partitions_of(mu.size):
        total += green_polynomial(lam, mu)(complex(t)) / lam.z * eval_basis("powersum", lam, points)
    return total


def modified_hl_monomial_coeffs(mu: Partition, k: int, t: int) -> dict[Partition, int]:
    """Coefficients of ``m_lam`` (``len(lam) <= k``) in ``H~_mu(x; t)`` at integer ``t``."""
    mu = Partition(mu)
    if t == 0:
        raise ZeroParameterT("coefficient form needs t != 0")
    if k < 1:
        raise ValueError("k must be positive")
    return {lam: p_mu_lambda(mu, lam).reversed(mu.n)(t)
            for lam in partitions_of(mu.size) if len(lam) <= k}


def require_nonempty(mu: Partition) -> Partition:
    mu = Partition(mu)
    if not mu:
        raise EmptyPartition("partition must be nonempty")
    return mu
