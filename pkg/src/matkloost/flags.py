"""Weak flags fixed by a matrix: brute-force counts and the closed form."""
from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import CompositionMismatch, NonIntegerResult, ScaleExceeded, SingularInput
from .gf import Field, field_of_order
from .glq import MatrixFq, jordan_matrix
from .symfunc import Partition, WeakComposition, _check_sizes, p_mu_lambda, weak_compositions

SUBSPACE_LIMIT = 2 * 10 ** 5


class SubspaceFq:
    """Subspace of ``field^dim`` stored by its reduced row echelon basis."""

    __slots__ = ("field", "dim_ambient", "basis", "pivots")

    def __init__(self, field: Field, dim_ambient: int, basis: Sequence[Sequence[int]]):
        self.field = field
        self.dim_ambient = dim_ambient
        self.basis = tuple(tuple(r) for r in basis)
        self.pivots = tuple(next(i for i, c in enumerate(r) if c) for r in self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, SubspaceFq) and other.field is self.field
                and other.basis == self.basis)

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"SubspaceFq(dim={self.dim}, basis={[list(r) for r in self.basis]})"

    def contains(self, v: Sequence[int]) -> bool:
        F = self.field
        v = list(v)
        for piv, row in zip(self.pivots, self.basis):
            c = v[piv]
            if c:
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
        return not any(v)

    def contains_subspace(self, other: SubspaceFq) -> bool:
        return all(self.contains(r) for r in other.basis)

    def is_invariant(self, g: MatrixFq) -> bool:
        """``g W ⊆ W`` with ``g`` acting on column vectors."""
        F = self.field
        for w in self.basis:
            gw = []
            for row in g.rows:
                acc = 0
                for x, y in zip(row, w):
                    if x and y:
                        acc = F.add(acc, F.mul(x, y))
                gw.append(acc)
            if not self.contains(gw):
                return False
        return True


def subspace_count(q: int, b: int) -> int:
    total = 0
    for d in range(b + 1):
        num = den = 1
        for i in range(d):
            num *= q ** (b - i) - 1
            den *= q ** (i + 1) - 1
        total += num // den
    return total


def enumerate_subspaces(F: Field, b: int, d: int | None = None) -> Iterator[SubspaceFq]:
    """All subspaces of ``F^b`` (or those of dimension ``d``), one RREF each."""
    if subspace_count(F.size, b) > SUBSPACE_LIMIT:
        raise ScaleExceeded(f"too many subspaces of F_{F.size}^{b}")
    dims = range(b + 1) if d is None else [d]
    for dim in dims:
        for pivots in itertools.combinations(range(b), dim):
            free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, b) if j not in pivots]
            for vals in itertools.product(range(F.size), repeat=len(free)):
                rows = [[0] * b for _ in range(dim)]
                for i, p in enumerate(pivots):
                    rows[i][p] = 1
                for (i, j), v in zip(free, vals):
                    rows[i][j] = v
                yield SubspaceFq(F, b, rows)


def invariant_subspaces(g: MatrixFq) -> list[SubspaceFq]:
    return [W for W in enumerate_subspaces(g.field, g.n) if W.is_invariant(g)]


def count_fixed_weak_flags_bruteforce(comp: Sequence[int], g: MatrixFq,
                                      invariant: list[SubspaceFq] | None = None) -> int:
    """Number of chains ``0 ⊆ W_1 ⊆ ... ⊆ W_t = F^b`` of ``g``-invariant subspaces
    with ``dim W_j / W_{j-1} = comp[j]``."""
    comp = WeakComposition(comp)
    b = g.n
    if comp.size != b:
        raise CompositionMismatch(f"composition {tuple(comp)} does not sum to {b}")
    if g.det() == 0:
        raise SingularInput("g must be invertible")
    if invariant is None:
        invariant = invariant_subspaces(g)
    by_dim: dict[int, list[SubspaceFq]] = defaultdict(list)
    for W in invariant:
        by_dim[W.dim].append(W)
    counts = {W: 1 for W in by_dim[0]}
    dim = 0
    for m in comp:
        if m == 0:
            continue
        nxt = {}
        for W2 in by_dim[dim + m]:
            c = sum(n for W1, n in counts.items() if W2.contains_subspace(W1))
            if c:
                nxt[W2] = c
        counts, dim = nxt, dim + m
    return sum(counts.values())


def jordan_over(qa: int, mu: Partition, xi: int | None = None) -> MatrixFq:
    """``J_mu(xi)`` over the default field of ``qa`` elements (``xi`` defaults to the generator)."""
    F = field_of_order(qa)
    if xi is None:
        xi = F.generator if F.size > 2 else 1
    return jordan_matrix(MatrixFq(F, [[xi]]), Partition(mu))


def count_fixed_flags_formula(mu: Partition, lam: Partition, qa: int) -> int:
    """``qa^{n(mu)} P_{mu,lam}(1/qa)``, evaluated exactly."""
    mu, lam = _check_sizes(mu, lam)
    value = Fraction(qa) ** mu.n * p_mu_lambda(mu, lam)(Fraction(1, qa))
    if value.denominator != 1:
        raise NonIntegerResult(f"flag count {value} is not an integer")
    return int(value)


def count_fixed_length_k_weak_flags(mu: Partition, qa: int, k: int) -> int:
    """Fixed weak flags of length ``k`` summed over all types, via the closed form."""
    mu = Partition(mu)
    if k < 1:
        raise ValueError("k must be positive")
    return sum(_formula_cached(tuple(mu), tuple(c.to_partition()), qa)
               for c in weak_compositions(mu.size, k))


@lru_cache(maxsize=None)
def _formula_cached(mu, lam, qa) -> int:
    return count_fixed_flags_formula(Partition(mu), Partition(lam), qa)
