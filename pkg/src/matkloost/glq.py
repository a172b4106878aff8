"""Matrices over finite fields and brute-force matrix Kloosterman sums.

Matrices are immutable tuples of rows of integer field encodings.  The
brute-force sum accumulates exact integer counts keyed by the character
data of each term, so the final value does not depend on summation order or
on how the work was split between processes.
"""
from __future__ import annotations

import cmath
import math
import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .chars import AdditiveCharacter, CharacterTuple
from .errors import (EmptyPartition, FieldMismatch, ReduciblePolynomial, ScaleExceeded,
                     SingularInput, SizeMismatch)
from .gf import (Field, FieldElement, poly_divmod, poly_gcd, poly_is_irreducible, poly_mul,
                 poly_sub, poly_trim)
from .symfunc import Partition

GL_ORDER_LIMIT = 10 ** 6
BRUTE_FORCE_BUDGET = 10 ** 7


class MatrixFq:
    """Square matrix over ``field``; ``rows`` hold integer encodings."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows: Sequence[Sequence]):
        conv = []
        for row in rows:
            r = []
            for v in row:
                if isinstance(v, FieldElement):
                    if v.field is not field:
                        raise FieldMismatch(f"entry {v!r} is not in {field!r}")
                    v = v.value
                elif isinstance(v, (list, tuple)):
                    v = field.from_coeffs(v).value
                v = int(v)
                if not 0 <= v < field.size:
                    raise ValueError(f"entry {v} out of range for {field!r}")
                r.append(v)
            conv.append(tuple(r))
        n = len(conv)
        if any(len(r) != n for r in conv):
            raise SizeMismatch("matrix must be square")
        self.field = field
        self.rows = tuple(conv)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, MatrixFq) and other.field is self.field and other.rows == self.rows

    def __hash__(self):
        return hash((id(self.field), self.rows))

    def __repr__(self):
        return f"MatrixFq({self.field.descriptor}, {[list(r) for r in self.rows]})"

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: MatrixFq) -> MatrixFq:
        _same_field(self, other)
        return MatrixFq(self.field, mat_mul(self.field, self.rows, other.rows))

    def to_coeff_lists(self) -> list[list[list[int]]]:
        F = self.field
        return [[list(F.coeffs(v)) for v in row] for row in self.rows]

    def trace(self) -> int:
        F, acc = self.field, 0
        for i in range(self.n):
            acc = F.add(acc, self.rows[i][i])
        return acc

    def det(self) -> int:
        return mat_det(self.field, self.rows)

    def inverse(self) -> MatrixFq:
        return MatrixFq(self.field, mat_solve(self.field, self.rows, identity_rows(self.n)))


def _same_field(a: MatrixFq, b: MatrixFq) -> None:
    if a.field is not b.field:
        raise FieldMismatch("matrices live over different fields")
    if a.n != b.n:
        raise SizeMismatch("matrices have different sizes")


def identity_rows(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def identity(F: Field, n: int) -> MatrixFq:
    return MatrixFq(F, identity_rows(n))


def scalar_matrix(F: Field, c: int, n: int) -> MatrixFq:
    return MatrixFq(F, [[c if i == j else 0 for j in range(n)] for i in range(n)])


def mat_mul(F: Field, A, B) -> tuple[tuple[int, ...], ...]:
    n = len(A)
    cols = list(zip(*B))
    add, mul = F.add, F.mul
    out = []
    for row in A:
        r = []
        for col in cols:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add(acc, mul(x, y))
            r.append(acc)
        out.append(tuple(r))
    return tuple(out)


def mat_det(F: Field, A) -> int:
    M = [list(r) for r in A]
    n = len(M)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        inv = F.inv(M[c][c])
        for r in range(c + 1, n):
            if M[r][c]:
                f = F.mul(M[r][c], inv)
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[c])]
    return det


def mat_solve(F: Field, A, B) -> tuple[tuple[int, ...], ...]:
    """``A^{-1} B`` by Gauss-Jordan elimination on ``[A | B]``."""
    n = len(A)
    M = [list(a) + list(b) for a, b in zip(A, B)]
    width = len(M[0])
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            raise SingularInput("matrix is not invertible")
        M[c], M[piv] = M[piv], M[c]
        inv = F.inv(M[c][c])
        if inv != 1:
            M[c] = [F.mul(inv, x) for x in M[c]]
        pivot_row = M[c]
        for r in range(n):
            f = M[r][c]
            if r != c and f:
                row = M[r]
                M[r] = [F.sub(row[j], F.mul(f, pivot_row[j])) if pivot_row[j] else row[j]
                        for j in range(width)]
    return tuple(tuple(r[n:]) for r in M)


def block_diagonal(*blocks: MatrixFq) -> MatrixFq:
    if not blocks:
        raise ValueError("need at least one block")
    F = blocks[0].field
    if any(b.field is not F for b in blocks):
        raise FieldMismatch("blocks live over different fields")
    n = sum(b.n for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.n):
            rows[off + i][off:off + b.n] = b.rows[i]
        off += b.n
    return MatrixFq(F, rows)


def conjugate_by(x: MatrixFq, h: MatrixFq) -> MatrixFq:
    """``h x h^{-1}``."""
    return h @ x @ h.inverse()


# ---------------------------------------------------------------------------
# Constructions


def companion_matrix(F: Field, f: Sequence[int]) -> MatrixFq:
    """Companion matrix of monic irreducible ``f`` (coefficients low to high).

    Ones on the superdiagonal and ``-c_0 .. -c_{a-1}`` in the last row.  Its
    eigenvalue in ``F[T]/(f)`` is the class of ``T``.
    """
    f = poly_trim(int(c) for c in f)
    if len(f) < 2 or f[-1] != 1:
        raise ValueError("polynomial must be monic of positive degree")
    if not poly_is_irreducible(F, f):
        raise ReduciblePolynomial(f"{f} is reducible over {F!r}")
    a = len(f) - 1
    rows = [[0] * a for _ in range(a)]
    for i in range(a - 1):
        rows[i][i + 1] = 1
    rows[a - 1] = [F.neg(c) for c in f[:-1]]
    return MatrixFq(F, rows)


def jordan_matrix(x: MatrixFq, mu: Partition) -> MatrixFq:
    """``diag(J_(m_1)(x), ..., J_(m_r)(x))``; each block has ``x`` on the diagonal
    and identity blocks on the block superdiagonal."""
    mu = Partition(mu)
    if not mu:
        raise EmptyPartition("Jordan matrix of the empty partition")
    if x.det() == 0:
        raise SingularInput("Jordan blocks need an invertible eigenvalue block")
    a = x.n
    blocks = []
    for m in mu:
        n = a * m
        rows = [[0] * n for _ in range(n)]
        for b in range(m):
            for i in range(a):
                rows[b * a + i][b * a:(b + 1) * a] = x.rows[i]
                if b + 1 < m:
                    rows[b * a + i][(b + 1) * a + i] = 1
        blocks.append(MatrixFq(x.field, rows))
    return block_diagonal(*blocks)


@dataclass(frozen=True)
class ConjugacyDatum:
    """Pairs ``(irreducible polynomial, partition)`` with distinct polynomials."""

    field: Field
    parts: tuple[tuple[tuple[int, ...], Partition], ...]

    def __post_init__(self):
        polys = [poly_trim(f) for f, _ in self.parts]
        if len(set(polys)) != len(polys):
            raise ValueError("polynomials in a conjugacy datum must be distinct")
        for f, lam in self.parts:
            if not poly_is_irreducible(self.field, f):
                raise ReduciblePolynomial(f"{f} is reducible over {self.field!r}")
            if not Partition(lam):
                raise EmptyPartition("each polynomial needs a nonempty partition")

    @property
    def n(self) -> int:
        return sum((len(f) - 1) * Partition(lam).size for f, lam in self.parts)

    def matrix(self) -> MatrixFq:
        return block_diagonal(*(jordan_matrix(companion_matrix(self.field, f), Partition(lam))
                                for f, lam in self.parts))


# ---------------------------------------------------------------------------
# Characteristic polynomials


def char_poly(x: MatrixFq) -> tuple[int, ...]:
    """``det(T I - x)`` via reduction to upper Hessenberg form."""
    F, n = x.field, x.n
    H = [list(r) for r in x.rows]
    for j in range(n - 2):
        piv = next((r for r in range(j + 1, n) if H[r][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[j + 1], H[piv] = H[piv], H[j + 1]
            for r in H:
                r[j + 1], r[piv] = r[piv], r[j + 1]
        inv = F.inv(H[j + 1][j])
        for i in range(j + 2, n):
            if H[i][j]:
                m = F.mul(H[i][j], inv)
                H[i] = [F.sub(a, F.mul(m, b)) for a, b in zip(H[i], H[j + 1])]
                for r in H:
                    r[j + 1] = F.add(r[j + 1], F.mul(m, r[i]))
    # p_m = (T - h_mm) p_{m-1} - sum_i h_im (prod_{j=i+1}^m h_{j,j-1}) p_{i-1}
    p: list[tuple[int, ...]] = [(1,)]
    for m in range(1, n + 1):
        cur = poly_mul(F, (F.neg(H[m - 1][m - 1]), 1), p[m - 1])
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = F.mul(prod, H[i][i - 1])
            if not prod:
                break
            c = F.mul(H[i - 1][m - 1], prod)
            if c:
                cur = poly_sub(F, cur, poly_mul(F, (c,), p[i - 1]))
        p.append(cur)
    return p[n]


def is_regular_elliptic(x: MatrixFq) -> bool:
    return poly_is_irreducible(x.field, char_poly(x))


def eigen_disjoint(x1: MatrixFq, x2: MatrixFq) -> bool:
    if x1.field is not x2.field:
        raise FieldMismatch("matrices live over different fields")
    return poly_gcd(x1.field, char_poly(x1), char_poly(x2)) == (1,)


def min_poly_divides(x: MatrixFq, f: Sequence[int]) -> bool:
    return not poly_divmod(x.field, char_poly(x), f)[1]


# ---------------------------------------------------------------------------
# GL_n enumeration


def gl_order(n: int, q: int) -> int:
    return q ** math.comb(n, 2) * math.prod(q ** j - 1 for j in range(1, n + 1))


def _vectors(F: Field, n: int) -> list[tuple[int, ...]]:
    out = [()]
    for _ in range(n):
        out = [v + (c,) for v in out for c in range(F.size)]
    return out


def _reduce(F: Field, basis: list[tuple[int, tuple[int, ...]]], v: tuple[int, ...]) -> tuple[int, ...]:
    """Reduce ``v`` against an echelon basis of ``(pivot, normalised row)`` pairs."""
    v = list(v)
    for piv, row in basis:
        c = v[piv]
        if c:
            v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
    return tuple(v)


def enumerate_gl(n: int, F: Field) -> Iterator[MatrixFq]:
    """Every element of ``GL_n(F)`` once, rows chosen lexicographically."""
    if gl_order(n, F.size) > GL_ORDER_LIMIT:
        raise ScaleExceeded(f"|GL_{n}(F_{F.size})| = {gl_order(n, F.size)} exceeds {GL_ORDER_LIMIT}")
    for rows in _gl_rows(n, F):
        yield MatrixFq(F, rows)


def _gl_rows(n: int, F: Field) -> Iterator[tuple[tuple[int, ...], ...]]:
    vecs = _vectors(F, n)
    rows: list[tuple[int, ...]] = []

    def rec(basis):
        if len(rows) == n:
            yield tuple(rows)
            return
        for v in vecs:
            r = _reduce(F, basis, v)
            piv = next((i for i, c in enumerate(r) if c), None)
            if piv is None:
                continue
            inv = F.inv(r[piv])
            row = tuple(F.mul(inv, c) for c in r)
            # keep the echelon basis fully reduced on the new pivot
            new_basis = [(p, tuple(F.sub(a, F.mul(b0[piv], b)) for a, b in zip(b0, row)))
                         for p, b0 in basis]
            new_basis.append((piv, row))
            rows.append(v)
            yield from rec(new_basis)
            rows.pop()

    yield from rec([])


@lru_cache(maxsize=16)
def gl_elements(n: int, F: Field) -> tuple[tuple[tuple[int, ...], ...], ...]:
    return tuple(_gl_rows(n, F)) if gl_order(n, F.size) <= GL_ORDER_LIMIT else _refuse(n, F)


def _refuse(n, F):
    raise ScaleExceeded(f"|GL_{n}(F_{F.size})| = {gl_order(n, F.size)} exceeds {GL_ORDER_LIMIT}")


def random_gl(n: int, F: Field, rng: random.Random) -> MatrixFq:
    while True:
        rows = [[rng.randrange(F.size) for _ in range(n)] for _ in range(n)]
        if mat_det(F, rows):
            return MatrixFq(F, rows)


# ---------------------------------------------------------------------------
# Brute-force matrix Kloosterman sums


def _trace_rows(F: Field, A) -> int:
    acc = 0
    for i in range(len(A)):
        acc = F.add(acc, A[i][i])
    return acc


@lru_cache(maxsize=16)
def _group_data(n: int, F: Field):
    """Group elements with the discrete log of their determinant and their trace."""
    elems = gl_elements(n, F)
    logs = [F.dlog(mat_det(F, g)) for g in elems]
    traces = [_trace_rows(F, g) for g in elems]
    return elems, logs, traces


def _histogram_chunk(F: Field, n: int, x_rows, exps: tuple[int, ...], start: int, stop: int) -> Counter:
    """Counts of ``(sum c_i log det g_i mod (q-1), tr(g_1 + ... + g_k))`` over
    tuples whose first index lies in ``[start, stop)``."""
    elems, logs, traces = _group_data(n, F)
    k = len(exps)
    M = F.size - 1
    log_x = F.dlog(mat_det(F, x_rows))
    hist: Counter = Counter()
    N = len(elems)
    if k == 1:
        if start == 0 and stop > 0:
            hist[(exps[0] * log_x % M, _trace_rows(F, x_rows))] += 1
        return hist
    add = F.add

    def walk(depth, prod, log_acc, tr_acc, prod_log):
        # prod is g_1 ... g_depth
        if depth == k - 1:
            last = mat_solve(F, prod, x_rows)
            log_last = (log_x - prod_log) % M
            key = ((log_acc + exps[-1] * log_last) % M, add(tr_acc, _trace_rows(F, last)))
            hist[key] += 1
            return
        rng = range(start, stop) if depth == 0 else range(N)
        for idx in rng:
            g = elems[idx]
            nprod = g if prod is None else mat_mul(F, prod, g)
            walk(depth + 1, nprod, log_acc + exps[depth] * logs[idx],
                 add(tr_acc, traces[idx]), prod_log + logs[idx])

    walk(0, None, 0, 0, 0)
    return hist


def _histogram_worker(args):
    return _histogram_chunk(*args)


def kloosterman_histogram(exps: Sequence[int], x: MatrixFq, workers: int = 1,
                          budget: int = BRUTE_FORCE_BUDGET) -> Counter:
    F, n, k = x.field, x.n, len(exps)
    if x.det() == 0:
        raise SingularInput("x must be invertible")
    N = gl_order(n, F.size)
    if N > GL_ORDER_LIMIT:
        _refuse(n, F)
    if N ** (k - 1) > budget:
        raise ScaleExceeded(f"{N}^{k - 1} terms exceeds budget {budget}")
    exps = tuple(int(c) % (F.size - 1) for c in exps)
    if workers <= 1 or k == 1:
        return _histogram_chunk(F, n, x.rows, exps, 0, N)
    bounds = [N * i // workers for i in range(workers + 1)]
    jobs = [(F, n, x.rows, exps, bounds[i], bounds[i + 1]) for i in range(workers)]
    hist: Counter = Counter()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_histogram_worker, jobs):
            hist.update(part)
    return hist


def evaluate_histogram(hist: Counter, F: Field, psi: AdditiveCharacter) -> complex:
    M = F.size - 1
    psi_vals = psi.values()
    total = 0j
    for (e, t), count in sorted(hist.items()):
        total += count * cmath.exp(2j * math.pi * e / M) * complex(psi_vals[t])
    return total


_bruteforce_cache: dict = {}


def matrix_kloosterman_bruteforce(alpha: CharacterTuple, psi: AdditiveCharacter, x: MatrixFq,
                                  workers: int = 1, budget: int = BRUTE_FORCE_BUDGET) -> complex:
    """``sum_{g_1 ... g_k = x} prod alpha_i(det g_i) psi(tr(g_1 + ... + g_k))``.

    ``g_k`` is solved from the product constraint, so ``|GL_n|^{k-1}`` terms
    are visited.
    """
    F = x.field
    if alpha.field is not F or psi.field is not F:
        raise FieldMismatch("alpha, psi and x must share a field")
    key = (id(F), x.rows, alpha.exponents, psi.b)
    if key not in _bruteforce_cache:
        hist = kloosterman_histogram(alpha.exponents, x, workers, budget)
        _bruteforce_cache[key] = evaluate_histogram(hist, F, psi)
    return _bruteforce_cache[key]


def bruteforce_terms(x: MatrixFq, k: int) -> int:
    return gl_order(x.n, x.field.size) ** (k - 1)


def default_workers() -> int:
    return max(1, os.cpu_count() or 1)
