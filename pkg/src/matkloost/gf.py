"""Finite fields built as one-step towers ``F[S]/(f(S))`` over a base field.

Elements are encoded as integers ``sum_i c_i * Q**i`` where ``c_i`` is the
encoding of the i-th coefficient in the base field of size ``Q``.  Unwinding
the tower, this is just the base-``p`` digit string of the flattened
``F_p``-coordinates, which gives two useful facts used throughout:

* addition is digit-wise mod ``p`` no matter how deep the tower is;
* an element of a subfield keeps its encoding when viewed in an extension.
"""
from __future__ import annotations

import itertools
import threading
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (DivisionByZero, FieldMismatch, NonPrimeCharacteristic,
                     NotASubfield, ReduciblePolynomial, ScaleExceeded,
                     ZeroElement)

MAX_FIELD_SIZE = 2 ** 20
# beyond this many candidate divisors irreducibility testing is refused
MAX_FACTOR_CANDIDATES = 10 ** 6
ADD_TABLE_LIMIT = 729

_registry: dict = {}
_registry_lock = threading.RLock()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class Field:
    """A finite field of ``size`` elements, optionally an extension of ``base``.

    Use :func:`make_field` / :func:`extension` rather than the constructor;
    they intern fields so that equal descriptions give the same object.
    """

    def __init__(self, p: int, base: Field | None, degree: int, modulus: Sequence[int]):
        self.p = p
        self.base = base
        self.degree = degree
        self.modulus = tuple(modulus)
        self.base_size = base.size if base is not None else p
        self.size = self.base_size ** degree
        self.abs_degree = degree * (base.abs_degree if base is not None else 1)
        self._lock = threading.Lock()
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._exp_np: np.ndarray | None = None
        self._log_np: np.ndarray | None = None
        self._add_table: list[list[int]] | None = None
        self._cache: dict = {}

    # -- identity -----------------------------------------------------------
    def __reduce__(self):
        return (_rebuild_field, (self.p, self.base, self.degree, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.descriptor})"

    @property
    def is_prime_field(self) -> bool:
        return self.base is None

    @property
    def prime_field(self) -> Field:
        f = self
        while f.base is not None:
            f = f.base
        return f

    @property
    def descriptor(self) -> str:
        if self.base is None:
            return f"{self.p}^1"
        coeffs = ",".join(str(c) for c in self.modulus)
        if self.base.base is None:
            return f"{self.p}^{self.degree}:{coeffs}"
        return f"[{self.base.descriptor}]^{self.degree}:{coeffs}"

    def tower(self) -> list[Field]:
        """This field followed by its base, the base's base, ... down to F_p."""
        out, f = [], self
        while f is not None:
            out.append(f)
            f = f.base
        return out

    def has_subfield(self, sub: Field) -> bool:
        return any(f is sub for f in self.tower())

    def degree_over(self, sub: Field) -> int:
        if not self.has_subfield(sub):
            raise NotASubfield(f"{sub!r} is not in the tower of {self!r}")
        return self.abs_degree // sub.abs_degree

    # -- element construction -----------------------------------------------
    def __call__(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.field is self:
                return x
            if self.has_subfield(x.field):
                return FieldElement(self, x.value)
            raise FieldMismatch(f"cannot coerce {x!r} into {self!r}")
        if isinstance(x, (list, tuple)):
            return self.from_coeffs(x)
        x = int(x)
        if not 0 <= x < self.size:
            raise ValueError(f"encoding {x} out of range for {self!r}")
        return FieldElement(self, x)

    def from_coeffs(self, coeffs: Sequence) -> FieldElement:
        if len(coeffs) > self.degree:
            raise ValueError("too many coefficients")
        v, m = 0, 1
        for c in coeffs:
            if isinstance(c, FieldElement):
                c = c.value
            if not 0 <= c < self.base_size:
                raise ValueError(f"coefficient {c} out of range")
            v += c * m
            m *= self.base_size
        return FieldElement(self, v)

    def coeffs(self, v: int) -> tuple[int, ...]:
        Q = self.base_size
        return tuple((v // Q ** i) % Q for i in range(self.degree))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> Iterator[FieldElement]:
        return (FieldElement(self, v) for v in range(self.size))

    def units(self) -> Iterator[FieldElement]:
        return (FieldElement(self, v) for v in range(1, self.size))

    # -- integer-level arithmetic ---------------------------------------------
    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.base is None:
            return (a + b) % p
        t = self._add_table
        if t is not None:
            return t[a][b]
        r, m = 0, 1
        while a or b:
            r += ((a % p + b % p) % p) * m
            a //= p
            b //= p
            m *= p
        return r

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.base is None:
            return (-a) % p
        r, m = 0, 1
        while a:
            r += ((-(a % p)) % p) * m
            a //= p
            m *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.base is None:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        self._ensure_tables()
        return self._exp[(self._log[a] + self._log[b]) % (self.size - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        if self.base is None:
            return pow(a, -1, self.p)
        self._ensure_tables()
        return self._exp[(-self._log[a]) % (self.size - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        if self.base is None:
            return pow(a, e % (self.p - 1), self.p)
        self._ensure_tables()
        return self._exp[(self._log[a] * e) % (self.size - 1)]

    def _mul_poly(self, a: int, b: int) -> int:
        """Schoolbook product mod the defining polynomial; used to bootstrap tables."""
        B, d, Q = self.base, self.degree, self.base_size
        ca, cb = self.coeffs(a), self.coeffs(b)
        r = [0] * (2 * d - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        r[i + j] = B.add(r[i + j], B.mul(x, y))
        f = self.modulus
        for top in range(2 * d - 2, d - 1, -1):
            c = r[top]
            if c:
                for j in range(d):
                    if f[j]:
                        r[top - d + j] = B.sub(r[top - d + j], B.mul(c, f[j]))
                r[top] = 0
        v, m = 0, 1
        for c in r[:d]:
            v += c * m
            m *= Q
        return v

    def _pow_poly(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    def _ensure_tables(self) -> None:
        if self._exp is not None:
            return
        with self._lock:
            if self._exp is not None:
                return
            N = self.size
            order = N - 1
            if self.base is None:
                mulf = lambda x, y: x * y % self.p
                powf = lambda x, e: pow(x, e, self.p)
            else:
                mulf, powf = self._mul_poly, self._pow_poly
            qs = prime_factors(order)
            gen = None
            for g in range(1, N):
                if all(powf(g, order // r) != 1 for r in qs):
                    gen = g
                    break
            exp = [1] * order
            for i in range(1, order):
                exp[i] = mulf(exp[i - 1], gen)
            log = [-1] * N
            for i, v in enumerate(exp):
                log[v] = i
            if self.base is not None and self.p != 2 and N <= ADD_TABLE_LIMIT:
                self._add_table = [[self._add_digits(a, b) for b in range(N)] for a in range(N)]
            self._gen = gen
            self._log = log
            self._exp_np = np.asarray(exp, dtype=np.int64)
            self._log_np = np.asarray(log, dtype=np.int64)
            self._exp = exp

    def _add_digits(self, a: int, b: int) -> int:
        p, r, m = self.p, 0, 1
        while a or b:
            r += ((a % p + b % p) % p) * m
            a //= p
            b //= p
            m *= p
        return r

    # -- tables -----------------------------------------------------------------
    @property
    def generator(self) -> int:
        self._ensure_tables()
        return self._gen

    @property
    def exp_table(self) -> np.ndarray:
        self._ensure_tables()
        return self._exp_np

    @property
    def log_table(self) -> np.ndarray:
        """``log_table[v]`` is the discrete log of ``v`` (``-1`` at zero)."""
        self._ensure_tables()
        return self._log_np

    def dlog(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("discrete log of zero")
        self._ensure_tables()
        return self._log[a]

    def digits(self) -> np.ndarray:
        """Base-p digits of every encoding, shape ``(size, abs_degree)``."""
        key = "digits"
        if key not in self._cache:
            v = np.arange(self.size, dtype=np.int64)
            cols = [(v // self.p ** j) % self.p for j in range(self.abs_degree)]
            self._cache[key] = np.stack(cols, axis=1)
        return self._cache[key]

    def trace_table(self, sub: Field) -> np.ndarray:
        """``Tr_{self/sub}`` of every element, as ``sub`` encodings."""
        self.degree_over(sub)
        key = ("trace", id(sub))
        if key not in self._cache:
            # the trace is additive, hence F_p-linear in the digit vector
            D = self.abs_degree
            rows = []
            for j in range(D):
                t = _trace_int(self, self.p ** j, sub)
                rows.append([(t // self.p ** i) % self.p for i in range(sub.abs_degree)])
            M = np.asarray(rows, dtype=np.int64)
            dig = (self.digits() @ M) % self.p
            weights = self.p ** np.arange(sub.abs_degree, dtype=np.int64)
            self._cache[key] = dig @ weights
        return self._cache[key]

    def norm_table(self, sub: Field) -> np.ndarray:
        """``N_{self/sub}`` of every element (zero maps to zero)."""
        self.degree_over(sub)
        key = ("norm", id(sub))
        if key not in self._cache:
            order = self.size - 1
            e = order // (sub.size - 1)
            out = np.zeros(self.size, dtype=np.int64)
            logs = self.log_table[1:]
            out[1:] = self.exp_table[(logs * e) % order]
            self._cache[key] = out
        return self._cache[key]


def _rebuild_field(p, base, degree, modulus):
    if base is None:
        return make_field(p, 1)
    return extension(base, degree, list(modulus))


class FieldElement:
    """An element of a :class:`Field`; immutable, hashable, field-checked."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        self.field = field
        self.value = value

    def _other(self, other) -> int:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field is not self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other.value

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.value, o))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.value, o))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.value, o))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(self.value, o))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, int(e)))

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field is not self.field:
            raise FieldMismatch(f"cannot compare elements of {self.field!r} and {other.field!r}")
        return self.value == other.value

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __repr__(self):
        if self.field.base is None:
            return f"{self.value} (mod {self.field.p})"
        return f"{list(self.coeffs)} in {self.field!r}"


# -- construction ---------------------------------------------------------------

def _intern(key, factory):
    with _registry_lock:
        f = _registry.get(key)
        if f is None:
            f = factory()
            _registry[key] = f
        return f


def make_field(p: int, d: int = 1, poly: Sequence[int] | None = None) -> Field:
    """``F_{p^d}`` as a one-step extension of ``F_p``.

    ``poly`` is the defining polynomial, coefficients low-to-high (monic);
    by default the first monic irreducible in :func:`monic_polys` order.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if d < 1:
        raise ValueError("degree must be positive")
    Fp = _intern((p,), lambda: Field(p, None, 1, (0, 1)))
    if d == 1:
        if poly is not None and (len(poly) != 2 or poly[-1] != 1):
            raise ValueError("a degree-1 defining polynomial must be monic linear")
        return Fp
    return extension(Fp, d, poly)


def extension(base: Field, m: int, poly: Sequence | None = None) -> Field:
    """The degree-``m`` extension ``base[S]/(poly)``; ``m == 1`` returns ``base``."""
    if m < 1:
        raise ValueError("extension degree must be positive")
    if m == 1:
        return base
    if base.size ** m > MAX_FIELD_SIZE:
        raise ScaleExceeded(f"field of {base.size}^{m} elements exceeds {MAX_FIELD_SIZE}")
    if poly is None:
        return _intern((id(base), m, None), lambda: extension(base, m, first_irreducible(base, m)))
    f = tuple(int(c.value if isinstance(c, FieldElement) else c) for c in poly)
    if len(f) != m + 1 or f[-1] != 1:
        raise ValueError(f"defining polynomial must be monic of degree {m}")
    if any(not 0 <= c < base.size for c in f):
        raise ValueError("coefficient out of range for the base field")

    def build():
        if not poly_is_irreducible(base, f):
            raise ReduciblePolynomial(f"{f} is reducible over {base!r}")
        return Field(base.p, base, m, f)

    return _intern((id(base), m, f), build)


def parse_field(desc: str) -> Field:
    """Parse ``p^d[:c0,c1,...,1]`` (or a bare prime ``p``)."""
    desc = desc.strip()
    poly = None
    if ":" in desc:
        desc, cs = desc.split(":", 1)
        poly = [int(c) for c in cs.split(",")]
    if "^" in desc:
        p, d = (int(t) for t in desc.split("^"))
    else:
        p, d = int(desc), 1
    return make_field(p, d, poly)


def field_of_order(q: int) -> Field:
    """The default field with ``q`` elements, ``q`` a prime power."""
    for p in prime_factors(q)[:1]:
        d, r = 0, q
        while r % p == 0:
            r //= p
            d += 1
        if r == 1:
            return make_field(p, d)
    raise NonPrimeCharacteristic(f"{q} is not a prime power")


# -- operations on elements -------------------------------------------------------

def elem_arith(a: FieldElement, b, op: str) -> FieldElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown op {op!r}")


def frobenius(a: FieldElement, base: Field, i: int = 1) -> FieldElement:
    """``a ** (|base| ** i)``."""
    a.field.degree_over(base)
    return FieldElement(a.field, a.field.pow(a.value, base.size ** i))


def _trace_int(F: Field, v: int, sub: Field) -> int:
    cur = F
    while cur is not sub:
        total, x = 0, v
        for _ in range(cur.degree):
            total = cur.add(total, x)
            x = cur.pow(x, cur.base_size)
        assert total < cur.base_size
        v, cur = total, cur.base
    return v


def _norm_int(F: Field, v: int, sub: Field) -> int:
    cur = F
    while cur is not sub:
        total, x = 1, v
        for _ in range(cur.degree):
            total = cur.mul(total, x)
            x = cur.pow(x, cur.base_size)
        assert total < cur.base_size
        v, cur = total, cur.base
    return v


def trace_to(a: FieldElement, base: Field) -> FieldElement:
    a.field.degree_over(base)
    return FieldElement(base, _trace_int(a.field, a.value, base))


def norm_to(a: FieldElement, base: Field) -> FieldElement:
    a.field.degree_over(base)
    return FieldElement(base, _norm_int(a.field, a.value, base))


def primitive_generator(F: Field) -> FieldElement:
    return FieldElement(F, F.generator)


def dlog(F: Field, a: FieldElement) -> int:
    if a.field is not F:
        raise FieldMismatch(f"{a!r} is not in {F!r}")
    return F.dlog(a.value)


def frobenius_orbit(a: FieldElement, base: Field) -> list[FieldElement]:
    F = a.field
    F.degree_over(base)
    orbit = [a.value]
    x = F.pow(a.value, base.size)
    while x != a.value:
        orbit.append(x)
        x = F.pow(x, base.size)
    return [FieldElement(F, v) for v in orbit]


def embed(a: FieldElement, E: Field) -> FieldElement:
    """View ``a`` inside the extension ``E`` of its field."""
    if not E.has_subfield(a.field):
        raise NotASubfield(f"{a.field!r} is not a subfield of {E!r}")
    return FieldElement(E, a.value)


# -- polynomials over a field (tuples of encodings, low-to-high) ------------------

def poly_trim(f: Iterable[int]) -> tuple[int, ...]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def poly_add(F: Field, f, g) -> tuple[int, ...]:
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return poly_trim(F.add(x, y) for x, y in zip(f, g))


def poly_sub(F: Field, f, g) -> tuple[int, ...]:
    return poly_add(F, f, [F.neg(c) for c in g])


def poly_mul(F: Field, f, g) -> tuple[int, ...]:
    if not f or not g:
        return ()
    r = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                if y:
                    r[i + j] = F.add(r[i + j], F.mul(x, y))
    return poly_trim(r)


def poly_scale(F: Field, c: int, f) -> tuple[int, ...]:
    return poly_trim(F.mul(c, x) for x in f)


def poly_divmod(F: Field, f, g) -> tuple[tuple[int, ...], tuple[int, ...]]:
    g = poly_trim(g)
    if not g:
        raise DivisionByZero("polynomial division by zero")
    r = list(poly_trim(f))
    dg = len(g) - 1
    lead_inv = F.inv(g[-1])
    q = [0] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg and r:
        c = F.mul(r[-1], lead_inv)
        shift = len(r) - 1 - dg
        q[shift] = c
        for j, y in enumerate(g):
            r[shift + j] = F.sub(r[shift + j], F.mul(c, y))
        r = list(poly_trim(r))
    return poly_trim(q), tuple(r)


def poly_monic(F: Field, f) -> tuple[int, ...]:
    f = poly_trim(f)
    if not f:
        return f
    return poly_scale(F, F.inv(f[-1]), f)


def poly_gcd(F: Field, f, g) -> tuple[int, ...]:
    """Monic gcd; ``()`` for gcd(0, 0)."""
    f, g = poly_trim(f), poly_trim(g)
    while g:
        f, g = g, poly_divmod(F, f, g)[1]
    return poly_monic(F, f)


def poly_eval(F: Field, f, x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def monic_polys(F: Field, d: int) -> Iterator[tuple[int, ...]]:
    """Monic degree-``d`` polynomials ordered by ``sum c_i |F|^i`` of the lower coefficients."""
    for low in itertools.product(range(F.size), repeat=d):
        yield tuple(reversed(low)) + (1,)


def poly_is_irreducible(F: Field, f) -> bool:
    f = poly_trim(f)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False
    candidates = sum(F.size ** e for e in range(1, d // 2 + 1))
    if candidates > MAX_FACTOR_CANDIDATES:
        raise ScaleExceeded(f"irreducibility search over {candidates} divisors")
    if any(poly_eval(F, f, x) == 0 for x in range(F.size)):
        return False
    for e in range(2, d // 2 + 1):
        for g in monic_polys(F, e):
            if not poly_divmod(F, f, g)[1]:
                return False
    return True


def irreducible_polys(F: Field, d: int) -> list[tuple[int, ...]]:
    return [f for f in monic_polys(F, d) if poly_is_irreducible(F, f)]


def first_irreducible(F: Field, d: int) -> tuple[int, ...]:
    for f in monic_polys(F, d):
        if poly_is_irreducible(F, f):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def format_poly(f, var: str = "T") -> str:
    terms = []
    for i, c in enumerate(f):
        if c == 0:
            continue
        mono = "1" if i == 0 else (var if i == 1 else f"{var}^{i}")
        terms.append(mono if c == 1 and i else f"{c}" + ("" if i == 0 else f"*{mono}"))
    return " + ".join(reversed(terms)) or "0"
