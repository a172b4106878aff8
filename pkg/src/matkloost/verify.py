"""Identity checks: compute both sides of each closed form and compare.

Every check computes its left side by brute-force enumeration over
``GL_n(F_q)`` (or over subspaces for flag counts) and its right side by an
independent closed form.  Parameters that fall outside the hypotheses of a
check are refused with :class:`InvalidHypothesis`.
"""
from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Sequence

from .chars import (AdditiveCharacter, CharacterTuple, MultiplicativeCharacter,
                    hasse_davenport_pair)
from .errors import (EmptyPartition, InvalidHypothesis, MatKloostError, ReduciblePolynomial,
                     ScaleExceeded)
from .flags import (count_fixed_flags_formula, count_fixed_length_k_weak_flags,
                    count_fixed_weak_flags_bruteforce, invariant_subspaces, jordan_over)
from .gf import (Field, FieldElement, extension, field_of_order, first_irreducible,
                 irreducible_polys, parse_field, poly_is_irreducible, poly_trim)
from .glq import (ConjugacyDatum, MatrixFq, block_diagonal, bruteforce_terms, companion_matrix,
                  eigen_disjoint, gl_order, is_regular_elliptic, jordan_matrix,
                  matrix_kloosterman_bruteforce)
from .klscalar import (ENUMERATION_BUDGET, FrobeniusRoots, frobenius_roots, kloosterman_scalar,
                       sym_power_trace)
from .symfunc import (Partition, green_polynomial, modified_hl_eval, modified_hl_monomial_coeffs,
                      partitions_of, q_binomial)

CHECKS = (
    "REG_ELLIPTIC", "SEMISIMPLE", "MULTIPLICATIVITY", "JORDAN_GREEN", "JORDAN_HL", "SYM_POWER",
    "GENERAL_ELEMENT", "K_LAMBDA", "BOUND", "BOUND_GENERAL", "HD_RELATION", "QBINOM",
    "HL_FLAGS", "PURITY",
)
INTEGER_CHECKS = {"QBINOM", "HL_FLAGS"}
NEEDS_K_ABOVE_ONE = {"REG_ELLIPTIC", "SEMISIMPLE", "JORDAN_GREEN", "K_LAMBDA"}

DEFAULT_REL_TOL = 1e-6
DEFAULT_ABS_TOL_PER_TERM = 1e-9

Block = tuple[tuple[int, ...], Partition]


@dataclass(frozen=True)
class CheckSpec:
    """One point of one check.

    Which fields matter depends on ``check``: Jordan-type checks read
    ``poly`` and ``mu``; block checks read ``blocks`` (and ``other_blocks``
    for multiplicativity); the scalar checks read ``a``, ``b`` and ``qa``.
    """

    check: str
    field: str = "2"
    k: int = 2
    alpha: tuple[int, ...] | None = None
    psi: int = 1
    n: int | None = None
    poly: tuple[int, ...] | None = None
    mu: tuple[int, ...] | None = None
    lam: tuple[int, ...] | None = None
    blocks: tuple[Block, ...] | None = None
    other_blocks: tuple[Block, ...] | None = None
    a: int | None = None
    b: int | None = None
    qa: int | None = None
    rel_tol: float | None = None
    abs_tol: float | None = None
    budget: int = ENUMERATION_BUDGET
    workers: int = 1

    def params(self) -> dict[str, Any]:
        out: dict[str, Any] = {"field": self.field, "k": self.k}
        for name in ("alpha", "n", "poly", "mu", "lam", "a", "b", "qa"):
            v = getattr(self, name)
            if v is not None:
                out[name] = list(v) if isinstance(v, tuple) else v
        if self.psi != 1:
            out["psi"] = self.psi
        for name in ("blocks", "other_blocks"):
            v = getattr(self, name)
            if v is not None:
                out[name] = [[list(f), list(m)] for f, m in v]
        return out


@dataclass
class VerificationReport:
    check: str
    params: dict[str, Any]
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    passed: bool | None
    terms: int
    elapsed_ms: float

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        return {
            "check": self.check,
            "params": self.params,
            "lhs": {"re": _fmt(self.lhs.real), "im": _fmt(self.lhs.imag)},
            "rhs": {"re": _fmt(self.rhs.real), "im": _fmt(self.rhs.imag)},
            "abs_err": _fmt(self.abs_err),
            "rel_err": _fmt(self.rel_err),
            "pass": self.passed,
            "terms": self.terms,
            "elapsed_ms": _fmt(self.elapsed_ms) if timing else 0,
        }


def _fmt(x: float) -> float:
    v = float(f"{x:.12g}")
    return 0.0 if v == 0 else v


# ---------------------------------------------------------------------------
# Shared pieces


def eigenvalue(F: Field, f: Sequence[int]) -> FieldElement:
    """The class of ``T`` in ``F[T]/(f)``."""
    f = poly_trim(f)
    if len(f) == 2:
        return FieldElement(F, F.neg(f[0]))
    E = extension(F, len(f) - 1, f)
    return E.from_coeffs([0, 1])


def sign(e: int) -> int:
    return -1 if e % 2 else 1


class Context:
    """Field, characters and tolerances resolved from a :class:`CheckSpec`."""

    def __init__(self, spec: CheckSpec):
        self.spec = spec
        self.F = parse_field(spec.field)
        self.q = self.F.size
        self.k = spec.k
        if spec.k < 1:
            raise InvalidHypothesis("k must be positive")
        if spec.check in NEEDS_K_ABOVE_ONE and spec.k < 2:
            raise InvalidHypothesis(f"{spec.check} needs k >= 2")
        exps = spec.alpha if spec.alpha is not None else (0,) * spec.k
        if len(exps) != spec.k:
            raise InvalidHypothesis(f"alpha has {len(exps)} characters but k = {spec.k}")
        self.alpha = CharacterTuple.from_exponents(self.F, exps)
        self.psi = AdditiveCharacter(self.F, spec.psi)

    def prefactor(self, n: int) -> float:
        """``(-1)^{(k-1) n} q^{(k-1) C(n, 2)}``."""
        return sign((self.k - 1) * n) * float(self.q) ** ((self.k - 1) * math.comb(n, 2))

    def kl(self, xi: FieldElement, m: int) -> complex:
        return kloosterman_scalar(self.alpha, self.psi, xi, m, self.spec.budget)

    def roots(self, xi: FieldElement, a: int) -> FrobeniusRoots:
        key = (id(self.F), self.alpha.exponents, self.psi.b, id(xi.field), xi.value, a)
        if key not in _roots_cache:
            _roots_cache[key] = frobenius_roots(self.alpha, self.psi, xi, a, self.spec.budget)
        return _roots_cache[key]

    def brute(self, x: MatrixFq) -> complex:
        return matrix_kloosterman_bruteforce(self.alpha, self.psi, x, self.spec.workers,
                                             self.spec.budget)

    def jordan_data(self):
        spec = self.spec
        f = spec.poly if spec.poly is not None else (self.F.neg(1) if self.q > 2 else 1, 1)
        f = tuple(f)
        if spec.mu is None:
            raise InvalidHypothesis(f"{spec.check} needs a partition mu")
        mu = Partition(spec.mu)
        if not mu:
            raise InvalidHypothesis("mu must be nonempty")
        if not poly_is_irreducible(self.F, f):
            raise InvalidHypothesis(f"{f} is not irreducible over F_{self.q}")
        a = len(f) - 1
        x = jordan_matrix(companion_matrix(self.F, f), mu)
        return f, mu, a, x, eigenvalue(self.F, f)

    def block_data(self, blocks):
        if not blocks:
            raise InvalidHypothesis("need at least one block")
        try:
            datum = ConjugacyDatum(self.F, tuple((tuple(f), Partition(m)) for f, m in blocks))
        except (ReduciblePolynomial, EmptyPartition, ValueError) as exc:
            raise InvalidHypothesis(str(exc)) from exc
        return datum, datum.matrix()


_roots_cache: dict = {}


def computed_roots() -> list[FrobeniusRoots]:
    """Every root set computed so far in this process."""
    return list(_roots_cache.values())


def purity_error(roots: FrobeniusRoots) -> float:
    w = roots.weight_modulus
    return max(abs(abs(r) - w) / w for r in roots.roots)


# ---------------------------------------------------------------------------
# Closed forms


def k_lambda_jordan(lam: Partition, mu: Partition, a: int, alpha: CharacterTuple,
                    psi: AdditiveCharacter, xi: FieldElement) -> complex:
    """Contribution of cycle type ``lam`` (a partition of ``n = a |mu|``).

    Zero unless every part of ``lam`` is divisible by ``a``; otherwise with
    ``lam = a lam'`` it is
    ``(-1)^{l(lam)(k-1)} q^{(k-1)C(n,2)} Q_{lam'}^mu(q^a) / z_{lam'} prod_j Kl_{lam_j}``.
    """
    lam, mu = Partition(lam), Partition(mu)
    n = a * mu.size
    if lam.size != n:
        from .errors import SizeMismatch
        raise SizeMismatch(f"|{lam}| must equal a|mu| = {n}")
    if any(part % a for part in lam):
        return 0j
    reduced = Partition(part // a for part in lam)
    q, k = psi.field.size, alpha.k
    value = complex(sign(lam.length * (k - 1)) * q ** ((k - 1) * math.comb(n, 2)))
    value *= green_polynomial(reduced, mu)(q ** a) / reduced.z
    for part in lam:
        value *= kloosterman_scalar(alpha, psi, xi, part)
    return value


def jordan_green_rhs(ctx: Context, mu: Partition, a: int, xi: FieldElement) -> complex:
    n = a * mu.size
    total = 0j
    for lam in partitions_of(mu.size):
        term = sign(lam.length * (ctx.k - 1)) * green_polynomial(lam, mu)(ctx.q ** a) / lam.z
        for part in lam:
            term *= ctx.kl(xi, a * part)
        total += term
    return ctx.prefactor(n) * total


def jordan_hl_rhs(ctx: Context, mu: Partition, a: int, xi: FieldElement) -> complex:
    roots = ctx.roots(xi, a)
    return ctx.prefactor(a * mu.size) * modified_hl_eval(mu, roots.roots, ctx.q ** a)


def sym_power_rhs(ctx: Context, b: int, a: int, xi: FieldElement) -> complex:
    return ctx.prefactor(a * b) * sym_power_trace(ctx.roots(xi, a), b)


def general_element_rhs(ctx: Context, datum: ConjugacyDatum) -> complex:
    value = complex(ctx.prefactor(datum.n))
    for f, mu in datum.parts:
        a = len(f) - 1
        roots = ctx.roots(eigenvalue(ctx.F, f), a)
        value *= modified_hl_eval(mu, roots.roots, ctx.q ** a)
    return value


def qbinom_sides(qa: int, b: int) -> tuple[int, int]:
    lhs = sum((-1) ** r * qa ** math.comb(r + 1, 2) * q_binomial(b - 1, r)(qa) for r in range(b))
    rhs = (-1) ** (b - 1) * math.prod(qa ** j - 1 for j in range(1, b))
    return lhs, rhs


# ---------------------------------------------------------------------------
# Runners: each returns (lhs, rhs, terms, extra params) or a full report


def _compare(spec: CheckSpec, lhs: complex, rhs: complex, terms: int, extra: dict,
             start: float, exact: bool = False) -> VerificationReport:
    lhs, rhs = complex(lhs), complex(rhs)
    diff = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    rel = diff / scale if scale else 0.0
    if exact:
        passed = lhs == rhs
    else:
        rel_tol = spec.rel_tol if spec.rel_tol is not None else DEFAULT_REL_TOL
        abs_tol = spec.abs_tol if spec.abs_tol is not None else DEFAULT_ABS_TOL_PER_TERM * max(terms, 1)
        passed = diff <= max(abs_tol, rel_tol * scale)
    params = spec.params()
    params.update(extra)
    return VerificationReport(spec.check, params, lhs, rhs, diff, rel, bool(passed), terms,
                              (time.perf_counter() - start) * 1000)


def _run_reg_elliptic(spec, ctx, start):
    f = spec.poly
    if f is None:
        if spec.n is None:
            raise InvalidHypothesis("REG_ELLIPTIC needs poly or n")
        f = first_irreducible(ctx.F, spec.n)
    f = tuple(f)
    if not poly_is_irreducible(ctx.F, f):
        raise InvalidHypothesis(f"{f} is not irreducible, so x is not regular elliptic")
    x = companion_matrix(ctx.F, f)
    if not is_regular_elliptic(x):
        raise InvalidHypothesis("x is not regular elliptic")
    n = x.n
    xi = eigenvalue(ctx.F, f)
    lhs = ctx.brute(x)
    rhs = sign((n + 1) * (ctx.k - 1)) * float(ctx.q) ** ((ctx.k - 1) * math.comb(n, 2)) * ctx.kl(xi, n)
    return _compare(spec, lhs, rhs, bruteforce_terms(x, ctx.k), {"poly": list(f), "n": n}, start)


def _run_semisimple(spec, ctx, start):
    datum, x = ctx.block_data(spec.blocks)
    if any(tuple(m) != (1,) for _, m in datum.parts):
        raise InvalidHypothesis("SEMISIMPLE blocks must all carry the partition (1)")
    n, s = datum.n, len(datum.parts)
    rhs = complex(sign((n + s) * (ctx.k - 1)) * float(ctx.q) ** ((ctx.k - 1) * math.comb(n, 2)))
    for f, _ in datum.parts:
        rhs *= ctx.kl(eigenvalue(ctx.F, f), len(f) - 1)
    return _compare(spec, ctx.brute(x), rhs, bruteforce_terms(x, ctx.k), {"n": n}, start)


def _run_multiplicativity(spec, ctx, start):
    _, x1 = ctx.block_data(spec.blocks)
    _, x2 = ctx.block_data(spec.other_blocks)
    if not eigen_disjoint(x1, x2):
        raise InvalidHypothesis("the two blocks share an eigenvalue")
    x = block_diagonal(x1, x2)
    lhs = ctx.brute(x)
    rhs = float(ctx.q) ** ((ctx.k - 1) * x1.n * x2.n) * ctx.brute(x1) * ctx.brute(x2)
    terms = sum(bruteforce_terms(m, ctx.k) for m in (x, x1, x2))
    return _compare(spec, lhs, rhs, terms, {"n": x.n}, start)


def _run_jordan(spec, ctx, start):
    f, mu, a, x, xi = ctx.jordan_data()
    n = x.n
    extra = {"poly": list(f), "mu": list(mu), "a": a, "b": mu.size, "n": n}
    check = spec.check
    lhs = ctx.brute(x)
    if check == "JORDAN_GREEN":
        rhs = jordan_green_rhs(ctx, mu, a, xi)
    elif check == "JORDAN_HL":
        rhs = jordan_hl_rhs(ctx, mu, a, xi)
    elif check == "SYM_POWER":
        if len(mu) != 1:
            raise InvalidHypothesis("SYM_POWER needs mu = (b)")
        rhs = sym_power_rhs(ctx, mu.size, a, xi)
    else:  # K_LAMBDA
        rhs = sign((ctx.k - 1) * n) * sum(
            k_lambda_jordan(lam, mu, a, ctx.alpha, ctx.psi, xi) for lam in partitions_of(n))
    return _compare(spec, lhs, rhs, bruteforce_terms(x, ctx.k), extra, start)


def _run_general(spec, ctx, start):
    datum, x = ctx.block_data(spec.blocks)
    rhs = general_element_rhs(ctx, datum)
    return _compare(spec, ctx.brute(x), rhs, bruteforce_terms(x, ctx.k), {"n": datum.n}, start)


def _bound_report(spec, ctx, start, lhs, bound, terms, extra, exact_ok=True):
    excess = max(0.0, abs(lhs) - bound)
    abs_tol = spec.abs_tol if spec.abs_tol is not None else DEFAULT_ABS_TOL_PER_TERM * max(terms, 1)
    params = spec.params()
    params.update(extra)
    return VerificationReport(spec.check, params, complex(abs(lhs)), complex(bound), excess,
                              excess / bound if bound else 0.0,
                              bool(excess <= abs_tol and exact_ok), terms,
                              (time.perf_counter() - start) * 1000)


def _run_bound(spec, ctx, start):
    f, mu, a, x, _ = ctx.jordan_data()
    n, k = x.n, ctx.k
    flags = count_fixed_length_k_weak_flags(mu, ctx.q ** a, k)
    bound = float(ctx.q) ** ((k - 1) * n * n / 2) * flags
    extra = {"poly": list(f), "mu": list(mu), "a": a, "b": mu.size, "n": n, "flag_count": flags}
    exact_ok = True
    if len(mu) == 1:
        binom = math.comb(mu.size + k - 1, mu.size)
        extra["binomial"] = binom
        exact_ok = flags == binom
    return _bound_report(spec, ctx, start, ctx.brute(x), bound, bruteforce_terms(x, k), extra, exact_ok)


def _run_bound_general(spec, ctx, start):
    datum, x = ctx.block_data(spec.blocks)
    k = ctx.k
    flags = 1
    for f, mu in datum.parts:
        flags *= count_fixed_length_k_weak_flags(mu, ctx.q ** (len(f) - 1), k)
    bound = float(ctx.q) ** ((k - 1) * datum.n ** 2 / 2) * flags
    return _bound_report(spec, ctx, start, ctx.brute(x), bound, bruteforce_terms(x, k),
                         {"n": datum.n, "flag_count": flags})


def _run_hd(spec, ctx, start):
    a = spec.a or 1
    b = spec.b or 2
    E = extension(ctx.F, a)
    worst = None
    terms = 0
    for c in range(E.size - 1):
        theta = MultiplicativeCharacter(E, c)
        for d in range(ctx.q - 1):
            chi = MultiplicativeCharacter(ctx.F, d)
            lhs, rhs = hasse_davenport_pair(theta, chi, ctx.psi, b)
            terms += (E.size - 1) + (E.size ** b - 1)
            if worst is None or abs(lhs - rhs) > abs(worst[0] - worst[1]):
                worst = (lhs, rhs, c, d)
    lhs, rhs, c, d = worst
    extra = {"a": a, "b": b, "worst_theta": c, "worst_chi": d}
    return _compare(spec, lhs, rhs, terms, extra, start)


def _run_qbinom(spec, ctx, start):
    qa = spec.qa if spec.qa is not None else ctx.q ** (spec.a or 1)
    b = spec.b or 1
    lhs, rhs = qbinom_sides(qa, b)
    return _compare(spec, lhs, rhs, b, {"qa": qa, "b": b}, start, exact=True)


def _run_hl_flags(spec, ctx, start):
    qa = spec.qa if spec.qa is not None else ctx.q
    if spec.mu is None or spec.lam is None:
        raise InvalidHypothesis("HL_FLAGS needs mu and lam")
    mu, lam = Partition(spec.mu), Partition(spec.lam)
    g = jordan_over(qa, mu)
    brute = count_fixed_weak_flags_bruteforce(lam, g)
    formula = count_fixed_flags_formula(mu, lam, qa)
    coeff = modified_hl_monomial_coeffs(mu, max(mu.size, 1), qa)[lam]
    report = _compare(spec, brute, coeff, 1, {"qa": qa, "formula": formula}, start, exact=True)
    report.passed = report.passed and brute == formula
    return report


def _run_purity(spec, ctx, start):
    f = tuple(spec.poly) if spec.poly is not None else (ctx.F.neg(1) if ctx.q > 2 else 1, 1)
    if not poly_is_irreducible(ctx.F, f):
        raise InvalidHypothesis(f"{f} is not irreducible")
    a = spec.a if spec.a is not None else len(f) - 1
    if a % (len(f) - 1):
        raise InvalidHypothesis("a must be a multiple of the eigenvalue degree")
    roots = ctx.roots(eigenvalue(ctx.F, f), a)
    w = roots.weight_modulus
    worst = max(roots.roots, key=lambda r: abs(abs(r) - w))
    return _compare(spec, abs(worst), w, 1, {"poly": list(f), "a": a}, start)


_RUNNERS = {
    "REG_ELLIPTIC": _run_reg_elliptic,
    "SEMISIMPLE": _run_semisimple,
    "MULTIPLICATIVITY": _run_multiplicativity,
    "JORDAN_GREEN": _run_jordan,
    "JORDAN_HL": _run_jordan,
    "SYM_POWER": _run_jordan,
    "K_LAMBDA": _run_jordan,
    "GENERAL_ELEMENT": _run_general,
    "BOUND": _run_bound,
    "BOUND_GENERAL": _run_bound_general,
    "HD_RELATION": _run_hd,
    "QBINOM": _run_qbinom,
    "HL_FLAGS": _run_hl_flags,
    "PURITY": _run_purity,
}


def run_check(spec: CheckSpec) -> VerificationReport:
    """Run one check point; raises InvalidHypothesis or ScaleExceeded."""
    if spec.check not in _RUNNERS:
        raise InvalidHypothesis(f"unknown check {spec.check!r}")
    start = time.perf_counter()
    ctx = Context(spec)
    return _RUNNERS[spec.check](spec, ctx, start)


def skipped_report(spec: CheckSpec, reason: str) -> VerificationReport:
    params = spec.params()
    params["skipped"] = reason
    return VerificationReport(spec.check, params, 0j, 0j, 0.0, 0.0, None, 0, 0.0)


def _run_isolated(spec: CheckSpec) -> VerificationReport:
    try:
        return run_check(spec)
    except (ScaleExceeded, InvalidHypothesis) as exc:
        return skipped_report(spec, f"{type(exc).__name__}: {exc}")
    except MatKloostError as exc:
        report = skipped_report(spec, f"{type(exc).__name__}: {exc}")
        report.passed = False
        return report


def sweep(specs: Iterable[CheckSpec], workers: int = 1) -> list[VerificationReport]:
    """Run every point in order; a failing point never aborts the rest."""
    specs = list(specs)
    if workers <= 1 or len(specs) <= 1:
        return [_run_isolated(s) for s in specs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_isolated, specs))


def expand_grid(checks: Sequence[str], grid: dict[str, Sequence]) -> list[CheckSpec]:
    """Cartesian product of ``grid`` values, once per check."""
    keys = list(grid)
    out = []
    for check in checks:
        for values in itertools.product(*(grid[k] for k in keys)):
            out.append(CheckSpec(check, **dict(zip(keys, values))))
    return out


def summarize(reports: Sequence[VerificationReport]) -> dict[str, Any]:
    ran = [r for r in reports if r.passed is not None]
    return {
        "points": len(reports),
        "passed": sum(1 for r in ran if r.passed),
        "failed": sum(1 for r in ran if not r.passed),
        "skipped": len(reports) - len(ran),
        "max_rel_err": _fmt(max((r.rel_err for r in ran), default=0.0)),
        "total_terms": sum(r.terms for r in reports),
    }


# ---------------------------------------------------------------------------
# The acceptance grid


def _field_desc(q: int) -> str:
    F = field_of_order(q)
    return F.descriptor


def reg_elliptic_points() -> list[CheckSpec]:
    out = []
    for q, n, k, alpha in [(2, 2, 2, None), (2, 3, 2, None), (3, 2, 2, None), (2, 2, 3, None),
                           (3, 2, 2, (1, 0)), (5, 2, 2, None)]:
        F = field_of_order(q)
        for f in irreducible_polys(F, n):
            out.append(CheckSpec("REG_ELLIPTIC", field=_field_desc(q), k=k, alpha=alpha, poly=f))
    return out


def jordan_points() -> list[tuple[int, tuple[int, ...], Partition, int]]:
    """``(q, poly, mu, k)`` for the three-way Jordan comparison."""
    out = []
    for q, a, b, k in [(2, 1, 2, 2), (2, 1, 3, 2), (3, 1, 2, 2), (2, 2, 2, 2), (2, 1, 2, 3)]:
        F = field_of_order(q)
        f = first_irreducible(F, a) if a > 1 else ((F.neg(1) if q > 2 else 1), 1)
        for mu in partitions_of(b):
            out.append((q, f, mu, k))
    return out


def jordan_specs(check: str) -> list[CheckSpec]:
    return [CheckSpec(check, field=_field_desc(q), k=k, poly=f, mu=tuple(mu))
            for q, f, mu, k in jordan_points()]


def sym_power_specs() -> list[CheckSpec]:
    return [s for s in jordan_specs("SYM_POWER") if len(s.mu) == 1]


MULTIPLICATIVITY_PAIRS = (
    # 1 + 2: the unit eigenvalue against the quadratic elliptic block
    (((1, 1), (1,)),), (((1, 1, 1), (1,)),),
    # 2 + 2: elliptic quadratic against a unipotent Jordan block
    (((1, 1, 1), (1,)),), (((1, 1), (2,)),),
    # 2 + 2: elliptic quadratic against the scalar identity
    (((1, 1, 1), (1,)),), (((1, 1), (1, 1)),),
)


def multiplicativity_specs() -> list[CheckSpec]:
    pairs = MULTIPLICATIVITY_PAIRS
    return [CheckSpec("MULTIPLICATIVITY", field="2", k=2, blocks=pairs[i], other_blocks=pairs[i + 1])
            for i in range(0, len(pairs), 2)]


def general_element_specs() -> list[CheckSpec]:
    return [CheckSpec("GENERAL_ELEMENT", field="2", k=2,
                      blocks=(((1, 1), Partition((2,))), ((1, 1, 1), Partition((1,)))))]


def bound_specs() -> list[CheckSpec]:
    out = []
    for s in reg_elliptic_points():
        out.append(CheckSpec("BOUND", field=s.field, k=s.k, alpha=s.alpha, poly=s.poly, mu=(1,)))
    out += jordan_specs("BOUND")
    for s in multiplicativity_specs():
        out.append(CheckSpec("BOUND_GENERAL", field=s.field, k=s.k,
                             blocks=tuple(s.blocks) + tuple(s.other_blocks)))
    for s in general_element_specs():
        out.append(CheckSpec("BOUND_GENERAL", field=s.field, k=s.k, blocks=s.blocks))
    return out


def hd_specs() -> list[CheckSpec]:
    return [CheckSpec("HD_RELATION", field=_field_desc(q), k=1, a=a, b=b, rel_tol=1e-9, abs_tol=1e-9)
            for q, a, b in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (3, 2, 2)]]


def qbinom_specs() -> list[CheckSpec]:
    return [CheckSpec("QBINOM", k=1, qa=qa, b=b)
            for qa in (2, 3, 4, 5, 8, 9) for b in range(1, 7)]


def hl_flags_specs() -> list[CheckSpec]:
    return [CheckSpec("HL_FLAGS", k=1, qa=qa, mu=tuple(mu), lam=tuple(lam))
            for qa in (2, 3, 4) for b in range(1, 5)
            for mu in partitions_of(b) for lam in partitions_of(b)]


def acceptance_specs() -> list[CheckSpec]:
    specs = reg_elliptic_points()
    specs += jordan_specs("JORDAN_GREEN") + jordan_specs("JORDAN_HL") + jordan_specs("K_LAMBDA")
    specs += sym_power_specs()
    specs += multiplicativity_specs() + general_element_specs()
    specs += bound_specs() + hd_specs() + qbinom_specs() + hl_flags_specs()
    return specs
