"""Command-line front end: ``compute``, ``verify`` and ``sweep``.

Exit codes: 0 when everything passes, 1 when an identity fails, 2 for usage
errors or parameters outside a check's hypotheses, 3 when a computation
would exceed its size budget.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
from dataclasses import replace
from typing import Any, Sequence

from . import __version__
from .chars import AdditiveCharacter, CharacterTuple, MultiplicativeCharacter, gauss_sum
from .errors import InvalidHypothesis, MatKloostError, ScaleExceeded
from .flags import (count_fixed_flags_formula, count_fixed_length_k_weak_flags,
                    count_fixed_weak_flags_bruteforce, jordan_over)
from .gf import Field, FieldElement, extension, irreducible_polys, parse_field
from .glq import (MatrixFq, bruteforce_terms, companion_matrix, jordan_matrix,
                  matrix_kloosterman_bruteforce)
from .klscalar import ENUMERATION_BUDGET, frobenius_roots, kloosterman_scalar, kloosterman_terms
from .symfunc import (Partition, green_polynomial, kostka_foulkes, modified_hl_eval,
                      modified_hl_monomial_coeffs)
from .verify import (CHECKS, CheckSpec, VerificationReport, acceptance_specs, eigenvalue,
                     run_check, summarize, sweep)

BUDGET_ENV = "MATKLOOST_BUDGET"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SCALE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Argument parsing helpers


def parse_ints(text: str) -> tuple[int, ...]:
    text = text.strip().strip("()[]")
    return tuple(int(x) for x in text.split(",") if x.strip()) if text else ()


def parse_element(F: Field, text: str) -> FieldElement:
    """An integer encoding, or a coefficient list like ``[0,1]``."""
    text = text.strip()
    if text.startswith("[") or "," in text:
        return F.from_coeffs(json.loads(text if text.startswith("[") else f"[{text}]"))
    return F(int(text))


def parse_block(text: str) -> tuple[tuple[int, ...], Partition]:
    """``c0,...,1:partition``."""
    if ":" not in text:
        raise UsageError(f"block {text!r} must look like 'c0,...,1:partition'")
    poly, part = text.split(":", 1)
    return parse_ints(poly), Partition.parse(part)


def parse_matrix(F: Field, text: str) -> MatrixFq:
    """``companion:<poly>``, ``jordan:<poly>:<partition>`` or a JSON list of rows."""
    text = text.strip()
    if text.startswith("companion:"):
        return companion_matrix(F, parse_ints(text[len("companion:"):]))
    if text.startswith("jordan:"):
        _, poly, part = text.split(":", 2)
        return jordan_matrix(companion_matrix(F, parse_ints(poly)), Partition.parse(part))
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"cannot parse matrix {text!r}") from exc
    return MatrixFq(F, rows)


def env_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return ENUMERATION_BUDGET
    try:
        return int(float(raw))
    except ValueError as exc:
        raise UsageError(f"{BUDGET_ENV}={raw!r} is not a number") from exc


def complex_json(z: complex) -> dict[str, float]:
    return {"re": _fmt(z.real), "im": _fmt(z.imag)}


def _fmt(x: float) -> float:
    v = float(f"{x:.12g}")
    return 0.0 if v == 0 else v


def pretty_complex(z: complex) -> str:
    re, im = _fmt(z.real), _fmt(z.imag)
    if abs(im) < 1e-9 * max(1.0, abs(re)):
        return f"{re:.12g}"
    return f"{re:.12g}{im:+.12g}i"


# ---------------------------------------------------------------------------
# compute


def _characters(args, F: Field) -> CharacterTuple:
    if args.alpha:
        return CharacterTuple.from_exponents(F, parse_ints(args.alpha))
    return CharacterTuple.trivial(F, args.k)


def compute(args) -> dict[str, Any]:
    what = args.what
    budget = args.budget
    if what in ("green", "kostka-foulkes"):
        if what == "green":
            lam, mu = Partition.parse(_need(args.lam, "--lambda")), Partition.parse(_need(args.mu, "--mu"))
            poly = green_polynomial(lam, mu)
            params = {"lambda": list(lam), "mu": list(mu)}
        else:
            rho, mu = Partition.parse(_need(args.rho, "--rho")), Partition.parse(_need(args.mu, "--mu"))
            poly = kostka_foulkes(rho, mu)
            params = {"rho": list(rho), "mu": list(mu)}
        return {"quantity": what, "params": params, "value": str(poly),
                "coefficients": list(poly.coeffs), "terms": 0}
    if what == "flags":
        mu = Partition.parse(_need(args.mu, "--mu"))
        qa = int(_need(args.qa, "--qa"))
        if args.lam is None:
            value = count_fixed_length_k_weak_flags(mu, qa, args.k)
            return {"quantity": "flags", "params": {"mu": list(mu), "qa": qa, "k": args.k},
                    "value": value, "terms": 0}
        lam = Partition.parse(args.lam)
        value = count_fixed_flags_formula(mu, lam, qa)
        out = {"quantity": "flags", "params": {"mu": list(mu), "lambda": list(lam), "qa": qa},
               "value": value, "terms": 0}
        if args.bruteforce:
            out["bruteforce"] = count_fixed_weak_flags_bruteforce(lam, jordan_over(qa, mu))
        return out
    if what == "hl":
        mu = Partition.parse(_need(args.mu, "--mu"))
        if args.points:
            pts = [complex(p.replace("i", "j")) for p in args.points.split(",")]
            t = complex(args.t.replace("i", "j")) if args.t else 0j
            return {"quantity": "hl", "params": {"mu": list(mu), "points": args.points, "t": args.t},
                    "value": complex_json(modified_hl_eval(mu, pts, t)), "terms": 0}
        t = int(_need(args.t, "--t"))
        coeffs = modified_hl_monomial_coeffs(mu, args.k, t)
        return {"quantity": "hl", "params": {"mu": list(mu), "k": args.k, "t": t},
                "value": {str(lam): c for lam, c in coeffs.items()}, "terms": 0}

    F = parse_field(args.field)
    psi = AdditiveCharacter(F, args.psi)
    if what == "gauss":
        a = args.a or 1
        E = extension(F, a)
        theta = MultiplicativeCharacter(E, args.theta or 0)
        chi = MultiplicativeCharacter(F, args.chi or 0)
        return {"quantity": "gauss", "params": {"field": F.descriptor, "a": a, "theta": theta.c,
                                                "chi": chi.c},
                "value": complex_json(gauss_sum(theta, chi, psi)), "terms": E.size - 1}
    alpha = _characters(args, F)
    if what == "kl-matrix":
        x = parse_matrix(F, _need(args.matrix, "--matrix"))
        value = matrix_kloosterman_bruteforce(alpha, psi, x, args.workers, budget)
        return {"quantity": what, "params": {"field": F.descriptor, "alpha": list(alpha.exponents),
                                             "matrix": [list(r) for r in x.rows]},
                "value": complex_json(value), "terms": bruteforce_terms(x, alpha.k)}
    if args.poly:
        xi = eigenvalue(F, parse_ints(args.poly))
    else:
        X = extension(F, args.xi_degree)
        xi = parse_element(X, _need(args.xi, "--xi"))
    params = {"field": F.descriptor, "alpha": list(alpha.exponents), "xi": list(xi.coeffs)}
    if what == "kl-scalar":
        m = args.m or xi.field.degree_over(F)
        value = kloosterman_scalar(alpha, psi, xi, m, budget)
        params["m"] = m
        return {"quantity": what, "params": params, "value": complex_json(value),
                "terms": kloosterman_terms(alpha, xi, m)}
    if what == "roots":
        a = args.a or xi.field.degree_over(F)
        r = frobenius_roots(alpha, psi, xi, a, budget)
        params["a"] = a
        return {"quantity": what, "params": params,
                "value": [complex_json(w) for w in r.roots],
                "l_coeffs": [complex_json(c) for c in r.l_coeffs],
                "moduli": [_fmt(abs(w)) for w in r.roots],
                "terms": sum(kloosterman_terms(alpha, xi, a * m) for m in range(1, alpha.k + 1))}
    raise UsageError(f"unknown quantity {what!r}")


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"missing {flag}")
    return value


def render_compute(result: dict[str, Any], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, sort_keys=True)
    value = result["value"]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["quantity", "value", "terms"])
        w.writerow([result["quantity"], json.dumps(value, sort_keys=True), result["terms"]])
        return buf.getvalue().rstrip("\n")
    if isinstance(value, dict) and set(value) == {"re", "im"}:
        return pretty_complex(complex(value["re"], value["im"]))
    if isinstance(value, list) and value and isinstance(value[0], dict):
        return "\n".join(pretty_complex(complex(v["re"], v["im"])) for v in value)
    if isinstance(value, dict):
        return "\n".join(f"{k}: {v}" for k, v in value.items())
    return str(value)


# ---------------------------------------------------------------------------
# verify / sweep


def _blocks(items: Sequence[str] | None):
    return tuple(parse_block(b) for b in items) if items else None


def build_specs(checks: Sequence[str], args) -> list[CheckSpec]:
    """Cartesian product of the grid flags, once per check."""
    for c in checks:
        if c not in CHECKS:
            raise UsageError(f"unknown check {c!r}; choose from {', '.join(CHECKS)}")
    fields = args.field or ["2"]
    ks = args.k or [None]
    alphas = [parse_ints(a) for a in args.alpha] if args.alpha else [None]
    mus = [tuple(Partition.parse(m)) for m in args.mu] if args.mu else [None]
    lams = [tuple(Partition.parse(m)) for m in args.lam] if args.lam else [None]
    polys = [parse_ints(p) for p in args.poly] if args.poly else [None]
    ns = args.n or [None]
    qas = args.qa or [None]
    a_s = args.a or [None]
    bs = args.b or [None]
    specs = []
    for check in checks:
        for fd, k, al, mu, lam, poly, n, qa, a, b in itertools.product(
                fields, ks, alphas, mus, lams, polys, ns, qas, a_s, bs):
            if k is None:
                k = len(al) if al else (1 if check in ("QBINOM", "HL_FLAGS", "HD_RELATION") else 2)
            base = dict(check=check, field=fd, k=k, alpha=al, psi=args.psi, mu=mu, lam=lam,
                        a=a, b=b, qa=qa, blocks=_blocks(args.block),
                        other_blocks=_blocks(args.other_block), rel_tol=args.rel_tol,
                        abs_tol=args.abs_tol, budget=args.budget, workers=args.workers)
            if poly is None and n is not None and check in ("REG_ELLIPTIC", "BOUND", "PURITY"):
                F = parse_field(fd)
                for f in irreducible_polys(F, n):
                    extra = {"mu": mu or (1,)} if check == "BOUND" else {}
                    specs.append(CheckSpec(**{**base, "poly": f, **extra}))
                continue
            specs.append(CheckSpec(**base, poly=poly, n=n))
    return specs


def render_reports(reports: Sequence[VerificationReport], fmt: str, timing: bool) -> str:
    dicts = [r.to_dict(timing) for r in reports]
    if fmt == "json":
        lines = [json.dumps(d, sort_keys=True) for d in dicts]
        lines.append(json.dumps({"summary": summarize(reports)}, sort_keys=True))
        return "\n".join(lines)
    if fmt == "csv":
        keys = sorted({k for d in dicts for k in d["params"]})
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", *[f"param_{k}" for k in keys], "lhs_re", "lhs_im", "rhs_re",
                    "rhs_im", "abs_err", "rel_err", "pass", "terms", "elapsed_ms"])
        for d in dicts:
            w.writerow([d["check"],
                        *[_csv_cell(d["params"].get(k, "")) for k in keys],
                        d["lhs"]["re"], d["lhs"]["im"], d["rhs"]["re"], d["rhs"]["im"],
                        d["abs_err"], d["rel_err"], d["pass"], d["terms"], d["elapsed_ms"]])
        return buf.getvalue().rstrip("\n")
    out = []
    for r in reports:
        status = "SKIP" if r.passed is None else ("PASS" if r.passed else "FAIL")
        shown = {k: v for k, v in r.params.items() if k not in ("field", "k")}
        out.append(f"{status} {r.check:<17} F={r.params.get('field')} k={r.params.get('k')} "
                   f"{json.dumps(shown, sort_keys=True)}  lhs={pretty_complex(r.lhs)} "
                   f"rhs={pretty_complex(r.rhs)} rel_err={r.rel_err:.3g}")
    s = summarize(reports)
    out.append(f"{s['passed']} passed, {s['failed']} failed, {s['skipped']} skipped "
               f"of {s['points']}; max rel err {s['max_rel_err']:.3g}")
    return "\n".join(out)


def _csv_cell(v) -> str:
    return v if isinstance(v, str) else json.dumps(v)


def _exit_for(reports: Sequence[VerificationReport]) -> int:
    return EXIT_FAIL if any(r.passed is False for r in reports) else EXIT_OK


# ---------------------------------------------------------------------------
# Parser and entry point


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    p.add_argument("--workers", type=int, default=1, help="worker processes for brute force")
    p.add_argument("--no-timing", action="store_true",
                   help="report elapsed_ms as 0 so repeated runs are byte-identical")
    p.add_argument("--psi", type=int, default=1, help="twist of the additive character")


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", action="append", help="p^d[:c0,...,1]; repeat for a grid")
    p.add_argument("--k", action="append", type=int)
    p.add_argument("--n", action="append", type=int)
    p.add_argument("--alpha", action="append", help="character exponents c1,...,ck")
    p.add_argument("--poly", action="append", help="eigenvalue polynomial c0,...,1")
    p.add_argument("--mu", action="append")
    p.add_argument("--lambda", dest="lam", action="append")
    p.add_argument("--a", action="append", type=int)
    p.add_argument("--b", action="append", type=int)
    p.add_argument("--qa", action="append", type=int)
    p.add_argument("--block", action="append", help="poly:partition, once per block")
    p.add_argument("--other-block", action="append", help="blocks of the second matrix")
    p.add_argument("--rel-tol", type=float)
    p.add_argument("--abs-tol", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matkloost", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute a single quantity")
    c.add_argument("what", choices=("kl-scalar", "kl-matrix", "gauss", "roots", "hl", "green",
                                    "kostka-foulkes", "flags"))
    _add_common(c)
    c.add_argument("--field", default="2")
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--alpha")
    c.add_argument("--xi", help="integer encoding or coefficient list")
    c.add_argument("--xi-degree", type=int, default=1, help="degree of the field holding xi")
    c.add_argument("--poly", help="take xi as the class of T modulo this polynomial")
    c.add_argument("--m", type=int, help="level of the scalar sum")
    c.add_argument("--a", type=int)
    c.add_argument("--matrix")
    c.add_argument("--theta", type=int)
    c.add_argument("--chi", type=int)
    c.add_argument("--mu")
    c.add_argument("--lambda", dest="lam")
    c.add_argument("--rho")
    c.add_argument("--qa", type=int)
    c.add_argument("--t")
    c.add_argument("--points", help="comma-separated complex numbers, e.g. 1,0.5+2j")
    c.add_argument("--bruteforce", action="store_true", help="also count flags by enumeration")

    v = sub.add_parser("verify", help="check identities; stops on invalid parameters")
    v.add_argument("checks", nargs="*", help=f"check ids: {', '.join(CHECKS)}")
    v.add_argument("--suite", choices=("acceptance",))
    _add_common(v)
    _add_grid(v)

    s = sub.add_parser("sweep", help="check identities over a grid, skipping invalid points")
    s.add_argument("--checks", required=True, help="comma-separated check ids")
    _add_common(s)
    _add_grid(s)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        args.budget = env_budget()
        if args.command == "compute":
            print(render_compute(compute(args), args.format))
            return EXIT_OK
        timing = not args.no_timing
        if args.command == "verify":
            if args.suite == "acceptance":
                specs = [s if args.workers <= 1 else _with_workers(s, args.workers)
                         for s in acceptance_specs()]
            elif args.checks:
                specs = build_specs(args.checks, args)
            else:
                raise UsageError("name at least one check or pass --suite acceptance")
            reports = [run_check(s) for s in specs]
        else:
            specs = build_specs([c for c in args.checks.split(",") if c], args)
            reports = sweep(specs, args.workers)
        print(render_reports(reports, args.format, timing))
        return _exit_for(reports)
    except (UsageError, InvalidHypothesis, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScaleExceeded as exc:
        print(f"scale exceeded: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except MatKloostError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _with_workers(spec: CheckSpec, workers: int) -> CheckSpec:
    return replace(spec, workers=workers)


def main_exit() -> None:
    sys.exit(main())
