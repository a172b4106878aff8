import json

import pytest

from matkloost.chars import AdditiveCharacter, CharacterTuple
from matkloost.errors import InvalidHypothesis, ScaleExceeded, SizeMismatch
from matkloost.gf import first_irreducible, make_field
from matkloost.klscalar import kloosterman_scalar
from matkloost.symfunc import Partition, partitions_of
from matkloost.verify import (CHECKS, CheckSpec, Context, eigenvalue, expand_grid,
                              jordan_green_rhs, k_lambda_jordan, qbinom_sides, run_check, summarize, sweep)

P = Partition
REPORT_KEYS = {"check", "params", "lhs", "rhs", "abs_err", "rel_err", "pass", "terms", "elapsed_ms"}


def test_reg_elliptic_example():
    r = run_check(CheckSpec("REG_ELLIPTIC", field="2", k=2, poly=(1, 1, 1)))
    assert r.passed
    assert r.lhs == pytest.approx(2) and r.rhs == pytest.approx(2)
    assert r.terms == 6


def test_reg_elliptic_by_degree():
    r = run_check(CheckSpec("REG_ELLIPTIC", field="2", k=2, n=3))
    assert r.passed and r.params["n"] == 3


def test_multiplicativity_example():
    r = run_check(CheckSpec("MULTIPLICATIVITY", field="2", k=2, blocks=(((1, 1), (1,)),),
                            other_blocks=(((1, 1, 1), (1,)),)))
    assert r.passed
    assert r.abs_err <= 1e-9


def test_jordan_hl_example():
    r = run_check(CheckSpec("JORDAN_HL", field="2", k=2, poly=(1, 1), mu=(2,)))
    assert r.passed and r.terms == 6


@pytest.mark.parametrize("q,k", [(2, 2), (3, 2), (2, 3), (5, 2)])
def test_sign_consistency_at_a_single_box(q, k):
    field = str(q)
    poly = (1, 1, 1) if q == 2 else None
    if poly is None:
        poly = first_irreducible(make_field(q), 2)
    reg = run_check(CheckSpec("REG_ELLIPTIC", field=field, k=k, poly=poly))
    hl = run_check(CheckSpec("JORDAN_HL", field=field, k=k, poly=poly, mu=(1,)))
    assert reg.passed and hl.passed
    assert hl.rhs == pytest.approx(reg.rhs, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("field,poly,mu", [("2", (1, 1), (2,)), ("2", (1, 1), (1, 1)),
                                           ("3", (2, 1), (2,)), ("2", (1, 1, 1), (2,))])
def test_green_and_hl_routes_agree(field, poly, mu):
    g = run_check(CheckSpec("JORDAN_GREEN", field=field, k=2, poly=poly, mu=mu))
    h = run_check(CheckSpec("JORDAN_HL", field=field, k=2, poly=poly, mu=mu))
    assert g.passed and h.passed
    assert abs(g.rhs - h.rhs) <= 1e-6 * max(1.0, abs(g.rhs))


def test_k_lambda_single_box():
    F = make_field(3)
    psi = AdditiveCharacter(F)
    for k in (2, 3):
        alpha = CharacterTuple.trivial(F, k)
        xi = F(2)
        expected = (-1) ** (k - 1) * kloosterman_scalar(alpha, psi, xi)
        assert k_lambda_jordan(P((1,)), P((1,)), 1, alpha, psi, xi) == pytest.approx(expected)


def test_k_lambda_vanishes_off_multiples():
    F = make_field(2)
    alpha = CharacterTuple.trivial(F, 2)
    psi = AdditiveCharacter(F)
    xi = eigenvalue(F, (1, 1, 1))
    for b in (2, 3):
        for lam in partitions_of(2 * b):
            if any(part % 2 for part in lam):
                assert k_lambda_jordan(lam, P((b,)), 2, alpha, psi, xi) == 0
    with pytest.raises(SizeMismatch):
        k_lambda_jordan(P((3,)), P((2,)), 2, alpha, psi, xi)


def test_k_lambda_sum_is_green_rhs():
    spec = CheckSpec("K_LAMBDA", field="2", k=2, poly=(1, 1), mu=(2,))
    ctx = Context(spec)
    xi = ctx.F(1)
    for mu in partitions_of(2):
        total = sum(k_lambda_jordan(lam, mu, 1, ctx.alpha, ctx.psi, xi) for lam in partitions_of(2))
        # the green form carries the extra (-1)^{(k-1)n}
        assert total == pytest.approx(jordan_green_rhs(ctx, mu, 1, xi), abs=1e-9)
    assert run_check(spec).passed


@pytest.mark.parametrize("spec", [
    CheckSpec("REG_ELLIPTIC", field="2", k=1, poly=(1, 1, 1)),
    CheckSpec("REG_ELLIPTIC", field="2", k=2, poly=(1, 0, 1)),
    CheckSpec("JORDAN_GREEN", field="2", k=2, poly=(1, 0, 1), mu=(1,)),
    CheckSpec("MULTIPLICATIVITY", field="2", k=2, blocks=(((1, 1), (1,)),),
              other_blocks=(((1, 1), (2,)),)),
    CheckSpec("SEMISIMPLE", field="2", k=2, blocks=(((1, 1), (2,)),)),
    CheckSpec("SYM_POWER", field="2", k=2, poly=(1, 1), mu=(1, 1)),
    CheckSpec("REG_ELLIPTIC", field="2", k=2, alpha=(0,), poly=(1, 1, 1)),
    CheckSpec("NOT_A_CHECK"),
], ids=["k1", "reducible", "reducible-jordan", "overlap", "semisimple-jordan", "sym-mu",
        "alpha-length", "unknown"])
def test_hypothesis_gates(spec):
    with pytest.raises(InvalidHypothesis):
        run_check(spec)


def test_scale_exceeded_propagates_from_run_check():
    with pytest.raises(ScaleExceeded):
        run_check(CheckSpec("REG_ELLIPTIC", field="2", k=3, n=3, budget=100))


def test_sweep_isolates_failures():
    assert sweep([]) == []
    specs = [CheckSpec("REG_ELLIPTIC", field="2", k=2, poly=(1, 1, 1)),
             CheckSpec("REG_ELLIPTIC", field="2", k=3, n=3, budget=100),
             CheckSpec("QBINOM", k=1, qa=3, b=4)]
    reports = sweep(specs)
    assert [r.passed for r in reports] == [True, None, True]
    assert "ScaleExceeded" in reports[1].params["skipped"]
    s = summarize(reports)
    assert (s["points"], s["passed"], s["failed"], s["skipped"]) == (3, 2, 0, 1)


def test_sweep_preserves_order_across_workers():
    specs = expand_grid(["QBINOM"], {"k": [1], "qa": [2, 3], "b": [1, 2, 3]})
    serial = sweep(specs)
    parallel = sweep(specs, workers=2)
    assert [r.params for r in serial] == [r.params for r in parallel]
    assert [r.passed for r in serial] == [r.passed for r in parallel]


def test_report_schema_and_formatting():
    r = run_check(CheckSpec("REG_ELLIPTIC", field="2", k=2, poly=(1, 1, 1)))
    d = r.to_dict(timing=False)
    assert set(d) == REPORT_KEYS
    assert set(d["lhs"]) == {"re", "im"}
    assert d["elapsed_ms"] == 0
    json.dumps(d)
    assert json.dumps(d) == json.dumps(run_check(
        CheckSpec("REG_ELLIPTIC", field="2", k=2, poly=(1, 1, 1))).to_dict(timing=False))


def test_qbinom_sides():
    assert qbinom_sides(2, 1) == (1, 1)
    assert qbinom_sides(3, 3) == (16, 16)
    for qa in (2, 5, 9):
        for b in range(1, 7):
            lhs, rhs = qbinom_sides(qa, b)
            assert lhs == rhs


def test_integer_checks_are_exact():
    r = run_check(CheckSpec("HL_FLAGS", k=1, qa=3, mu=(2, 1), lam=(1, 1, 1)))
    assert r.passed and r.lhs == r.rhs and r.lhs.real == int(r.lhs.real)


def test_purity_check():
    r = run_check(CheckSpec("PURITY", field="3", k=3, alpha=(1, 0, 1), poly=(1, 0, 1), a=2))
    assert r.passed
    assert r.rhs.real == pytest.approx(3.0 ** 2)


@pytest.mark.parametrize("identity,bound", [
    (CheckSpec("JORDAN_HL", field="2", k=2, poly=(1, 1), mu=(2, 1)),
     CheckSpec("BOUND", field="2", k=2, poly=(1, 1), mu=(2, 1))),
    (CheckSpec("JORDAN_HL", field="3", k=2, poly=(2, 1), mu=(2,)),
     CheckSpec("BOUND", field="3", k=2, poly=(2, 1), mu=(2,))),
    (CheckSpec("GENERAL_ELEMENT", field="2", k=2, blocks=(((1, 1), (1,)), ((1, 1, 1), (1,)))),
     CheckSpec("BOUND_GENERAL", field="2", k=2, blocks=(((1, 1), (1,)), ((1, 1, 1), (1,))))),
])
def test_bound_holds_where_identity_holds(identity, bound):
    assert run_check(identity).passed
    r = run_check(bound)
    assert r.passed
    assert r.lhs.real <= r.rhs.real + r.abs_err + 1e-9


def test_bound_binomial_specialization():
    r = run_check(CheckSpec("BOUND", field="2", k=3, poly=(1, 1), mu=(2,)))
    assert r.passed
    assert r.params["flag_count"] == r.params["binomial"] == 6


def test_catalog_is_complete():
    assert len(CHECKS) == 14
