import pickle

import pytest
from hypothesis import given, settings, strategies as st

from matkloost.errors import (DivisionByZero, FieldMismatch, NonPrimeCharacteristic,
                              NotASubfield, ReduciblePolynomial, ScaleExceeded, ZeroElement)
from matkloost.gf import (FieldElement, dlog, embed, extension, field_of_order, first_irreducible,
                          frobenius, frobenius_orbit, irreducible_polys, make_field, norm_to,
                          parse_field, poly_divmod, poly_gcd, poly_is_irreducible, poly_mul,
                          trace_to)

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (7, 1)]


def test_prime_field_arithmetic():
    F = make_field(5)
    assert (F(3) + F(4)).value == 2
    assert (F(3) * F(4)).value == 2
    assert (F(2) / F(3)).value == 4
    assert (-F(1)).value == 4


def test_quadratic_extension_over_f2():
    F4 = make_field(2, 2)
    assert F4.modulus == (1, 1, 1)
    xi = F4.from_coeffs([0, 1])
    assert (xi * xi).coeffs == (1, 1)
    assert xi ** 3 == F4.one
    assert trace_to(xi, make_field(2)).value == 1
    assert norm_to(xi, make_field(2)).value == 1


def test_default_cubic_polynomial():
    assert make_field(2, 3).modulus == (1, 1, 0, 1)


def test_errors():
    with pytest.raises(NonPrimeCharacteristic):
        make_field(4)
    with pytest.raises(ReduciblePolynomial):
        make_field(2, 2, (1, 0, 1))
    with pytest.raises(DivisionByZero):
        make_field(3)(1) / make_field(3)(0)
    with pytest.raises(ZeroElement):
        dlog(make_field(3), make_field(3)(0))
    with pytest.raises(FieldMismatch):
        make_field(3)(1) + make_field(5)(1)
    with pytest.raises(NotASubfield):
        make_field(2, 2).degree_over(make_field(2, 3))
    with pytest.raises(ScaleExceeded):
        make_field(2, 21)


def test_field_interning_and_pickle():
    F = make_field(3, 2)
    assert make_field(3, 2) is F
    assert pickle.loads(pickle.dumps(F)) is F
    E = extension(F, 2)
    assert pickle.loads(pickle.dumps(E)) is E


def test_parse_field_and_order():
    assert parse_field("2^2:1,1,1") is make_field(2, 2)
    assert parse_field("7") is make_field(7)
    assert field_of_order(9) is make_field(3, 2)
    with pytest.raises(NonPrimeCharacteristic):
        field_of_order(6)


def test_subfield_encoding_is_preserved():
    F = make_field(2, 2)
    E = extension(F, 2)
    a = F.from_coeffs([1, 1])
    b = embed(a, E)
    assert b.value == a.value
    assert (b * b).value == (a * a).value


@pytest.mark.parametrize("p,d", FIELDS)
def test_generator_order(p, d):
    F = make_field(p, d)
    g = FieldElement(F, F.generator)
    seen = {(g ** e).value for e in range(F.size - 1)}
    assert len(seen) == F.size - 1


def _mobius(n):
    out, f = 1, 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            out = -out
        f += 1
    return -out if n > 1 else out


@pytest.mark.parametrize("p,d", FIELDS)
def test_irreducible_counts(p, d):
    # necklace formula for the number of monic irreducibles of degree d
    F = make_field(p)
    expected = sum(_mobius(d // e) * p ** e for e in range(1, d + 1) if d % e == 0) // d
    assert len(irreducible_polys(F, d)) == expected


def test_frobenius_orbit_of_quadratic_root():
    F4 = make_field(2, 2)
    orbit = frobenius_orbit(F4.from_coeffs([0, 1]), make_field(2))
    assert [o.coeffs for o in orbit] == [(0, 1), (1, 1)]


def test_trace_and_norm_tables_match_elementwise():
    E = extension(make_field(3, 2), 2)
    F = make_field(3, 2)
    tr, nm = E.trace_table(F), E.norm_table(F)
    for x in E.elements():
        assert tr[x.value] == trace_to(x, F).value
        assert nm[x.value] == norm_to(x, F).value


def test_polynomial_helpers():
    F = make_field(3)
    f, g = (1, 0, 1), (2, 1)
    prod = poly_mul(F, f, g)
    q, r = poly_divmod(F, prod, g)
    assert q == f and r == ()
    assert poly_gcd(F, prod, f) == f
    assert poly_is_irreducible(F, first_irreducible(F, 3))


elements = st.sampled_from(FIELDS).flatmap(
    lambda pd: st.tuples(*[st.integers(0, pd[0] ** pd[1] - 1)] * 3).map(
        lambda v: [FieldElement(make_field(*pd), x) for x in v]))


@settings(max_examples=200, deadline=None)
@given(elements)
def test_field_axioms(xyz):
    x, y, z = xyz
    assert x * (y + z) == x * y + x * z
    assert (x + y) - y == x
    assert x * y == y * x
    if x.value:
        assert x * x.inverse() == x.field.one


@settings(max_examples=100, deadline=None)
@given(elements)
def test_trace_additive_norm_multiplicative_frobenius_homomorphic(xyz):
    x, y, _ = xyz
    F = x.field.prime_field
    assert trace_to(x + y, F) == trace_to(x, F) + trace_to(y, F)
    assert norm_to(x * y, F) == norm_to(x, F) * norm_to(y, F)
    assert frobenius(x * y, F) == frobenius(x, F) * frobenius(y, F)
    assert frobenius(x + y, F) == frobenius(x, F) + frobenius(y, F)
    assert frobenius(x, F, x.field.abs_degree) == x
