import random

import pytest
from hypothesis import given, settings, strategies as st

from ffiwa.exceptions import DivisionByZero, ParseError, PoleAtPlace, UndefinedValuation
from ffiwa.fields import (
    GF,
    Place,
    Poly,
    RationalFunc,
    evaluate_at_place,
    factor,
    factor_into_places,
    irreducibles_up_to,
    is_irreducible,
    ord_at,
    parse_place,
    parse_rational,
)


def test_field_arith_basics():
    F2 = GF(2)
    assert F2.add(1, 1) == 0
    F4 = GF(2, 2)
    x = F4.gen()
    assert F4.mul(x, x) == F4.add(x, 1)  # x^2 = x + 1 under the fixed modulus
    F5 = GF(5)
    assert F5.inv(2) == 3
    with pytest.raises(DivisionByZero):
        F5.inv(0)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 4), (3, 3), (5, 2), (7, 2), (3, 4)])
def test_frobenius_has_exact_order_k(p, k):
    F = GF(p, k)
    rng = random.Random(k * p)
    for _ in range(8):
        x = rng.randrange(F.q)
        orbit = x
        order = 0
        while True:
            orbit = F.frobenius(orbit)
            order += 1
            if orbit == x:
                break
            assert order <= k
        assert k % order == 0
    # some element attains the full order
    found = False
    for x in range(F.q):
        y, order = F.frobenius(x), 1
        while y != x:
            y = F.frobenius(y)
            order += 1
        if order == k:
            found = True
            break
    assert found


@pytest.mark.parametrize("q,kdesc", [(2, (2, 1)), (3, (3, 1)), (4, (2, 2)), (5, (5, 1))])
def test_irreducible_counting_identity(q, kdesc):
    # sum_{d | n} d * N_d = q^n for n <= 6
    F = GF(*kdesc)
    irr = irreducibles_up_to(F, 6)
    counts = {}
    for f in irr:
        counts[f.degree()] = counts.get(f.degree(), 0) + 1
    for n in range(1, 7):
        total = sum(d * counts.get(d, 0) for d in range(1, n + 1) if n % d == 0)
        assert total == q**n, f"n={n}"


def test_irreducibles_small_lists():
    F2 = GF(2)
    labels = {tuple(f.coeffs) for f in irreducibles_up_to(F2, 2)}
    assert labels == {(0, 1), (1, 1), (1, 1, 1)}
    labels3 = {tuple(f.coeffs) for f in irreducibles_up_to(F2, 3)}
    assert (1, 1, 0, 1) in labels3 and (1, 0, 1, 1) in labels3
    F3 = GF(3)
    deg1 = [f for f in irreducibles_up_to(F3, 1)]
    assert len(deg1) == 3


def test_ord_at_and_product_formula_examples():
    F2 = GF(2)
    f = parse_rational(F2, "t^2/(t+1)")
    assert ord_at(f, Place.finite(Poly(F2, (0, 1)))) == 2
    assert ord_at(f, Place.infinite(F2)) == -1
    with pytest.raises(UndefinedValuation):
        ord_at(RationalFunc.zero(F2), Place.infinite(F2))


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.data())
def test_product_formula_random(data):
    p, k = data.draw(st.sampled_from([(2, 1), (2, 2), (3, 1), (5, 1)]))
    F = GF(p, k)
    def poly(draw_nonzero=True):
        coeffs = data.draw(st.lists(st.integers(0, F.q - 1), min_size=1, max_size=6))
        g = Poly(F, coeffs)
        if g.is_zero():
            g = Poly.one(F)
        return g
    f = RationalFunc(poly(), poly())
    div = factor_into_places(f)
    assert sum(m * v.degree for v, m in div.items()) == 0


def test_evaluate_at_place():
    F2 = GF(2)
    t = RationalFunc.t(F2)
    R, val = evaluate_at_place(t, Place.finite(Poly(F2, (1, 1))))
    assert (R.q, val) == (2, 1)
    R, val = evaluate_at_place(1 / (t + 1), Place.finite(Poly(F2, (0, 1))))
    assert val == 1
    # t reduces to the generator of the quadratic residue field
    v = Place.finite(Poly(F2, (1, 1, 1)))
    R, val = evaluate_at_place(t, v)
    assert R.q == 4 and val == R.gen()
    assert R.mul(val, val) == R.add(val, 1)
    with pytest.raises(PoleAtPlace):
        evaluate_at_place(1 / t, Place.finite(Poly(F2, (0, 1))))


def test_factor_exact():
    F2 = GF(2)
    f = parse_rational(F2, "(t^2+t+1)*(t+1)^2*t^5").num
    fac = {tuple(g.coeffs): m for g, m in factor(f)}
    assert fac == {(0, 1): 5, (1, 1): 2, (1, 1, 1): 1}
    F5 = GF(5)
    g = parse_rational(F5, "(t^2+2)*(t^2+2)*(t+3)").num
    fac5 = sorted((m, g2.degree()) for g2, m in factor(g))
    assert fac5 == [(1, 1), (2, 2)]
    assert is_irreducible(Poly(F5, (2, 0, 1)))  # t^2+2 (irreducible mod 5)


def test_parser_grammar_and_errors():
    F2 = GF(2)
    f = parse_rational(F2, "1/t^3 + 1/t + 1")
    assert tuple(f.num.coeffs) == (1, 0, 1, 1) and tuple(f.den.coeffs) == (0, 0, 0, 1)
    g = parse_rational(F2, "t^2/(t+1)^3")
    assert g.den.degree() == 3
    F5 = GF(5)
    h = parse_rational(F5, "2*t - 3")
    assert tuple(h.num.coeffs) == (2, 2)
    with pytest.raises(ParseError):
        parse_rational(F2, "t^^2")
    with pytest.raises(ParseError):
        parse_rational(F2, "t + ")
    with pytest.raises(ParseError):
        parse_rational(F2, "x + 1")
    assert parse_place(F2, "inf").is_infinite
    assert parse_place(F2, "t^2+t+1").degree == 2


def test_rational_func_canonical_form():
    F3 = GF(3)
    t = RationalFunc.t(F3)
    f = (t * t - 1) / (2 * (t + 1))
    # denominator is made monic, the gcd is cancelled
    assert f.den.leading() == 1
    assert f == (t - 1) / RationalFunc.from_int(F3, 2)
    assert RationalFunc.zero(F3).num.is_zero()
    with pytest.raises(DivisionByZero):
        t / RationalFunc.zero(F3)
