import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fimrank import rational_series as rs
from fimrank.exact_linalg import rat
from oracles import series_coeffs

coef = st.integers(-4, 4)
polys = st.lists(coef, min_size=1, max_size=4)
dens = st.lists(coef, min_size=0, max_size=4).map(lambda t: [1] + t)


def random_series(rng, max_order=4):
    d = rng.randint(0, max_order)
    den = [1] + [rng.randint(-3, 3) for _ in range(d)]
    num = [rng.randint(-3, 3) for _ in range(rng.randint(1, d + 2))]
    return rs.RationalSeries(num, den)


@settings(max_examples=150, deadline=None)
@given(polys, dens)
def test_coefficients_match_long_division(num, den):
    a = rs.RationalSeries(num, den)
    want = series_coeffs(num, den, 30)
    assert [Fraction(int(c.numerator), int(c.denominator)) for c in a.coeffs(30)] == want


@settings(max_examples=100, deadline=None)
@given(polys, dens, polys, dens)
def test_field_operations(n1, d1, n2, d2):
    a, b = rs.RationalSeries(n1, d1), rs.RationalSeries(n2, d2)
    assert [x for x in (a + b).coeffs(20)] == [x + y for x, y in zip(a.coeffs(20), b.coeffs(20))]
    prod = (a * b).coeffs(20)
    assert prod == [sum(a.coeff(i) * b.coeff(k - i) for i in range(k + 1)) for k in range(20)]


def test_hadamard_random_pairs():
    rng = random.Random(20240611)
    for _ in range(20):
        a, b = random_series(rng), random_series(rng)
        h = rs.hadamard(a, b)
        assert all(h.coeff(n) == a.coeff(n) * b.coeff(n) for n in range(100))
        assert h.order <= max(a.order, 1) * max(b.order, 1)


def test_hadamard_unit_and_geometric():
    a = rs.parse_series("(1 + 3x)/(1 - x - x^2)")
    assert rs.hadamard(a, rs.HADAMARD_ONE) == a
    assert rs.hadamard(rs.geometric(2), rs.geometric(3)) == rs.geometric(6)


def test_conj_is_identity_over_rationals():
    a = rs.parse_series("1/(1-2x)")
    assert rs.conj(a) == a


def test_zero_set_of_even_series():
    zs = rs.zero_set(rs.parse_series("1/(1-x^2)"))
    assert zs.period == 2 and zs.residues == frozenset({1}) and not zs.finite
    assert zs.members(20) == list(range(1, 20, 2))
    cert = zs.certificate
    assert cert["zero_classes"][1]["consecutive_zeros_checked"] >= cert["recurrence_order"]
    assert rs.nonzero_fully_certified(zs)


@pytest.mark.parametrize("text", [
    "1/(1-x^2)", "(1-x)/(1-x^3)", "x^5/(1-x)", "1/(1-x-x^2)", "(1 - x^2 + x^4)/(1 - x^6)",
    "1 + x^3", "(2 - x)/(1 - x)^2", "x/(1 + x^2)", "0",
])
def test_zero_set_against_coefficients(text):
    a = rs.parse_series(text)
    zs = rs.zero_set(a)
    # the window is 256 terms; look beyond it as well
    assert [n for n in range(400) if not a.coeff(n)] == zs.members(400)


def test_zero_set_bound():
    with pytest.raises(rs.BoundExceeded):
        rs.zero_set(rs.parse_series("1/(1-x^5)"), period_bound=3)


def test_indicator_and_support_idempotent():
    e = rs.support_idempotent(rs.parse_series("1/(1-x^3)"))
    assert [e.coeff(n) for n in range(9)] == [0, 1, 1, 0, 1, 1, 0, 1, 1]
    assert rs.hadamard(e, e) == e


def test_quasi_inverse_axioms():
    samples = ["1/(1-x^2)", "x/(1-x^2)", "1/(1-x-x^2)", "(1-x)/(1-x^3)", "x^3/(1-2x)",
               "1 + x", "(1 + x)/(1 - x^4)", "1/(1-x)^2", "x^2 - x^5", "(3 - x)/(1 - x^2)"]
    for text in samples:
        p = rs.QFraction(rs.parse_series(text))
        q = rs.q_quasi_inverse(p)
        assert rs.q_equal(rs.q_mul(rs.q_mul(p, q), p), p)
        assert rs.q_equal(rs.q_mul(rs.q_mul(q, p), q), q)
        for n in range(40):
            pn = p.coeff(n)
            assert q.coeff(n) == (1 / pn if pn else 0)


def test_qfraction_rejects_vanishing_denominator():
    with pytest.raises(ValueError):
        rs.QFraction(rs.HADAMARD_ONE, rs.parse_series("1/(1-x^2)"))


def test_parse_series():
    assert rs.parse_series("1/(1-x^2)") == rs.RationalSeries([1], [1, 0, -1])
    assert rs.parse_series("(1 + 2x)^2") == rs.RationalSeries([1, 4, 4])
    assert rs.parse_series("3/4 x") == rs.RationalSeries([0, rat("3/4")])
    with pytest.raises(rs.SeriesSyntaxError):
        rs.parse_series("1/(1-")
    with pytest.raises(rs.SeriesSyntaxError):
        rs.parse_series("1 + y")


def test_polynomial_helpers():
    p = (rat(1), rat(2), rat(1))
    q, r = rs.pdivmod(p, (rat(1), rat(1)))
    assert q == (1, 1) and not rs.ptrim(r)
    assert rs.pgcd(p, (rat(1), rat(1))) == (1, 1)
    assert rs.pmul((1, 1), (1, -1)) == (1, 0, -1)
    assert rs.poly_text((1, 0, -1)) == "1 - x^2"
