"""Arithmetic kernel: polynomials, rational functions, series, Pade."""

import itertools
import random
from fractions import Fraction

import pytest

from cuspzeta.exact import (PadeError, Poly, RatFunc, Series, charpoly,
                            det_exact, det_one_minus_u, exact_div,
                            logderiv_counts, pade, poly_gcd, series_exp,
                            series_log, solve_linear)


def rand_poly(rng, max_deg=4, span=6):
    return Poly([Fraction(rng.randint(-span, span),
                          rng.randint(1, 3)) for _ in range(rng.randint(0, max_deg) + 1)])


def test_poly_normalization():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([]).degree == -1
    assert Poly([0, 0]).is_zero()
    assert Poly([5]).degree == 0
    assert not Poly([0, 1]).is_zero()


def test_poly_ring_identities():
    rng = random.Random(7)
    for _ in range(50):
        a, b, c = (rand_poly(rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a - b) + b == a


def test_poly_divmod_roundtrip():
    rng = random.Random(11)
    for _ in range(40):
        a = rand_poly(rng, max_deg=6)
        b = rand_poly(rng, max_deg=3)
        if b.is_zero():
            continue
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree
    with pytest.raises(ZeroDivisionError):
        divmod(Poly([1, 1]), Poly([]))


def test_poly_shift_derivative_call():
    p = Poly([1, 0, 3])
    assert p.shift(2) == Poly([0, 0, 1, 0, 3])
    assert p.derivative() == Poly([0, 6])
    assert p(Fraction(1, 2)) == Fraction(7, 4)
    assert Poly.monomial(3, 5) == Poly([0, 0, 0, 5])
    assert Poly.variable() == Poly([0, 1])
    assert Poly.const(9) == Poly([9])


def test_poly_pow_and_strings():
    p = Poly([1, -2])
    assert p ** 3 == Poly([1, -6, 12, -8])
    with pytest.raises(ValueError):
        p ** -1
    q = Poly([Fraction(1), Fraction(-1, 3)])
    assert Poly.from_strings(q.to_strings()) == q
    assert str(Poly([1, 0, -4])) == "1 - 4*u^2"
    assert str(Poly([])) == "0"


def test_exact_div():
    a = Poly([1, 0, -1])
    assert exact_div(a, Poly([1, 1])) == Poly([1, -1])
    with pytest.raises(ArithmeticError):
        exact_div(Poly([1, 1, 1]), Poly([1, 1]))


def test_poly_gcd_is_monic():
    a = Poly([1, 1]) * Poly([2, -2])
    b = Poly([1, 1]) * Poly([3, 3])
    g = poly_gcd(a, b)
    assert g == Poly([1, 1])
    assert poly_gcd(Poly([]), Poly([0, 2])) == Poly([0, 1])
    rng = random.Random(3)
    for _ in range(20):
        p, q = rand_poly(rng), rand_poly(rng)
        g = poly_gcd(p, q)
        if not g.is_zero():
            assert g.coeffs[-1] == 1
            if not p.is_zero():
                assert (p % g).is_zero()
            if not q.is_zero():
                assert (q % g).is_zero()


def test_ratfunc_reduction_and_normalization():
    r = RatFunc(Poly([1, 0, 0, 0, -1]), Poly([1, 0, -1]))
    assert r == RatFunc(Poly([1, 0, 1]), Poly([1]))
    assert r.is_polynomial()
    # denominator scaled so den(0) = 1
    r2 = RatFunc(Poly([2]), Poly([4, 4]))
    assert r2.den.coefficient(0) == 1
    assert r2 == RatFunc(Poly([Fraction(1, 2)]), Poly([1, 1]))
    with pytest.raises(ZeroDivisionError):
        RatFunc(Poly([1]), Poly([]))


def test_ratfunc_field_identities():
    rng = random.Random(23)
    for _ in range(25):
        a = RatFunc(rand_poly(rng, 3), Poly([1]) + rand_poly(rng, 2).shift(1))
        b = RatFunc(rand_poly(rng, 3), Poly([1]) + rand_poly(rng, 2).shift(1))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) - b == a
        if b.num:
            assert (a / b) * b == a
    r = RatFunc(Poly([1, 2]), Poly([1, 0, -3]))
    assert r * r.reciprocal() == RatFunc(Poly([1]))
    assert r ** -2 == (r.reciprocal()) ** 2


def test_ratfunc_series_and_call():
    r = RatFunc(Poly([1]), Poly([1, -1]))
    s = r.series(5)
    assert list(s.coeffs) == [1, 1, 1, 1, 1, 1]
    assert r(Fraction(1, 2)) == 2
    with pytest.raises(ZeroDivisionError):
        r(1)
    with pytest.raises(ZeroDivisionError):
        RatFunc(Poly([1]), Poly([0, 1])).series(3)


def test_ratfunc_document_roundtrip():
    r = RatFunc(Poly([1, 0, -4]), Poly([1, 0, -2]))
    assert RatFunc.from_dict(r.to_dict()) == r


def test_series_arithmetic_truncates():
    a = Series([1, 1, 1])
    b = Series([1, -1, 0, 5])
    assert (a * b).order == 2
    assert (a * b).coeffs == (1, 0, 0)
    assert (a + b).coeffs == (2, 0, 1)
    assert a.agrees_with(Series([1, 1, 1, 9]), 2)
    assert not a.agrees_with(Series([1, 2, 1]), 2)
    with pytest.raises(ValueError):
        a.agrees_with(b, 5)


def test_series_inverse_exp_log():
    rng = random.Random(5)
    for _ in range(20):
        coeffs = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(7)]
        coeffs[0] = 0
        s = Series(coeffs)
        assert series_log(series_exp(s)) == s
        t = Series([1] + coeffs[1:])
        assert (t * t.inverse()).coeffs == (1,) + (0,) * 6
    with pytest.raises(ValueError):
        series_exp(Series([1, 1]))
    with pytest.raises(ZeroDivisionError):
        Series([0, 1]).inverse()


def test_solve_linear():
    rows = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    x = solve_linear(rows, [Fraction(5), Fraction(10)])
    assert x == [Fraction(1), Fraction(3)]
    assert solve_linear([[1, 1], [2, 2]], [1, 1]) is None


def test_pade_roundtrip():
    rng = random.Random(17)
    hits = 0
    for _ in range(40):
        num = Poly([1] + [Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(0, 3))])
        den = Poly([1] + [Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(0, 3))])
        r = RatFunc(num, den)
        dn, dd = r.num.degree, r.den.degree
        s = r.series(dn + dd + 4)
        got = pade(s, dn, dd)
        assert got == r
        hits += 1
    assert hits == 40


def test_pade_rejects_impossible_degrees():
    # q1 * 0 = -1 has no solution, so no (1,1) approximant exists here
    s = Series([1, 0, 1, 0])
    with pytest.raises(PadeError, match="no approximant at these degrees"):
        pade(s, 1, 1)
    with pytest.raises(ValueError):
        pade(Series([1, 1]), 3, 3)
    # a truncation is a legitimate approximant when the window allows it
    geo = RatFunc(Poly([1]), Poly([1, -1])).series(8)
    assert pade(geo, 2, 0) == RatFunc(Poly([1, 1, 1]), Poly([1]))


def _det_by_permutations(rows):
    n = len(rows)
    total = Poly([])
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Poly([sign])
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term
    return total


def test_det_exact_matches_permutation_expansion():
    rng = random.Random(29)
    for n in (1, 2, 3, 4):
        for _ in range(6):
            rows = [[rand_poly(rng, 2, 3) for _ in range(n)] for _ in range(n)]
            assert det_exact(rows) == _det_by_permutations(rows)
    with pytest.raises(ValueError):
        det_exact([[Poly([1]), Poly([2])]])


def test_det_exact_multiplicative_on_constants():
    rng = random.Random(31)
    for _ in range(10):
        a = [[Poly([Fraction(rng.randint(-4, 4))]) for _ in range(3)] for _ in range(3)]
        b = [[Poly([Fraction(rng.randint(-4, 4))]) for _ in range(3)] for _ in range(3)]
        ab = [[sum((a[i][k] * b[k][j] for k in range(3)), Poly([]))
               for j in range(3)] for i in range(3)]
        assert det_exact(ab) == det_exact(a) * det_exact(b)


def test_charpoly_against_det():
    rng = random.Random(37)
    for n in (1, 2, 3, 4):
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        by_det = det_exact([[Poly([-m[i][j], 1 if i == j else 0])
                             for j in range(n)] for i in range(n)])
        assert charpoly(m) == by_det


def test_det_one_minus_u():
    m = [[2, 1], [0, 3]]
    assert det_one_minus_u(m) == Poly([1, -2]) * Poly([1, -3])
    rng = random.Random(41)
    for n in (2, 3):
        m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        direct = det_exact([[Poly([1 if i == j else 0, -m[i][j]])
                             for j in range(n)] for i in range(n)])
        assert det_one_minus_u(m) == direct


def test_logderiv_counts():
    r = RatFunc(Poly([1, -2]), Poly([1]))
    assert logderiv_counts(r, 6) == [2, 4, 8, 16, 32, 64]
    r2 = RatFunc(Poly([1, 0, -4]), Poly([1, 0, -2]))
    # counts 2*(2^k) - 2^k... computed from the closed form directly
    assert logderiv_counts(r2, 6) == [0, 4, 0, 24, 0, 112]
    with pytest.raises(ValueError):
        logderiv_counts(RatFunc(Poly([2]), Poly([1])), 3)
