"""Exact arithmetic: rationals, dense polynomials, rational functions,
truncated power series, and exact determinants.

Everything in this module is exact.  Coefficients live in the rationals
(`fractions.Fraction`); plain ints are accepted anywhere and promoted.
Floating point never enters any code path here.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


class PadeError(ValueError):
    """No rational approximant exists at the requested degrees."""


def _coerce(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected a rational value, got {type(x).__name__}")


def _format_terms(coeffs, var="u"):
    """Human-readable polynomial rendering, lowest degree first."""
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if k == 0:
            body = str(c)
        else:
            mag = abs(c)
            head = "" if mag == 1 else f"{mag}*"
            body = f"{head}{var}" if k == 1 else f"{head}{var}^{k}"
            if c < 0:
                body = "-" + body
        if not parts:
            parts.append(body)
        elif body.startswith("-"):
            parts.append("- " + body[1:])
        else:
            parts.append("+ " + body)
    return " ".join(parts) if parts else "0"


class Poly:
    """Dense univariate polynomial over the rationals.

    Coefficients are stored lowest degree first with no trailing zeros;
    the zero polynomial is the empty tuple and has degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, Poly):
            self.coeffs = coeffs.coeffs
            return
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def variable(cls):
        return cls([0, 1])

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, k) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial; use RatFunc")
        out = Poly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __divmod__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = c / lead
            quot[k - dq] = f
            for j, oc in enumerate(other.coeffs):
                rem[k - dq + j] -= f * oc
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def shift(self, k: int):
        """Multiply by the k-th power of the variable."""
        if self.is_zero():
            return self
        return Poly((Fraction(0),) * k + self.coeffs)

    def derivative(self):
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        x = _coerce(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_strings(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items):
        return cls([Fraction(s) for s in items])

    def __str__(self):
        return _format_terms(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


def exact_div(a: Poly, b: Poly) -> Poly:
    """Divide a by b, insisting the division is exact."""
    q, r = divmod(a, b)
    if not r.is_zero():
        raise ArithmeticError("inexact polynomial division")
    return q


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals."""
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a * (1 / a.coeffs[-1])


class RatFunc:
    """Quotient of two polynomials kept in lowest terms.

    The gcd of numerator and denominator is removed.  The denominator is
    scaled so its constant term equals 1 whenever it is nonzero at 0 (every
    inverse zeta handled here is of that shape); otherwise it is made monic.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = num if isinstance(num, Poly) else Poly([num]) if isinstance(num, (int, Fraction)) else Poly(num)
        den = den if isinstance(den, Poly) else Poly([den]) if isinstance(den, (int, Fraction)) else Poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = exact_div(num, g)
            den = exact_div(den, g)
        scale = den.coeffs[0] if den.coeffs[0] != 0 else den.coeffs[-1]
        self.num = num * (1 / scale)
        self.den = den * (1 / scale)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_polynomial(self) -> bool:
        return self.den == Poly([1])

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self.den ** (-n), self.num ** (-n))
        return RatFunc(self.num ** n, self.den ** n)

    def reciprocal(self):
        return RatFunc(self.den, self.num)

    def derivative(self):
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(),
                       self.den * self.den)

    def __call__(self, x):
        x = _coerce(x)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def series(self, order: int) -> "Series":
        """Expand around 0 to the given order; requires no pole at 0."""
        d = self.den.coeffs
        if not d or d[0] == 0:
            raise ZeroDivisionError("pole at 0; no power series expansion")
        n = self.num.coeffs
        out = []
        for k in range(order + 1):
            acc = n[k] if k < len(n) else Fraction(0)
            for j in range(1, min(k, len(d) - 1) + 1):
                acc -= d[j] * out[k - j]
            out.append(acc / d[0])
        return Series(out)

    def to_dict(self):
        return {"numerator": self.num.to_strings(), "denominator": self.den.to_strings()}

    @classmethod
    def from_dict(cls, doc):
        return cls(Poly.from_strings(doc["numerator"]), Poly.from_strings(doc["denominator"]))

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"


class Series:
    """Power series truncated at a fixed order (coefficients 0..order).

    Binary operations truncate to the smaller of the two orders.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order=None):
        cs = [_coerce(c) for c in coeffs]
        if order is not None:
            if len(cs) > order + 1:
                cs = cs[: order + 1]
            else:
                cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        elif not cs:
            cs = [Fraction(0)]
        self.coeffs = tuple(cs)

    @classmethod
    def from_poly(cls, p: Poly, order: int):
        return cls(p.coeffs, order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k) -> Fraction:
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def agrees_with(self, other, through: int) -> bool:
        """Compare coefficients 0..through, which both series must carry."""
        if self.order < through or other.order < through:
            raise ValueError("series too short for requested comparison")
        return self.coeffs[: through + 1] == other.coeffs[: through + 1]

    def _pair(self, other):
        m = min(self.order, other.order)
        return self.coeffs[: m + 1], other.coeffs[: m + 1]

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Series([other], self.order)
        if not isinstance(other, Series):
            return NotImplemented
        a, b = self._pair(other)
        return Series([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Series([other], self.order)
        if not isinstance(other, Series):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series([c * other for c in self.coeffs])
        if not isinstance(other, Series):
            return NotImplemented
        a, b = self._pair(other)
        out = [Fraction(0)] * len(a)
        for i, ca in enumerate(a):
            if ca:
                for j in range(len(a) - i):
                    if b[j]:
                        out[i + j] += ca * b[j]
        return Series(out)

    __rmul__ = __mul__

    def inverse(self):
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series has no inverse: constant term is 0")
        c0 = self.coeffs[0]
        out = [1 / c0]
        for k in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                acc += self.coeffs[j] * out[k - j]
            out.append(-acc / c0)
        return Series(out)

    def exp(self):
        if self.coeffs[0] != 0:
            raise ValueError("series exp requires constant term 0")
        out = [Fraction(1)]
        for n in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, n + 1):
                acc += j * self.coeffs[j] * out[n - j]
            out.append(acc / n)
        return Series(out)

    def log(self):
        if self.coeffs[0] != 1:
            raise ValueError("series log requires constant term 1")
        out = [Fraction(0)]
        for n in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, n):
                acc += j * out[j] * self.coeffs[n - j]
            out.append(self.coeffs[n] - acc / n)
        return Series(out)

    def to_strings(self):
        return [str(c) for c in self.coeffs]

    def __str__(self):
        return _format_terms(self.coeffs) + f" + O(u^{self.order + 1})"

    def __repr__(self):
        return f"Series({list(self.coeffs)!r})"


def series_exp(s: Series) -> Series:
    """exp of a series with zero constant term."""
    return s.exp()


def series_log(s: Series) -> Series:
    """log of a series with constant term 1."""
    return s.log()


def solve_linear(rows, rhs):
    """Solve a square exact linear system by Gaussian elimination.

    Returns the solution vector, or None when the matrix is singular.
    """
    n = len(rows)
    aug = [[_coerce(x) for x in row] + [_coerce(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n] for row in aug]


def pade(s: Series, dn: int, dd: int) -> RatFunc:
    """Rational approximant P/Q with deg P <= dn, deg Q <= dd, Q(0) = 1,
    whose expansion matches s through degree dn + dd.

    Raises PadeError when the defining linear system is singular or the
    reduced approximant fails to interpolate (degenerate blocks).
    """
    if s.order < dn + dd:
        raise ValueError(f"series order {s.order} below dn + dd = {dn + dd}")
    c = s.coeffs

    def sc(k):
        return c[k] if k >= 0 else Fraction(0)

    if dd == 0:
        q = []
    else:
        rows = [[sc(k - j) for j in range(1, dd + 1)] for k in range(dn + 1, dn + dd + 1)]
        rhs = [-sc(k) for k in range(dn + 1, dn + dd + 1)]
        q = solve_linear(rows, rhs)
        if q is None:
            raise PadeError("no approximant at these degrees")
    qpoly = Poly([Fraction(1)] + list(q))
    p = [sum(qpoly.coefficient(j) * sc(k - j) for j in range(0, min(k, dd) + 1))
         for k in range(dn + 1)]
    r = RatFunc(Poly(p), qpoly)
    if r.den(0) == 0 or not r.series(dn + dd).agrees_with(s, dn + dd):
        raise PadeError("no approximant at these degrees")
    return r


def det_exact(rows) -> Poly:
    """Exact determinant of a square matrix with polynomial entries,
    by fraction-free elimination (two-step division rule) with row pivoting.
    """
    n = len(rows)
    m = [[e if isinstance(e, Poly) else Poly([e]) if isinstance(e, (int, Fraction)) else Poly(e)
          for e in row] for row in rows]
    for row in m:
        if len(row) != n:
            raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Poly([1])
    sign = 1
    prev = Poly([1])
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not m[i][k].is_zero()), None)
        if piv is None:
            return Poly()
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
            m[i][k] = Poly()
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def charpoly(rows) -> Poly:
    """Characteristic polynomial det(x*I - B), coefficients ascending.

    Exact; integer matrices stay in integer arithmetic throughout.
    """
    n = len(rows)
    if n == 0:
        return Poly([1])
    for row in rows:
        if len(row) != n:
            raise ValueError("characteristic polynomial of a non-square matrix")
    intish = all(isinstance(e, int) for row in rows for e in row)
    if not intish:
        rows = [[_coerce(e) for e in row] for row in rows]
    coeffs = [Fraction(0)] * n + [Fraction(1)]
    mk = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if not intish:
        mk = [[Fraction(v) for v in row] for row in mk]
    for k in range(1, n + 1):
        am = [[sum(rows[i][t] * mk[t][j] for t in range(n)) for j in range(n)]
              for i in range(n)]
        tr = sum(am[i][i] for i in range(n))
        if intish:
            assert tr % k == 0, "trace step not divisible; broken invariant"
            ck = -(tr // k)
        else:
            ck = -tr / k
        coeffs[n - k] = Fraction(ck)
        mk = [[am[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
    return Poly(coeffs)


def det_one_minus_u(rows) -> Poly:
    """det(1 - u*B) for a square exact matrix B: the characteristic
    polynomial read with reversed coefficients."""
    p = charpoly(rows)
    n = len(rows)
    return Poly([p.coefficient(n - k) for k in range(n + 1)])


def logderiv_counts(r: RatFunc, order: int):
    """Coefficients N_1..N_order of -u * r'(u) / r(u); requires r(0) = 1."""
    if r(0) != 1:
        raise ValueError("log-derivative counts require r(0) = 1")
    t_num = (r.num * r.den.derivative() - r.num.derivative() * r.den).shift(1)
    t = RatFunc(t_num, r.num * r.den)
    return list(t.series(order).coeffs[1:])
