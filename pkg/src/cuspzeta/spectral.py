"""Spectral reading of an inverse zeta and growth-rate checks.

Everything upstream is exact; this module is where numerical root finding
is allowed.  It is kept honest two ways: the dominant part of the spectrum
is certified by exact polynomial division whenever possible (dividing the
numerator by 1 - c u^delta with rational c), and when the numerator and
denominator split completely into binomials (1 - c u^k) the closed path
counts are reconstructed exactly and compared term by term.

The positivity side needs no floats at all: `column_sum_check` and
`nondecomposable` certify that a step operator has constant column sums
and an irreducible support pattern, which pins its growth rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .exact import Poly, RatFunc, exact_div
from .graphs import CuspidalGraph, EdgeMatrix
from .zeta import TraceSeries

_DPS = 50


def _squarefree_parts(p: Poly):
    """(square-free factor, multiplicity) pairs with product up to a
    constant equal to p; exact arithmetic throughout."""
    from .exact import poly_gcd

    parts = []
    g = poly_gcd(p, p.derivative())
    c = exact_div(p, g)
    i = 1
    while c.degree > 0:
        d = poly_gcd(c, g)
        factor = exact_div(c, d)
        if factor.degree > 0:
            parts.append((factor, i))
        c = d
        g = exact_div(g, d)
        i += 1
    return parts


def _roots_with_multiplicity(p: Poly):
    """Numerical roots of p with exact multiplicities; repeated roots are
    separated exactly first so the solver only ever sees simple roots."""
    out = []
    for factor, mult in _squarefree_parts(p):
        coeffs = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
                  for c in reversed(factor.coeffs)]
        for r in mpmath.polyroots(coeffs, maxsteps=200, extraprec=120):
            out.append((r, mult))
    return out


def _inverse_root_moduli(p: Poly):
    """Moduli of the inverse roots of a polynomial with p(0) != 0,
    descending, with multiplicity."""
    if p.degree < 1:
        return []
    with mpmath.workdps(_DPS):
        out = []
        for r, mult in _roots_with_multiplicity(p):
            out.extend([float(abs(1 / r))] * mult)
        return sorted(out, reverse=True)


def binomial_factorization(p: Poly):
    """Search for a way to write p as a product of factors (1 - c u^k)
    with rational c; None when the search finds none.

    Tries, with backtracking: the candidate read off the lowest
    non-constant term, peeling one rational root at a time, and the
    substitution v = u^2 when only even powers survive.  This covers every
    product of binomials whose exponents are 1, 2, powers of two times
    those, or that appear verbatim as the lowest term; it is a search, not
    a decision procedure.
    """
    if p.is_zero() or p.coefficient(0) != 1:
        return None
    if p.degree == 0:
        return []
    low = next(k for k in range(1, p.degree + 1) if p.coefficient(k) != 0)
    c = -p.coefficient(low)
    candidate = Poly([1] + [0] * (low - 1) + [-c])
    quotient, remainder = divmod(p, candidate)
    if remainder.is_zero():
        inner = binomial_factorization(quotient)
        if inner is not None:
            return inner + [(c, low)]
    root = _rational_root(p)
    if root is not None and root != 0:
        c = 1 / root
        inner = binomial_factorization(exact_div(p, Poly([1, -c])))
        if inner is not None:
            return inner + [(c, 1)]
    if all(x == 0 for x in p.coeffs[1::2]):
        inner = binomial_factorization(Poly(p.coeffs[::2]))
        if inner is not None:
            return [(c, 2 * k) for c, k in inner]
    return None


def _rational_root(p: Poly):
    """Some rational root of p, or None.  Root candidates come from the
    divisors of the integer-cleared constant and leading coefficients."""
    scale = 1
    for c in p.coeffs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    ints = [int(c * scale) for c in p.coeffs]
    lead, const = ints[-1], ints[0]
    if const == 0:
        return Fraction(0) if p(0) == 0 else None
    for pn in _divisors(abs(const)):
        for qn in _divisors(abs(lead)):
            for cand in (Fraction(pn, qn), Fraction(-pn, qn)):
                if p(cand) == 0:
                    return cand
    return None


def _divisors(n: int):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


@dataclass(eq=False)
class SpectralReport:
    a_roots: list                     # inverse zeros of the numerator, complex approximations
    numerator_moduli: list
    denominator_moduli: list
    dominant_modulus: float
    delta: int
    delta_certified: bool
    certified_power: Fraction | None  # exact value of rho^delta when certified
    second_modulus: float | None
    q: int | None                     # common ray/valency parameter when the graph is regular
    epsilon: float | None             # q minus the second modulus
    cusp_count: int
    reconstruction: str               # 'exact', 'numeric', or 'skipped'
    notes: list = field(default_factory=list)

    @property
    def s(self) -> int:
        return self.cusp_count

    @property
    def den_moduli(self):
        return self.denominator_moduli


def regular_parameter(g: CuspidalGraph):
    """The common q when every vertex has tree valency q + 1 and every ray
    parameter equals q; None otherwise."""
    values = set(g.tree_valency.values())
    for c in g.cusps:
        values.update(q + 1 for q in c.preperiod)
        values.update(q + 1 for q in c.period)
    if len(values) == 1:
        v = next(iter(values))
        if v >= 2:
            return v - 1
    return None


def spectral_report(z, g: CuspidalGraph | None = None,
                    trace_check: TraceSeries | None = None,
                    tol: float = 1e-9) -> SpectralReport:
    """Locate the dominant inverse roots of an inverse zeta and certify
    them exactly when the arithmetic allows it.  Accepts either the
    rational function itself or a pipeline result carrying one."""
    r = z.inverse_zeta if hasattr(z, "inverse_zeta") else z
    if not isinstance(r, RatFunc):
        raise TypeError("expected a rational function or a result carrying one")
    num_moduli = _inverse_root_moduli(r.num)
    den_moduli = _inverse_root_moduli(r.den)
    if not num_moduli:
        q0 = regular_parameter(g) if g is not None else None
        return SpectralReport(
            a_roots=[], numerator_moduli=[], denominator_moduli=den_moduli,
            dominant_modulus=0.0, delta=0, delta_certified=False,
            certified_power=None, second_modulus=None, q=q0, epsilon=None,
            cusp_count=len(g.cusps) if g is not None else 0,
            reconstruction="skipped", notes=["no cycles"],
        )
    with mpmath.workdps(_DPS):
        a_roots = [complex(a) for a in _inverse_roots(r.num)]
    rho = num_moduli[0]
    delta = sum(1 for m in num_moduli if abs(m - rho) <= tol * max(rho, 1.0))
    notes = []
    if den_moduli and den_moduli[0] >= rho - tol * max(rho, 1.0):
        notes.append("denominator reaches the dominant modulus; certificates skipped")

    certified_power = None
    certified = False
    power = rho ** delta
    cand = Fraction(power).limit_denominator(10 ** 9)
    if abs(float(cand) - power) <= 1e-6 * max(power, 1.0):
        binom = Poly([1] + [0] * (delta - 1) + [-cand])
        remainder = r.num % binom
        if remainder.is_zero():
            certified = True
            certified_power = cand
    if not certified:
        notes.append("dominant part not certified by exact division")

    second = None
    rest = num_moduli[delta:] + den_moduli
    if rest:
        second = max(rest)

    q = regular_parameter(g) if g is not None else None
    epsilon = None
    if q is not None:
        if abs(rho - q) > tol * max(q, 1.0):
            notes.append(f"dominant modulus {rho:.6f} differs from regular parameter {q}")
        if second is not None:
            epsilon = q - second

    reconstruction = "skipped"
    if trace_check is not None:
        nf = binomial_factorization(r.num)
        df = binomial_factorization(r.den)
        if nf is not None and df is not None:
            ok = True
            for m in range(1, trace_check.order + 1):
                total = Fraction(0)
                for c, k in nf:
                    if m % k == 0:
                        total += k * c ** (m // k)
                for c, k in df:
                    if m % k == 0:
                        total -= k * c ** (m // k)
                if total != trace_check.counts[m - 1]:
                    ok = False
                    notes.append(f"exact reconstruction fails at length {m}")
                    break
            reconstruction = "exact" if ok else "failed"
        else:
            ok = True
            with mpmath.workdps(_DPS):
                na = _inverse_roots(r.num)
                da = _inverse_roots(r.den)
                for m in range(1, trace_check.order + 1):
                    approx = sum(a ** m for a in na) - sum(a ** m for a in da)
                    target = trace_check.counts[m - 1]
                    if isinstance(target, Fraction):
                        target = mpmath.mpf(target.numerator) / target.denominator
                    if abs(approx - target) > 1e-6 * max(rho, 1.0) ** m:
                        ok = False
                        notes.append(f"numeric reconstruction fails at length {m}")
                        break
            reconstruction = "numeric" if ok else "failed"

    return SpectralReport(
        a_roots=a_roots,
        numerator_moduli=num_moduli,
        denominator_moduli=den_moduli,
        dominant_modulus=rho,
        delta=delta,
        delta_certified=certified,
        certified_power=certified_power,
        second_modulus=second,
        q=q,
        epsilon=epsilon,
        cusp_count=len(g.cusps) if g is not None else 0,
        reconstruction=reconstruction,
        notes=notes,
    )


def _inverse_roots(p: Poly):
    if p.degree < 1:
        return []
    out = []
    for r, mult in _roots_with_multiplicity(p):
        out.extend([1 / r] * mult)
    return out


@dataclass(eq=False)
class PgtRow:
    length: int
    count: object          # exact N_m
    main: object           # delta * c^(m/delta) when delta divides m, else 0
    residual: object
    rate: float            # |residual|^(1/m), 0 for a zero residual


@dataclass(eq=False)
class PgtReport:
    rows: list
    verdict: bool
    eps_prime: float | None
    tail_start: int
    notes: list = field(default_factory=list)


def pgt_check(ts: TraceSeries, report: SpectralReport) -> PgtReport:
    """Compare counts to the dominant term delta * rho^m on delta | m and
    judge whether the residuals grow strictly slower than rho^m.

    The per-length rate |R_m|^(1/m) is noisy for small m (a bounded
    prefactor distorts short lengths), so the verdict reads only the tail
    half of the computed range.
    """
    delta = report.delta
    if delta == 0:
        rows = [PgtRow(m, ts.counts[m - 1], 0, ts.counts[m - 1],
                       float(abs(ts.counts[m - 1])) ** (1.0 / m) if ts.counts[m - 1] else 0.0)
                for m in range(1, ts.order + 1)]
        quiet = all(row.count == 0 for row in rows)
        return PgtReport(rows, quiet, None, ts.order + 1,
                         ["no cycles"] if quiet else ["no dominant term identified"])
    if ts.order < 2 * delta:
        raise ValueError(f"need counts through length {2 * delta} to judge a period-{delta} dominant term")
    rows = []
    notes = []
    exact_main = report.delta_certified and report.certified_power is not None
    if not exact_main:
        notes.append("dominant term taken from floating point roots")
    for m in range(1, ts.order + 1):
        n_m = ts.counts[m - 1]
        if m % delta == 0:
            if exact_main:
                main = delta * report.certified_power ** (m // delta)
            else:
                main = delta * report.dominant_modulus ** m
        else:
            main = 0
        residual = n_m - main
        rate = float(abs(residual)) ** (1.0 / m) if residual != 0 else 0.0
        rows.append(PgtRow(m, n_m, main, residual, rate))
    tail_start = ts.order // 2 + 1
    tail = [row.rate for row in rows if row.length >= tail_start]
    rate = max(tail) if tail else 0.0
    verdict = rate < report.dominant_modulus
    eps_prime = report.dominant_modulus - rate
    return PgtReport(rows, verdict, eps_prime, tail_start, notes)


def column_sum_check(matrix: EdgeMatrix, q: int):
    """Whether every column of the step operator sums to q; returns the
    flag and the offending (edge, sum) pairs."""
    sums = matrix.column_sums()
    bad = [(eid, s) for eid, s in sums.items() if s != q]
    return not bad, bad


def nondecomposable(matrix: EdgeMatrix) -> bool:
    """True when the support pattern is strongly connected: no relabeling
    splits the operator into a block triangular form."""
    n = len(matrix.index)
    if n == 0:
        return True
    pos = {eid: i for i, eid in enumerate(matrix.index)}
    fwd = [[] for _ in range(n)]
    bwd = [[] for _ in range(n)]
    for (to_id, from_id), w in matrix.entries.items():
        if w:
            fwd[pos[from_id]].append(pos[to_id])
            bwd[pos[to_id]].append(pos[from_id])

    def reach(adj):
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    return len(reach(fwd)) == n and len(reach(bwd)) == n
