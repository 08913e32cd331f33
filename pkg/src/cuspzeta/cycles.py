"""Closed paths, rotation classes, and prime cycles.

A closed path of length n is a sequence (e_1, ..., e_n) of oriented edges
where each step lands on the next edge's origin, the last step feeds the
first, and every transition weight is nonzero.  Its weight is the product
of the n transition weights taken cyclically.  Two sequences are the same
cycle when one is a rotation of the other; a cycle is prime when it is not
a proper power, in other words when its minimal rotation period equals its
length.  Weighted step counts split over primes: the length-m count is the
sum of l(p) * w(p)^(m/l(p)) over primes p whose length divides m.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import CuspidalGraph, transfer_matrix, truncate


@dataclass(frozen=True)
class ClosedPath:
    edges: tuple[str, ...]
    weight: int


@dataclass(frozen=True)
class PrimeCycle:
    rep: tuple[str, ...]
    length: int
    weight: int


@dataclass(eq=False)
class CycleCensus:
    graph: CuspidalGraph
    max_len: int
    primes: tuple[PrimeCycle, ...]
    class_counts: dict  # (length, weight, is_prime) -> number of classes


def enumerate_closed_paths(g: CuspidalGraph, length: int):
    """Every closed path of exactly the given length, as sequences.

    Paths of length n stay within ray depth n of the core, so enumerating
    inside the depth-(n+1) truncation loses nothing and never lets a path
    feel the cut boundary.
    """
    if length < 1:
        raise ValueError("closed paths have positive length")
    t = truncate(g, length + 1)
    m = transfer_matrix(t)
    succ = {eid: [] for eid in m.index}
    for (to_id, from_id), w in m.entries.items():
        succ[from_id].append((to_id, w))
    for steps in succ.values():
        steps.sort()
    out = []
    for start in m.index:
        stack = [(start, 1, (start,))]
        while stack:
            cur, weight, path = stack.pop()
            if len(path) == length:
                back = next((w for to_id, w in succ[cur] if to_id == start), 0)
                if back:
                    out.append(ClosedPath(path, weight * back))
                continue
            for to_id, w in succ[cur]:
                stack.append((to_id, weight * w, path + (to_id,)))
    return out


def _min_rotation(seq):
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def _minimal_period(seq):
    n = len(seq)
    for p in range(1, n + 1):
        if n % p == 0 and seq == seq[p:] + seq[:p]:
            return p
    return n


def cycle_census(g: CuspidalGraph, max_len: int) -> CycleCensus:
    """Group all closed paths of length <= max_len into rotation classes
    and extract the primes."""
    if max_len < 1:
        raise ValueError("census needs max_len >= 1")
    primes = []
    counts = {}
    for n in range(1, max_len + 1):
        classes = {}
        for path in enumerate_closed_paths(g, n):
            rep = _min_rotation(path.edges)
            if rep not in classes:
                classes[rep] = path.weight
        for rep, weight in sorted(classes.items()):
            p = _minimal_period(rep)
            is_prime = p == n
            key = (n, weight, is_prime)
            counts[key] = counts.get(key, 0) + 1
            if is_prime:
                primes.append(PrimeCycle(rep, n, weight))
    return CycleCensus(g, max_len, tuple(primes), counts)


def counts_via_cycles(census: CycleCensus, m: int) -> int:
    """Weighted length-m step count reconstructed from the primes."""
    if m < 1 or m > census.max_len:
        raise ValueError(f"length {m} outside census range 1..{census.max_len}")
    total = 0
    for p in census.primes:
        if m % p.length == 0:
            total += p.length * p.weight ** (m // p.length)
    return total


def primitive_split(census: CycleCensus, m: int):
    """The length-m count split into the part carried by primes of length
    exactly m and the part carried by proper powers."""
    if m < 1 or m > census.max_len:
        raise ValueError(f"length {m} outside census range 1..{census.max_len}")
    prime_part = 0
    power_part = 0
    for p in census.primes:
        if p.length == m:
            prime_part += m * p.weight
        elif m % p.length == 0:
            power_part += p.length * p.weight ** (m // p.length)
    return prime_part, power_part


def euler_product_series(census: CycleCensus, degree: int):
    """Truncated expansion of the product of (1 - w(p) u^l(p)) over all
    primes of length <= degree."""
    from .exact import Series

    if degree > census.max_len:
        raise ValueError("requested degree exceeds the census range")
    prod = Series([1], degree)
    for p in census.primes:
        if p.length <= degree:
            factor = Series([1] + [0] * (p.length - 1) + [-p.weight], degree)
            prod = prod * factor
    return prod


def census_rows(census: CycleCensus):
    """Rows (length, weight, count, is_prime) sorted for stable output."""
    return [
        (length, weight, census.class_counts[(length, weight, is_prime)], is_prime)
        for (length, weight, is_prime) in sorted(census.class_counts)
    ]


def census_text(census: CycleCensus) -> str:
    lines = ["length weight count is_prime"]
    for length, weight, count, is_prime in census_rows(census):
        lines.append(f"{length} {weight} {count} {1 if is_prime else 0}")
    return "\n".join(lines) + "\n"
