"""L-functions twisted by matrix blocks on edge transitions.

A block assignment attaches a vector space dimension to every oriented
edge and a matrix block to every composable edge pair.  Unspecified pairs
default to the transition weight times the identity (which forces the two
dimensions to agree); explicitly given blocks replace that default
entirely.  The twisted step operator acts on the direct sum of the edge
spaces, and the twisted inverse L-function is exp(-sum tr(T_b^m) u^m / m),
recovered through the same rational approximant protocol as the plain
zeta.  Over an enumerated census the same function is the product of
det(1 - u^l(p) W(p)) with W(p) the block holonomy around each prime.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cycles import CycleCensus
from .exact import (PadeError, RatFunc, Series, _coerce, det_one_minus_u,
                    pade, series_exp)
from .graphs import CuspidalGraph, Truncation, truncate
from .zeta import ZetaResult


@dataclass(eq=False)
class BlockAssignment:
    """Edge dimensions plus matrix blocks on selected edge pairs.

    `blocks` maps (from_edge_id, to_edge_id) to a matrix stored as a tuple
    of rows (target dimension many, each of source dimension length).
    When `cusp_rule` is set, custom blocks touching generated ray
    edges must be scalar multiples of the identity, which keeps the twist
    tame along the infinite rays.
    """

    dims: dict = field(default_factory=dict)
    blocks: dict = field(default_factory=dict)
    default_dim: int = 1
    cusp_rule: bool = True

    def dim(self, edge_id: str) -> int:
        return self.dims.get(edge_id, self.default_dim)

    def block(self, from_edge, to_edge):
        """Block for one composable pair of oriented edges; rows index the
        target space."""
        key = (from_edge.id, to_edge.id)
        custom = self.blocks.get(key)
        dt, df = self.dim(to_edge.id), self.dim(from_edge.id)
        if custom is not None:
            return custom
        w = to_edge.weight - (1 if to_edge.id == from_edge.inverse else 0)
        if dt != df and w != 0:
            raise ValueError(
                f"pair ({from_edge.id}, {to_edge.id}) changes dimension "
                f"{df} -> {dt} and has no explicit block"
            )
        return tuple(
            tuple(Fraction(w) if i == j else Fraction(0) for j in range(df))
            for i in range(dt)
        )


def _is_scalar_identity(matrix) -> bool:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        return False
    c = matrix[0][0] if n else Fraction(0)
    return all(matrix[i][j] == (c if i == j else 0) for i in range(n) for j in range(n))


def validate_blocks(g: CuspidalGraph, b: BlockAssignment):
    """Shape and policy checks; returns the list of violations."""
    out = []
    for eid, d in b.dims.items():
        if not isinstance(d, int) or d < 1:
            out.append(f"dimension for edge '{eid}' must be a positive integer")
    if b.default_dim < 1:
        out.append("default dimension must be a positive integer")
    for (fid, tid), matrix in b.blocks.items():
        dt, df = b.dim(tid), b.dim(fid)
        if len(matrix) != dt or any(len(row) != df for row in matrix):
            out.append(f"block ({fid}, {tid}) is not {dt} x {df}")
        if b.cusp_rule and (":" in fid or ":" in tid):
            if not _is_scalar_identity(matrix):
                out.append(f"block ({fid}, {tid}) on a ray edge is not scalar")
    core_ids = {e.id for e in g.edges}
    ray_prefixes = tuple(f"{c.id}:" for c in g.cusps)
    for fid, tid in b.blocks:
        for eid in (fid, tid):
            if eid not in core_ids and not eid.startswith(ray_prefixes or ("\0",)):
                out.append(f"block names unknown edge '{eid}'")
    return out


@dataclass(eq=False)
class BlockMatrix:
    """Twisted step operator stored blockwise: `entries` maps a composable
    pair (to_edge_id, from_edge_id) to its matrix block, `index` is the
    flat basis of (edge id, coordinate) pairs in edge order."""

    index: tuple
    dims: dict
    entries: dict

    @property
    def total_dimension(self) -> int:
        return len(self.index)

    def dense(self):
        offset = {}
        for pos, (eid, k) in enumerate(self.index):
            if k == 0:
                offset[eid] = pos
        n = len(self.index)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (tid, fid), blk in self.entries.items():
            ro, co = offset[tid], offset[fid]
            for i, row in enumerate(blk):
                for j, x in enumerate(row):
                    if x:
                        rows[ro + i][co + j] = Fraction(x)
        return rows


def block_transfer(t: Truncation, b: BlockAssignment) -> BlockMatrix:
    """Twisted step operator on the truncation; basis vectors are
    (edge id, coordinate) pairs."""
    dims = {e.id: b.dim(e.id) for e in t.edges}
    index = tuple((e.id, k) for e in t.edges for k in range(dims[e.id]))
    by_origin = {}
    for e in t.edges:
        by_origin.setdefault(e.origin, []).append(e)
    entries = {}
    for e in t.edges:
        for f in by_origin.get(e.terminus, ()):
            blk = b.block(e, f)
            if all(all(x == 0 for x in row) for row in blk):
                continue
            entries[(f.id, e.id)] = tuple(tuple(Fraction(x) for x in row) for row in blk)
    return BlockMatrix(index, dims, entries)


def twisted_traces(g: CuspidalGraph, b: BlockAssignment, order: int):
    """tr(T_b^m) for m = 1..order, each on the depth-(m+1) truncation."""
    bad = validate_blocks(g, b)
    if bad:
        raise ValueError("; ".join(bad))
    out = []
    finite_rows = None
    for m in range(1, order + 1):
        if g.is_finite:
            if finite_rows is None:
                finite_rows = _intify(block_transfer(truncate(g, 0), b).dense())
            rows = finite_rows
        else:
            rows = _intify(block_transfer(truncate(g, m + 1), b).dense())
        power = rows
        for _ in range(m - 1):
            power = _mul(power, rows)
        out.append(Fraction(sum(power[i][i] for i in range(len(power)))))
    return out


def _intify(rows):
    """Drop to plain int arithmetic when every entry is integral."""
    if all(x.denominator == 1 for row in rows for x in row):
        return [[int(x) for x in row] for row in rows]
    return rows


def _mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def lfunction(g: CuspidalGraph, b: BlockAssignment, order: int = 16) -> ZetaResult:
    """Inverse twisted L-function: the exact determinant of the twisted
    step operator when the graph is finite, else the trace and approximant
    route along growing truncations."""
    if order < 6:
        raise ValueError("approximant route needs trace order at least 6")
    if g.is_finite:
        bad = validate_blocks(g, b)
        if bad:
            raise ValueError("; ".join(bad))
        bm = block_transfer(truncate(g, 0), b)
        r = RatFunc(det_one_minus_u(bm.dense()), 1)
        tr = twisted_traces(g, b, order)
        log_term = Series([0] + [-Fraction(x) / m for m, x in enumerate(tr, start=1)])
        if not r.series(order).agrees_with(series_exp(log_term), order):
            raise ArithmeticError("determinant and trace series disagree")
        diag = {"trace_order": order, "total_dimension": bm.total_dimension}
        return ZetaResult(r, "finite_det", order, diag)
    tr = twisted_traces(g, b, order)
    log_term = Series([0] + [-Fraction(x) / m for m, x in enumerate(tr, start=1)])
    s = series_exp(log_term)
    for d in range(1, (order - 4) // 2 + 1):
        try:
            r = pade(s, d, d)
        except PadeError:
            continue
        if r.series(order).agrees_with(s, order):
            diag = {
                "degree": d,
                "guard_coefficients": order - 2 * d,
                "trace_order": order,
                "total_dimension": sum(b.dim(e.id) for e in truncate(g, 0).edges),
            }
            return ZetaResult(r, "pade", order, diag)
    raise PadeError(f"no stable approximant at order {order}")


def holonomy(census_graph: CuspidalGraph, b: BlockAssignment, rep):
    """Block product around one cycle representative, an endomorphism of
    the first edge's space."""
    lookup = {e.id: e for e in truncate(census_graph, 0).edges}

    def edge(eid):
        if eid in lookup:
            return lookup[eid]
        for c in census_graph.cusps:
            prefix = f"{c.id}:"
            if eid.startswith(prefix):
                kind = eid[len(prefix)]
                n = int(eid[len(prefix) + 1:])
                up, down = census_graph.ray_edge_pair(c, n)
                return up if kind == "u" else down
        raise KeyError(eid)

    edges = [edge(eid) for eid in rep]
    n0 = b.dim(edges[0].id)
    acc = [[Fraction(1) if i == j else Fraction(0) for j in range(n0)] for i in range(n0)]
    for i in range(len(edges)):
        nxt = edges[(i + 1) % len(edges)]
        acc = _mul([list(r) for r in b.block(edges[i], nxt)], acc)
    return acc


def l_euler_series(census: CycleCensus, b: BlockAssignment, degree: int) -> Series:
    """Truncated product of det(1 - u^l(p) W(p)) over primes of length
    <= degree, with W(p) the block holonomy."""
    if degree > census.max_len:
        raise ValueError("requested degree exceeds the census range")
    prod = Series([1], degree)
    for p in census.primes:
        if p.length > degree:
            continue
        w = holonomy(census.graph, b, p.rep)
        char = det_one_minus_u(w)
        spread = [Fraction(0)] * (degree + 1)
        for k, c in enumerate(char.coeffs):
            if k * p.length <= degree:
                spread[k * p.length] = c
            else:
                break
        prod = prod * Series(spread)
    return prod


def blocks_from_document(doc) -> BlockAssignment:
    dims = {str(k): int(v) for k, v in doc.get("dims", {}).items()}
    blocks = {}
    for item in doc.get("blocks", ()):
        matrix = tuple(tuple(_coerce(x) for x in row) for row in item["matrix"])
        blocks[(str(item["from"]), str(item["to"]))] = matrix
    return BlockAssignment(
        dims=dims,
        blocks=blocks,
        default_dim=int(doc.get("default_dim", 1)),
        cusp_rule=bool(doc.get("cusp_rule", True)),
    )


def blocks_to_document(b: BlockAssignment):
    return {
        "default_dim": b.default_dim,
        "dims": dict(b.dims),
        "cusp_rule": b.cusp_rule,
        "blocks": [
            {"from": fid, "to": tid,
             "matrix": [[str(x) for x in row] for row in matrix]}
            for (fid, tid), matrix in sorted(b.blocks.items())
        ],
    }
