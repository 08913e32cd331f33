"""Edge-weighted graphs with optional periodic cusp rays.

A graph is a finite core (oriented edge pairs with positive integer weights)
plus zero or more cusps: infinite rays attached to core vertices carrying
eventually periodic weight data.  Truncations materialize a finite initial
portion of each ray; transfer and vertex operators are built from those.

Conventions, fixed once here and relied on everywhere else:

* every unoriented edge appears as two mutually inverse oriented edges;
* matrix entry (row, column) = (target, source), so columns index where a
  step starts and rows index where it lands;
* the transition weight from edge e to edge f with origin(f) = terminus(e)
  is w(f), reduced by 1 when f is the reversal of e;
* ray vertices of cusp c are named "c:y1", "c:y2", ...; the oriented edge
  from "c:y{n}" outward is "c:u{n}" and its reversal is "c:d{n}" ("c:u0"
  starts at the attachment vertex).  Outward edges have weight 1 except the
  entry edge; the inward edge "c:d{n}" has weight q_{n+1}, the ray parameter
  of its origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


class ValidationError(ValueError):
    """A graph document or object violates the structural rules."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class OrientedEdge:
    id: str
    origin: str
    terminus: str
    inverse: str
    weight: int


@dataclass(frozen=True)
class CuspRay:
    id: str
    attach: str
    entry_weight: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def valency_param(self, n: int) -> int:
        """q_n for ray vertex y_n (n >= 1): preperiod entries first, then
        the period repeated forever."""
        if n < 1:
            raise ValueError("ray vertices are indexed from 1")
        k = n - 1
        if k < len(self.preperiod):
            return self.preperiod[k]
        return self.period[(k - len(self.preperiod)) % len(self.period)]

    def limit_valency(self):
        """The eventual constant q when the period is constant, else None."""
        values = set(self.period)
        return next(iter(values)) if len(values) == 1 else None


@dataclass(frozen=True, eq=False)
class CuspidalGraph:
    vertices: tuple[str, ...]
    edges: tuple[OrientedEdge, ...]
    cusps: tuple[CuspRay, ...]
    tree_valency: dict

    @property
    def is_finite(self) -> bool:
        return not self.cusps

    @cached_property
    def edge_by_id(self):
        return {e.id: e for e in self.edges}

    @cached_property
    def _out(self):
        table = {v: [] for v in self.vertices}
        for e in self.edges:
            table[e.origin].append(e)
        return table

    def out_edges(self, vertex):
        return self._out[vertex]

    def cusp_by_id(self, cusp_id) -> CuspRay:
        for c in self.cusps:
            if c.id == cusp_id:
                return c
        raise KeyError(cusp_id)

    def ray_vertex(self, cusp: CuspRay, n: int) -> str:
        if n == 0:
            return cusp.attach
        return f"{cusp.id}:y{n}"

    def ray_edge_pair(self, cusp: CuspRay, n: int):
        """The oriented pair between ray vertices y_n and y_{n+1}."""
        up = OrientedEdge(
            id=f"{cusp.id}:u{n}",
            origin=self.ray_vertex(cusp, n),
            terminus=self.ray_vertex(cusp, n + 1),
            inverse=f"{cusp.id}:d{n}",
            weight=cusp.entry_weight if n == 0 else 1,
        )
        down = OrientedEdge(
            id=f"{cusp.id}:d{n}",
            origin=self.ray_vertex(cusp, n + 1),
            terminus=self.ray_vertex(cusp, n),
            inverse=f"{cusp.id}:u{n}",
            weight=cusp.valency_param(n + 1),
        )
        return up, down

    def ray_tree_valency(self, cusp: CuspRay, n: int) -> int:
        """Tree valency of ray vertex y_n (n >= 1): q_n + 1."""
        return cusp.valency_param(n) + 1


def validate(g: CuspidalGraph):
    """Collect every structural violation; empty list means the graph is
    well formed."""
    out = []
    seen_v = set()
    for v in g.vertices:
        if v in seen_v:
            out.append(f"duplicate vertex id '{v}'")
        seen_v.add(v)
        if ":" in v:
            out.append(f"vertex id '{v}' contains ':', reserved for generated ray ids")
    ids = {}
    for e in g.edges:
        if e.id in ids:
            out.append(f"duplicate edge id '{e.id}'")
        ids[e.id] = e
        if ":" in e.id:
            out.append(f"edge id '{e.id}' contains ':', reserved for generated ray ids")
        if e.origin not in seen_v:
            out.append(f"edge '{e.id}' starts at unknown vertex '{e.origin}'")
        if e.terminus not in seen_v:
            out.append(f"edge '{e.id}' ends at unknown vertex '{e.terminus}'")
        if not isinstance(e.weight, int) or e.weight < 1:
            out.append(f"edge '{e.id}' has nonpositive weight {e.weight}")
    for e in g.edges:
        if e.inverse == e.id:
            out.append(f"edge '{e.id}' is its own reversal")
            continue
        mate = ids.get(e.inverse)
        if mate is None:
            out.append(f"edge '{e.id}' names missing reversal '{e.inverse}'")
            continue
        if mate.inverse != e.id:
            out.append(f"reversal of '{e.id}' is '{e.inverse}' but '{e.inverse}' points back to '{mate.inverse}'")
        if mate.origin != e.terminus or mate.terminus != e.origin:
            out.append(f"edge '{e.id}' and reversal '{e.inverse}' disagree on endpoints")
    names = set()
    for c in g.cusps:
        if c.id in names:
            out.append(f"duplicate cusp id '{c.id}'")
        names.add(c.id)
        if ":" in c.id:
            out.append(f"cusp id '{c.id}' contains ':', reserved for generated ray ids")
        if c.attach not in seen_v:
            out.append(f"cusp '{c.id}' attaches to unknown vertex '{c.attach}'")
        if not c.period:
            out.append(f"cusp '{c.id}' has an empty period")
        for q in list(c.preperiod) + list(c.period):
            if not isinstance(q, int) or q < 1:
                out.append(f"cusp '{c.id}' carries a ray parameter {q} below 1")
                break
        if not isinstance(c.entry_weight, int) or c.entry_weight < 1:
            out.append(f"cusp '{c.id}' has nonpositive entry weight {c.entry_weight}")
    for v in g.vertices:
        if v not in g.tree_valency:
            out.append(f"missing tree valency for vertex '{v}'")
            continue
        have = g.tree_valency[v]
        want = sum(e.weight for e in g.edges if e.origin == v)
        want += sum(c.entry_weight for c in g.cusps if c.attach == v)
        if have != want:
            out.append(f"tree valency {have} at '{v}' does not match total outgoing weight {want}")
    if g.vertices and not out:
        reach = {g.vertices[0]}
        frontier = [g.vertices[0]]
        while frontier:
            v = frontier.pop()
            for e in g.out_edges(v):
                if e.terminus not in reach:
                    reach.add(e.terminus)
                    frontier.append(e.terminus)
        missing = [v for v in g.vertices if v not in reach]
        if missing:
            out.append(f"core is not connected; unreachable: {', '.join(missing)}")
    return out


def check(g: CuspidalGraph) -> CuspidalGraph:
    violations = validate(g)
    if violations:
        raise ValidationError(violations)
    return g


def graph_from_document(doc) -> CuspidalGraph:
    """Build and validate a graph from its plain-dict form."""
    try:
        vertices = tuple(str(v) for v in doc["vertices"])
        edges = tuple(
            OrientedEdge(
                id=str(e["id"]),
                origin=str(e["origin"]),
                terminus=str(e["terminus"]),
                inverse=str(e["inverse"]),
                weight=int(e["weight"]),
            )
            for e in doc.get("edges", ())
        )
        cusps = tuple(
            CuspRay(
                id=str(c["id"]),
                attach=str(c["attach"]),
                entry_weight=int(c["entry_weight"]),
                preperiod=tuple(int(q) for q in c.get("preperiod", ())),
                period=tuple(int(q) for q in c["period"]),
            )
            for c in doc.get("cusps", ())
        )
        valency = {str(k): int(v) for k, v in doc["tree_valency"].items()}
    except (KeyError, TypeError, ValueError) as err:
        raise ValidationError([f"malformed graph document: {err}"]) from err
    return check(CuspidalGraph(vertices, edges, cusps, valency))


def graph_to_document(g: CuspidalGraph):
    return {
        "vertices": list(g.vertices),
        "edges": [
            {"id": e.id, "origin": e.origin, "terminus": e.terminus,
             "inverse": e.inverse, "weight": e.weight}
            for e in g.edges
        ],
        "cusps": [
            {"id": c.id, "attach": c.attach, "entry_weight": c.entry_weight,
             "preperiod": list(c.preperiod), "period": list(c.period)}
            for c in g.cusps
        ],
        "tree_valency": dict(g.tree_valency),
    }


@dataclass(frozen=True, eq=False)
class Truncation:
    """A finite initial portion: the core plus the first `depth` ray
    vertices of every cusp."""

    graph: CuspidalGraph
    depth: int
    vertices: tuple[str, ...]
    edges: tuple[OrientedEdge, ...]
    tree_valency: dict

    @cached_property
    def _out(self):
        table = {v: [] for v in self.vertices}
        for e in self.edges:
            table[e.origin].append(e)
        return table

    def out_edges(self, vertex):
        return self._out[vertex]

    def retained_out_weight(self, vertex) -> int:
        return sum(e.weight for e in self._out[vertex])

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) // 2


def truncate(g: CuspidalGraph, depth: int) -> Truncation:
    if depth < 0:
        raise ValueError("truncation depth must be nonnegative")
    vertices = list(g.vertices)
    edges = list(g.edges)
    valency = dict(g.tree_valency)
    for c in g.cusps:
        for n in range(1, depth + 1):
            v = g.ray_vertex(c, n)
            vertices.append(v)
            valency[v] = g.ray_tree_valency(c, n)
        for n in range(depth):
            up, down = g.ray_edge_pair(c, n)
            edges.append(up)
            edges.append(down)
    return Truncation(g, depth, tuple(vertices), tuple(edges), valency)


@dataclass(eq=False)
class EdgeMatrix:
    """Sparse nonnegative integer matrix indexed by oriented edges;
    entry (target_edge, source_edge) is the step weight."""

    index: tuple[str, ...]
    entries: dict

    @property
    def size(self) -> int:
        return len(self.index)

    def entry(self, to_id, from_id) -> int:
        return self.entries.get((to_id, from_id), 0)

    def dense(self):
        pos = {eid: i for i, eid in enumerate(self.index)}
        rows = [[0] * len(self.index) for _ in self.index]
        for (to_id, from_id), w in self.entries.items():
            rows[pos[to_id]][pos[from_id]] = w
        return rows

    def column_sums(self):
        sums = {eid: 0 for eid in self.index}
        for (_, from_id), w in self.entries.items():
            sums[from_id] += w
        return sums


def _edge_matrix(edges) -> EdgeMatrix:
    by_origin = {}
    for e in edges:
        by_origin.setdefault(e.origin, []).append(e)
    entries = {}
    for e in edges:
        for f in by_origin.get(e.terminus, ()):
            w = f.weight - (1 if f.id == e.inverse else 0)
            if w:
                entries[(f.id, e.id)] = w
    return EdgeMatrix(tuple(e.id for e in edges), entries)


def transfer_matrix(t: Truncation) -> EdgeMatrix:
    """Step operator on the truncation's oriented edges."""
    return _edge_matrix(t.edges)


@dataclass(eq=False)
class VertexSystem:
    """Vertex-level operators of a finite graph: weighted adjacency
    (target row, source column), the excess out-weight q_x = deg_w(x) - 1,
    and the Euler characteristic."""

    index: tuple[str, ...]
    adjacency: list
    excess: list
    euler_characteristic: int


def vertex_operators(t: Truncation) -> VertexSystem:
    pos = {v: i for i, v in enumerate(t.vertices)}
    n = len(t.vertices)
    adj = [[0] * n for _ in range(n)]
    out_weight = [0] * n
    for e in t.edges:
        adj[pos[e.terminus]][pos[e.origin]] += e.weight
        out_weight[pos[e.origin]] += e.weight
    excess = [w - 1 for w in out_weight]
    return VertexSystem(tuple(t.vertices), adj, excess, t.euler_characteristic)


def induced_vertex_system(g: CuspidalGraph, vertex_ids) -> VertexSystem:
    """Vertex operators of the subgraph induced on an arbitrary finite
    vertex set (core and/or ray vertices, connected or not)."""
    chosen = list(dict.fromkeys(vertex_ids))
    edges = induced_edges(g, chosen)
    pos = {v: i for i, v in enumerate(chosen)}
    n = len(chosen)
    adj = [[0] * n for _ in range(n)]
    out_weight = [0] * n
    for e in edges:
        adj[pos[e.terminus]][pos[e.origin]] += e.weight
        out_weight[pos[e.origin]] += e.weight
    excess = [w - 1 for w in out_weight]
    return VertexSystem(tuple(chosen), adj, excess, n - len(edges) // 2)


def induced_edges(g: CuspidalGraph, vertex_ids):
    """All oriented edges of the (possibly infinite) graph with both
    endpoints in the given finite vertex set."""
    chosen = set(vertex_ids)
    edges = [e for e in g.edges if e.origin in chosen and e.terminus in chosen]
    for c in g.cusps:
        indices = set()
        for v in chosen:
            if v.startswith(f"{c.id}:y"):
                indices.add(int(v[len(c.id) + 2:]))
        if c.attach in chosen:
            indices.add(0)
        for n in sorted(indices):
            if n + 1 in indices:
                up, down = g.ray_edge_pair(c, n)
                edges.append(up)
                edges.append(down)
    return edges


def ray_segment_vertices(g: CuspidalGraph, cusp: CuspRay, first: int, last: int):
    """Vertex ids y_first .. y_last of one cusp ray (first >= 1)."""
    if first < 1 or last < first:
        raise ValueError("segment indices must satisfy 1 <= first <= last")
    return [g.ray_vertex(cusp, n) for n in range(first, last + 1)]


def closure_matrix(g: CuspidalGraph, depth: int) -> EdgeMatrix:
    """Edge step operator of the depth-`depth` truncation with every cusp
    boundary resealed: the two outermost ray edge columns of each cusp are
    rewritten so the boundary behaves like the rest of the infinite ray.

    Requires every cusp to have an eventually constant ray (period of one
    repeated value) and `depth` to exceed every preperiod length.
    """
    if depth < 1:
        raise ValueError("closure depth must be at least 1")
    for c in g.cusps:
        if c.limit_valency() is None:
            raise ValueError(f"closure requires period one beyond the preperiod on cusp '{c.id}'")
        if depth < len(c.preperiod) + 1:
            raise ValueError(
                f"closure depth {depth} does not clear the preperiod of cusp '{c.id}' "
                f"(needs at least {len(c.preperiod) + 1})"
            )
    t = truncate(g, depth + 1)
    m = transfer_matrix(t)
    entries = dict(m.entries)
    for c in g.cusps:
        q = c.limit_valency()
        out_id = f"{c.id}:u{depth}"
        back_id = f"{c.id}:d{depth}"
        prev_id = f"{c.id}:d{depth - 1}"
        for key in [k for k in entries if k[1] in (out_id, back_id)]:
            del entries[key]
        entries[(back_id, out_id)] = q
        entries[(out_id, back_id)] = 1
        if q > 1:
            entries[(prev_id, back_id)] = q - 1
    return EdgeMatrix(m.index, entries)


def build_nagao(qs, extra=None) -> CuspidalGraph:
    """One core vertex with a single cusp whose ray parameters cycle
    through the given list: the quotient of the (q_0+1)-regular-entry tree
    lattice family used throughout the tests.  The vertex at distance n
    from the core has tree valency qs[n mod len] + 1, so the ray parameter
    sequence is the input rotated left by one.

    `extra` optionally prepends a finite run of parameters before the
    cycle starts: with extra = [e0, e1, ...], the vertex at distance n
    has tree valency extra[n] + 1 while n < len(extra), after which the
    cyclic pattern takes over.
    """
    qs = [int(q) for q in qs]
    extra = [int(q) for q in (extra or [])]
    if not qs or any(q < 1 for q in qs) or any(q < 1 for q in extra):
        raise ValueError("ray parameters must be positive integers")
    first = extra[0] if extra else qs[0]
    preperiod = tuple(extra[1:]) + (qs[0],) if extra else ()
    period = tuple(qs[1:] + qs[:1])
    cusp = CuspRay(id="c0", attach="x0", entry_weight=first + 1,
                   preperiod=preperiod, period=period)
    g = CuspidalGraph(
        vertices=("x0",),
        edges=(),
        cusps=(cusp,),
        tree_valency={"x0": first + 1},
    )
    return check(g)


def _pair(a: str, b: str, weight_ab=1, weight_ba=1):
    return (
        OrientedEdge(f"{a}.{b}", a, b, f"{b}.{a}", weight_ab),
        OrientedEdge(f"{b}.{a}", b, a, f"{a}.{b}", weight_ba),
    )


def finite_graph(pairs, weights=None) -> CuspidalGraph:
    """Finite graph from a list of unordered vertex pairs; parallel edges
    are allowed and get suffixed ids.  `weights` optionally maps an edge id
    (either direction) to its weight."""
    weights = weights or {}
    vertices = []
    for a, b in pairs:
        for v in (a, b):
            if v not in vertices:
                vertices.append(v)
    counts = {}
    edges = []
    for a, b in pairs:
        key = (a, b) if a <= b else (b, a)
        counts[key] = counts.get(key, 0) + 1
        suffix = f"#{counts[key]}" if counts[key] > 1 else ""
        if a == b:
            fid, rid = f"{a}.{a}>{suffix}", f"{a}.{a}<{suffix}"
        else:
            fid, rid = f"{a}.{b}{suffix}", f"{b}.{a}{suffix}"
        wf = weights.get(fid, 1)
        wr = weights.get(rid, 1)
        edges.append(OrientedEdge(fid, a, b, rid, wf))
        edges.append(OrientedEdge(rid, b, a, fid, wr))
    valency = {v: 0 for v in vertices}
    for e in edges:
        valency[e.origin] += e.weight
    g = CuspidalGraph(tuple(vertices), tuple(edges), (), valency)
    return check(g)


def cycle_graph(n: int) -> CuspidalGraph:
    return finite_graph([(f"v{i}", f"v{(i + 1) % n}") for i in range(n)])


def complete_graph(n: int) -> CuspidalGraph:
    return finite_graph([(f"v{i}", f"v{j}") for i in range(n) for j in range(i + 1, n)])


def petersen_graph() -> CuspidalGraph:
    pairs = [(f"o{i}", f"o{(i + 1) % 5}") for i in range(5)]
    pairs += [(f"o{i}", f"i{i}") for i in range(5)]
    pairs += [(f"i{i}", f"i{(i + 2) % 5}") for i in range(5)]
    return finite_graph(pairs)
