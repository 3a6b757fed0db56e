"""Exact rational geometry of piecewise-linear embeddings of K_n.

Coordinates are :class:`fractions.Fraction`. Every predicate runs on
integers: an embedding is rescaled by the common denominator of all its
coordinates once, and projection directions are rescaled the same way.
All predicates are invariant under positive rescaling, so nothing is lost.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import lcm
from typing import Iterator, NamedTuple, Sequence

Point3 = tuple[Fraction, Fraction, Fraction]
Direction = tuple[Fraction, Fraction, Fraction]
IVec = tuple[int, int, int]

DEFAULT_CANDIDATE_BUDGET = 64


class GenericityError(ValueError):
    """The projection direction is not generic for the embedding."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        super().__init__(f"non-generic direction ({condition}){': ' + detail if detail else ''}")


class NoGenericDirectionError(GenericityError):
    pass


class InvalidEmbeddingError(ValueError):
    def __init__(self, violations: Sequence["Violation"]):
        self.violations = list(violations)
        kinds = sorted({v.kind for v in self.violations})
        super().__init__("invalid embedding: " + ", ".join(kinds))


def point(x, y, z) -> Point3:
    return (Fraction(x), Fraction(y), Fraction(z))


# -- integer vector helpers -------------------------------------------------

def sub(a: IVec, b: IVec) -> IVec:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def det3(a, b, c):
    return dot(cross(a, b), c)


def sign(x) -> int:
    return (x > 0) - (x < 0)


def is_zero(v) -> bool:
    return v[0] == 0 and v[1] == 0 and v[2] == 0


def scale_to_integers(points: Sequence[Point3]) -> list[IVec]:
    """Multiply all points by the lcm of their denominators."""
    den = 1
    for p in points:
        for c in p:
            den = lcm(den, Fraction(c).denominator)
    return [tuple(int(Fraction(c) * den) for c in p) for p in points]


def direction_to_integers(d: Sequence) -> IVec:
    vec = scale_to_integers([tuple(Fraction(c) for c in d)])[0]
    if is_zero(vec):
        raise ValueError("projection direction must be nonzero")
    return vec


def point_in_segment_interior(p: IVec, a: IVec, b: IVec) -> bool:
    ab = sub(b, a)
    ap = sub(p, a)
    if not is_zero(cross(ap, ab)):
        return False
    t = dot(ap, ab)
    return 0 < t < dot(ab, ab)


def _on_closed_segment(p, a, b) -> bool:
    # p known collinear with a, b
    ab = sub(b, a)
    t = dot(sub(p, a), ab)
    return 0 <= t <= dot(ab, ab)


def segments_intersect(a: IVec, b: IVec, c: IVec, d: IVec) -> bool:
    """Whether closed 3D segments ab and cd share a point."""
    ab, ac, ad = sub(b, a), sub(c, a), sub(d, a)
    if det3(ab, ac, ad) != 0:
        return False
    normal = cross(ab, ac)
    if is_zero(normal):
        normal = cross(ab, ad)
    if is_zero(normal):
        normal = cross(sub(d, c), sub(a, c))
    if is_zero(normal):
        # all four collinear: compare intervals along the common line
        u = ab if not is_zero(ab) else sub(d, c)
        ta, tb = 0, dot(ab, u)
        tc, td = dot(ac, u), dot(ad, u)
        return max(min(ta, tb), min(tc, td)) <= min(max(ta, tb), max(tc, td))

    def orient(p, q, r):
        return sign(dot(cross(sub(q, p), sub(r, p)), normal))

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _on_closed_segment(c, a, b):
        return True
    if o2 == 0 and _on_closed_segment(d, a, b):
        return True
    if o3 == 0 and _on_closed_segment(a, c, d):
        return True
    if o4 == 0 and _on_closed_segment(b, c, d):
        return True
    return False


# -- embeddings -------------------------------------------------------------

def edge_list(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, n + 1), 2))


class Segment(NamedTuple):
    edge: int          # index into PLEmbedding.edges
    index: int         # position along the edge, from its smaller endpoint
    start: int         # node ids; vertices are 1..n, bend points above n
    end: int


@dataclass(frozen=True)
class PLEmbedding:
    """Rational coordinates for vertices 1..n plus optional bend points.

    ``bends[(i, j)]`` (i < j) lists interior points of the edge from i to j.
    An edge without an entry is a straight segment.
    """

    n: int
    vertices: tuple[Point3, ...]
    bends: dict[tuple[int, int], tuple[Point3, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if len(self.vertices) != self.n:
            raise ValueError(f"expected {self.n} vertices, got {len(self.vertices)}")
        object.__setattr__(self, "vertices", tuple(point(*v) for v in self.vertices))
        clean = {}
        for key, pts in self.bends.items():
            i, j = key
            if not (1 <= i < j <= self.n):
                raise ValueError(f"bend key {key} is not an edge i<j of K_{self.n}")
            if pts:
                clean[(i, j)] = tuple(point(*p) for p in pts)
        object.__setattr__(self, "bends", dict(sorted(clean.items())))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return edge_list(self.n)

    @property
    def is_rectilinear(self) -> bool:
        return not self.bends

    def edge_points(self, i: int, j: int) -> list[Point3]:
        pts = [self.vertices[i - 1], *self.bends.get((i, j), ()), self.vertices[j - 1]]
        return pts

    @cached_property
    def _integer_model(self):
        points = list(self.vertices)
        segments: list[Segment] = []
        for e, (i, j) in enumerate(self.edges):
            nodes = [i]
            for b in self.bends.get((i, j), ()):
                points.append(b)
                nodes.append(len(points))
            nodes.append(j)
            for k in range(len(nodes) - 1):
                segments.append(Segment(e, k, nodes[k], nodes[k + 1]))
        return scale_to_integers(points), segments, points

    @property
    def int_points(self) -> list[IVec]:
        """Integer coordinates of node ids 1..N (index = node id - 1)."""
        return self._integer_model[0]

    @property
    def segments(self) -> list[Segment]:
        return self._integer_model[1]

    def node_point(self, node: int) -> Point3:
        return self._integer_model[2][node - 1]

    def node_kind(self, node: int) -> str:
        return f"vertex {node}" if node <= self.n else f"bend point #{node - self.n}"


class Violation(NamedTuple):
    kind: str
    witness: str


def validate_embedding(e: PLEmbedding) -> list[Violation]:
    """List every reason ``e`` is not an embedding; empty means valid."""
    pts = e.int_points
    segs = e.segments
    out: list[Violation] = []

    seen: dict[IVec, int] = {}
    for node, p in enumerate(pts, start=1):
        if p in seen:
            other = seen[p]
            kind = "coincident vertices" if node <= e.n and other <= e.n else "coincident points"
            where = ", ".join(str(c) for c in e.node_point(node))
            out.append(Violation(kind, f"{e.node_kind(other)} and {e.node_kind(node)} at ({where})"))
        else:
            seen[p] = node

    for s in segs:
        a, b = pts[s.start - 1], pts[s.end - 1]
        for node, p in enumerate(pts, start=1):
            if node in (s.start, s.end):
                continue
            if point_in_segment_interior(p, a, b):
                kind = "vertex interior to edge" if node <= e.n else "point interior to segment"
                out.append(Violation(kind, f"{e.node_kind(node)} inside segment {s.index} of edge {_edge_name(e, s.edge)}"))

    for s, t in combinations(segs, 2):
        if {s.start, s.end} & {t.start, t.end}:
            continue
        if segments_intersect(pts[s.start - 1], pts[s.end - 1], pts[t.start - 1], pts[t.end - 1]):
            out.append(Violation(
                "segments intersect",
                f"edge {_edge_name(e, s.edge)} segment {s.index} meets edge {_edge_name(e, t.edge)} segment {t.index}",
            ))
    return out


def require_valid(e: PLEmbedding) -> None:
    bad = validate_embedding(e)
    if bad:
        raise InvalidEmbeddingError(bad)


def _edge_name(e: PLEmbedding, idx: int) -> str:
    i, j = e.edges[idx]
    return f"{i}-{j}"


# -- projections ------------------------------------------------------------

def candidate_directions(budget: int = DEFAULT_CANDIDATE_BUDGET) -> Iterator[Direction]:
    """(0,0,1), then (1,t,t^2) for t = 1, 2, ..."""
    if budget <= 0:
        return
    yield point(0, 0, 1)
    for t in range(1, budget):
        yield point(1, t, t * t)


class _Crossing(NamedTuple):
    seg_a: int
    seg_b: int
    s: Fraction   # parameter on segment a
    t: Fraction   # parameter on segment b
    a_over: bool
    sign: int


def _scan(e: PLEmbedding, d: IVec) -> tuple[str | None, str, list[_Crossing]]:
    """Check genericity conditions and collect crossings in one pass.

    Returns (failed condition or None, detail, crossings).
    """
    pts = e.int_points
    segs = e.segments

    for s in segs:
        if is_zero(cross(sub(pts[s.end - 1], pts[s.start - 1]), d)):
            return "a: segment parallel to direction", f"edge {_edge_name(e, s.edge)} segment {s.index}", []

    proj = {}
    for node, p in enumerate(pts, start=1):
        key = cross(d, p)
        if key in proj:
            return ("b: coincident projected points",
                    f"{e.node_kind(proj[key])} and {e.node_kind(node)}", [])
        proj[key] = node

    def orient(p, q, r):
        return sign(det3(sub(q, p), sub(r, p), d))

    for s in segs:
        a, b = pts[s.start - 1], pts[s.end - 1]
        pa, pb = cross(d, a), cross(d, b)
        ab = sub(pb, pa)
        ab2 = dot(ab, ab)
        for node, p in enumerate(pts, start=1):
            if node in (s.start, s.end):
                continue
            if orient(a, b, p) == 0:
                t = dot(sub(cross(d, p), pa), ab)
                if 0 < t < ab2:
                    return ("c: projected point on projected segment",
                            f"{e.node_kind(node)} over edge {_edge_name(e, s.edge)} segment {s.index}", [])

    crossings: list[_Crossing] = []
    where: dict[tuple[Fraction, Fraction, Fraction], tuple[int, int]] = {}
    for ia, ib in combinations(range(len(segs)), 2):
        sa, sb = segs[ia], segs[ib]
        if {sa.start, sa.end} & {sb.start, sb.end}:
            continue
        a, b = pts[sa.start - 1], pts[sa.end - 1]
        c, dd = pts[sb.start - 1], pts[sb.end - 1]
        oc, od = det3(sub(b, a), sub(c, a), d), det3(sub(b, a), sub(dd, a), d)
        if oc == 0 or od == 0 or (oc > 0) == (od > 0):
            continue
        oa, ob = det3(sub(dd, c), sub(a, c), d), det3(sub(dd, c), sub(b, c), d)
        if oa == 0 or ob == 0 or (oa > 0) == (ob > 0):
            continue
        s_par = Fraction(oa, oa - ob)
        t_par = Fraction(oc, oc - od)
        x = tuple(a[k] + s_par * (b[k] - a[k]) for k in range(3))
        y = tuple(c[k] + t_par * (dd[k] - c[k]) for k in range(3))
        key = cross(d, x)
        if key in where:
            other = where[key]
            return ("e: coincident crossing points",
                    f"segments {other} and ({ia}, {ib}) share a projected crossing", [])
        where[key] = (ia, ib)
        gap = dot(d, x) - dot(d, y)
        if gap == 0:
            # unreachable for a valid embedding: the segments would meet
            return "e: segments meet at crossing", f"segments {ia}, {ib}", []
        a_over = gap > 0
        u, w = (sub(b, a), sub(dd, c)) if a_over else (sub(dd, c), sub(b, a))
        crossings.append(_Crossing(ia, ib, s_par, t_par, a_over, sign(det3(u, w, d))))
    return None, "", crossings


def genericity_failure(e: PLEmbedding, direction: Sequence) -> str | None:
    """The first violated genericity condition for ``direction``, or None.

    Condition (d), three segments concurrent in projection, shows up as two
    crossings at one projected point and is reported under (e).
    """
    cond, _, _ = _scan(e, direction_to_integers(direction))
    return cond


def find_generic_direction(e: PLEmbedding, skip: int = 0, budget: int = DEFAULT_CANDIDATE_BUDGET) -> Direction:
    """First candidate direction passing every genericity condition.

    ``skip`` discards that many passing candidates first, which gives a
    deterministic second (third, ...) direction for independence checks.
    """
    last = None
    for d in candidate_directions(budget):
        cond, detail, _ = _scan(e, direction_to_integers(d))
        if cond is None:
            if skip == 0:
                return d
            skip -= 1
        else:
            last = (cond, detail)
    if last is None:
        raise NoGenericDirectionError("budget exhausted", "not enough generic candidates")
    raise NoGenericDirectionError(last[0], f"no generic direction in {budget} candidates; last failure: {last[1]}")


# -- scene diagrams ---------------------------------------------------------

class Locator(NamedTuple):
    edge: int
    segment: int
    param: Fraction


class Crossing(NamedTuple):
    id: int
    over: Locator
    under: Locator
    sign: int


class EdgePassage(NamedTuple):
    """One passage of an edge (oriented low->high) through a crossing."""

    crossing: int
    other_edge: int
    over: bool
    sign: int


@dataclass(frozen=True)
class SceneDiagram:
    """Projection of a whole embedded K_n.

    Crossing signs refer to the edges oriented from their smaller to their
    larger endpoint. ``edge_passages[k]`` lists the crossings met along edge
    ``k`` in that direction.
    """

    n: int
    direction: Direction
    edges: tuple[tuple[int, int], ...]
    crossings: tuple[Crossing, ...]
    edge_passages: tuple[tuple[EdgePassage, ...], ...]

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: k for k, e in enumerate(self.edges)}

    @cached_property
    def edge_pair_sums(self) -> list[list[int]]:
        """Signed crossing count between every two edges (symmetric)."""
        m = len(self.edges)
        out = [[0] * m for _ in range(m)]
        for c in self.crossings:
            a, b = c.over.edge, c.under.edge
            out[a][b] += c.sign
            out[b][a] += c.sign
        return out


def build_scene_diagram(e: PLEmbedding, d: Sequence | None = None) -> SceneDiagram:
    """Project ``e`` along ``d`` (default: :func:`find_generic_direction`).

    The viewer sits at +infinity along ``d``; the strand with the larger
    height along ``d`` passes over. A crossing is positive when
    (over direction x under direction) points toward the viewer, i.e. the
    under strand passes right-to-left beneath the over strand.
    """
    if d is None:
        d = find_generic_direction(e)
    d = tuple(Fraction(c) for c in d)
    cond, detail, raw = _scan(e, direction_to_integers(d))
    if cond is not None:
        raise GenericityError(cond, detail)
    segs = e.segments
    crossings = []
    per_edge: list[list[tuple[tuple[int, Fraction], EdgePassage]]] = [[] for _ in e.edges]
    for cid, c in enumerate(raw):
        la = Locator(segs[c.seg_a].edge, segs[c.seg_a].index, c.s)
        lb = Locator(segs[c.seg_b].edge, segs[c.seg_b].index, c.t)
        over, under = (la, lb) if c.a_over else (lb, la)
        crossings.append(Crossing(cid, over, under, c.sign))
        per_edge[over.edge].append(((over.segment, over.param), EdgePassage(cid, under.edge, True, c.sign)))
        per_edge[under.edge].append(((under.segment, under.param), EdgePassage(cid, over.edge, False, c.sign)))
    passages = tuple(tuple(p for _, p in sorted(lst, key=lambda x: x[0])) for lst in per_edge)
    return SceneDiagram(e.n, d, tuple(e.edges), tuple(crossings), passages)
