"""Linking numbers and the second Conway coefficient, with oracles."""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .diagram import GaussDiagram, LinkDiagram, Passage, check_passages
from .geometry import PLEmbedding, cross, dot, det3, sign, sub
from .graph import CyclePair

SKEIN_CUTOFF = 14


class InconsistentDiagramError(RuntimeError):
    """Diagram data that no genuine projection can produce."""


class DegenerateContactError(ValueError):
    pass


class OracleUnavailable(Exception):
    """The skein oracle declined to run (too many crossings)."""


def linking_number(ld: LinkDiagram) -> int:
    """Half the signed count of crossings between the two components."""
    if ld.component_count != 2:
        raise ValueError(f"linking number needs 2 components, got {ld.component_count}")
    total = sum(s for _, s in ld.inter_crossings())
    if total % 2:
        raise InconsistentDiagramError(f"odd signed inter-component crossing sum {total}")
    return total // 2


def triangle_disk_lk_oracle(e: PLEmbedding, pair: CyclePair) -> int:
    """lk of two straight triangles, counted as signed hits of the second
    triangle's edges on the flat disk bounded by the first.

    A hit counts +1 when the edge crosses the disk along the normal given by
    the right-hand rule on the first triangle's orientation.
    """
    a, b = pair
    if len(a) != 3 or len(b) != 3:
        raise ValueError("both cycles must be triangles")
    for cyc in (a, b):
        for k in range(3):
            i, j = sorted((cyc[k], cyc[(k + 1) % 3]))
            if (i, j) in e.bends:
                raise ValueError(f"edge {i}-{j} is bent")
    pts = e.int_points
    p0, p1, p2 = (pts[v - 1] for v in a)
    normal = cross(sub(p1, p0), sub(p2, p0))
    total = 0
    for k in range(3):
        x, y = pts[b[k] - 1], pts[b[(k + 1) % 3] - 1]
        hx, hy = dot(normal, sub(x, p0)), dot(normal, sub(y, p0))
        if hx == 0 or hy == 0:
            raise DegenerateContactError(f"vertex of {b} lies in the plane of {a}")
        if (hx > 0) == (hy > 0):
            continue
        # the crossing point is inside the triangle iff the segment passes
        # each edge line on the same side
        sides = [sign(det3(sub(q, x), sub(r, x), sub(y, x))) for q, r in ((p0, p1), (p1, p2), (p2, p0))]
        if 0 in sides:
            raise DegenerateContactError(f"segment of {b} hits the boundary of {a}")
        if sides[0] == sides[1] == sides[2]:
            total += 1 if hy > hx else -1
    return total


def _a2_count(seq: Sequence[Passage]) -> int:
    # chords (i1, j1), (i2, j2) with i1 < i2 < j1 < j2, where the earlier
    # chord is first met as an over passage and the later one as an under
    first: dict[int, tuple[int, bool]] = {}
    chords = []
    for pos, p in enumerate(seq):
        if p.crossing in first:
            i, over_first = first.pop(p.crossing)
            chords.append((i, pos, over_first, p.sign))
        else:
            first[p.crossing] = (pos, p.over)
    chords.sort()
    total = 0
    for k, (i1, j1, o1, s1) in enumerate(chords):
        if not o1:
            continue
        for i2, j2, o2, s2 in chords[k + 1:]:
            if i2 > j1:
                break
            if not o2 and j2 > j1:
                total += s1 * s2
    return total


def a2_of_passages(seq: Sequence[Passage]) -> int:
    """a2 straight from a based passage sequence of a knot diagram."""
    return _a2_count(seq)


def a2(gd: GaussDiagram) -> int:
    """Second Conway coefficient of the knot carried by ``gd``.

    Counts pairs of interleaved arrows in which the earlier arrow starts at
    an over passage and the later one at an under passage, weighted by the
    product of their signs. Unknot 0, trefoils 1, figure-eight -1.
    """
    return _a2_count(gd.passages())


# -- Conway polynomial by skein resolution ----------------------------------

Components = tuple[tuple[tuple[int, bool, int], ...], ...]


def _first_non_descending(comps: Components):
    seen = set()
    for k, comp in enumerate(comps):
        for pos, (c, over, s) in enumerate(comp):
            if c in seen:
                continue
            seen.add(c)
            if not over:
                return c, s
    return None


def _switch(comps: Components, c: int) -> Components:
    return tuple(
        tuple((x, (not over) if x == c else over, -s if x == c else s) for x, over, s in comp)
        for comp in comps)


def _smooth(comps: Components, c: int) -> Components:
    # the first component keeps its basepoint, so the part already walked
    # stays descending
    hits = [(k, pos) for k, comp in enumerate(comps) for pos, p in enumerate(comp) if p[0] == c]
    (k1, i), (k2, j) = hits
    if k1 == k2:
        comp = comps[k1]
        return comps[:k1] + (comp[:i] + comp[j + 1:], comp[i + 1:j]) + comps[k1 + 1:]
    a, b = comps[k1], comps[k2]
    merged = a[:i] + b[j + 1:] + b[:j] + a[i + 1:]
    return tuple(merged if k == k1 else comp for k, comp in enumerate(comps) if k != k2)


def _groups(pieces: list[tuple], skip: int | None = None) -> list[int]:
    """Union-find labels of ``pieces`` joined by shared crossings."""
    parent = list(range(len(pieces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    where: dict[int, int] = {}
    for k, piece in enumerate(pieces):
        for c, _, _ in piece:
            if c == skip:
                continue
            if c in where:
                parent[find(k)] = find(where[c])
            else:
                where[c] = k
    return [find(k) for k in range(len(pieces))]


def _nugatory(comps: Components):
    """First self-crossing whose two arcs lie in separate parts of the
    diagram, with the component index and the two positions."""
    for k, comp in enumerate(comps):
        first: dict[int, int] = {}
        for pos, (c, _, _) in enumerate(comp):
            if c not in first:
                first[c] = pos
                continue
            i = first[c]
            inner, outer = comp[i + 1:pos], comp[pos + 1:] + comp[:i]
            pieces = [inner, outer] + [x for m, x in enumerate(comps) if m != k]
            g = _groups(pieces, skip=c)
            if g[0] != g[1]:
                side = {n for n, lab in enumerate(g) if lab == g[0]}
                return k, i, pos, side
    return None


def _reduce(comps: Components) -> Components | None:
    """Drop nugatory crossings; None if the diagram is split."""
    while True:
        if len(comps) > 1:
            g = _groups(list(comps))
            if len(set(g)) > 1:
                return None
        hit = _nugatory(comps)
        if hit is None:
            return comps
        k, i, j, side = hit
        # Untwisting the crossing turns the part on one side over: a half
        # turn about an axis in the projection plane, which swaps over and
        # under there and keeps every crossing sign.
        others = [m for m in range(len(comps)) if m != k]
        flip = set()
        for n in side:
            piece = comps[k][i + 1:j] if n == 0 else comps[others[n - 2]] if n >= 2 else ()
            flip.update(c for c, _, _ in piece)
        c0 = comps[k][i][0]
        comps = tuple(
            tuple((c, (not over) if c in flip else over, s) for c, over, s in comp if c != c0)
            for comp in comps)


def _relabel(comps: Components) -> Components:
    label: dict[int, int] = {}
    out = []
    for comp in comps:
        row = []
        for c, over, s in comp:
            if c not in label:
                label[c] = len(label)
            row.append((label[c], over, s))
        out.append(tuple(row))
    return tuple(out)


def _poly_add(p: list[int], q: list[int]) -> list[int]:
    out = [0] * max(len(p), len(q))
    for k, v in enumerate(p):
        out[k] += v
    for k, v in enumerate(q):
        out[k] += v
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _conway(comps: Components) -> tuple[int, ...]:
    reduced = _reduce(comps)
    if reduced is None:
        return (0,)
    return _conway_reduced(_relabel(reduced))


@lru_cache(maxsize=200_000)
def _conway_reduced(comps: Components) -> tuple[int, ...]:
    hit = _first_non_descending(comps)
    if hit is None:
        # descending diagrams are unlinks
        return (1,) if len(comps) == 1 else (0,)
    c, s = hit
    switched = list(_conway(_switch(comps, c)))
    smoothed = [0] + [s * v for v in _conway(_smooth(comps, c))]
    return tuple(_poly_add(switched, smoothed))


def conway_skein_oracle(ld: LinkDiagram, cutoff: int = SKEIN_CUTOFF) -> list[int]:
    """Conway polynomial coefficients [z^0, z^1, ...] by skein resolution.

    Crossings are switched, in traversal order, until the diagram is
    descending (components stacked top to bottom, each met first from
    above), which is an unlink. ``nabla(L) = nabla(L') + sign * z * nabla(L0)``
    with ``L'`` the switched and ``L0`` the smoothed diagram. Before each
    step split diagrams evaluate to 0 and nugatory crossings are untwisted.
    """
    if ld.component_count < 1:
        raise ValueError("empty diagram")
    check_passages(ld.passages)
    if len(ld.crossing_ids) > cutoff:
        raise OracleUnavailable(f"{len(ld.crossing_ids)} crossings exceed cutoff {cutoff}")
    relabel = {c: k for k, c in enumerate(ld.crossing_ids)}
    comps = tuple(tuple((relabel[p.crossing], p.over, p.sign) for p in comp) for comp in ld.passages)
    return list(_conway(comps))


def coefficient(poly: Sequence[int], k: int) -> int:
    return poly[k] if k < len(poly) else 0
