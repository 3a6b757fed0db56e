"""Link diagrams and based Gauss diagrams cut out of a scene diagram."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .geometry import SceneDiagram
from .graph import Cycle, cycle_edges


class DisjointnessError(ValueError):
    pass


class ArityError(ValueError):
    pass


class DiagramError(ValueError):
    """Malformed passage sequence or Gauss diagram."""


class Passage(NamedTuple):
    """A component passing through a crossing.

    ``sign`` is the crossing sign for the components' own orientations.
    """

    crossing: int
    over: bool
    sign: int


def traverse(scene: SceneDiagram, cycle: Sequence[int], keep_edges: set[int]) -> list[tuple]:
    """``(EdgePassage, orientation)`` entries met walking ``cycle`` in its
    stored direction, keeping only crossings whose other strand lies on an
    edge in ``keep_edges``. Orientation is +1 when the edge is walked low to
    high."""
    index = scene.edge_index
    orient = {}
    order = []
    for lo, hi, o in cycle_edges(cycle):
        k = index[(lo, hi)]
        orient[k] = o
        order.append((k, o))
    out = []
    for k, o in order:
        entries = scene.edge_passages[k] if o > 0 else reversed(scene.edge_passages[k])
        for ep in entries:
            if ep.other_edge in keep_edges:
                out.append((ep, o))
    return out


@dataclass(frozen=True)
class LinkDiagram:
    """Crossing data of one or two constituent cycles.

    ``passages[i]`` is the cyclic passage sequence of component ``i``,
    starting at the canonical start vertex of ``cycles[i]``. Diagrams built
    by hand (no underlying cycles) leave ``cycles`` empty.
    """

    cycles: tuple[Cycle, ...]
    passages: tuple[tuple[Passage, ...], ...]

    @property
    def component_count(self) -> int:
        return len(self.passages)

    @property
    def crossing_ids(self) -> list[int]:
        return sorted({p.crossing for comp in self.passages for p in comp})

    def inter_crossings(self) -> list[tuple[int, int]]:
        """(crossing id, sign) for crossings between different components."""
        where: dict[int, set[int]] = {}
        signs = {}
        for k, comp in enumerate(self.passages):
            for p in comp:
                where.setdefault(p.crossing, set()).add(k)
                signs[p.crossing] = p.sign
        return [(c, signs[c]) for c in sorted(where) if len(where[c]) == 2]

    @classmethod
    def from_passages(cls, passages: Sequence[Sequence[Passage]]) -> "LinkDiagram":
        ld = cls((), tuple(tuple(Passage(*p) for p in comp) for comp in passages))
        check_passages(ld.passages)
        return ld

    @classmethod
    def from_code(cls, *codes: str) -> "LinkDiagram":
        """Parse one signed Gauss code per component, e.g. ``"O1+ U2+ O3+ U1+ O2+ U3+"``."""
        return cls.from_passages([parse_code(c) for c in codes])

    def mirror(self) -> "LinkDiagram":
        return LinkDiagram(self.cycles, tuple(
            tuple(Passage(p.crossing, not p.over, -p.sign) for p in comp) for comp in self.passages))


_TOKEN = re.compile(r"([OUou])(\d+)([+-])")


def parse_code(code: str) -> list[Passage]:
    out = []
    for tok in code.split():
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise DiagramError(f"bad Gauss code token {tok!r}")
        out.append(Passage(int(m.group(2)), m.group(1) in "Oo", 1 if m.group(3) == "+" else -1))
    return out


def check_passages(passages: Sequence[Sequence[Passage]]) -> None:
    seen: dict[int, list[Passage]] = {}
    for comp in passages:
        for p in comp:
            if p.sign not in (1, -1):
                raise DiagramError(f"crossing {p.crossing} has sign {p.sign}")
            seen.setdefault(p.crossing, []).append(p)
    for c, ps in seen.items():
        if len(ps) != 2:
            raise DiagramError(f"crossing {c} appears {len(ps)} times")
        if ps[0].over == ps[1].over:
            raise DiagramError(f"crossing {c} needs one over and one under passage")
        if ps[0].sign != ps[1].sign:
            raise DiagramError(f"crossing {c} has inconsistent signs")


def extract_link_diagram(scene: SceneDiagram, cycles: Sequence[Cycle]) -> LinkDiagram:
    """Restrict ``scene`` to one cycle or two disjoint cycles."""
    cycles = tuple(tuple(c) for c in cycles)
    if len(cycles) not in (1, 2):
        raise ArityError(f"expected 1 or 2 cycles, got {len(cycles)}")
    if len(cycles) == 2 and set(cycles[0]) & set(cycles[1]):
        raise DisjointnessError(f"cycles {cycles[0]} and {cycles[1]} share vertices")
    index = scene.edge_index
    orient: dict[int, int] = {}
    for cyc in cycles:
        for lo, hi, o in cycle_edges(cyc):
            orient[index[(lo, hi)]] = o
    keep = set(orient)
    comps = []
    for cyc in cycles:
        comp = []
        for ep, o in traverse(scene, cyc, keep):
            comp.append(Passage(ep.crossing, ep.over, ep.sign * o * orient[ep.other_edge]))
        comps.append(tuple(comp))
    return LinkDiagram(cycles, tuple(comps))


class Arrow(NamedTuple):
    first: int       # 1-based position of the earlier passage
    second: int
    sign: int
    over_first: bool


@dataclass(frozen=True)
class GaussDiagram:
    """Based chord diagram of a knot diagram with 2c passage positions."""

    size: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        used = sorted(x for a in self.arrows for x in (a.first, a.second))
        if used != list(range(1, self.size + 1)):
            raise DiagramError("arrow endpoints must use positions 1..2c exactly once")
        for a in self.arrows:
            if a.first >= a.second:
                raise DiagramError(f"arrow {a} must have first < second")
            if a.sign not in (1, -1):
                raise DiagramError(f"arrow {a} has bad sign")

    @classmethod
    def from_passages(cls, seq: Sequence[Passage]) -> "GaussDiagram":
        first: dict[int, int] = {}
        arrows = []
        for pos, p in enumerate(seq, start=1):
            if p.crossing in first:
                i = first.pop(p.crossing)
                prev = seq[i - 1]
                if prev.over == p.over or prev.sign != p.sign:
                    raise DiagramError(f"crossing {p.crossing} passages disagree")
                arrows.append(Arrow(i, pos, p.sign, prev.over))
            else:
                first[p.crossing] = pos
        if first:
            raise DiagramError(f"crossings {sorted(first)} met only once")
        return cls(len(seq), tuple(sorted(arrows)))

    def passages(self) -> list[Passage]:
        seq: list[Passage | None] = [None] * self.size
        for k, a in enumerate(self.arrows):
            seq[a.first - 1] = Passage(k, a.over_first, a.sign)
            seq[a.second - 1] = Passage(k, not a.over_first, a.sign)
        return seq  # type: ignore[return-value]

    def rotate(self, k: int) -> "GaussDiagram":
        """Move the base point forward past ``k`` passages."""
        seq = self.passages()
        if not seq:
            return self
        k %= len(seq)
        return GaussDiagram.from_passages(seq[k:] + seq[:k])


def gauss_diagram(ld: LinkDiagram) -> GaussDiagram:
    """Gauss diagram of a one-component diagram, based at the cycle start."""
    if ld.component_count != 1:
        raise ArityError(f"Gauss diagram needs one component, got {ld.component_count}")
    return GaussDiagram.from_passages(ld.passages[0])
