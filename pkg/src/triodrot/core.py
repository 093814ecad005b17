"""Pattern data model for cycles on a triod.

A triod is three copies of an interval glued at a common branching point,
written ``a``.  The three branches are indexed 0, 1, 2 in the anticlockwise
direction.  A pattern of period n is a set of n labelled points distributed
over the branches, each with a spatial rank (rank 1 is nearest to ``a``),
together with a map that permutes the points in a single n-cycle.

The branching point itself is never a pattern point.  In interval data it is
represented by ``None`` and rendered as ``A``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import (
    BadBranchIndex,
    DuplicateLabel,
    EmptyPattern,
    NotSingleCycle,
    PatternError,
    UnknownPoint,
)

NUM_BRANCHES = 3


@dataclass(frozen=True)
class TriodPattern:
    """A single n-cycle on the triod, immutable after construction.

    branches holds the point labels of each branch in spatial order
    (rank 1 first); nxt is the cycle map restricted to the points.
    Use :meth:`build` or :func:`parse_pattern` to get a validated instance.
    """

    branches: tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]
    nxt: dict[str, str]
    _branch_of: dict[str, int] = field(repr=False, compare=False, default_factory=dict)
    _rank_of: dict[str, int] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        branch_of: dict[str, int] = {}
        rank_of: dict[str, int] = {}
        for b, pts in enumerate(self.branches):
            for i, pt in enumerate(pts):
                branch_of[pt] = b
                rank_of[pt] = i + 1
        object.__setattr__(self, "_branch_of", branch_of)
        object.__setattr__(self, "_rank_of", rank_of)

    # -- construction ---------------------------------------------------

    @classmethod
    def build(cls, branches, mapping) -> "TriodPattern":
        """Validate raw branch lists and a map and return a pattern.

        Raises EmptyPattern, BadBranchIndex, DuplicateLabel or
        NotSingleCycle; the message names the offending label or field.
        """
        if not isinstance(branches, (list, tuple)) or len(branches) != NUM_BRANCHES:
            raise BadBranchIndex(
                f"'branches' must list exactly {NUM_BRANCHES} branches, "
                f"got {len(branches) if isinstance(branches, (list, tuple)) else type(branches).__name__}"
            )
        seen: set[str] = set()
        norm: list[tuple[str, ...]] = []
        for b, pts in enumerate(branches):
            if not isinstance(pts, (list, tuple)):
                raise BadBranchIndex(f"branch b{b} is not a list of labels")
            row = []
            for pt in pts:
                if not isinstance(pt, str) or not pt:
                    raise PatternError(f"branch b{b} contains a non-string label: {pt!r}")
                if pt in seen:
                    raise DuplicateLabel(pt)
                seen.add(pt)
                row.append(pt)
            norm.append(tuple(row))
        if not seen:
            raise EmptyPattern("pattern has no points")

        if not isinstance(mapping, dict):
            raise NotSingleCycle("'map' must be an object mapping label -> label")
        for k, v in mapping.items():
            if k not in seen:
                raise NotSingleCycle(f"map key {k!r} is not a pattern point")
            if v not in seen:
                raise NotSingleCycle(f"map value {v!r} (image of {k!r}) is not a pattern point")
        missing = seen - set(mapping)
        if missing:
            raise NotSingleCycle(f"map has no image for {min(missing)!r}")
        if len(set(mapping.values())) != len(seen):
            hit: dict[str, str] = {}
            for k, v in mapping.items():
                if v in hit:
                    raise NotSingleCycle(f"map sends both {hit[v]!r} and {k!r} to {v!r}")
                hit[v] = k

        # one orbit must cover all points
        start = norm[0][0] if norm[0] else (norm[1][0] if norm[1] else norm[2][0])
        cur, count = start, 0
        while True:
            cur = mapping[cur]
            count += 1
            if cur == start:
                break
        if count != len(seen):
            raise NotSingleCycle(
                f"map splits into several cycles (orbit of {start!r} has length {count}, period is {len(seen)})"
            )
        return cls(tuple(norm), dict(mapping))

    # -- lookups ---------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.nxt)

    @property
    def points(self) -> tuple[str, ...]:
        """All points in spatial order: branch 0 inward-out, then 1, then 2."""
        return self.branches[0] + self.branches[1] + self.branches[2]

    def branch_of(self, pt: str) -> int:
        try:
            return self._branch_of[pt]
        except KeyError:
            raise UnknownPoint(pt) from None

    def rank_of(self, pt: str) -> int:
        try:
            return self._rank_of[pt]
        except KeyError:
            raise UnknownPoint(pt) from None

    def image(self, pt: str) -> str:
        try:
            return self.nxt[pt]
        except KeyError:
            raise UnknownPoint(pt) from None

    def spans_branching_point(self) -> bool:
        """True when the convex hull of the points contains ``a``,
        i.e. at least two branches are occupied."""
        return sum(1 for pts in self.branches if pts) >= 2

    def relabel_branches(self, perm: tuple[int, int, int]) -> "TriodPattern":
        """Move branch b to index perm[b]; labels, ranks and map unchanged."""
        rows: list[tuple[str, ...]] = [(), (), ()]
        for b, pts in enumerate(self.branches):
            rows[perm[b]] = pts
        return TriodPattern((rows[0], rows[1], rows[2]), dict(self.nxt))


# -- file format ----------------------------------------------------------


def parse_pattern(document: str) -> TriodPattern:
    """Parse the JSON pattern format and validate it.

    The document looks like::

        {"period": 3,
         "branches": [["x"], ["y"], ["z"]],
         "map": {"x": "y", "y": "z", "z": "x"}}

    Branch lists run outward from the branching point; file position
    defines the spatial rank.
    """
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise PatternError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise PatternError("top level must be an object")
    for key in ("period", "branches", "map"):
        if key not in doc:
            raise PatternError(f"missing field {key!r}")
    pattern = TriodPattern.build(doc["branches"], doc["map"])
    if doc["period"] != pattern.n:
        raise PatternError(
            f"'period' is {doc['period']} but the branches hold {pattern.n} points"
        )
    return pattern


def serialize_pattern(p: TriodPattern) -> str:
    """Canonical byte-deterministic rendering; parse(serialize(p)) == p.

    Keys appear in the order period/branches/map, the map keys follow the
    temporal orbit starting from the lexicographically least label.
    """
    start = min(p.nxt)
    order = temporal_orbit(p, start)
    doc = {
        "period": p.n,
        "branches": [list(row) for row in p.branches],
        "map": {pt: p.nxt[pt] for pt in order},
    }
    return json.dumps(doc, indent=2) + "\n"


def compact_pattern(p: TriodPattern) -> str:
    """One-line rendering, used in reports and counterexample listings."""
    start = min(p.nxt)
    order = temporal_orbit(p, start)
    doc = {
        "period": p.n,
        "branches": [list(row) for row in p.branches],
        "map": {pt: p.nxt[pt] for pt in order},
    }
    return json.dumps(doc, separators=(",", ":"))


# -- basic intervals -------------------------------------------------------


@dataclass(frozen=True)
class BasicInterval:
    """A component of [P] - (P + {a}): an open interval of one branch.

    lower is None when the inner endpoint is the branching point, which
    happens exactly for rank-1 points once the hull spans two branches.
    """

    branch: int
    lower: Optional[str]
    upper: str
    index: int

    @property
    def name(self) -> str:
        lo = "A" if self.lower is None else self.lower
        return f"({lo},{self.upper})"


def basic_intervals(p: TriodPattern) -> list[BasicInterval]:
    """All basic intervals, ordered by branch then outward by rank."""
    spans = p.spans_branching_point()
    out: list[BasicInterval] = []
    for b, pts in enumerate(p.branches):
        if not pts:
            continue
        if spans:
            out.append(BasicInterval(b, None, pts[0], len(out)))
        for lo, hi in zip(pts, pts[1:]):
            out.append(BasicInterval(b, lo, hi, len(out)))
    return out


# -- orbits and shape ------------------------------------------------------


def temporal_orbit(p: TriodPattern, start: str) -> list[str]:
    """The n points visited from start under the cycle map."""
    if start not in p.nxt:
        raise UnknownPoint(start)
    out = [start]
    cur = p.nxt[start]
    while cur != start:
        out.append(cur)
        cur = p.nxt[cur]
    return out


def outward_jumps(p: TriodPattern) -> list[str]:
    """Points whose image lies strictly farther out on the same branch.

    A cycle with such a jump cannot belong to a map whose unique fixed
    point is the branching point: the map would cross the diagonal beyond
    the jump.  Patterns with jumps still parse, but the dynamical theory
    does not apply to them.
    """
    bad = []
    for pt in p.points:
        img = p.nxt[pt]
        if p.branch_of(img) == p.branch_of(pt) and p.rank_of(img) > p.rank_of(pt):
            bad.append(pt)
    return bad


def is_realizable(p: TriodPattern) -> bool:
    """True when some map fixing only the branching point has this cycle."""
    return not outward_jumps(p)


def _direction(p: TriodPattern, origin: str, target: Optional[str]) -> str:
    """Direction of the tree path leaving origin toward target:
    'out' along origin's branch, otherwise 'in' (toward the branching
    point, including every other branch).  target None means ``a``."""
    if target is None:
        return "in"
    if p.branch_of(target) == p.branch_of(origin):
        return "out" if p.rank_of(target) > p.rank_of(origin) else "in"
    return "in"


def fold_points(p: TriodPattern) -> list[str]:
    """Points where the piecewise linear map folds.

    A fold sits at a point whose two spatial neighbours (the branching
    point counts as the inner neighbour of rank-1 points) have images on
    the same side of the point's own image in the tree order.
    """
    folds = []
    for b, pts in enumerate(p.branches):
        for i, c in enumerate(pts):
            if i + 1 >= len(pts):
                continue  # outermost point of the branch: no outer neighbour
            inner = pts[i - 1] if i > 0 else None  # None = branching point, image a
            outer = pts[i + 1]
            img = p.nxt[c]
            d_in = _direction(p, img, None if inner is None else p.nxt[inner])
            d_out = _direction(p, img, p.nxt[outer])
            if d_in == d_out:
                folds.append(c)
    return folds


def is_unimodal(p: TriodPattern) -> tuple[bool, Optional[str]]:
    """Whether the map has exactly one fold; returns the critical point."""
    folds = fold_points(p)
    if len(folds) == 1:
        return True, folds[0]
    return False, None
