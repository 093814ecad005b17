"""Classification pipeline: twist test, block structures, placement of the
rotation number inside the forced rotation interval, and the strangely
ordered verdict.

A twist is a regular cycle whose code rises strictly along every branch
(at rotation number 1/3 the primitive 3-cycle is the only one).  A cycle
sits at the frontier when its own rotation number is an endpoint of the
interval its loops force; strangely ordered cycles are frontier cycles
that are neither twists nor block structures over a twist.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .core import TriodPattern, compact_pattern, temporal_orbit
from .graph import RotationInterval, is_regular, rotation_interval
from .rotation import (
    CodeClass,
    Color,
    RotationData,
    classify_code,
    color_counts,
    is_green,
    rotation_data,
)

ONE_THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class Placement:
    kind: str  # "interior" | "frontier" | "degenerate"
    side: Optional[str] = None  # "lo" | "hi" for frontier

    @property
    def is_frontier(self) -> bool:
        return self.kind == "frontier"

    @property
    def frontier_or_degenerate(self) -> bool:
        return self.kind in ("frontier", "degenerate")

    def __str__(self) -> str:
        return self.kind if self.side is None else f"{self.kind}:{self.side}"


@dataclass(frozen=True)
class BlockStructure:
    m: int  # number of blocks == period of the quotient
    blocks: tuple[tuple[str, ...], ...]  # each in temporal order
    quotient: TriodPattern


@dataclass(frozen=True)
class ClassificationReport:
    rotation: RotationData
    interval: RotationInterval
    code_class: CodeClass
    colors: dict[Color, int]
    regular: bool
    green: bool
    twist: bool
    block_over_twist: Optional[BlockStructure]
    placement: Placement
    strangely_ordered: bool


def placement(p: TriodPattern) -> Placement:
    """Exact comparison of the rotation number with the interval ends."""
    rho = rotation_data(p).number
    iv = rotation_interval(p)
    if iv.is_point():
        return Placement("degenerate")
    if rho == iv.lo:
        return Placement("frontier", "lo")
    if rho == iv.hi:
        return Placement("frontier", "hi")
    return Placement("interior")


def is_twist(p: TriodPattern) -> bool:
    """Regular with a strictly rising code; at rotation number 1/3 only
    the primitive 3-cycle qualifies."""
    data = rotation_data(p)
    if data.number == ONE_THIRD:
        return p.n == 3 and all(len(row) == 1 for row in p.branches)
    return is_regular(p) and classify_code(p) is CodeClass.STRICTLY_INCREASING


def _proper_divisors(n: int) -> list[int]:
    return [m for m in range(2, n) if n % m == 0]


def _blocks_for_divisor(p: TriodPattern, m: int) -> Optional[BlockStructure]:
    """Orbits of the m-th iterate as candidate blocks.

    If a block structure with m blocks exists at all, each block is
    invariant under f^m and therefore equals one of these orbits, so no
    other partition needs searching.  The candidate is accepted when every
    block stays inside one branch and the blocks' rank hulls are disjoint.
    """
    size = p.n // m
    orbit = temporal_orbit(p, p.points[0])
    position = {pt: i for i, pt in enumerate(orbit)}
    blocks = []
    for start in range(m):
        blocks.append(tuple(orbit[(start + j * m) % p.n] for j in range(size)))
    hulls: list[tuple[int, int, int]] = []
    for blk in blocks:
        bset = {p.branch_of(pt) for pt in blk}
        if len(bset) != 1:
            return None
        branch = bset.pop()
        ranks = [p.rank_of(pt) for pt in blk]
        hulls.append((branch, min(ranks), max(ranks)))
    for i, (b1, lo1, hi1) in enumerate(hulls):
        for b2, lo2, hi2 in hulls[i + 1 :]:
            if b1 == b2 and not (hi1 < lo2 or hi2 < lo1):
                return None
    # collapse each block to its innermost point; the induced map cycles
    # through the m blocks because f permutes the orbits of f^m
    rep = {blk: min(blk, key=lambda pt: p.rank_of(pt)) for blk in blocks}
    block_of = {pt: blk for blk in blocks for pt in blk}
    rows: list[list[str]] = [[], [], []]
    for blk in blocks:
        rows[p.branch_of(rep[blk])].append(rep[blk])
    for row in rows:
        row.sort(key=lambda pt: p.rank_of(pt))
    qmap = {rep[blk]: rep[block_of[p.nxt[rep[blk]]]] for blk in blocks}
    quotient = TriodPattern.build([rows[0], rows[1], rows[2]], qmap)
    ordered = sorted(blocks, key=lambda blk: position[rep[blk]])
    return BlockStructure(m, tuple(ordered), quotient)


def block_structure(p: TriodPattern) -> Optional[BlockStructure]:
    """First valid block structure, scanning block counts upward
    (coarsest quotient first); None when no divisor works."""
    for m in _proper_divisors(p.n):
        found = _blocks_for_divisor(p, m)
        if found is not None:
            return found
    return None


def block_over_twist(p: TriodPattern) -> Optional[BlockStructure]:
    """A block structure whose quotient is a twist, scanning every
    divisor rather than stopping at the first block structure."""
    for m in _proper_divisors(p.n):
        found = _blocks_for_divisor(p, m)
        if found is not None and is_twist(found.quotient):
            return found
    return None


def has_block_over_twist(p: TriodPattern) -> bool:
    return block_over_twist(p) is not None


def is_strangely_ordered(p: TriodPattern) -> bool:
    """Frontier, not a twist, and no block structure over a twist."""
    return (
        placement(p).is_frontier
        and not is_twist(p)
        and not has_block_over_twist(p)
    )


def classify(p: TriodPattern) -> ClassificationReport:
    """Full profile of a pattern; degenerate sub-results are encoded in
    the report rather than raised."""
    data = rotation_data(p)
    iv = rotation_interval(p)
    place = placement(p)
    twist = is_twist(p)
    botw = block_over_twist(p)
    return ClassificationReport(
        rotation=data,
        interval=iv,
        code_class=classify_code(p),
        colors=color_counts(p),
        regular=is_regular(p),
        green=is_green(p)[0],
        twist=twist,
        block_over_twist=botw,
        placement=place,
        strangely_ordered=place.is_frontier and not twist and botw is None,
    )


def report_invariant_violations(p: TriodPattern, rep: ClassificationReport) -> list[str]:
    """Internal consistency of a report.  A twist verdict must come with
    regularity, a coprime pair and a frontier (or single-point) interval;
    a strange verdict must come with a frontier interval, no twist and no
    block structure over a twist."""
    bad = []
    if rep.twist:
        if not rep.regular:
            bad.append("twist verdict on a non-regular pattern")
        if gcd(*rep.rotation.pair) != 1:
            bad.append("twist verdict with a non-coprime rotation pair")
        if not rep.placement.frontier_or_degenerate:
            bad.append("twist verdict with interior rotation number")
    if rep.strangely_ordered:
        if not rep.placement.is_frontier:
            bad.append("strange verdict without frontier placement")
        if rep.twist:
            bad.append("strange verdict on a twist")
        if rep.block_over_twist is not None:
            bad.append("strange verdict with a block structure over a twist")
    return bad


def report_to_dict(p: TriodPattern, rep: ClassificationReport) -> dict:
    """JSON-ready dict with every rational rendered as a p/q string."""
    return {
        "rotation": {
            "pair": list(rep.rotation.pair),
            "number": str(rep.rotation.number),
            "mrp": {"t": str(rep.rotation.mrp[0]), "m": rep.rotation.mrp[1]},
        },
        "interval": {"lo": str(rep.interval.lo), "hi": str(rep.interval.hi)},
        "code_class": rep.code_class.value,
        "colors": {
            "green": rep.colors[Color.GREEN],
            "black": rep.colors[Color.BLACK],
            "red": rep.colors[Color.RED],
        },
        "regular": rep.regular,
        "green": rep.green,
        "twist": rep.twist,
        "block_over_twist": None
        if rep.block_over_twist is None
        else {
            "m": rep.block_over_twist.m,
            "block_size": p.n // rep.block_over_twist.m,
            "quotient": json.loads(compact_pattern(rep.block_over_twist.quotient)),
        },
        "placement": {"kind": rep.placement.kind, "side": rep.placement.side},
        "strangely_ordered": rep.strangely_ordered,
    }
