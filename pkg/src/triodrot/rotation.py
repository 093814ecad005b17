"""Displacement, colors, rotation data and the code function.

Every arrow of a cycle advances the branch index by 0, 1 or 2 steps
anticlockwise; the displacement is that step count over 3, and an arrow
is green, black or red accordingly.  Summing displacements around the
cycle counts full revolutions and yields the rotation pair.  The code of
a point tracks the fractional lag of its orbit against the rigid rotation
with the same rotation number; it is undefined when the rotation number
is exactly 1/3.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .core import TriodPattern, temporal_orbit
from .errors import BranchEmpty, CodeUndefinedAtOneThird, NoCanonicalOrdering

ONE_THIRD = Fraction(1, 3)


class Color(enum.Enum):
    GREEN = 0
    BLACK = 1
    RED = 2

    @property
    def thirds(self) -> int:
        return self.value


class CodeClass(enum.Enum):
    STRICTLY_INCREASING = "strictly-increasing"
    NON_DECREASING = "non-decreasing"
    DECREASING = "decreasing"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class RotationData:
    pair: tuple[int, int]
    number: Fraction
    mrp: tuple[Fraction, int]

    @property
    def coprime(self) -> bool:
        return self.mrp[1] == 1


@dataclass(frozen=True)
class CodeAssignment:
    """Exact rational code for every point, anchored at psi(base) = 0."""

    base: str
    psi: dict[str, Fraction]

    def __getitem__(self, pt: str) -> Fraction:
        return self.psi[pt]


def displacement(p: TriodPattern, u: str, v: str) -> Fraction:
    """Anticlockwise branch advance from u to v, in thirds of a turn."""
    k = (p.branch_of(v) - p.branch_of(u)) % 3
    return Fraction(k, 3)


def displacement_thirds(p: TriodPattern, u: str, v: str) -> int:
    return (p.branch_of(v) - p.branch_of(u)) % 3


def rotation_data(p: TriodPattern) -> RotationData:
    """Rotation pair, number and modified pair of the fundamental loop."""
    total = sum(displacement_thirds(p, pt, p.nxt[pt]) for pt in p.points)
    assert total % 3 == 0  # a cycle returns to its starting branch
    revs = total // 3
    number = Fraction(revs, p.n)
    multiplicity = p.n // number.denominator
    return RotationData((revs, p.n), number, (number, multiplicity))


def colors(p: TriodPattern) -> dict[str, Color]:
    """Color of each point, i.e. of the arrow from it to its image."""
    return {pt: Color(displacement_thirds(p, pt, p.nxt[pt])) for pt in p.points}


def color_counts(p: TriodPattern) -> dict[Color, int]:
    cnt = {Color.GREEN: 0, Color.BLACK: 0, Color.RED: 0}
    for c in colors(p).values():
        cnt[c] += 1
    return cnt


# -- canonical ordering ----------------------------------------------------

_ROTATIONS = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
# reversal flips the cyclic orientation of the branches, swapping black
# and red arrows; composed with the three rotations
_REVERSALS = [(0, 2, 1), (1, 0, 2), (2, 1, 0)]


def canonical_ordering(p: TriodPattern) -> tuple[TriodPattern, bool]:
    """Relabel branches so that every innermost point is black.

    Searches the three cyclic rotations, then the three orientation
    reversals; the flag reports whether a reversal was needed.  Raises
    NoCanonicalOrdering when nothing works (only possible for cycles
    that are not regular) and BranchEmpty when a branch has no points.
    """
    for b, pts in enumerate(p.branches):
        if not pts:
            raise BranchEmpty(b)
    for reversed_flag, group in ((False, _ROTATIONS), (True, _REVERSALS)):
        for perm in group:
            q = p.relabel_branches(perm)
            if all(
                displacement_thirds(q, pts[0], q.nxt[pts[0]]) == 1
                for pts in q.branches
            ):
                return q, reversed_flag
    raise NoCanonicalOrdering()


# -- code function ---------------------------------------------------------


def code_function(p: TriodPattern, base: str) -> CodeAssignment:
    """Code of every point relative to psi(base) = 0.

    Walking the orbit, the code after k steps is k*rho minus the floor of
    the accumulated displacement.  Any base gives the same values up to an
    additive constant, and the walk closes up exactly after one period.
    """
    rho = rotation_data(p).number
    if rho == ONE_THIRD:
        raise CodeUndefinedAtOneThird()
    psi: dict[str, Fraction] = {base: Fraction(0)}
    t = Fraction(0)
    orbit = temporal_orbit(p, base)
    for k, pt in enumerate(orbit[1:], start=1):
        t += displacement(p, orbit[k - 1], pt)
        psi[pt] = k * rho - (t.numerator // t.denominator)
    return CodeAssignment(base, psi)


def normalized_code(p: TriodPattern) -> CodeAssignment:
    """Code anchored so that the least value is 0.

    The anchor is the spatially first point attaining the minimum; this is
    the normalization under which one point per revolution carries code 1.
    """
    raw = code_function(p, p.points[0])
    low = min(raw.psi.values())
    base = next(pt for pt in p.points if raw.psi[pt] == low)
    return CodeAssignment(base, {pt: v - low for pt, v in raw.psi.items()})


def classify_code(p: TriodPattern) -> CodeClass:
    """Monotonicity class of the code along each branch.

    Below rotation number 1/3 the code of a non-decreasing cycle falls
    weakly outward; above 1/3 it rises weakly.  Strict means additionally
    that no two branch-adjacent points share a code.
    """
    rho = rotation_data(p).number
    if rho == ONE_THIRD:
        return CodeClass.UNDEFINED
    psi = code_function(p, p.points[0]).psi
    outward_sign = -1 if rho < ONE_THIRD else 1  # sign of psi(outer) - psi(inner)
    strict = True
    for pts in p.branches:
        for inner, outer in zip(pts, pts[1:]):
            diff = psi[outer] - psi[inner]
            if diff * outward_sign < 0:
                return CodeClass.DECREASING
            if diff == 0:
                strict = False
    return CodeClass.STRICTLY_INCREASING if strict else CodeClass.NON_DECREASING


def is_green(p: TriodPattern) -> tuple[bool, tuple[str, str] | None]:
    """Whether the map never reverses the order of two points whose
    images share a branch; returns the first violating pair (x, y) with
    x > y but f(x) <= f(y)."""
    for pts in p.branches:
        for i, y in enumerate(pts):
            for x in pts[i + 1 :]:
                fx, fy = p.nxt[x], p.nxt[y]
                if p.branch_of(fx) != p.branch_of(fy):
                    continue
                if p.rank_of(fx) <= p.rank_of(fy):
                    return False, (x, y)
    return True, None
