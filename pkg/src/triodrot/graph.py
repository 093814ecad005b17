"""Oriented graphs of a cycle and the forced rotation interval.

The point graph has an arc x -> y whenever some point w at or inside x on
the same branch has its image at or beyond y on y's branch; for the
piecewise linear map this captures every way the image of the segment
from the branching point to x can reach y.  Arc weights count branch
advances in thirds, so cycle means of the weights, divided by 3, are
rotation numbers of loops.  The rotation interval is the min/max cycle
mean, computed exactly by a Karp dynamic program and cross-checkable
against full elementary-cycle enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import BasicInterval, TriodPattern, basic_intervals
from .errors import CapExceeded, CoverBroken, NotStronglyConnected

DEFAULT_LOOP_CAP = 10**6


@dataclass(frozen=True)
class OrientedGraph:
    """Directed graph with integer third-of-a-turn weights on the arcs."""

    vertices: tuple[str, ...]
    arcs: tuple[tuple[str, str, int], ...]

    def adjacency(self) -> dict[str, list[tuple[str, int]]]:
        adj: dict[str, list[tuple[str, int]]] = {v: [] for v in self.vertices}
        for u, v, w in self.arcs:
            adj[u].append((v, w))
        return adj


@dataclass(frozen=True)
class RotationInterval:
    lo: Fraction
    hi: Fraction

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class Loop:
    """An elementary loop with its rotation data."""

    nodes: tuple[str, ...]
    revolutions: int
    length: int

    @property
    def pair(self) -> tuple[int, int]:
        return (self.revolutions, self.length)

    @property
    def number(self) -> Fraction:
        return Fraction(self.revolutions, self.length)


# -- graph construction ----------------------------------------------------


def point_graph(p: TriodPattern) -> OrientedGraph:
    """Arc x -> y iff some w <= x on x's branch has f(w) >= y.

    The image of the segment [a, x] under the piecewise linear map attains
    its farthest reach in every branch at the image of a pattern point, so
    scanning points inside x is exhaustive.
    """
    arcs: list[tuple[str, str, int]] = []
    for b, pts in enumerate(p.branches):
        reach = [0, 0, 0]  # farthest image rank per branch over w <= x
        for x in pts:
            img = p.nxt[x]
            ib = p.branch_of(img)
            reach[ib] = max(reach[ib], p.rank_of(img))
            for tb, tpts in enumerate(p.branches):
                w = (tb - b) % 3
                for y in tpts[: reach[tb]]:
                    arcs.append((x, y, w))
    return OrientedGraph(p.points, tuple(arcs))


def _endpoint_image(p: TriodPattern, endpoint: Optional[str]) -> Optional[str]:
    # None is the branching point, which the map fixes
    return None if endpoint is None else p.nxt[endpoint]


def covers(p: TriodPattern, src: BasicInterval, dst: BasicInterval) -> bool:
    """Whether the image of src under the piecewise linear map contains dst."""
    lo_img = _endpoint_image(p, src.lower)
    hi_img = p.nxt[src.upper]
    dst_top = p.rank_of(dst.upper)
    if lo_img is None:
        # image is the straight run from the branching point to hi_img
        return p.branch_of(hi_img) == dst.branch and p.rank_of(hi_img) >= dst_top
    b1, b2 = p.branch_of(lo_img), p.branch_of(hi_img)
    if b1 == b2:
        # image stays inside one branch; an interval hanging off the
        # branching point can never fit
        if dst.branch != b1 or dst.lower is None:
            return False
        r1, r2 = p.rank_of(lo_img), p.rank_of(hi_img)
        lo, hi = min(r1, r2), max(r1, r2)
        return lo <= p.rank_of(dst.lower) and dst_top <= hi
    # image passes through the branching point: two rays from it
    for e in (lo_img, hi_img):
        if p.branch_of(e) == dst.branch and p.rank_of(e) >= dst_top:
            return True
    return False


def basic_interval_graph(p: TriodPattern) -> OrientedGraph:
    """Covering graph of the basic intervals, arcs weighted like points."""
    ivs = basic_intervals(p)
    arcs = []
    for src in ivs:
        for dst in ivs:
            if covers(p, src, dst):
                arcs.append((src.name, dst.name, (dst.branch - src.branch) % 3))
    return OrientedGraph(tuple(iv.name for iv in ivs), tuple(arcs))


def to_dot(g: OrientedGraph, name: str = "G") -> str:
    """DOT rendering for diagnostics, arcs annotated with their weight."""
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for u, v, w in g.arcs:
        lines.append(f'  "{u}" -> "{v}" [label="w={w}/3"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- connectivity and cycle means -------------------------------------------


def is_strongly_connected(g: OrientedGraph) -> bool:
    if not g.vertices:
        return True

    def reach(adj: dict[str, list[str]]) -> set[str]:
        seen = {g.vertices[0]}
        stack = [g.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    fwd: dict[str, list[str]] = {v: [] for v in g.vertices}
    rev: dict[str, list[str]] = {v: [] for v in g.vertices}
    for u, v, _ in g.arcs:
        fwd[u].append(v)
        rev[v].append(u)
    n = len(g.vertices)
    return len(reach(fwd)) == n and len(reach(rev)) == n


def _karp_min_mean(n: int, arcs: Sequence[tuple[int, int, int]]) -> Optional[Fraction]:
    """Minimum cycle mean of integer-weighted arcs on vertices 0..n-1,
    exact, or None when the graph is acyclic.  Karp's dynamic program on
    walk lengths 0..n from an added virtual source reaching every vertex."""
    if n == 0:
        return None
    # distances by exact walk length; the virtual source is simulated by
    # starting every vertex at 0, which preserves the cycle-mean formula
    prev = [0] * n
    table = [prev]
    for _ in range(n):
        cur: list[Optional[int]] = [None] * n
        for u, v, w in arcs:
            du = prev[u]
            if du is None:
                continue
            cand = du + w
            if cur[v] is None or cand < cur[v]:
                cur[v] = cand
        table.append(cur)
        prev = cur
    best: Optional[Fraction] = None
    for v in range(n):
        dn = table[n][v]
        if dn is None:
            continue
        worst: Optional[Fraction] = None
        for k in range(n):
            dk = table[k][v]
            if dk is None:
                continue
            val = Fraction(dn - dk, n - k)
            if worst is None or val > worst:
                worst = val
        if worst is not None and (best is None or worst < best):
            best = worst
    return best


def min_cycle_mean(g: OrientedGraph) -> Optional[Fraction]:
    index = {v: i for i, v in enumerate(g.vertices)}
    arcs = [(index[u], index[v], w) for u, v, w in g.arcs]
    return _karp_min_mean(len(g.vertices), arcs)


def max_cycle_mean(g: OrientedGraph) -> Optional[Fraction]:
    index = {v: i for i, v in enumerate(g.vertices)}
    arcs = [(index[u], index[v], -w) for u, v, w in g.arcs]
    mean = _karp_min_mean(len(g.vertices), arcs)
    return None if mean is None else -mean


def rotation_interval(p: TriodPattern) -> RotationInterval:
    """Smallest interval of rotation numbers over all loops of the point
    graph, computed from exact min/max cycle means."""
    g = point_graph(p)
    if not is_strongly_connected(g):
        raise NotStronglyConnected("point graph of a cycle must be strongly connected")
    lo = min_cycle_mean(g)
    hi = max_cycle_mean(g)
    assert lo is not None and hi is not None
    return RotationInterval(lo / 3, hi / 3)


# -- elementary loop enumeration --------------------------------------------


def elementary_loops(g: OrientedGraph, cap: int = DEFAULT_LOOP_CAP) -> list[Loop]:
    """Every simple cycle of the graph, in deterministic order.

    Johnson-style search rooted at each vertex in turn, restricted to the
    vertices not yet used as roots.  Raises CapExceeded beyond ``cap``
    loops; callers needing only the rotation interval should use the
    cycle-mean routines instead.
    """
    index = {v: i for i, v in enumerate(g.vertices)}
    n = len(g.vertices)
    adj: list[list[int]] = [[] for _ in range(n)]
    weight: dict[tuple[int, int], int] = {}
    for u, v, w in g.arcs:
        iu, iv = index[u], index[v]
        if (iu, iv) not in weight:  # parallel arcs would share branches anyway
            adj[iu].append(iv)
            weight[(iu, iv)] = w
    for row in adj:
        row.sort()

    out: list[Loop] = []

    def emit(stack: list[int]) -> None:
        if len(out) >= cap:
            raise CapExceeded(f"more than {cap} elementary loops")
        nodes = tuple(g.vertices[i] for i in stack)
        total = sum(weight[(stack[i], stack[(i + 1) % len(stack)])] for i in range(len(stack)))
        assert total % 3 == 0
        out.append(Loop(nodes, total // 3, len(stack)))

    for root in range(n):
        blocked = [False] * n
        blist: list[set[int]] = [set() for _ in range(n)]
        stack: list[int] = []

        def unblock(u: int) -> None:
            pending = [u]
            while pending:
                x = pending.pop()
                if blocked[x]:
                    blocked[x] = False
                    pending.extend(blist[x])
                    blist[x].clear()

        def circuit(v: int) -> bool:
            found = False
            stack.append(v)
            blocked[v] = True
            for w in adj[v]:
                if w < root:
                    continue
                if w == root:
                    emit(stack)
                    found = True
                elif not blocked[w]:
                    if circuit(w):
                        found = True
            if found:
                unblock(v)
            else:
                for w in adj[v]:
                    if w >= root:
                        blist[w].add(v)
            stack.pop()
            return found

        circuit(root)
    return out


# -- regularity and loop realization -----------------------------------------


def is_primitive_two_cycle(p: TriodPattern) -> bool:
    if p.n != 2:
        return False
    u, v = p.points
    return p.branch_of(u) != p.branch_of(v)


def cross_branch_two_loops(p: TriodPattern) -> list[tuple[BasicInterval, BasicInterval]]:
    """Pairs of mutually covering basic intervals on different branches."""
    ivs = basic_intervals(p)
    found = []
    for i, src in enumerate(ivs):
        for dst in ivs[i + 1 :]:
            if src.branch == dst.branch:
                continue
            if covers(p, src, dst) and covers(p, dst, src):
                found.append((src, dst))
    return found


def is_regular(p: TriodPattern) -> bool:
    """False when the cycle is the primitive 2-cycle or its interval graph
    carries a cross-branch 2-loop, i.e. the map has a forced primitive
    period-2 orbit; true otherwise."""
    if is_primitive_two_cycle(p):
        return False
    return not cross_branch_two_loops(p)


def realize_loop(
    p: TriodPattern, loop: Sequence[BasicInterval]
) -> tuple[list[str], tuple[int, int]]:
    """Certify a covering loop of intervals and report the itinerary and
    rotation pair of the periodic point it forces.

    Checks f-covering between consecutive intervals (cyclically) and
    raises CoverBroken at the first failure.
    """
    q = len(loop)
    for i, src in enumerate(loop):
        dst = loop[(i + 1) % q]
        if not covers(p, src, dst):
            raise CoverBroken(i)
    total = sum((loop[(i + 1) % q].branch - loop[i].branch) % 3 for i in range(q))
    assert total % 3 == 0
    return [iv.name for iv in loop], (total // 3, q)
