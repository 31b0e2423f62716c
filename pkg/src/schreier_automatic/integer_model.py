"""The integer-line description of the orbital Schreier graphs.

Vertices are integers.  Level 0 edges join ``n`` and ``n + 1``; level ``k``
edges join ``2^k z + c_k`` and ``2^k (z + 1) + c_k`` where the offsets
``c_k`` are chosen from the letters of ``omega``.  When ``omega`` is
eventually constant one integer is left without a chord and carries a loop.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .errors import Ambiguous, NoCorrespondence, WindowTooSmall
from .report import VerificationReport
from .schreier import A, B, OMEGA, OmegaSpec, SchreierAction, bfs, ball_sizes


def offsets(omega: OmegaSpec, count: int, pinned: dict | None = None) -> list:
    """``c_1 .. c_count`` by a direct scan from 0 outward.

    ``pinned`` fixes selected ``c_k`` (mutation tests); later offsets are
    still chosen by the scan, so the families keep partitioning the integers.
    """
    pinned = pinned or {}
    cs = []
    for n in range(1, count + 1):
        def covered(m):
            return any((m - c) % (1 << k) == 0 for k, c in enumerate(cs, start=1))

        if n in pinned:
            cs.append(pinned[n])
            continue
        if omega.letter(n) == "0":
            m = 0
            while covered(m):
                m -= 1
        else:
            m = 1
            while covered(m):
                m += 1
        cs.append(m)
    return cs


@dataclass(frozen=True)
class EdgeFamily:
    level: int
    offset: int

    @property
    def span(self) -> int:
        return 1 << self.level

    def contains(self, m: int) -> bool:
        return (m - self.offset) % self.span == 0


@dataclass
class IntegerGraph:
    """Window ``[lo, hi]`` of the integer model with chord levels ``1..max_level``."""

    lo: int
    hi: int
    families: list
    loop: int | None = None
    omega: OmegaSpec = field(default=OMEGA)

    @property
    def max_level(self) -> int:
        return len(self.families)

    def family_of(self, m: int) -> EdgeFamily | None:
        for fam in self.families:
            if fam.contains(m):
                return fam
        return None

    def in_window(self, m: int) -> bool:
        return self.lo <= m <= self.hi

    def true_neighbors(self, m: int) -> list:
        """All ``(kind, neighbor)`` pairs of ``m`` in the infinite graph.

        Raises :class:`WindowTooSmall` if some neighbor falls outside the
        window or the chord level of ``m`` exceeds ``max_level``.
        """
        out = [("line", m + 1), ("line", m - 1)]
        if m == self.loop:
            out.append(("loop", m))
        else:
            fam = self.family_of(m)
            if fam is None:
                raise WindowTooSmall(f"chord level of {m} exceeds {self.max_level}")
            out.append((f"level{fam.level}", m + fam.span))
            out.append((f"level{fam.level}", m - fam.span))
        for _, w in out:
            if not self.in_window(w):
                raise WindowTooSmall(f"neighbor {w} of {m} is outside [{self.lo}, {self.hi}]")
        return out

    def window_edges(self) -> list:
        """Undirected edges ``(kind, lo_end, hi_end)`` with both ends in the window."""
        edges = [("line", m, m + 1) for m in range(self.lo, self.hi)]
        for fam in self.families:
            start = self.lo + (fam.offset - self.lo) % fam.span
            for m in range(start, self.hi - fam.span + 1, fam.span):
                edges.append((f"level{fam.level}", m, m + fam.span))
        if self.loop is not None and self.in_window(self.loop):
            edges.append(("loop", self.loop, self.loop))
        return edges

    def ball(self, center: int, radius: int) -> dict:
        """Exact BFS distances; refuses any ball that could leave the window."""
        if not self.in_window(center):
            raise WindowTooSmall(f"center {center} outside the window")
        dist = {center: 0}
        frontier = [center]
        for r in range(1, radius + 1):
            nxt = []
            for u in frontier:
                for _, w in self.true_neighbors(u):
                    if w not in dist:
                        dist[w] = r
                        nxt.append(w)
            frontier = nxt
        return dist

    def neighbors(self, m: int):
        return [w for _, w in self.true_neighbors(m)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["vertex", "level"])
        for m in range(self.lo, self.hi + 1):
            fam = self.family_of(m)
            if m == self.loop:
                level = "loop"
            else:
                level = fam.level if fam else ""
            writer.writerow([m, level])
        return buf.getvalue()

    def to_dot(self, name: str = "integer_graph") -> str:
        lines = [f"graph {name} {{", "  rankdir=LR;", "  node [shape=circle];"]
        lines.append("  { rank=same; " + " ".join(f'"{m}"' for m in range(self.lo, self.hi + 1)) + " }")
        for kind, u, w in self.window_edges():
            if kind == "line":
                lines.append(f'  "{u}" -- "{w}" [weight=100];')
            elif kind == "loop":
                lines.append(f'  "{u}" -- "{w}" [label="loop"];')
            else:
                lines.append(f'  "{u}" -- "{w}" [label="{kind[5:]}", constraint=false];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def loop_vertex(omega: OmegaSpec, cs: list, lo: int, hi: int) -> int | None:
    """The chordless integer ``t`` when ``omega`` is eventually constant and ``t`` is in the window.

    The integers missed by levels ``1..N`` form one residue class mod ``2^N``;
    it is tracked one bit at a time.
    """
    if not omega.eventually_constant():
        return None
    r = 0
    for k, c in enumerate(cs, start=1):
        if (r - c) % (1 << k) == 0:
            r += 1 << (k - 1)
    modulus = 1 << len(cs)
    free = [m for m in range(lo + (r - lo) % modulus, hi + 1, modulus)]
    return free[0] if len(free) == 1 else None


def build_graph(omega: OmegaSpec = OMEGA, window: tuple = (-64, 64),
                max_level: int | None = None, offsets_override: dict | None = None) -> IntegerGraph:
    """Integer model on ``window``.

    ``max_level`` defaults to the smallest level whose span exceeds the window
    width.  ``offsets_override`` replaces selected ``c_k`` (for mutation tests).
    """
    lo, hi = window
    width = hi - lo
    if max_level is None:
        max_level = max(width.bit_length(), 1)
    if (1 << max_level) <= width:
        raise WindowTooSmall(f"2^{max_level} does not exceed window width {width}")
    cs = offsets(omega, max_level, offsets_override)
    fams = [EdgeFamily(k, c) for k, c in enumerate(cs, start=1)]
    return IntegerGraph(lo, hi, fams, loop_vertex(omega, cs, lo, hi), omega)


def ball_int(g: IntegerGraph, center: int, radius: int) -> dict:
    return g.ball(center, radius)


MAX_HALF_WIDTH = 1 << 24


def auto_ball(omega: OmegaSpec, center: int, radius: int,
              offsets_override: dict | None = None) -> tuple:
    """Grow the window until the ball of ``radius`` fits; return ``(graph, dist)``."""
    half = 64
    while True:
        g = build_graph(omega, (center - half, center + half), offsets_override=offsets_override)
        try:
            return g, g.ball(center, radius)
        except WindowTooSmall:
            if half >= MAX_HALF_WIDTH:
                raise
            half *= 4


@dataclass(frozen=True)
class Correspondence:
    """Integer label ``alpha * index + beta`` of the vertex at a-line index ``index``."""

    alpha: int
    beta: int
    checked_indices: int

    def __call__(self, index: int) -> int:
        return self.alpha * index + self.beta


def find_correspondence(radius: int = 8, action: SchreierAction | None = None,
                        max_beta: int = 8, omega: OmegaSpec = OMEGA,
                        offsets_override: dict | None = None) -> Correspondence:
    """Search ``alpha in {+1, -1}``, ``|beta| <= max_beta`` matching a- and b-edges.

    Every index ``n`` with ``|n| <= 2^radius`` is checked: the a-edge
    ``n -> n+1`` must map to a line edge (automatic for these maps) and the
    b-edge from ``n`` must be a chord of the family through the image of ``n``.
    """
    if radius < 2:
        raise ValueError("radius must be at least 2")
    action = action or SchreierAction(omega=omega)
    bound = 1 << radius
    jumps = {}
    for n in range(-bound, bound + 1):
        v = action.vertex_at_index(n, method="arith")
        jumps[n] = action.index_of(action.act_vertex(B, v), method="arith") - n
    level_needed = max(abs(d) for d in jumps.values()).bit_length()
    cs = offsets(omega, level_needed + 1, offsets_override)
    fams = [EdgeFamily(k, c) for k, c in enumerate(cs, start=1)]

    def family_span(m):
        for f in fams:
            if f.contains(m):
                return f.span
        return None

    # the a-edge n -> n+1 maps to m -> m + alpha, a line edge for either alpha
    survivors = []
    for alpha in (1, -1):
        for beta in range(-max_beta, max_beta + 1):
            if all(family_span(alpha * n + beta) == abs(d) for n, d in jumps.items()):
                survivors.append((alpha, beta))
    if not survivors:
        raise NoCorrespondence("no affine map sends the action graph onto the integer model")
    if len(survivors) > 1:
        raise Ambiguous(f"several maps survive: {survivors}; enlarge the radius")
    alpha, beta = survivors[0]
    return Correspondence(alpha, beta, len(jumps))


def _action_edges(action: SchreierAction, dist: dict, corr: Correspondence) -> set:
    edges = set()
    for v, label, w in action.edges(dist):
        if w not in dist:
            continue
        m, mw = corr(action.index_of(v, "arith")), corr(action.index_of(w, "arith"))
        kind = "line" if label == "a" else "chord"
        edges.add((kind, min(m, mw), max(m, mw)))
    return edges


def _integer_edges(g: IntegerGraph, dist: dict) -> set:
    edges = set()
    for m in dist:
        for kind, w in g.true_neighbors(m):
            if w in dist:
                k = "line" if kind == "line" else ("loop" if kind == "loop" else "chord")
                edges.add((k, min(m, w), max(m, w)))
    return edges


def cross_check(corr: Correspondence, radius: int = 16, action: SchreierAction | None = None,
                offsets_override: dict | None = None):
    """Compare the mapped action-model ball with the integer-model ball."""
    action = action or SchreierAction()
    omega = action.omega
    dist_action = action.ball("", radius)
    center = corr(0)
    # one extra ring on the integer side keeps true_neighbors of the boundary in-window
    g, dist_int = auto_ball(omega, center, radius + 1, offsets_override)
    dist_int = {m: d for m, d in dist_int.items() if d <= radius}

    mapped = {corr(action.index_of(v, "arith")): d for v, d in dist_action.items()}
    e_act = _action_edges(action, dist_action, corr)
    e_int = _integer_edges(g, dist_int)
    only_act = sorted(e_act - e_int)
    only_int = sorted(e_int - e_act)
    dist_mismatch = sorted(
        m for m in set(mapped) | set(dist_int) if mapped.get(m) != dist_int.get(m)
    )
    sizes_act = ball_sizes(dist_action, radius)
    sizes_int = ball_sizes(dist_int, radius)
    mismatches = [f"edge only in action model: {e}" for e in only_act[:10]]
    mismatches += [f"edge only in integer model: {e}" for e in only_int[:10]]
    mismatches += [f"distance differs at {m}" for m in dist_mismatch[:10]]
    if sizes_act != sizes_int:
        mismatches.append(f"ball sizes differ: {sizes_act} vs {sizes_int}")
    return VerificationReport(
        language=f"crosscheck radius {radius}",
        depth=radius,
        oracle_only=len(only_int) + len(dist_mismatch),
        acceptor_only=len(only_act),
        agreements=len(e_act & e_int),
        mismatches=mismatches,
        extra={
            "alpha": corr.alpha,
            "beta": corr.beta,
            "ball_sizes": sizes_act,
            "integer_ball_sizes": sizes_int,
        },
    )
