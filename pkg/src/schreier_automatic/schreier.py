"""Schreier graph of the orbit of a periodic boundary point, via finite encodings.

A vertex is an infinite word cofinal with ``omega``.  It is stored as the
shortest prefix after which it agrees with ``omega`` (its *encoding*); the
infinite word exists only through :func:`expand`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .errors import InvalidEncoding, NotCofinal, RangeExceeded, UnsupportedOmega
from .mealy import GeneratorLetter, MealyMachine, standard_machine

A, A_INV = GeneratorLetter("a", 1), GeneratorLetter("a", -1)
B, B_INV = GeneratorLetter("b", 1), GeneratorLetter("b", -1)
GENERATORS = (A, A_INV, B, B_INV)


@dataclass(frozen=True)
class OmegaSpec:
    """The eventually periodic word ``prefix . period^oo``."""

    prefix: str = ""
    period: str = "01"

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")

    @classmethod
    def parse(cls, text: str) -> OmegaSpec:
        """``"01"`` is the purely periodic ``(01)^oo``; ``"1(0)"`` means ``1 0^oo``."""
        if "(" in text:
            head, _, rest = text.partition("(")
            return cls(head, rest.rstrip(")"))
        return cls("", text)

    def __str__(self):
        return f"{self.prefix}({self.period})^oo"

    @property
    def is_periodic(self) -> bool:
        return not self.prefix

    def letter(self, n: int) -> str:
        """The ``n``-th letter, counting from 1."""
        if n < 1:
            raise ValueError("positions start at 1")
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        return self.period[(n - len(self.prefix) - 1) % len(self.period)]

    def word(self, n: int) -> str:
        return "".join(self.letter(i) for i in range(1, n + 1))

    def eventually_constant(self) -> bool:
        return len(set(self.period)) == 1


OMEGA = OmegaSpec()


def omega_letter(omega: OmegaSpec, n: int) -> str:
    return omega.letter(n)


def is_valid_encoding(w: str, omega: OmegaSpec = OMEGA) -> bool:
    return not w or w[-1] != omega.letter(len(w))


def expand(v: str, n: int, omega: OmegaSpec = OMEGA) -> str:
    """First ``n`` letters of ``v`` followed by ``omega`` from position ``|v|+1``."""
    if n <= len(v):
        return v[:n]
    return v + "".join(omega.letter(i) for i in range(len(v) + 1, n + 1))


def normalize(w: str, omega: OmegaSpec = OMEGA) -> str:
    """Trim ``w`` to end at its last disagreement with ``omega``."""
    n = len(w)
    while n and w[n - 1] == omega.letter(n):
        n -= 1
    return w[:n]


@dataclass(frozen=True)
class TailEntry:
    """What a machine state does to the tail of ``omega`` starting at a phase.

    ``fixes`` means the tail is mapped to itself letter for letter.
    Otherwise ``replacement`` is the output written over the first
    ``len(replacement)`` tail letters, after which the machine reaches a
    (state, phase) that fixes the rest.  ``replacement is None`` marks a
    non-cofinal image.
    """

    fixes: bool
    replacement: str | None = ""


TailTable = dict  # (state, phase) -> TailEntry


def build_tail_table(m: MealyMachine, omega: OmegaSpec = OMEGA) -> TailTable:
    if not omega.is_periodic:
        raise UnsupportedOmega("tail tables need a purely periodic omega")
    period = omega.period
    p_len = len(period)
    pairs = [(q, p) for q in m.states for p in range(p_len)]

    def trajectory(q, p):
        # (state, phase, output, input) until a (state, phase) repeats
        seen = {}
        steps = []
        while (q, p) not in seen:
            seen[q, p] = len(steps)
            x = period[p]
            y, r = m.table[q, x]
            steps.append((q, p, y, x))
            q, p = r, (p + 1) % p_len
        return steps, seen[q, p]

    fixes = {}
    for q, p in pairs:
        steps, _ = trajectory(q, p)
        fixes[q, p] = all(y == x for _, _, y, x in steps)

    table = {}
    for q, p in pairs:
        if fixes[q, p]:
            table[q, p] = TailEntry(True, "")
            continue
        steps, _ = trajectory(q, p)
        out = []
        replacement = None
        for sq, sp, y, _ in steps:
            if fixes[sq, sp]:
                replacement = "".join(out)
                break
            out.append(y)
        table[q, p] = TailEntry(False, replacement)
    return table


class SchreierAction:
    """The Schreier graph of ``<a, b>`` on the orbit of a periodic ``omega``.

    Vertices are encodings (``str``).  Edge semantics are defined for purely
    periodic ``omega`` with period length at most 2.
    """

    def __init__(self, machine: MealyMachine | None = None, omega: OmegaSpec = OMEGA,
                 tail_tables: dict | None = None, max_walk: int = 1 << 20):
        if not omega.is_periodic or len(omega.period) > 2:
            raise UnsupportedOmega(f"edge semantics need a purely periodic omega with period <= 2, got {omega}")
        self.machine = machine or standard_machine()
        self.omega = omega
        self.period = omega.period
        self._tables = tail_tables
        self.max_walk = max_walk
        self._index_cache = {0: ""}
        self._vertex_cache = {"": 0}

    @cached_property
    def tail_tables(self) -> dict:
        """Tail tables for the machine and, if invertible, for its inverse."""
        if self._tables is not None:
            return self._tables
        tables = {1: build_tail_table(self.machine, self.omega)}
        if self.machine.is_invertible():
            tables[-1] = build_tail_table(self.machine.inverse, self.omega)
        return tables

    def check(self, v: str):
        if not is_valid_encoding(v, self.omega):
            raise InvalidEncoding(f"{v!r} is not a canonical encoding for {self.omega}")

    def act_vertex(self, s: GeneratorLetter, v: str) -> str:
        self.check(v)
        m, q = self.machine.resolve(s)
        out, r = m.apply_word(q, v)
        phase = len(v) % len(self.period)
        entry = self.tail_tables[s.sign][r, phase]
        if entry.replacement is None:
            raise NotCofinal(f"{s} sends {v!r} outside the cofinality class")
        return normalize(out + entry.replacement, self.omega)

    def act_vertex_bruteforce(self, s: GeneratorLetter, v: str, margin: int = 8) -> str:
        """Act on a long finite prefix of the vertex and normalize.

        Independent of the tail tables.  The answer is accepted only when two
        prefix lengths agree and the disagreement ends well before the cut.
        """
        self.check(v)
        results = []
        for extra in (margin, 2 * margin):
            n = len(v) + extra
            image = self.machine.act((s,), expand(v, n, self.omega))
            results.append((normalize(image, self.omega), n))
        (w1, n1), (w2, _) = results
        if w1 != w2 or len(w1) > n1 - margin // 2:
            raise NotCofinal(f"image of {v!r} under {s} did not stabilize")
        return w1

    def act_word(self, g, v: str) -> str:
        for s in g:
            v = self.act_vertex(s, v)
        return v

    def neighbors(self, v: str) -> list:
        return [(s, self.act_vertex(s, v)) for s in GENERATORS]

    def ball(self, center: str = "", radius: int = 0) -> dict:
        """Exact BFS distances up to ``radius`` from ``center``."""
        self.check(center)
        return bfs(lambda v: (w for _, w in self.neighbors(v)), center, radius)

    # a-line: vertex at index n is a^n applied to the basepoint

    def _walk_to(self, n: int) -> str:
        if abs(n) > self.max_walk:
            raise RangeExceeded(f"index {n} beyond walk limit {self.max_walk}")
        cache = self._index_cache
        step = 1 if n > 0 else -1
        k = n
        while k not in cache:
            k -= step
        v = cache[k]
        s = A if step == 1 else A_INV
        while k != n:
            v = self.act_vertex(s, v)
            k += step
            cache[k] = v
            self._vertex_cache.setdefault(v, k)
        return v

    def vertex_at_index(self, n: int, method: str = "walk") -> str:
        if method == "arith":
            return self._vertex_at_index_arith(n)
        return self._walk_to(n)

    def index_of(self, v: str, method: str = "walk") -> int:
        self.check(v)
        if method == "arith":
            return self._index_of_arith(v)
        if v in self._vertex_cache:
            return self._vertex_cache[v]
        n = 1
        while n <= self.max_walk:
            for k in (n, -n):
                if self._walk_to(k) == v:
                    return k
            n += 1
        raise RangeExceeded(f"{v!r} not found within {self.max_walk} a-steps")

    # Arithmetic fast path: for the standard machine ``a`` is the binary
    # odometer (least significant digit first), so a^n adds n to the 2-adic
    # integer spelled by the vertex.

    @cached_property
    def _is_odometer(self) -> bool:
        t = self.machine.table
        try:
            out0, after0 = t["a", "0"]
            return (out0 == "1" and t["a", "1"] == ("0", "a")
                    and all(t[after0, x] == (x, after0) for x in "01"))
        except KeyError:
            return False

    def _require_odometer(self):
        if not self._is_odometer:
            raise UnsupportedOmega("arithmetic indexing needs a = (e, a)σ")

    @staticmethod
    def _value(w: str) -> int:
        return int(w[::-1], 2) if w else 0

    def _index_of_arith(self, v: str) -> int:
        self._require_odometer()
        return self._value(v) - self._value(self.omega.word(len(v)))

    def _vertex_at_index_arith(self, n: int) -> str:
        self._require_odometer()
        length = max(n.bit_length(), 1) + 2 * len(self.period)
        while True:
            total = self._value(self.omega.word(length)) + n
            if 0 <= total < (1 << length):
                word = format(total, f"0{length}b")[::-1]
                return normalize(word, self.omega)
            length += len(self.period)

    def edges(self, vertices) -> Iterator:
        """Labeled directed edges ``(v, label, s(v))`` for ``s`` in ``{a, b}``."""
        for v in vertices:
            yield v, "a", self.act_vertex(A, v)
            yield v, "b", self.act_vertex(B, v)


def bfs(neighbors, start, radius: int) -> dict:
    dist = {start: 0}
    frontier = [start]
    for r in range(1, radius + 1):
        nxt = []
        for u in frontier:
            for w in neighbors(u):
                if w not in dist:
                    dist[w] = r
                    nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return dist


def ball_sizes(dist: dict, radius: int) -> list:
    """Closed-ball sizes ``0..radius`` from a distance map."""
    counts = [0] * (radius + 1)
    for d in dist.values():
        if d <= radius:
            counts[d] += 1
    out, total = [], 0
    for c in counts:
        total += c
        out.append(total)
    return out


def ball_to_dot(action: SchreierAction, dist: dict, name: str = "ball") -> str:
    def show(v):
        return v or "ε"

    order = sorted(dist, key=lambda v: (dist[v], len(v), v))
    lines = [f"digraph {name} {{"]
    for v in order:
        lines.append(f'  "{show(v)}" [label="{show(v)}\\n{dist[v]}"];')
    for v, label, w in action.edges(order):
        if w in dist:
            lines.append(f'  "{show(v)}" -> "{show(w)}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
