"""Deterministic and nondeterministic finite acceptors.

States of a :class:`Dfa` are the integers ``0 .. n-1`` and the transition
table is total (a dead state is materialized whenever one is needed).
Symbols may be any hashable values; the alphabet is an ordered tuple and
that order defines the lexicographic order used by :func:`enumerate_language`.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Hashable, Iterable, Sequence

from .errors import AlphabetMismatch


@dataclass(frozen=True)
class Dfa:
    alphabet: tuple
    delta: tuple  # delta[state][symbol_index] -> state
    initial: int
    accepting: frozenset
    labels: tuple = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.delta)
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        if not all(0 <= q < n for q in self.accepting):
            raise ValueError("accepting states out of range")
        for row in self.delta:
            if len(row) != len(self.alphabet):
                raise ValueError("transition table is not total")

    @property
    def num_states(self) -> int:
        return len(self.delta)

    @property
    def states(self) -> range:
        return range(len(self.delta))

    @property
    def index(self) -> dict:
        idx = self.__dict__.get("_index")
        if idx is None:
            idx = {a: i for i, a in enumerate(self.alphabet)}
            object.__setattr__(self, "_index", idx)
        return idx

    def run(self, word: Iterable, start: int | None = None) -> int:
        index, delta = self.index, self.delta
        q = self.initial if start is None else start
        for a in word:
            try:
                q = delta[q][index[a]]
            except KeyError:
                raise AlphabetMismatch(f"symbol {a!r} not in alphabet") from None
        return q

    def accepts(self, word: Iterable) -> bool:
        return self.run(word) in self.accepting

    def with_accepting(self, accepting: Iterable[int]) -> Dfa:
        return replace(self, accepting=frozenset(accepting))

    def toggle_accepting(self, state: int) -> Dfa:
        return self.with_accepting(self.accepting ^ {state})


@dataclass(frozen=True)
class Nfa:
    alphabet: tuple
    num_states: int
    initials: frozenset
    accepting: frozenset
    delta: dict = field(hash=False)  # (state, symbol) -> frozenset of states


def explore(
    alphabet: Sequence,
    start: Hashable,
    step: Callable[[Hashable, object], Hashable],
    is_accepting: Callable[[Hashable], bool],
) -> Dfa:
    """Build the reachable part of an implicitly given automaton.

    States are discovered breadth first from ``start`` and numbered in
    discovery order, so equal inputs always give identical automata.
    """
    alphabet = tuple(alphabet)
    ids = {start: 0}
    order = [start]
    rows = []
    queue = deque([start])
    while queue:
        q = queue.popleft()
        row = []
        for a in alphabet:
            r = step(q, a)
            if r not in ids:
                ids[r] = len(order)
                order.append(r)
                queue.append(r)
            row.append(ids[r])
        rows.append(tuple(row))
    accepting = frozenset(i for i, q in enumerate(order) if is_accepting(q))
    return Dfa(alphabet, tuple(rows), 0, accepting, labels=tuple(order))


def _check_alphabets(d1: Dfa, d2: Dfa):
    if tuple(d1.alphabet) != tuple(d2.alphabet):
        raise AlphabetMismatch("automata have different alphabets")


def product(d1: Dfa, d2: Dfa, accept: Callable[[bool, bool], bool]) -> Dfa:
    _check_alphabets(d1, d2)
    idx = d1.index

    def step(q, a):
        i = idx[a]
        return (d1.delta[q[0]][i], d2.delta[q[1]][i])

    return explore(
        d1.alphabet,
        (d1.initial, d2.initial),
        step,
        lambda q: accept(q[0] in d1.accepting, q[1] in d2.accepting),
    )


def intersect(d1: Dfa, d2: Dfa) -> Dfa:
    return product(d1, d2, lambda x, y: x and y)


def union(d1: Dfa, d2: Dfa) -> Dfa:
    return product(d1, d2, lambda x, y: x or y)


def complement(d: Dfa) -> Dfa:
    return d.with_accepting(frozenset(d.states) - d.accepting)


def to_nfa(d: Dfa) -> Nfa:
    delta = {
        (q, a): frozenset([d.delta[q][i]]) for q in d.states for i, a in enumerate(d.alphabet)
    }
    return Nfa(d.alphabet, d.num_states, frozenset([d.initial]), d.accepting, delta)


def reverse(d: Dfa) -> Nfa:
    """Nondeterministic acceptor of the reversed language."""
    delta: dict = {}
    for q in d.states:
        for i, a in enumerate(d.alphabet):
            r = d.delta[q][i]
            delta.setdefault((r, a), set()).add(q)
    delta = {k: frozenset(v) for k, v in delta.items()}
    return Nfa(d.alphabet, d.num_states, d.accepting, frozenset([d.initial]), delta)


def determinize(n: Nfa) -> Dfa:
    """Subset construction; the empty subset plays the dead state."""
    empty = frozenset()

    def step(qs, a):
        out = set()
        for q in qs:
            out |= n.delta.get((q, a), empty)
        return frozenset(out)

    return explore(
        n.alphabet, frozenset(n.initials), step, lambda qs: bool(qs & n.accepting)
    )


def trim_unreachable(d: Dfa) -> Dfa:
    return explore(d.alphabet, d.initial, lambda q, a: d.delta[q][d.index[a]],
                   lambda q: q in d.accepting)


def minimize(d: Dfa) -> Dfa:
    """Moore partition refinement on the reachable part.

    Block numbers are canonicalized by first occurrence so refinement
    terminates exactly when the block count stops growing.
    """
    d = trim_unreachable(d)
    block = [1 if q in d.accepting else 0 for q in d.states]
    count = len(set(block))
    while True:
        signatures = {}
        new_block = []
        for q in d.states:
            sig = (block[q],) + tuple(block[r] for r in d.delta[q])
            new_block.append(signatures.setdefault(sig, len(signatures)))
        if len(signatures) == count:
            break
        block, count = new_block, len(signatures)
    # block[q] now identifies the class of q; rebuild from class representatives
    rep = {}
    for q in d.states:
        rep.setdefault(block[q], q)
    return explore(
        d.alphabet,
        block[d.initial],
        lambda b, a: block[d.delta[rep[b]][d.index[a]]],
        lambda b: rep[b] in d.accepting,
    )


def is_empty(d: Dfa) -> bool:
    seen = {d.initial}
    queue = deque([d.initial])
    while queue:
        q = queue.popleft()
        if q in d.accepting:
            return False
        for r in d.delta[q]:
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return True


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    """Language equality via emptiness of the symmetric difference."""
    return is_empty(product(d1, d2, lambda x, y: x != y))


def _live_within(d: Dfa, max_len: int) -> list:
    """``live[k]``: states from which some accepting state is reachable in <= k steps."""
    live = [frozenset(d.accepting)]
    for _ in range(max_len):
        prev = live[-1]
        live.append(frozenset(q for q in d.states if q in prev or any(r in prev for r in d.delta[q])))
    return live


def _dfs_words(d: Dfa, start: int, prefix: tuple, max_len: int, live: list) -> list:
    alphabet, delta, accepting = d.alphabet, d.delta, d.accepting
    found = []
    stack = [(start, prefix)]
    while stack:
        q, word = stack.pop()
        if q in accepting:
            found.append(word)
        remaining = max_len - len(word)
        if remaining == 0:
            continue
        ok = live[remaining - 1]
        row = delta[q]
        for i in range(len(alphabet) - 1, -1, -1):
            r = row[i]
            if r in ok:
                stack.append((r, word + (alphabet[i],)))
    return found


def _dfs_task(args):
    d, start, prefix, max_len = args
    return _dfs_words(d, start, prefix, max_len, _live_within(d, max_len))


def enumerate_language(d: Dfa, max_len: int, workers: int = 1) -> list:
    """All accepted words of length at most ``max_len`` as tuples of symbols.

    Output is deduplicated and ordered by length, then lexicographically by
    alphabet position.  Prefixes that cannot reach an accepting state in the
    remaining budget are pruned, so the cost is proportional to the output.
    With ``workers > 1`` the search is split on the first symbol across
    processes; the merged result is identical to the serial one.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    if workers > 1 and max_len > 0:
        tasks = [
            (d, d.delta[d.initial][i], (a,), max_len) for i, a in enumerate(d.alphabet)
        ]
        words = [()] if d.initial in d.accepting else []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_dfs_task, tasks):
                words.extend(part)
    else:
        words = _dfs_words(d, d.initial, (), max_len, _live_within(d, max_len))
    pos = d.index
    words.sort(key=lambda w: (len(w), [pos[a] for a in w]))
    return words


def count_by_length(d: Dfa, max_len: int) -> list:
    """Number of accepted words of each length ``0..max_len`` (dynamic programming)."""
    counts = [0] * d.num_states
    counts[d.initial] = 1
    out = []
    for _ in range(max_len + 1):
        out.append(sum(counts[q] for q in d.accepting))
        nxt = [0] * d.num_states
        for q, c in enumerate(counts):
            if c:
                for r in d.delta[q]:
                    nxt[r] += c
        counts = nxt
    return out


def _dot_quote(s) -> str:
    return '"' + str(s).replace('"', r"\"") + '"'


def dfa_to_dot(d: Dfa, name: str = "dfa", symbol_str: Callable = str) -> str:
    """Accepting states as double circles; an invisible node marks the initial state.

    Parallel edges between the same pair of states are merged into one edge
    with a comma-separated label.
    """
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in d.states:
        shape = "doublecircle" if q in d.accepting else "circle"
        lines.append(f"  {q} [shape={shape}];")
    lines.append(f"  __start -> {d.initial};")
    for q in d.states:
        grouped: dict = {}
        for i, a in enumerate(d.alphabet):
            grouped.setdefault(d.delta[q][i], []).append(symbol_str(a))
        for r, syms in grouped.items():
            lines.append(f"  {q} -> {r} [label={_dot_quote(','.join(syms))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
