"""Padded pairs (convolutions) of words and the pairs language of a regular set."""

from __future__ import annotations

from typing import Iterable

from .dfa import Dfa, explore, intersect, minimize
from .errors import Malformed


class _Pad:
    """The padding symbol.  It is not a string, so it can never collide with a letter."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "PAD"

    def __str__(self):
        return "-"

    def __reduce__(self):
        return (_Pad, ())


PAD = _Pad()
BASE = ("0", "1")


def padded_letters(base=BASE) -> tuple:
    return tuple(base) + (PAD,)


def pair_alphabet(base=BASE) -> tuple:
    """All nine (for a binary base) pairs over ``base + PAD``, including ``(PAD, PAD)``."""
    ext = padded_letters(base)
    return tuple((x, y) for x in ext for y in ext)


def convolve(w1: str, w2: str) -> tuple:
    n = max(len(w1), len(w2))
    return tuple(
        (w1[j] if j < len(w1) else PAD, w2[j] if j < len(w2) else PAD) for j in range(n)
    )


def _component(c, k) -> str:
    out = []
    padded = False
    for pair in c:
        s = pair[k]
        if s is PAD:
            padded = True
        elif padded:
            raise Malformed("padding is followed by a letter")
        else:
            out.append(s)
    return "".join(out)


def deconvolve(c: Iterable) -> tuple:
    c = tuple(c)
    if any(x is PAD and y is PAD for x, y in c):
        raise Malformed("convolution contains the letter (PAD, PAD)")
    return _component(c, 0), _component(c, 1)


def is_well_formed(c: Iterable) -> bool:
    try:
        deconvolve(c)
    except Malformed:
        return False
    return True


def relation_convolution(relation: Iterable) -> set:
    return {convolve(u, v) for u, v in relation}


def render(c: Iterable) -> str:
    """Columns as ``a/b`` joined by spaces; padding prints as ``-``."""
    return " ".join(f"{x}/{y}" for x, y in c)


def parse(text: str) -> tuple:
    out = []
    for col in text.split():
        x, y = col.split("/")
        out.append((PAD if x == "-" else x, PAD if y == "-" else y))
    return tuple(out)


def _component_language(lang: Dfa, k: int, base=BASE) -> Dfa:
    """Pairs whose ``k``-th component lies in ``L PAD*``, the other component free.

    States are those of ``lang`` plus ``"t"`` (entered on the first pad after
    an accepting state, and kept on further pads) and ``"dead"``.
    """
    index = lang.index

    def step(q, pair):
        s = pair[k]
        if q == "dead":
            return "dead"
        if q == "t":
            return "t" if s is PAD else "dead"
        if s is PAD:
            return "t" if q in lang.accepting else "dead"
        return lang.delta[q][index[s]]

    return explore(
        pair_alphabet(base), lang.initial, step,
        lambda q: q == "t" or (q != "dead" and q in lang.accepting),
    )


def well_formed_language(base=BASE) -> Dfa:
    """Acceptor of well-formed padded words: no (PAD, PAD), pads only as suffixes."""

    def step(q, pair):
        x, y = pair
        if q == "dead" or (x is PAD and y is PAD):
            return "dead"
        if q == "both":
            if x is PAD:
                return "first_padded"
            if y is PAD:
                return "second_padded"
            return "both"
        if q == "first_padded":
            return q if x is PAD else "dead"
        return q if y is PAD else "dead"

    return explore(pair_alphabet(base), "both", step, lambda q: q != "dead")


def pairs_language(lang: Dfa, base=BASE) -> Dfa:
    """Acceptor of ``{convolve(u, v) : u, v in L}`` as ``L1 & L2 & L3``."""
    first = _component_language(lang, 0, base)
    second = _component_language(lang, 1, base)
    return minimize(intersect(intersect(first, second), well_formed_language(base)))
