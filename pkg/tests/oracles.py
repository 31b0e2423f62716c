"""Brute-force oracles kept independent of the code paths they check."""

from itertools import product

from schreier_automatic.dfa import explore

OMEGA_01 = "01"


def omega_bit(n: int, period: str = OMEGA_01) -> str:
    return period[(n - 1) % len(period)]


def words_upto(n: int, alphabet=("0", "1")):
    for k in range(n + 1):
        for t in product(alphabet, repeat=k):
            yield "".join(t)


def valid(w: str, period: str = OMEGA_01) -> bool:
    return w == "" or w[-1] != omega_bit(len(w), period)


def synthesize_dfa(predicate, alphabet, suffix_depth: int):
    """Myhill-Nerode style acceptor learned from a predicate.

    States are residual signatures over all suffixes up to ``suffix_depth``;
    correct whenever that depth separates the residual classes.
    """
    suffixes = [tuple(s) for k in range(suffix_depth + 1) for s in product(alphabet, repeat=k)]
    rep = {}

    def signature(w):
        sig = tuple(predicate(w + s) for s in suffixes)
        rep.setdefault(sig, w)
        return sig

    start = signature(())
    return explore(alphabet, start, lambda sig, a: signature(rep[sig] + (a,)),
                   lambda sig: sig[0])


def two_adic_index(v: str, period: str = OMEGA_01) -> int:
    """Index on the a-line, from a as "add one" to the binary expansion (LSB first)."""
    value = sum(1 << i for i, x in enumerate(v) if x == "1")
    base = sum(1 << i for i in range(len(v)) if omega_bit(i + 1, period) == "1")
    return value - base
