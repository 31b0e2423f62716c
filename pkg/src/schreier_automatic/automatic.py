"""Automatic structure of the Schreier graph: vertex language and edge relations.

The edge acceptor for a generator ``s`` is the intersection of an
action-consistency acceptor (does ``s`` send ``u.tail`` to ``v.tail``?) with
the pairs language of valid encodings.
"""

from __future__ import annotations

from itertools import product

from .convolution import BASE, PAD, convolve, deconvolve, is_well_formed, pair_alphabet, pairs_language, render
from .dfa import Dfa, count_by_length, enumerate_language, explore, intersect, minimize
from .errors import UnsupportedOmega
from .mealy import GeneratorLetter
from .report import VerificationReport, compare_sets
from .schreier import A, B, OMEGA, OmegaSpec, SchreierAction, is_valid_encoding

DEFAULT_VERTEX_DEPTH = 16
DEFAULT_EDGE_DEPTH = 12


def vertex_dfa(omega: OmegaSpec = OMEGA) -> Dfa:
    """Minimal acceptor of ``{ε} ∪ {w : last letter of w differs from omega at |w|}``.

    Built from the predicate with states ``(phase, last letter differed)``.
    """
    if not omega.is_periodic:
        raise UnsupportedOmega("vertex acceptor needs a purely periodic omega")
    period = omega.period

    def step(state, x):
        phase, _ = state
        return ((phase + 1) % len(period), x != period[phase])

    return minimize(explore(BASE, (0, True), step, lambda st: st[1]))


def action_consistency_dfa(s: GeneratorLetter, omega: OmegaSpec = OMEGA,
                           action: SchreierAction | None = None,
                           tail_table: dict | None = None) -> Dfa:
    """Acceptor of ``{convolve(u, v) : s(u . tail) = v . tail}`` over the padded alphabet.

    ``u . tail`` is ``u`` followed by ``omega`` from position ``|u| + 1``.  A
    state ``(q, phase, mode)`` accepts when the tail table says ``q`` fixes
    the remaining tail of ``omega``.
    """
    action = action or SchreierAction(omega=omega)
    machine, start = action.machine.resolve(s)
    table = tail_table if tail_table is not None else action.tail_tables[s.sign]
    period = action.period
    p_len = len(period)
    dead = "dead"

    def step(state, pair):
        if state == dead:
            return dead
        q, phase, mode = state
        x, y = pair
        nxt = (phase + 1) % p_len
        if x is not PAD and y is not PAD:
            if mode != "sync":
                return dead
            out, r = machine.table[q, x]
            return (r, nxt, "sync") if out == y else dead
        if x is not PAD and y is PAD:
            if mode == "first_padded":
                return dead
            out, r = machine.table[q, x]
            return (r, nxt, "second_padded") if out == period[phase] else dead
        if x is PAD and y is not PAD:
            if mode == "second_padded":
                return dead
            out, r = machine.table[q, period[phase]]
            return (r, nxt, "first_padded") if out == y else dead
        return dead

    return explore(
        pair_alphabet(BASE), (start, 0, "sync"), step,
        lambda st: st != dead and table[st[0], st[1]].fixes,
    )


def edge_relation_dfa(s: GeneratorLetter, omega: OmegaSpec = OMEGA,
                      action: SchreierAction | None = None,
                      tail_table: dict | None = None,
                      vertices: Dfa | None = None) -> Dfa:
    """Acceptor of the convolved edge relation of ``s`` on encodings."""
    consistency = action_consistency_dfa(s, omega, action, tail_table)
    pairs = pairs_language(vertices if vertices is not None else vertex_dfa(omega))
    return minimize(intersect(consistency, pairs))


def all_words(max_len: int, alphabet=BASE):
    for n in range(max_len + 1):
        for letters in product(alphabet, repeat=n):
            yield "".join(letters)


def valid_encodings(max_len: int, omega: OmegaSpec = OMEGA) -> list:
    return [w for w in all_words(max_len) if is_valid_encoding(w, omega)]


def _word_str(w) -> str:
    return "".join(w) or "ε"


def verify_vertices(depth: int = DEFAULT_VERTEX_DEPTH, omega: OmegaSpec = OMEGA,
                    dfa: Dfa | None = None, workers: int = 1) -> VerificationReport:
    dfa = dfa if dfa is not None else vertex_dfa(omega)
    oracle = set(valid_encodings(depth, omega))
    acceptor = {"".join(w) for w in enumerate_language(dfa, depth, workers)}
    return compare_sets(f"vertices {omega}", depth, oracle, acceptor, _word_str,
                        extra={"accepted_words": len(acceptor)})


def verify_pairs(depth: int = 8, omega: OmegaSpec = OMEGA, vertices: Dfa | None = None,
                 workers: int = 1) -> VerificationReport:
    vertices = vertices if vertices is not None else vertex_dfa(omega)
    valid = valid_encodings(depth, omega)
    oracle = {convolve(u, v) for u in valid for v in valid}
    acceptor = set(enumerate_language(pairs_language(vertices), depth, workers))
    return compare_sets(f"pairs {omega}", depth, oracle, acceptor, render)


def edge_oracle(s: GeneratorLetter, depth: int, action: SchreierAction) -> set:
    """Convolved edges ``(u, s(u))`` with both encodings of length at most ``depth``.

    Images come from the finite-prefix simulation, not from the tail tables.
    """
    out = set()
    for u in valid_encodings(depth, action.omega):
        v = action.act_vertex_bruteforce(s, u)
        if len(v) <= depth:
            out.add(convolve(u, v))
    return out


def verify_edges(s: GeneratorLetter, depth: int = DEFAULT_EDGE_DEPTH, omega: OmegaSpec = OMEGA,
                 action: SchreierAction | None = None, tail_table: dict | None = None,
                 acceptor: Dfa | None = None, workers: int = 1) -> VerificationReport:
    action = action or SchreierAction(omega=omega)
    if acceptor is None:
        acceptor = edge_relation_dfa(s, omega, action, tail_table)
    oracle = edge_oracle(s, depth, action)
    accepted = set(enumerate_language(acceptor, depth, workers))
    return compare_sets(f"edges {s} {omega}", depth, oracle, accepted, render,
                        extra={"acceptor_states": acceptor.num_states})


def verify_consistency(s: GeneratorLetter, depth: int = 8, omega: OmegaSpec = OMEGA,
                       action: SchreierAction | None = None,
                       tail_table: dict | None = None) -> VerificationReport:
    """Check the action-consistency acceptor alone against brute force on all word pairs.

    Unlike :func:`verify_edges` this covers pairs that are not valid
    encodings, so it also exercises tail-table entries no vertex ever reaches.
    """
    action = action or SchreierAction(omega=omega)
    dfa = action_consistency_dfa(s, omega, action, tail_table)
    margin = 8
    oracle, accepted = set(), set()
    n = depth + margin
    for u in all_words(depth):
        image = action.machine.act((s,), u + _tail(omega, len(u), n))
        for k in range(depth + 1):
            if image[k:] == _tail(omega, k, n):
                oracle.add(convolve(u, image[:k]))
    for w in enumerate_language(dfa, depth):
        accepted.add(w)
    return compare_sets(f"consistency {s} {omega}", depth, oracle, accepted, render)


def _tail(omega: OmegaSpec, start: int, end: int) -> str:
    return "".join(omega.letter(i) for i in range(start + 1, end + 1))


def structure_stats(omega: OmegaSpec = OMEGA) -> dict:
    v = vertex_dfa(omega)
    return {
        "omega": str(omega),
        "vertex_dfa_states": v.num_states,
        "edge_dfa_states": {
            str(s): edge_relation_dfa(s, omega).num_states for s in (A, B)
        },
        "consistency_dfa_states": {
            str(s): minimize(action_consistency_dfa(s, omega)).num_states for s in (A, B)
        },
        "vertex_counts_by_length": count_by_length(v, 8),
    }


def check_accepted_words(dfa: Dfa, depth: int, omega: OmegaSpec = OMEGA) -> bool:
    """Every accepted word is a well-formed convolution of two valid encodings."""
    for w in enumerate_language(dfa, depth):
        if not is_well_formed(w):
            return False
        u, v = deconvolve(w)
        if not (is_valid_encoding(u, omega) and is_valid_encoding(v, omega)):
            return False
    return True
