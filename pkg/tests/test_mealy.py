import itertools

import pytest
from hypothesis import given, strategies as st

from schreier_automatic.errors import NotInvertible
from schreier_automatic.mealy import (
    GeneratorLetter, MealyMachine, identity_machine, inverse_word, machine_to_dot,
    parse_group_word, standard_machine,
)

from oracles import words_upto

M = standard_machine()
a, b, e = GeneratorLetter("a"), GeneratorLetter("b"), GeneratorLetter("e")
A, B = a.inverse(), b.inverse()
SIGNED = (a, A, b, B)

bits = st.text(alphabet="01", max_size=12)
group_words = st.lists(st.sampled_from(SIGNED), max_size=6).map(tuple)


@pytest.mark.parametrize("q, x, expected", [
    ("a", "0", ("1", "e")),
    ("b", "0", ("0", "b")),
    ("e", "1", ("1", "e")),
    ("a", "1", ("0", "a")),
    ("b", "1", ("1", "a")),
])
def test_step(q, x, expected):
    assert M.step(q, x) == expected


def test_apply_word():
    assert M.apply_word("a", "01") == ("11", "e")
    assert M.apply_word("b", "") == ("", "b")
    # b reads 0 (stay b), 1 (to a), then a turns 0 into 1 and hands over to e
    assert M.apply_word("b", "0101") == ("0111", "e")


def test_invertibility():
    assert M.is_invertible()
    assert identity_machine().is_invertible()
    squash = MealyMachine(("q",), ("0", "1"), {("q", "0"): "q", ("q", "1"): "q"},
                          {("q", "0"): "0", ("q", "1"): "0"})
    assert not squash.is_invertible()
    with pytest.raises(NotInvertible):
        squash.invert()
    with pytest.raises(NotInvertible):
        squash.act((GeneratorLetter("q", -1),), "0")


def test_inverse_machine():
    inv = M.invert()
    assert inv.step("a^-1", "1") == ("0", "e^-1")
    assert inv.step("a^-1", "0") == ("1", "a^-1")
    ident = identity_machine()
    assert ident.invert().apply_word("e^-1", "0110") == ("0110", "e^-1")


def test_incomplete_machine_rejected():
    with pytest.raises(ValueError):
        MealyMachine(("q",), ("0", "1"), {("q", "0"): "q"}, {("q", "0"): "0"})


def test_act_examples():
    assert M.act((a,), "0") == "1"
    assert M.act((), "0110") == "0110"
    assert M.act((a, A), "0110") == "0110"


def test_composition_applies_left_letter_first():
    # ab(w) = b(a(w))
    w = "0110"
    assert M.act((a, b), w) == M.act((b,), M.act((a,), w))


def test_sections():
    assert M.section((b,), "0") == (b,)
    assert M.section((b,), "1") == (a,)
    g = (a, b, A)
    assert M.section(g, "") == g


def test_wreath():
    assert M.wreath((a,)) == (((e,), (a,)), ("1", "0"))
    assert M.wreath((e,)) == (((e,), (e,)), ("0", "1"))
    assert M.wreath(()) == (((), ()), ("0", "1"))
    # ab: a sends 0 to 1 with section e, then b at 1 has section a
    assert M.wreath((a, b)) == (((e, a), (a, b)), ("1", "0"))


def test_wreath_recombines_to_action():
    for g in itertools.product(SIGNED, repeat=3):
        sections, perm = M.wreath(g)
        for w in words_upto(6):
            if not w:
                continue
            i = int(w[0])
            assert M.act(g, w) == perm[i] + M.act(sections[i], w[1:])


def test_parse_group_word():
    assert parse_group_word("a") == (a,)
    assert parse_group_word("ab^-1") == (a, B)
    assert parse_group_word("aB") == (a, B)
    assert parse_group_word("a' b") == (A, b)
    assert parse_group_word("") == ()
    with pytest.raises(ValueError):
        parse_group_word("a?")


def test_machine_dot_has_three_states():
    dot = machine_to_dot(M)
    assert dot.count("shape=circle") == 3
    assert '"a" -> "e" [label="0|1"]' in dot
    assert dot == machine_to_dot(standard_machine())


@given(group_words, bits)
def test_length_preserved(g, w):
    assert len(M.act(g, w)) == len(w)


@given(group_words, bits, bits)
def test_prefix_compatible(g, u, v):
    assert M.act(g, u + v).startswith(M.act(g, u))


@given(group_words, bits)
def test_inverse_word_undoes(g, w):
    assert M.act(g + inverse_word(g), w) == w


def test_section_identity_small():
    for n in range(4):
        for g in itertools.product(SIGNED, repeat=n):
            for v in words_upto(3):
                h, p = M.section(g, v), M.act(g, v)
                for w in words_upto(4):
                    assert M.act(g, v + w) == p + M.act(h, w)


def test_cancellation_up_to_length_12():
    for s in (a, b):
        for w in words_upto(12):
            assert M.act((s, s.inverse()), w) == w


def test_actions_are_permutations():
    level = ["".join(t) for t in itertools.product("01", repeat=8)]
    for n in range(5):
        for g in itertools.product(SIGNED, repeat=n):
            assert len({M.act(g, w) for w in level}) == 256
