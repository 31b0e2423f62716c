"""Mealy transducers over a finite alphabet and the groups they generate.

Words are plain ``str`` over the machine alphabet.  A group element is a
``GroupWord``: a tuple of signed generator letters, applied left to right,
so ``(g, h)`` sends ``w`` to ``h(g(w))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .errors import NotInvertible

INVERSE_SUFFIX = "^-1"


def _inverse_name(state: str) -> str:
    if state.endswith(INVERSE_SUFFIX):
        return state[: -len(INVERSE_SUFFIX)]
    return state + INVERSE_SUFFIX


@dataclass(frozen=True)
class GeneratorLetter:
    state: str
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")

    def inverse(self) -> GeneratorLetter:
        return GeneratorLetter(self.state, -self.sign)

    def __str__(self):
        return self.state if self.sign == 1 else self.state + INVERSE_SUFFIX


GroupWord = tuple  # tuple[GeneratorLetter, ...]

_TOKEN = re.compile(r"\s*([A-Za-z])(\^-1|')?")


def parse_group_word(text: str) -> GroupWord:
    """Parse ``"ab^-1A"`` style input.

    A letter followed by ``^-1`` or ``'``, or written in upper case, is the
    inverse generator.  ``""`` and ``"1"`` denote the identity.
    """
    text = text.strip()
    if text in ("", "1", "ε"):
        return ()
    letters = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse group word {text!r} at position {pos}")
        name, inv = m.groups()
        sign = -1 if (inv or name.isupper()) else 1
        letters.append(GeneratorLetter(name.lower(), sign))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tuple(letters)


def format_group_word(g: GroupWord) -> str:
    return " ".join(str(s) for s in g) if g else "e"


def inverse_word(g: GroupWord) -> GroupWord:
    return tuple(s.inverse() for s in reversed(g))


@dataclass(frozen=True)
class MealyMachine:
    """Finite Mealy automaton ``(Q, X, transition, output)``.

    ``transition`` and ``output`` are keyed by ``(state, letter)`` and must be
    total over ``states x alphabet``.
    """

    states: tuple
    alphabet: tuple
    transition: Mapping = field(hash=False)
    output: Mapping = field(hash=False)

    def __post_init__(self):
        for q in self.states:
            for x in self.alphabet:
                if (q, x) not in self.transition or (q, x) not in self.output:
                    raise ValueError(f"machine is not total at ({q!r}, {x!r})")
                if self.transition[q, x] not in self.states:
                    raise ValueError(f"transition ({q!r}, {x!r}) leaves the state set")
                if self.output[q, x] not in self.alphabet:
                    raise ValueError(f"output ({q!r}, {x!r}) leaves the alphabet")

    @cached_property
    def table(self) -> dict:
        """Fused ``(state, letter) -> (output, next_state)`` table for hot loops."""
        return {k: (self.output[k], self.transition[k]) for k in self.transition}

    def step(self, q, x):
        return self.table[q, x]

    def apply_word(self, q, w: str):
        """Run from ``q`` over ``w``; return ``(output_word, final_state)``."""
        table = self.table
        out = []
        for x in w:
            y, q = table[q, x]
            out.append(y)
        return "".join(out), q

    def permutation(self, q) -> tuple:
        """Images of the alphabet letters under the first-level action of ``q``."""
        return tuple(self.output[q, x] for x in self.alphabet)

    def is_invertible(self) -> bool:
        return all(
            sorted(self.permutation(q)) == sorted(self.alphabet) for q in self.states
        )

    @cached_property
    def inverse(self) -> MealyMachine:
        """The inverse transducer, with state ``q^-1`` for every state ``q``.

        Each edge ``q --x|y--> r`` becomes ``q^-1 --y|x--> r^-1``.
        """
        if not self.is_invertible():
            raise NotInvertible("machine has a state whose output map is not a bijection")
        transition, output = {}, {}
        for (q, x), (y, r) in self.table.items():
            transition[_inverse_name(q), y] = _inverse_name(r)
            output[_inverse_name(q), y] = x
        return MealyMachine(
            tuple(_inverse_name(q) for q in self.states), self.alphabet, transition, output
        )

    def invert(self) -> MealyMachine:
        return self.inverse

    def resolve(self, s: GeneratorLetter):
        """Return ``(machine, state)`` that realizes the signed letter ``s``."""
        if s.state not in self.states:
            raise KeyError(f"unknown state {s.state!r}")
        if s.sign == 1:
            return self, s.state
        return self.inverse, _inverse_name(s.state)

    def act(self, g: GroupWord, w: str) -> str:
        for s in g:
            m, q = self.resolve(s)
            w, _ = m.apply_word(q, w)
        return w

    def _letter_section(self, s: GeneratorLetter, v: str) -> GeneratorLetter:
        m, q = self.resolve(s)
        _, r = m.apply_word(q, v)
        if s.sign == 1:
            return GeneratorLetter(r, 1)
        return GeneratorLetter(_inverse_name(r), -1)

    def section(self, g: GroupWord, v: str) -> GroupWord:
        """Section ``g|_v = g1|_v . g2|_{g1(v)} ... gn|_{g1...g(n-1)(v)}``."""
        out = []
        for s in g:
            out.append(self._letter_section(s, v))
            v = self.act((s,), v)
        return tuple(out)

    def wreath(self, g: GroupWord):
        """Wreath recursion of ``g``: (sections at each letter, level-one images)."""
        sections = tuple(self.section(g, x) for x in self.alphabet)
        return sections, tuple(self.act(g, x) for x in self.alphabet)


def standard_machine() -> MealyMachine:
    """The 3-state machine ``a = (e, a)σ``, ``b = (b, a)``, ``e`` the identity."""
    transition = {
        ("a", "0"): "e", ("a", "1"): "a",
        ("b", "0"): "b", ("b", "1"): "a",
        ("e", "0"): "e", ("e", "1"): "e",
    }
    output = {
        ("a", "0"): "1", ("a", "1"): "0",
        ("b", "0"): "0", ("b", "1"): "1",
        ("e", "0"): "0", ("e", "1"): "1",
    }
    return MealyMachine(("a", "b", "e"), ("0", "1"), transition, output)


def identity_machine(alphabet=("0", "1")) -> MealyMachine:
    t = {("e", x): "e" for x in alphabet}
    o = {("e", x): x for x in alphabet}
    return MealyMachine(("e",), tuple(alphabet), t, o)


def _cycle_notation(alphabet, images) -> str:
    mapping = dict(zip(alphabet, images))
    seen, cycles = set(), []
    for x in alphabet:
        if x in seen:
            continue
        cyc = [x]
        seen.add(x)
        y = mapping[x]
        while y not in seen:
            cyc.append(y)
            seen.add(y)
            y = mapping[y]
        if len(cyc) > 1:
            cycles.append("(" + " ".join(cyc) + ")")
    return "".join(cycles) or "()"


def machine_to_dot(m: MealyMachine, name: str = "machine") -> str:
    """Moore diagram: vertices labeled by their level-one permutation, edges ``x|y``."""
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    invertible = m.is_invertible()
    for q in m.states:
        label = q
        if invertible:
            label += "\\n" + _cycle_notation(m.alphabet, m.permutation(q))
        lines.append(f'  "{q}" [shape=circle, label="{label}"];')
    for q in m.states:
        for x in m.alphabet:
            y, r = m.table[q, x]
            lines.append(f'  "{q}" -> "{r}" [label="{x}|{y}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
