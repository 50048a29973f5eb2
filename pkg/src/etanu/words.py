"""Free-group words and finite presentations.

A word is a sequence of ``(generator, exponent)`` letters with exponent +1 or
-1.  Presentations store their relators freely reduced.  The text format
accepted by :func:`parse_presentation` exists for CLI debugging:

    gens: a b; rels: a^2, b^2, (a*b)^3

``^`` takes integer powers (negative allowed), ``*`` concatenates, ``,``
separates relators, and whitespace is ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Letter = tuple[int, int]


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for gen, exp in self.letters:
            if exp not in (1, -1):
                raise ValueError(f"letter exponent must be +-1, got {exp}")
            if gen < 0:
                raise ValueError("generator indices are non-negative")

    @classmethod
    def from_letters(cls, letters: Iterable[tuple[int, int]]) -> "Word":
        expanded: list[Letter] = []
        for gen, exp in letters:
            unit = 1 if exp > 0 else -1
            expanded.extend((gen, unit) for _ in range(abs(exp)))
        return cls(tuple(expanded))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def is_reduced(self) -> bool:
        return all(
            not (a[0] == b[0] and a[1] == -b[1])
            for a, b in zip(self.letters, self.letters[1:])
        )

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)


def free_reduce(word: Word) -> Word:
    """Cancel adjacent inverse pairs until none remain; idempotent."""
    stack: list[Letter] = []
    for letter in word.letters:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return Word(tuple(stack))


def cyclic_reduce(word: Word) -> Word:
    """Freely reduce, then strip cancelling first/last letter pairs."""
    letters = list(free_reduce(word).letters)
    while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
        letters = letters[1:-1]
    return Word(tuple(letters))


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple[Word, ...]
    generator_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        reduced = tuple(free_reduce(r) for r in self.relators)
        object.__setattr__(self, "relators", reduced)
        for r in reduced:
            if r.max_generator() >= self.generator_count:
                raise ValueError(
                    f"relator references generator {r.max_generator()}, "
                    f"but only {self.generator_count} exist"
                )
        if self.generator_labels is not None and len(self.generator_labels) != self.generator_count:
            raise ValueError("one label per generator required")

    def label(self, gen: int) -> str:
        if self.generator_labels:
            return self.generator_labels[gen]
        return f"x{gen}"

    def format_word(self, word: Word) -> str:
        if not word.letters:
            return "1"
        parts = []
        for gen, exp in word.letters:
            parts.append(self.label(gen) if exp == 1 else f"{self.label(gen)}^-1")
        return "*".join(parts)


def cayley_presentation(table, labels: Sequence[str] | None = None) -> Presentation:
    """One generator per element, one relator per multiplication entry."""
    n = table.size
    relators = [
        Word(((a, 1), (b, 1), (table.mul(a, b), -1))) for a in range(n) for b in range(n)
    ]
    label_tuple = tuple(labels) if labels is not None else tuple(f"x{i}" for i in range(n))
    return Presentation(n, tuple(relators), label_tuple)


_TOKEN = re.compile(r"\s*(\(|\)|\*|\^|,|-?\d+|[A-Za-z_][A-Za-z_0-9]*)")


class _Parser:
    def __init__(self, text: str, gen_index: dict[str, int]):
        self.tokens = self._tokenize(text)
        self.pos = 0
        self.gen_index = gen_index

    @staticmethod
    def _tokenize(text: str) -> list[str]:
        tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise ValueError(f"cannot tokenize {text[pos:]!r}")
                break
            tokens.append(m.group(1))
            pos = m.end()
        return tokens

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of relator")
        self.pos += 1
        return tok

    def parse_relator(self) -> Word:
        word = self.parse_term()
        while self.peek() == "*":
            self.take()
            word = word * self.parse_term()
        return word

    def parse_term(self) -> Word:
        tok = self.take()
        if tok == "(":
            base = self.parse_relator()
            if self.take() != ")":
                raise ValueError("unbalanced parenthesis in relator")
        elif tok in self.gen_index:
            base = Word(((self.gen_index[tok], 1),))
        else:
            raise ValueError(f"unknown generator {tok!r}")
        if self.peek() == "^":
            self.take()
            exp_tok = self.take()
            try:
                exp = int(exp_tok)
            except ValueError:
                raise ValueError(f"expected integer exponent, got {exp_tok!r}") from None
            base = _power(base, exp)
        return base


def _power(word: Word, exp: int) -> Word:
    if exp == 0:
        return Word()
    base = word if exp > 0 else word.inverse()
    return Word(base.letters * abs(exp))


def parse_presentation(text: str) -> Presentation:
    """Parse the ``gens: ...; rels: ...`` debugging format."""
    m = re.fullmatch(r"\s*gens\s*:(?P<gens>[^;]*);\s*rels\s*:(?P<rels>.*)", text.strip(), re.S)
    if not m:
        raise ValueError("expected 'gens: ...; rels: ...'")
    names = m.group("gens").split()
    if len(set(names)) != len(names):
        raise ValueError("duplicate generator names")
    gen_index = {name: i for i, name in enumerate(names)}
    relators = []
    rel_text = m.group("rels").strip()
    if rel_text:
        for chunk in _split_relators(rel_text):
            parser = _Parser(chunk, gen_index)
            relators.append(parser.parse_relator())
            if parser.peek() is not None:
                raise ValueError(f"trailing tokens in relator {chunk!r}")
    return Presentation(len(names), tuple(relators), tuple(names))


def _split_relators(text: str) -> list[str]:
    # commas inside parentheses never occur in this grammar, so a flat split works
    return [chunk for chunk in (c.strip() for c in text.split(",")) if chunk]
