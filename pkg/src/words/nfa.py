"""Nondeterministic finite word automata."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import count
from typing import Hashable, Iterable, Iterator, Mapping

from src.core.errors import AlphabetMismatchError, DocumentSyntaxError
from src.trees.symbols import Symbol, value_key

State = Hashable
Word = tuple[Symbol, ...]


@dataclass(frozen=True)
class WordNFA:
    """B = (Q, Σ, δ, I, F) with δ a set of triples (p, a, q).

    Raises:
        AlphabetMismatchError: If a transition uses an unknown state or letter.

    """

    states: frozenset
    letters: frozenset
    transitions: frozenset
    initial: frozenset
    final: frozenset

    def __post_init__(self) -> None:
        for p, a, q in self.transitions:
            if p not in self.states or q not in self.states:
                msg = f"transition ({p!r}, {a!r}, {q!r}) uses an unknown state"
                raise AlphabetMismatchError(msg)
            if a not in self.letters:
                msg = f"transition ({p!r}, {a!r}, {q!r}) reads the unknown letter {a!r}"
                raise AlphabetMismatchError(msg)
        if not (self.initial | self.final) <= self.states:
            msg = "initial and final states must be states"
            raise AlphabetMismatchError(msg)

    @classmethod
    def build(
        cls,
        states: Iterable[State],
        letters: Iterable[Symbol],
        transitions: Iterable[tuple[State, Symbol, State]],
        initial: Iterable[State],
        final: Iterable[State],
    ) -> WordNFA:
        return cls(frozenset(states), frozenset(letters), frozenset(transitions), frozenset(initial), frozenset(final))

    @cached_property
    def _moves(self) -> dict[tuple[State, Symbol], frozenset]:
        table: dict[tuple[State, Symbol], set] = {}
        for p, a, q in self.transitions:
            table.setdefault((p, a), set()).add(q)
        return {key: frozenset(value) for key, value in table.items()}

    def post(self, states: Iterable[State], letter: Symbol) -> frozenset:
        found: set = set()
        for p in states:
            found |= self._moves.get((p, letter), frozenset())
        return frozenset(found)

    def run(self, word: Iterable[Symbol]) -> frozenset:
        current = self.initial
        for letter in word:
            current = self.post(current, letter)
        return current

    def accepts(self, word: Iterable[Symbol]) -> bool:
        return bool(self.run(word) & self.final)

    def sorted_letters(self) -> list[Symbol]:
        return sorted(self.letters, key=value_key)

    def sorted_states(self) -> list[State]:
        return sorted(self.states, key=value_key)

    def reachable(self) -> frozenset:
        seen = set(self.initial)
        queue = deque(self.initial)
        while queue:
            p = queue.popleft()
            for a in self.letters:
                for q in self._moves.get((p, a), ()):
                    if q not in seen:
                        seen.add(q)
                        queue.append(q)
        return frozenset(seen)

    def is_empty(self) -> bool:
        return not (self.reachable() & self.final)

    def with_letters(self, letters: Iterable[Symbol]) -> WordNFA:
        return WordNFA(self.states, self.letters | frozenset(letters), self.transitions, self.initial, self.final)

    def words(self, max_length: int) -> Iterator[Word]:
        """Accepted words up to a length, shortest first and in letter order."""
        layer: list[tuple[Word, frozenset]] = [((), self.initial)]
        letters = self.sorted_letters()
        for length in range(max_length + 1):
            for word, current in layer:
                if current & self.final:
                    yield word
            if length == max_length:
                return
            layer = [
                (word + (a,), following)
                for word, current in layer
                for a in letters
                if (following := self.post(current, a))
            ]


def normalized(nfa: WordNFA) -> WordNFA:
    """The reachable part, renamed to 0, 1, ... in breadth-first order."""
    index: dict[State, int] = {}
    queue = deque(sorted(nfa.initial, key=value_key))
    for p in queue:
        index[p] = len(index)
    letters = nfa.sorted_letters()
    while queue:
        p = queue.popleft()
        for a in letters:
            for q in sorted(nfa.post([p], a), key=value_key):
                if q not in index:
                    index[q] = len(index)
                    queue.append(q)
    return WordNFA.build(
        index.values(),
        nfa.letters,
        ((index[p], a, index[q]) for p, a, q in nfa.transitions if p in index),
        (index[p] for p in nfa.initial),
        (index[p] for p in nfa.final if p in index),
    )


class EpsilonBuilder:
    """Collects states, letter moves and ε-moves; ``finish`` removes the ε-moves."""

    def __init__(self, letters: Iterable[Symbol]):
        self.letters = set(letters)
        self._names = count()
        self.states: list[int] = []
        self.moves: list[tuple[int, Symbol, int]] = []
        self.epsilon: dict[int, set[int]] = {}

    def state(self) -> int:
        name = next(self._names)
        self.states.append(name)
        return name

    def move(self, p: int, letter: Symbol, q: int) -> None:
        self.letters.add(letter)
        self.moves.append((p, letter, q))

    def link(self, p: int, q: int) -> None:
        self.epsilon.setdefault(p, set()).add(q)

    def copy(self, nfa: WordNFA) -> tuple[list[int], list[int]]:
        """Copies an automaton in; returns the copies of its initial and final states."""
        rename = {p: self.state() for p in nfa.sorted_states()}
        for p, a, q in nfa.transitions:
            self.move(rename[p], a, rename[q])
        return [rename[p] for p in nfa.initial], [rename[p] for p in nfa.final]

    def closure(self, p: int) -> set[int]:
        seen = {p}
        stack = [p]
        while stack:
            for q in self.epsilon.get(stack.pop(), ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return seen

    def finish(self, initial: Iterable[int], final: Iterable[int]) -> WordNFA:
        final = set(final)
        closures = {p: self.closure(p) for p in self.states}
        outgoing: dict[int, list[tuple[Symbol, int]]] = {}
        for r, a, q in self.moves:
            outgoing.setdefault(r, []).append((a, q))
        transitions = {
            (p, a, q)
            for p in self.states
            for r in closures[p]
            for a, q in outgoing.get(r, ())
        }
        accepting = {p for p in self.states if closures[p] & final}
        return normalized(WordNFA.build(self.states, self.letters, transitions, initial, accepting))


def from_words(letters: Iterable[Symbol], words: Iterable[Iterable[Symbol]]) -> WordNFA:
    """An automaton accepting exactly the given words."""
    builder = EpsilonBuilder(letters)
    start = builder.state()
    ends = []
    for word in words:
        p = start
        for letter in word:
            q = builder.state()
            builder.move(p, letter, q)
            p = q
        ends.append(p)
    return builder.finish([start], ends)


def universal(letters: Iterable[Symbol], *, nonempty: bool = False) -> WordNFA:
    """Σ* or, with ``nonempty``, Σ⁺."""
    letters = frozenset(letters)
    transitions = [(0, a, 1) for a in letters] + [(1, a, 1) for a in letters]
    final = [1] if nonempty else [0, 1]
    return WordNFA.build([0, 1], letters, transitions, [0], final)


def empty(letters: Iterable[Symbol]) -> WordNFA:
    return WordNFA.build([0], letters, [], [0], [])


def union(first: WordNFA, second: WordNFA) -> WordNFA:
    builder = EpsilonBuilder(first.letters | second.letters)
    starts = []
    ends = []
    for part in (first, second):
        initial, final = builder.copy(part)
        starts.extend(initial)
        ends.extend(final)
    return builder.finish(starts, ends)


def intersection(first: WordNFA, second: WordNFA) -> WordNFA:
    letters = first.letters | second.letters
    starts = [(p, q) for p in first.initial for q in second.initial]
    seen = set(starts)
    queue = deque(starts)
    transitions = []
    while queue:
        p, q = queue.popleft()
        for a in letters:
            for p2 in first.post([p], a):
                for q2 in second.post([q], a):
                    transitions.append(((p, q), a, (p2, q2)))
                    if (p2, q2) not in seen:
                        seen.add((p2, q2))
                        queue.append((p2, q2))
    final = [(p, q) for p, q in seen if p in first.final and q in second.final]
    return normalized(WordNFA.build(seen, letters, transitions, starts, final))


def determinize(nfa: WordNFA, letters: Iterable[Symbol] | None = None) -> WordNFA:
    """The complete subset automaton; its states are frozensets of states."""
    letters = nfa.letters if letters is None else nfa.letters | frozenset(letters)
    start = nfa.initial
    seen = {start}
    queue = deque([start])
    transitions = []
    while queue:
        current = queue.popleft()
        for a in letters:
            following = nfa.post(current, a)
            transitions.append((current, a, following))
            if following not in seen:
                seen.add(following)
                queue.append(following)
    final = [s for s in seen if s & nfa.final]
    return WordNFA.build(seen, letters, transitions, [start], final)


def complement(nfa: WordNFA, letters: Iterable[Symbol] | None = None) -> WordNFA:
    dfa = determinize(nfa, letters)
    return WordNFA(dfa.states, dfa.letters, dfa.transitions, dfa.initial, dfa.states - dfa.final)


def counterexample(first: WordNFA, second: WordNFA) -> Word | None:
    """A shortest word of L(first) outside L(second), or None when L(first) ⊆ L(second)."""
    letters = sorted(first.letters | second.letters, key=value_key)
    start = (first.initial, second.initial)
    parents: dict[tuple, tuple | None] = {start: None}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        left, right = current
        if left & first.final and not right & second.final:
            word: list[Symbol] = []
            while parents[current] is not None:
                current, letter = parents[current]
                word.append(letter)
            return tuple(reversed(word))
        for a in letters:
            following = (first.post(left, a), second.post(right, a))
            if following[0] and following not in parents:
                parents[following] = (current, a)
                queue.append(following)
    return None


def included_in(first: WordNFA, second: WordNFA) -> bool:
    return counterexample(first, second) is None


def equivalent(first: WordNFA, second: WordNFA) -> bool:
    return included_in(first, second) and included_in(second, first)


def regular_substitution(nfa: WordNFA, images: Mapping[Symbol, WordNFA]) -> WordNFA:
    """σ(L): every transition on a letter with an image is replaced by a copy of that image.

    Letters without an image stand for themselves and are kept in the result;
    letters with one are not.

    """
    letters = {a for a in nfa.letters if a not in images}
    for image in images.values():
        letters |= image.letters
    builder = EpsilonBuilder(letters)
    rename = {p: builder.state() for p in nfa.sorted_states()}
    for p, a, q in sorted(nfa.transitions, key=value_key):
        if a not in images:
            builder.move(rename[p], a, rename[q])
            continue
        initial, final = builder.copy(images[a])
        for start in initial:
            builder.link(rename[p], start)
        for end in final:
            builder.link(end, rename[q])
    result = builder.finish([rename[p] for p in nfa.initial], [rename[p] for p in nfa.final])
    return WordNFA(result.states, frozenset(letters), result.transitions, result.initial, result.final)


_REGEX_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*)|([()|*+?]))")


def from_regex(text: str, letters: Iterable[Symbol] = (), line: int = 1) -> WordNFA:
    """Parses a regular expression over named letters.

    Letters are identifiers separated by blanks or brackets; ``|`` is union,
    juxtaposition concatenation and ``*``, ``+``, ``?`` are postfix. The names
    ``eps`` and ``empty`` denote the empty word and the empty language.

    Raises:
        DocumentSyntaxError: With the column of the first offending character.

    """
    parser = _RegexParser(text, letters, line)
    start, end = parser.alternation()
    parser.expect_end()
    return parser.builder.finish([start], [end])


class _RegexParser:
    def __init__(self, text: str, letters: Iterable[Symbol], line: int):
        self.text = text
        self.line = line
        self.pos = 0
        self.builder = EpsilonBuilder(letters)

    def fail(self, message: str) -> DocumentSyntaxError:
        return DocumentSyntaxError(message, self.line, self.pos + 1)

    def peek(self) -> re.Match | None:
        if not self.text[self.pos:].strip():
            return None
        match = _REGEX_TOKEN.match(self.text, self.pos)
        if match is None:
            self.pos += len(self.text[self.pos:]) - len(self.text[self.pos:].lstrip())
            raise self.fail(f"unexpected character {self.text[self.pos]!r}")
        return match

    def alternation(self) -> tuple[int, int]:
        start, end = self.builder.state(), self.builder.state()
        while True:
            first, last = self.concatenation()
            self.builder.link(start, first)
            self.builder.link(last, end)
            match = self.peek()
            if match is None or match.group(2) != "|":
                return start, end
            self.pos = match.end()

    def concatenation(self) -> tuple[int, int]:
        start = self.builder.state()
        end = start
        while (match := self.peek()) is not None and match.group(2) not in ("|", ")"):
            first, last = self.repetition()
            self.builder.link(end, first)
            end = last
        return start, end

    def repetition(self) -> tuple[int, int]:
        first, last = self.atom()
        while (match := self.peek()) is not None and match.group(2) in ("*", "+", "?"):
            self.pos = match.end()
            start, end = self.builder.state(), self.builder.state()
            self.builder.link(start, first)
            self.builder.link(last, end)
            if match.group(2) in ("*", "?"):
                self.builder.link(start, end)
            if match.group(2) in ("*", "+"):
                self.builder.link(last, first)
            first, last = start, end
        return first, last

    def atom(self) -> tuple[int, int]:
        match = self.peek()
        if match is None:
            raise self.fail("unexpected end of expression")
        name, operator = match.groups()
        if operator == "(":
            self.pos = match.end()
            inner = self.alternation()
            closing = self.peek()
            if closing is None or closing.group(2) != ")":
                raise self.fail("expected ')'")
            self.pos = closing.end()
            return inner
        if name is None:
            self.pos = match.start(2)
            raise self.fail(f"unexpected {operator!r}")
        self.pos = match.end()
        start, end = self.builder.state(), self.builder.state()
        if name == "eps":
            self.builder.link(start, end)
        elif name != "empty":
            self.builder.move(start, name, end)
        return start, end

    def expect_end(self) -> None:
        match = self.peek()
        if match is not None:
            self.pos = match.start(1) if match.group(1) else match.start(2)
            raise self.fail("unexpected input after the expression")


def format_nfa(nfa: WordNFA) -> list[str]:
    """One line per transition, then the initial and final states."""
    lines = [f"{p} -{a}-> {q}" for p, a, q in sorted(nfa.transitions, key=value_key)]
    lines.append("initial " + " ".join(str(p) for p in sorted(nfa.initial, key=value_key)))
    lines.append("final " + " ".join(str(p) for p in sorted(nfa.final, key=value_key)))
    return lines
