"""Substitutions and the languages they assign to variables."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Mapping, Protocol

from src.automata.boolean import intersect
from src.automata.nta import (
    ParityNTA,
    State,
    Transition,
    empty_automaton,
    from_trees,
    product,
    trim,
    union,
)
from src.core.errors import MissingImageError, RankMismatchError
from src.trees.graphs import TreeGraph
from src.trees.symbols import RankedAlphabet, Signature, Symbol, is_hole
from src.trees.terms import Tree, check_tree, format_term, holes_of, identity_tree

Language = tuple[ParityNTA, State]


class Image(Protocol):
    """A language over Σ and the holes of one variable, never containing a bare hole."""

    def to_automaton(self, signature: Signature, rank: int) -> Language: ...


def image_guard(signature: Signature, rank: int) -> Language:
    """All trees over the signature that are no bare hole and use holes 1..rank only."""
    transitions = []
    for symbol, arity in signature.items():
        if is_hole(symbol):
            if symbol <= rank:
                transitions.append(Transition("inner", symbol, ()))
            continue
        transitions.append(Transition("root", symbol, ("inner",) * arity))
        transitions.append(Transition("inner", symbol, ("inner",) * arity))
    automaton = ParityNTA(signature, ["root", "inner"], transitions, {"root": 2, "inner": 2})
    return automaton, "root"


def _graph_holes(g: TreeGraph) -> frozenset[int]:
    return frozenset(label for label in g.labels if is_hole(label))


def _check_image_tree(variable: Symbol, item: Tree | TreeGraph, rank: int) -> None:
    holes = holes_of(item) if isinstance(item, Tree) else _graph_holes(item)
    root = item.symbol if isinstance(item, Tree) else item.labels[item.root]
    if is_hole(root):
        msg = f"the image of {variable} contains the bare hole {format_term(Tree(root))}"
        raise RankMismatchError(msg)
    too_big = sorted(i for i in holes if i > rank)
    if too_big:
        msg = f"the image of {variable} uses hole {too_big[0]} above its rank {rank}"
        raise RankMismatchError(msg)


@dataclass(frozen=True)
class TreeSet:
    """An explicit finite set of finite or rational trees."""

    trees: tuple[Tree | TreeGraph, ...]

    def to_automaton(self, signature: Signature, rank: int) -> Language:
        if not self.trees:
            return empty_automaton(signature)
        return from_trees(signature, self.trees)

    def finite_trees(self) -> list[Tree]:
        return [t if isinstance(t, Tree) else t.to_tree() for t in self.trees]


@dataclass(frozen=True)
class AutomatonImage:
    """L(automaton, state) with bare holes removed."""

    automaton: ParityNTA
    state: State

    def to_automaton(self, signature: Signature, rank: int) -> Language:
        guard, start = image_guard(signature, rank)
        automaton = self.automaton
        if automaton.signature != signature:
            automaton = ParityNTA(signature, automaton.states, automaton.transitions, automaton.colors)
        return product(automaton, self.state, guard, start)

    def bad_holes(self, rank: int) -> list[int]:
        """Holes above the rank that occur in some accepted tree."""
        trimmed = trim(self.automaton, [self.state])
        return sorted({t.symbol for t in trimmed.transitions if is_hole(t.symbol) and t.symbol > rank})


@dataclass(frozen=True)
class ProfileUnion:
    """The union of profile classes, cut down to the trees allowed for a variable.

    Attributes:
        classes: The class languages over Σ and all holes.
        bound: An optional further language every tree must belong to.

    """

    profiles: tuple
    classes: tuple[Language, ...]
    bound: Language | None = None

    def to_automaton(self, signature: Signature, rank: int) -> Language:
        if not self.classes:
            return empty_automaton(signature)
        combined = reduce(lambda left, right: union(*left, *right), self.classes)
        guard = image_guard(signature, rank)
        result = product(*combined, *guard)
        if self.bound is not None:
            result = intersect(*result, *self.bound)
        return result


@dataclass(frozen=True)
class FullImage:
    """Every tree over Σ and the holes 1..rank except the bare holes."""

    def to_automaton(self, signature: Signature, rank: int) -> Language:
        return image_guard(signature, rank)


@dataclass(frozen=True)
class Substitution:
    """Images for the variables; every other symbol f stands for f(1, ..., rk f).

    Raises:
        MissingImageError: If a variable has no image.
        RankMismatchError: If an explicit image tree is a bare hole or uses a hole
            above the variable's rank, or an automaton image accepts such a hole.

    """

    alphabet: RankedAlphabet
    images: Mapping[Symbol, Image]
    _automata: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        missing = [x for x in self.alphabet.variables if x not in self.images]
        if missing:
            msg = f"variable {missing[0]} has no image"
            raise MissingImageError(msg)
        for x, image in self.images.items():
            rank = self.alphabet.variables.rank(x)
            if isinstance(image, TreeSet):
                for item in image.trees:
                    _check_image_tree(x, item, rank)
                    if isinstance(item, Tree):
                        check_tree(item, self.alphabet.sigma_with_holes())
            elif isinstance(image, AutomatonImage):
                bad = image.bad_holes(rank)
                if bad:
                    msg = f"the image of {x} accepts trees with hole {bad[0]} above its rank {rank}"
                    raise RankMismatchError(msg)

    @property
    def variables(self) -> list[Symbol]:
        return list(self.alphabet.variables)

    @property
    def signature(self) -> Signature:
        """Σ with every hole up to the largest rank."""
        return self.alphabet.sigma_with_holes()

    def rank(self, x: Symbol) -> int:
        return self.alphabet.full.rank(x)

    def image(self, x: Symbol) -> Image:
        if x in self.images:
            return self.images[x]
        return TreeSet((identity_tree(x, self.alphabet.full.rank(x)),))

    def automaton(self, x: Symbol) -> Language:
        """The image of a variable as an automaton over Σ and all holes."""
        if x not in self._automata:
            self._automata[x] = self.image(x).to_automaton(self.signature, self.rank(x))
        return self._automata[x]

    def explicit(self, x: Symbol) -> list[Tree]:
        """The finite image trees of a variable given as an explicit set."""
        image = self.image(x)
        if not isinstance(image, TreeSet):
            msg = f"the image of {x} is not an explicit set of trees"
            raise TypeError(msg)
        return image.finite_trees()

    def is_explicit(self) -> bool:
        return all(isinstance(image, TreeSet) for image in self.images.values())

    def with_images(self, images: Mapping[Symbol, Image]) -> Substitution:
        return Substitution(self.alphabet, {**self.images, **images})

    def is_homomorphism(self) -> bool:
        return all(isinstance(i, TreeSet) and len(i.trees) == 1 for i in self.images.values())


def full_substitution(alphabet: RankedAlphabet) -> Substitution:
    return Substitution(alphabet, {x: FullImage() for x in alphabet.variables})


def explicit_substitution(
    alphabet: RankedAlphabet, images: Mapping[Symbol, Iterable[Tree | TreeGraph]]
) -> Substitution:
    return Substitution(alphabet, {x: TreeSet(tuple(trees)) for x, trees in images.items()})