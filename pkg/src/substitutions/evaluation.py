"""IO and OI evaluation of substitutions on finite trees, choice functions and their approximants."""

from __future__ import annotations

import logging
from itertools import product as cartesian
from typing import Callable, Iterator, Mapping, Union

from src.core.config import get_settings
from src.core.errors import MissingImageError
from src.substitutions.images import Substitution
from src.trees.graphs import TreeGraph
from src.trees.symbols import BOTTOM, Symbol, is_hole
from src.trees.terms import (
    Position,
    Tree,
    contains_bottom,
    hole_substitute_pointwise,
    hole_substitute_uniform,
    holes_of,
    identity_tree,
    labelled_positions,
)

logger = logging.getLogger(get_settings().LOGGER_ENGINE_NAME)

Choice = Union[Tree, None]


def eval_io_finite(sigma: Substitution, s: Tree) -> set[Tree]:
    """σ_io(s): one image per subtree, copied to every occurrence of its hole.

    Holes the chosen image does not use put no requirement on their subtree.

    """
    memo: dict[Tree, set[Tree]] = {}

    def visit(node: Tree) -> set[Tree]:
        if node in memo:
            return memo[node]
        below = [visit(child) for child in node.children]
        result: set[Tree] = set()
        for image in _images(sigma, node.symbol, len(node.children)):
            used = sorted(holes_of(image))
            for picks in cartesian(*(below[i - 1] for i in used)):
                result.add(hole_substitute_uniform(image, dict(zip(used, picks))))
        memo[node] = result
        return result

    return visit(s)


def eval_oi_finite(sigma: Substitution, s: Tree) -> set[Tree]:
    """σ_oi(s): every hole leaf of an image picks its own tree from the subtree's OI set."""
    memo: dict[Tree, set[Tree]] = {}

    def visit(node: Tree) -> set[Tree]:
        if node in memo:
            return memo[node]
        below = [visit(child) for child in node.children]
        result: set[Tree] = set()
        for image in _images(sigma, node.symbol, len(node.children)):
            leaves = [u for u, sub in labelled_positions(image) if is_hole(sub.symbol)]
            pools = [below[_hole_at(image, u) - 1] for u in leaves]
            for picks in cartesian(*pools):
                result.add(hole_substitute_pointwise(image, dict(zip(leaves, picks))))
        memo[node] = result
        return result

    return visit(s)


def _hole_at(t: Tree, u: Position) -> int:
    node = t
    for i in u:
        node = node.children[i - 1]
    return node.symbol


def _images(sigma: Substitution, symbol: Symbol, rank: int) -> list[Tree]:
    if symbol in sigma.alphabet.variables:
        return sigma.explicit(symbol)
    return [identity_tree(symbol, rank)]


class ChoiceAssignment:
    """A homomorphism-style choice: every occurrence of a symbol gets the same tree or bottom.

    Symbols without an entry get their natural image f(1, ..., rk f).

    """

    def __init__(self, images: Mapping[Symbol, Choice]):
        self.images = dict(images)

    def __call__(self, symbol: Symbol, rank: int, position: Position) -> Choice:
        if symbol in self.images:
            return self.images[symbol]
        return identity_tree(symbol, rank)


class ChoiceFunction:
    """A positional choice: the tree chosen at each position of s, or bottom.

    Positions of non-variables may be left out; they get the natural image.

    """

    def __init__(self, choices: Mapping[Position, Choice], variables: frozenset = frozenset()):
        self.choices = dict(choices)
        self.variables = frozenset(variables)

    def __call__(self, symbol: Symbol, rank: int, position: Position) -> Choice:
        if position in self.choices:
            return self.choices[position]
        if symbol in self.variables:
            msg = f"no choice at position {position} labelled {symbol}"
            raise MissingImageError(msg)
        return identity_tree(symbol, rank)


Chooser = Callable[[Symbol, int, Position], Choice]


def _node(s: Tree | TreeGraph, where: Tree | int) -> tuple[Symbol, list]:
    if isinstance(s, Tree):
        return where.symbol, list(where.children)
    return s.labels[where], list(s.successors[where])


def gamma_n(gamma: Chooser, s: Tree | TreeGraph, n: int) -> Tree:
    """The n-th approximant: the choice at the root with n levels of choices substituted below.

    Bottom stands for an empty choice.

    """
    start = s if isinstance(s, Tree) else s.root

    def visit(where: Tree | int, u: Position, depth: int) -> Tree:
        symbol, children = _node(s, where)
        chosen = gamma(symbol, len(children), u)
        if chosen is None:
            return Tree(BOTTOM)
        if depth == 0:
            return chosen
        used = sorted(holes_of(chosen))
        images = {i: visit(children[i - 1], u + (i,), depth - 1) for i in used}
        return hole_substitute_uniform(chosen, images)

    return visit(start, (), n)


def gamma_limit(gamma: Chooser, s: Tree) -> Tree:
    """γ_∞(s) for a finite tree s: the approximant at the height of s."""
    depth = max(len(u) for u, _ in labelled_positions(s))
    return gamma_n(gamma, s, depth + 1)


def hom_image_finite(phi: Mapping[Symbol, Choice], s: Tree) -> Tree:
    return gamma_limit(ChoiceAssignment(phi), s)


def hom_image_rational(phi: Mapping[Symbol, Choice], s: TreeGraph | Tree) -> TreeGraph:
    """The image of a rational tree under a homomorphism, by substituting every node of its graph.

    Raises:
        ValueError: If some image is a bare hole.

    """
    if isinstance(s, Tree):
        s = TreeGraph.from_tree(s)
    labels: list[Symbol] = []
    successors: list[list[int]] = []
    entries: list[int] = []
    pending: list[tuple[int, int, int]] = []
    for node, symbol in enumerate(s.labels):
        chosen = phi.get(symbol, identity_tree(symbol, len(s.successors[node])))
        if chosen is None:
            chosen = Tree(BOTTOM)
        if is_hole(chosen.symbol):
            msg = f"the image of {symbol} is a bare hole"
            raise ValueError(msg)
        copy = TreeGraph.from_tree(chosen)
        offset = len(labels)
        entries.append(offset + copy.root)
        for local, label in enumerate(copy.labels):
            labels.append(label)
            successors.append([offset + t for t in copy.successors[local]])
            if is_hole(label):
                pending.append((offset + local, node, label))
    redirect = {index: entries[s.successors[node][i - 1]] for index, node, i in pending}
    successors = [[redirect.get(t, t) for t in targets] for targets in successors]
    return TreeGraph.build(labels, successors, entries[s.root])


def choice_functions(sigma: Substitution, s: Tree) -> Iterator[ChoiceFunction]:
    """Every positional choice over an explicit substitution, bottom allowed at variables."""
    spots = [(u, node.symbol) for u, node in labelled_positions(s) if node.symbol in sigma.alphabet.variables]
    pools = [[*sigma.explicit(x), None] for _, x in spots]
    variables = frozenset(sigma.alphabet.variables)
    for picks in cartesian(*pools):
        yield ChoiceFunction({u: pick for (u, _), pick in zip(spots, picks)}, variables)


def eval_via_choices(sigma: Substitution, s: Tree) -> set[Tree]:
    """σ_io(s) as the bottom-free limits of all positional choice functions."""
    found = set()
    for gamma in choice_functions(sigma, s):
        image = gamma_limit(gamma, s)
        if not contains_bottom(image):
            found.add(image)
    return found
