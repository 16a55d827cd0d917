"""Finite trees, positions and hole substitution."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping

from src.core.errors import DocumentSyntaxError, MissingImageError, PositionError, RankMismatchError
from src.trees.symbols import BOTTOM, Signature, Symbol, is_hole, sort_symbols

Position = tuple[int, ...]


@dataclass(frozen=True)
class Tree:
    """A finite tree: a root symbol with ordered children.

    Holes are the integers 1, 2, ... used as rank-0 symbols.

    """

    symbol: Symbol
    children: tuple[Tree, ...] = ()

    def __hash__(self) -> int:
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash((self.symbol, self.children))
            object.__setattr__(self, "_hash", cached)
        return cached

    def __str__(self) -> str:
        return format_term(self)

    def __repr__(self) -> str:
        return f"Tree({format_term(self)})"

    @property
    def rank(self) -> int:
        return len(self.children)


def leaf(symbol: Symbol) -> Tree:
    return Tree(symbol)


def hole(i: int) -> Tree:
    return Tree(i)


def identity_tree(symbol: Symbol, rank: int) -> Tree:
    """The tree f(1, ..., rank) every non-variable is mapped to."""
    return Tree(symbol, tuple(hole(i) for i in range(1, rank + 1)))


def positions(t: Tree) -> Iterator[Position]:
    """All positions of t in preorder."""
    for u, _ in labelled_positions(t):
        yield u


def labelled_positions(t: Tree) -> Iterator[tuple[Position, Tree]]:
    """Pairs of position and subtree, in preorder."""
    stack: list[tuple[Position, Tree]] = [((), t)]
    while stack:
        u, node = stack.pop()
        yield u, node
        for i in range(len(node.children), 0, -1):
            stack.append((u + (i,), node.children[i - 1]))


def length_lex(u: Position) -> tuple[int, Position]:
    return (len(u), u)


def subtree_at(t: Tree, u: Position) -> Tree:
    """Returns t|_u.

    Raises:
        PositionError: If u is not a position of t.

    """
    node = t
    for depth, i in enumerate(u):
        if not 1 <= i <= len(node.children):
            msg = f"position {format_position(u)} leaves the tree at depth {depth}"
            raise PositionError(msg)
        node = node.children[i - 1]
    return node


def replace_at(t: Tree, u: Position, replacement: Tree) -> Tree:
    """Returns t[u <- replacement]; positions not below u keep their labels.

    Raises:
        PositionError: If u is not a position of t.

    """
    if not u:
        return replacement
    i = u[0]
    if not 1 <= i <= len(t.children):
        msg = f"position {format_position(u)} leaves the tree"
        raise PositionError(msg)
    children = list(t.children)
    children[i - 1] = replace_at(children[i - 1], u[1:], replacement)
    return Tree(t.symbol, tuple(children))


def hole_leaves(t: Tree, i: int) -> list[Position]:
    """Positions of the leaves labelled with hole i, in length-lexicographic order."""
    found = [u for u, node in labelled_positions(t) if node.symbol == i]
    return sorted(found, key=length_lex)


def holes_of(t: Tree) -> frozenset[int]:
    return frozenset(node.symbol for node in nodes(t) if is_hole(node.symbol))


def nodes(t: Tree) -> Iterator[Tree]:
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def symbols_of(t: Tree) -> set[Symbol]:
    return {node.symbol for node in nodes(t)}


def contains_bottom(t: Tree) -> bool:
    return any(node.symbol == BOTTOM for node in nodes(t))


def tree_size(t: Tree) -> int:
    return sum(1 for _ in nodes(t))


def tree_height(t: Tree) -> int:
    if not t.children:
        return 0
    return 1 + max(tree_height(child) for child in t.children)


def check_tree(t: Tree, signature: Signature) -> None:
    """Raises if t uses a symbol outside the signature or with a wrong rank."""
    for node in nodes(t):
        if node.symbol == BOTTOM:
            continue
        expected = signature.rank(node.symbol)
        if expected != len(node.children):
            msg = f"symbol {node.symbol} has rank {expected} but {len(node.children)} children"
            raise RankMismatchError(msg)


def hole_substitute_uniform(t: Tree, images: Mapping[int, Tree]) -> Tree:
    """Replaces every leaf labelled i by images[i].

    Raises:
        MissingImageError: If a hole of t has no image.

    """
    if is_hole(t.symbol):
        try:
            return images[t.symbol]
        except KeyError as e:
            msg = f"hole {t.symbol} has no image"
            raise MissingImageError(msg) from e
    if not t.children:
        return t
    return Tree(t.symbol, tuple(hole_substitute_uniform(c, images) for c in t.children))


def hole_substitute_pointwise(t: Tree, images: Mapping[Position, Tree]) -> Tree:
    """Replaces each hole leaf by the image given for its own position.

    Raises:
        MissingImageError: If a hole leaf has no image.
        PositionError: If an image is given for a position that is not a hole leaf.

    """
    leaves = [u for u, node in labelled_positions(t) if is_hole(node.symbol)]
    missing = [u for u in leaves if u not in images]
    if missing:
        msg = f"hole leaf at {format_position(missing[0])} has no image"
        raise MissingImageError(msg)
    extra = set(images) - set(leaves)
    if extra:
        msg = f"position {format_position(min(extra, key=length_lex))} is not a hole leaf"
        raise PositionError(msg)

    def walk(node: Tree, u: Position) -> Tree:
        if is_hole(node.symbol):
            return images[u]
        if not node.children:
            return node
        return Tree(node.symbol, tuple(walk(c, u + (i,)) for i, c in enumerate(node.children, 1)))

    return walk(t, ())


def tree_distance(t1: Tree, t2: Tree) -> Fraction:
    """The ultrametric distance 2^-k, k the least level where the trees disagree.

    A tree containing bottom is at distance 1 from every tree that does not.

    """
    if contains_bottom(t1) != contains_bottom(t2):
        return Fraction(1)
    level = [(t1, t2)]
    depth = 0
    while level:
        following = []
        for a, b in level:
            if a.symbol != b.symbol or len(a.children) != len(b.children):
                return Fraction(1, 2**depth)
            following.extend(zip(a.children, b.children))
        level = following
        depth += 1
    return Fraction(0)


def enumerate_trees(signature: Signature, max_size: int) -> Iterator[Tree]:
    """All finite trees over the signature with at most max_size nodes, smallest first."""
    by_size: dict[int, list[Tree]] = {}
    symbols = sort_symbols(signature)
    for size in range(1, max_size + 1):
        trees: list[Tree] = []
        for symbol in symbols:
            rank = signature[symbol]
            if rank == 0:
                if size == 1:
                    trees.append(Tree(symbol))
                continue
            for split in _compositions(size - 1, rank):
                pools = [by_size[part] for part in split]
                for children in product(*pools):
                    trees.append(Tree(symbol, tuple(children)))
        by_size[size] = trees
        yield from trees


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def format_position(u: Position) -> str:
    return ".".join(str(i) for i in u) if u else "ε"


def format_symbol(symbol: Symbol) -> str:
    if is_hole(symbol):
        return f"#{symbol}"
    return str(symbol)


def format_term(t: Tree) -> str:
    """Prints a tree in term syntax: f(t1,...,tk), holes #i, bottom _|_."""
    if not t.children:
        return format_symbol(t.symbol)
    return f"{format_symbol(t.symbol)}({','.join(format_term(c) for c in t.children)})"


_TOKEN = re.compile(r"\s*(?:(_\|_)|#(\d+)|([A-Za-z_][A-Za-z0-9_']*)|([(),]))")


def parse_term(text: str, line: int = 1, column_offset: int = 0) -> Tree:
    """Parses term syntax.

    Raises:
        DocumentSyntaxError: With the line and column of the first offending character.

    """
    parser = _TermParser(text, line, column_offset)
    tree = parser.term()
    parser.expect_end()
    return tree


class _TermParser:
    def __init__(self, text: str, line: int, column_offset: int):
        self.text = text
        self.pos = 0
        self.line = line
        self.offset = column_offset

    def fail(self, message: str) -> DocumentSyntaxError:
        return DocumentSyntaxError(message, self.line, self.offset + self.pos + 1)

    def peek(self) -> re.Match | None:
        return _TOKEN.match(self.text, self.pos)

    def term(self) -> Tree:
        match = self.peek()
        if match is None or match.group(4):
            raise self.fail("expected a symbol")
        self.pos = match.end()
        if match.group(1):
            return Tree(BOTTOM)
        if match.group(2):
            number = int(match.group(2))
            if number < 1:
                raise self.fail("holes are numbered from 1")
            return Tree(number)
        symbol = match.group(3)
        following = self.peek()
        if following is None or following.group(4) != "(":
            return Tree(symbol)
        self.pos = following.end()
        closing = self.peek()
        if closing is not None and closing.group(4) == ")":
            self.pos = closing.end()
            return Tree(symbol)
        children = [self.term()]
        while True:
            separator = self.peek()
            if separator is None or separator.group(4) not in (",", ")"):
                raise self.fail("expected ',' or ')'")
            self.pos = separator.end()
            if separator.group(4) == ")":
                return Tree(symbol, tuple(children))
            children.append(self.term())

    def expect_end(self) -> None:
        if self.text[self.pos:].strip():
            self.pos += len(self.text[self.pos:]) - len(self.text[self.pos:].lstrip())
            raise self.fail("unexpected trailing input")


def parse_terms(texts: Iterable[str]) -> list[Tree]:
    return [parse_term(text) for text in texts]
