"""Rational trees as rooted finite graphs."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterator, Mapping, Sequence

import networkx as nx

from src.core.errors import DocumentSyntaxError, InfiniteTreeError, MissingImageError
from src.trees.symbols import BOTTOM, Symbol, is_hole, symbol_key
from src.trees.terms import Position, Tree, format_symbol


@dataclass(frozen=True)
class TreeGraph:
    """A rooted graph whose unfolding from the root is a possibly infinite tree.

    Node i carries ``labels[i]`` and the ordered successors ``successors[i]``;
    the number of successors is the rank of the label.

    """

    labels: tuple[Symbol, ...]
    successors: tuple[tuple[int, ...], ...]
    root: int = 0

    @classmethod
    def build(
        cls,
        labels: Sequence[Symbol],
        successors: Sequence[Sequence[int]],
        root: int = 0,
    ) -> TreeGraph:
        """Builds a graph trimmed to the nodes reachable from the root, numbered breadth-first."""
        order = [root]
        index = {root: 0}
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for target in successors[node]:
                if target not in index:
                    index[target] = len(order)
                    order.append(target)
                    queue.append(target)
        return cls(
            labels=tuple(labels[node] for node in order),
            successors=tuple(tuple(index[t] for t in successors[node]) for node in order),
            root=0,
        )

    @classmethod
    def from_tree(cls, t: Tree) -> TreeGraph:
        """A graph for a finite tree, sharing equal subtrees."""
        labels: list[Symbol] = []
        successors: list[tuple[int, ...]] = []
        shared: dict[Tree, int] = {}

        def visit(node: Tree) -> int:
            if node in shared:
                return shared[node]
            children = tuple(visit(child) for child in node.children)
            shared[node] = len(labels)
            labels.append(node.symbol)
            successors.append(children)
            return shared[node]

        root = visit(t)
        return cls.build(labels, successors, root)

    def __len__(self) -> int:
        return len(self.labels)

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        for node, label in enumerate(self.labels):
            graph.add_node(node, label=label)
        for node, targets in enumerate(self.successors):
            for direction, target in enumerate(targets, 1):
                graph.add_edge(node, target, key=direction)
        return graph

    def is_finite(self) -> bool:
        return nx.is_directed_acyclic_graph(self.to_networkx())

    def to_tree(self) -> Tree:
        """The unfolding of an acyclic graph.

        Raises:
            InfiniteTreeError: If the unfolding is infinite.

        """
        if not self.is_finite():
            msg = "the graph unfolds to an infinite tree"
            raise InfiniteTreeError(msg)
        built: dict[int, Tree] = {}

        def visit(node: int) -> Tree:
            if node not in built:
                built[node] = Tree(
                    self.labels[node], tuple(visit(t) for t in self.successors[node])
                )
            return built[node]

        return visit(self.root)

    def symbols(self) -> set[Symbol]:
        return set(self.labels)

    def __str__(self) -> str:
        return format_graph(self)


def unfold(g: TreeGraph, depth: int) -> Tree:
    """The unfolding cut at the given depth; cut points below constants are labelled bottom."""

    def visit(node: int, remaining: int) -> Tree:
        targets = g.successors[node]
        if not targets:
            return Tree(g.labels[node])
        if remaining == 0:
            return Tree(BOTTOM)
        return Tree(g.labels[node], tuple(visit(t, remaining - 1) for t in targets))

    return visit(g.root, depth)


def minimize(g: TreeGraph) -> TreeGraph:
    """The bisimulation quotient, numbered canonically.

    Two graphs unfold to the same tree exactly when their minimized forms are equal.

    """
    labels = sorted(set(g.labels), key=symbol_key)
    label_block = {label: i for i, label in enumerate(labels)}
    block = [label_block[label] for label in g.labels]
    while True:
        signatures = [
            (block[node], tuple(block[t] for t in g.successors[node])) for node in range(len(g))
        ]
        ordered = sorted(set(signatures))
        renumber = {sig: i for i, sig in enumerate(ordered)}
        refined = [renumber[sig] for sig in signatures]
        if len(ordered) == len(set(block)):
            block = refined
            break
        block = refined
    representative: dict[int, int] = {}
    for node in range(len(g)):
        representative.setdefault(block[node], node)
    count = max(block) + 1
    quotient_labels = [g.labels[representative[b]] for b in range(count)]
    quotient_successors = [
        [block[t] for t in g.successors[representative[b]]] for b in range(count)
    ]
    return TreeGraph.build(quotient_labels, quotient_successors, block[g.root])


def graph_equal(g1: TreeGraph, g2: TreeGraph) -> bool:
    return minimize(g1) == minimize(g2)


@dataclass(frozen=True)
class GraphHoleLeaves:
    """The hole leaves of a rational tree: a lazy length-lexicographic stream plus a flag."""

    graph: TreeGraph
    hole: int
    infinite: bool

    def __iter__(self) -> Iterator[Position]:
        relevant = _nodes_reaching(self.graph, self.hole)
        queue: deque[tuple[Position, int]] = deque([((), self.graph.root)])
        while queue:
            u, node = queue.popleft()
            if node not in relevant:
                continue
            if self.graph.labels[node] == self.hole:
                yield u
            for direction, target in enumerate(self.graph.successors[node], 1):
                queue.append((u + (direction,), target))

    def first(self, count: int) -> list[Position]:
        found = []
        for u in self:
            if len(found) == count:
                break
            found.append(u)
        return found


def graph_hole_leaves(g: TreeGraph, i: int) -> GraphHoleLeaves:
    """Hole leaves of a rational tree; infinitely many when hole i is reachable through a cycle."""
    graph = g.to_networkx()
    relevant = _nodes_reaching(g, i)
    on_cycle = set()
    for component in nx.strongly_connected_components(graph):
        if len(component) > 1 or any(graph.has_edge(n, n) for n in component):
            on_cycle |= component
    return GraphHoleLeaves(graph=g, hole=i, infinite=bool(on_cycle & relevant))


def _nodes_reaching(g: TreeGraph, i: int) -> set[int]:
    graph = g.to_networkx()
    targets = [node for node, label in enumerate(g.labels) if label == i]
    reaching = set(targets)
    for target in targets:
        reaching |= nx.ancestors(graph, target)
    return reaching


def graph_hole_substitute(g: TreeGraph, images: Mapping[int, TreeGraph]) -> TreeGraph:
    """Replaces every hole-labelled node by the graph given for that hole.

    Raises:
        MissingImageError: If a hole of g has no image.

    """
    used = sorted({label for label in g.labels if is_hole(label)})
    missing = [i for i in used if i not in images]
    if missing:
        msg = f"hole {missing[0]} has no image"
        raise MissingImageError(msg)
    labels = list(g.labels)
    successors = [list(targets) for targets in g.successors]
    entry: dict[int, int] = {}
    for i in used:
        image = images[i]
        offset = len(labels)
        labels.extend(image.labels)
        successors.extend([[offset + t for t in targets] for targets in image.successors])
        entry[i] = offset + image.root
    redirect = {
        node: entry[label] for node, label in enumerate(g.labels) if is_hole(label)
    }
    for node in range(len(g)):
        successors[node] = [redirect.get(t, t) for t in successors[node]]
    root = redirect.get(g.root, g.root)
    return TreeGraph.build(labels, successors, root)


def format_graph(g: TreeGraph) -> str:
    """Prints node equations: ``n0 = f(n1, n0)`` lines followed by ``root n0``."""
    lines = []
    for node, label in enumerate(g.labels):
        targets = g.successors[node]
        rhs = format_symbol(label)
        if targets:
            rhs += "(" + ", ".join(f"n{t}" for t in targets) + ")"
        lines.append(f"n{node} = {rhs}")
    lines.append(f"root n{g.root}")
    return "\n".join(lines)


def graph_from_equations(
    equations: Mapping[str, tuple[Symbol, Sequence[str]]],
    root: str,
    line: int = 1,
) -> TreeGraph:
    """Builds a graph from named node equations.

    Raises:
        DocumentSyntaxError: If a successor or the root names no node.

    """
    names: dict[Hashable, int] = {name: i for i, name in enumerate(equations)}
    if root not in names:
        msg = f"root node '{root}' is not defined"
        raise DocumentSyntaxError(msg, line)
    labels = []
    successors = []
    for name, (label, targets) in equations.items():
        unknown = [t for t in targets if t not in names]
        if unknown:
            msg = f"node '{name}' refers to undefined node '{unknown[0]}'"
            raise DocumentSyntaxError(msg, line)
        labels.append(label)
        successors.append([names[t] for t in targets])
    return TreeGraph.build(labels, successors, names[root])


_EQUATION = re.compile(r"^([A-Za-z_][A-Za-z0-9_']*)\s*=\s*(_\|_|#\d+|[A-Za-z_$][A-Za-z0-9_']*)\s*(?:\(([^()]*)\))?$")
_ROOT = re.compile(r"^root\s+([A-Za-z_][A-Za-z0-9_']*)$")


def parse_graph(text: str, line: int = 1) -> TreeGraph:
    """Reads the equations printed by ``format_graph``, one per line.

    Raises:
        DocumentSyntaxError: If a line is no equation, a name is undefined or the root is missing.

    """
    equations: dict[str, tuple[Symbol, list[str]]] = {}
    root = None
    for number, raw in enumerate(text.splitlines(), start=line):
        stripped = raw.strip()
        if not stripped:
            continue
        if match := _ROOT.match(stripped):
            root = match.group(1)
            continue
        match = _EQUATION.match(stripped)
        if match is None:
            msg = f"expected 'n = f(n1, ..., nk)' or 'root n', found '{stripped}'"
            raise DocumentSyntaxError(msg, number, len(raw) - len(raw.lstrip()) + 1)
        label = match.group(2)
        symbol: Symbol = BOTTOM if label == "_|_" else int(label[1:]) if label.startswith("#") else label
        targets = [t.strip() for t in (match.group(3) or "").split(",") if t.strip()]
        equations[match.group(1)] = (symbol, targets)
    if root is None:
        msg = "the graph has no root"
        raise DocumentSyntaxError(msg, line)
    return graph_from_equations(equations, root, line)
