"""Parity game arenas with multi-edges and vertex colors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

import networkx as nx

from src.core.errors import ColorRangeError, MalformedSolutionError
from src.trees.symbols import value_key

Vertex = Hashable
PROVER = 0
SPOILER = 1


@dataclass(frozen=True)
class Arena:
    """A finite arena: vertex owners, vertex colors and an edge multiset.

    Edges are identified by their index in ``edges``; sinks are allowed and lose
    for their owner.

    """

    owner: Mapping[Vertex, int]
    color: Mapping[Vertex, int]
    edges: tuple[tuple[Vertex, Vertex], ...]
    out_edges: Mapping[Vertex, tuple[int, ...]] = field(init=False, repr=False, compare=False)
    in_edges: Mapping[Vertex, tuple[int, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if set(self.owner) != set(self.color):
            msg = "every vertex needs an owner and a color"
            raise MalformedSolutionError(msg)
        for vertex, player in self.owner.items():
            if player not in (PROVER, SPOILER):
                msg = f"vertex {vertex!r} has owner {player}, expected 0 or 1"
                raise MalformedSolutionError(msg)
        for vertex, color in self.color.items():
            if color < 0:
                msg = f"vertex {vertex!r} has negative color {color}"
                raise ColorRangeError(msg)
        outgoing: dict[Vertex, list[int]] = {v: [] for v in self.owner}
        incoming: dict[Vertex, list[int]] = {v: [] for v in self.owner}
        for index, (source, target) in enumerate(self.edges):
            if source not in outgoing or target not in outgoing:
                msg = f"edge {source!r} -> {target!r} leaves the vertex set"
                raise MalformedSolutionError(msg)
            outgoing[source].append(index)
            incoming[target].append(index)
        object.__setattr__(self, "out_edges", {v: tuple(e) for v, e in outgoing.items()})
        object.__setattr__(self, "in_edges", {v: tuple(e) for v, e in incoming.items()})

    @classmethod
    def build(
        cls,
        vertices: Mapping[Vertex, tuple[int, int]],
        edges: Iterable[tuple[Vertex, Vertex]],
    ) -> Arena:
        """Builds an arena from ``vertex -> (owner, color)`` and an edge list."""
        return cls(
            owner={v: owner for v, (owner, _) in vertices.items()},
            color={v: color for v, (_, color) in vertices.items()},
            edges=tuple(edges),
        )

    @property
    def vertices(self) -> list[Vertex]:
        return sorted(self.owner, key=value_key)

    def __len__(self) -> int:
        return len(self.owner)

    def source(self, edge: int) -> Vertex:
        return self.edges[edge][0]

    def target(self, edge: int) -> Vertex:
        return self.edges[edge][1]

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        for vertex in self.owner:
            graph.add_node(vertex, owner=self.owner[vertex], color=self.color[vertex])
        for index, (source, target) in enumerate(self.edges):
            graph.add_edge(source, target, key=index)
        return graph


@dataclass(frozen=True)
class GameSolution:
    """Winning regions and positional strategies mapping vertices to edge indices."""

    win0: frozenset
    win1: frozenset
    strategy0: Mapping[Vertex, int]
    strategy1: Mapping[Vertex, int]

    def region(self, player: int) -> frozenset:
        return self.win0 if player == PROVER else self.win1

    def strategy(self, player: int) -> Mapping[Vertex, int]:
        return self.strategy0 if player == PROVER else self.strategy1

    def winner(self, vertex: Vertex) -> int:
        return PROVER if vertex in self.win0 else SPOILER

    def swapped(self) -> GameSolution:
        return GameSolution(self.win1, self.win0, self.strategy1, self.strategy0)


def arena_to_dot(arena: Arena, solution: GameSolution | None = None) -> str:
    """Serializes an arena to DOT; Prover vertices are boxes, Spoiler vertices ellipses."""
    names = {v: f"v{i}" for i, v in enumerate(arena.vertices)}
    lines = ["digraph arena {"]
    for vertex in arena.vertices:
        shape = "box" if arena.owner[vertex] == PROVER else "ellipse"
        label = f"{vertex} : {arena.color[vertex]}".replace('"', "'")
        extra = ""
        if solution is not None:
            extra = ', style=filled, fillcolor="{}"'.format(
                "palegreen" if vertex in solution.win0 else "lightpink"
            )
        lines.append(f'  {names[vertex]} [shape={shape}, label="{label}"{extra}];')
    for index, (source, target) in enumerate(arena.edges):
        lines.append(f"  {names[source]} -> {names[target]} [label={index}];")
    lines.append("}")
    return "\n".join(lines)
