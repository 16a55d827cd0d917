"""Parity game solving: recursive attractor decomposition, verification and a brute-force oracle."""

from __future__ import annotations

import logging
from collections import deque
from itertools import product
from typing import Iterable, Mapping

import networkx as nx

from src.core.config import get_settings
from src.core.errors import ArenaTooLargeError, MalformedSolutionError
from src.games.arena import PROVER, SPOILER, Arena, GameSolution, Vertex

logger = logging.getLogger(get_settings().LOGGER_ENGINE_NAME)

BRUTE_FORCE_LIMIT = 12


def attractor(
    arena: Arena,
    player: int,
    target: Iterable[Vertex],
    within: frozenset | set,
) -> tuple[set, dict[Vertex, int]]:
    """The attractor of ``player`` to ``target`` inside the subgame ``within``.

    Args:
        arena: The arena.
        player: The attracting player.
        target: The vertices to reach; only those inside ``within`` count.
        within: The vertex set of the subgame; edges leaving it are ignored.

    Returns:
        The attractor and an attractor strategy for the player's vertices outside the target.

    Notes:
        Opponent vertices without edges inside the subgame are attracted, so the
        attractor to the empty set collects the opponent's sinks.

    """
    attracted = {v for v in target if v in within}
    strategy: dict[Vertex, int] = {}
    remaining = {
        v: sum(1 for e in arena.out_edges[v] if arena.target(e) in within)
        for v in within
        if arena.owner[v] != player
    }
    queue = deque(attracted)
    for vertex, count in remaining.items():
        if count == 0 and vertex not in attracted:
            attracted.add(vertex)
            queue.append(vertex)
    while queue:
        vertex = queue.popleft()
        for edge in arena.in_edges[vertex]:
            source = arena.source(edge)
            if source not in within or source in attracted:
                continue
            if arena.owner[source] == player:
                attracted.add(source)
                strategy[source] = edge
                queue.append(source)
            else:
                remaining[source] -= 1
                if remaining[source] == 0:
                    attracted.add(source)
                    queue.append(source)
    return attracted, strategy


def solve(arena: Arena) -> GameSolution:
    """Solves a parity game; the minimal color seen infinitely often decides, even for Prover.

    Returns:
        The winning regions of both players with positional winning strategies.

    """
    win0, win1, strategy0, strategy1 = _solve(arena, frozenset(arena.owner))
    logger.debug(f"Solved arena with {len(arena)} vertices: |W0|={len(win0)}, |W1|={len(win1)}.")
    return GameSolution(frozenset(win0), frozenset(win1), strategy0, strategy1)


def _solve(arena: Arena, within: frozenset) -> tuple[set, set, dict, dict]:
    if not within:
        return set(), set(), {}, {}
    stuck0, strategy_s1 = attractor(arena, SPOILER, (), within)
    rest = within - stuck0
    stuck1, strategy_s0 = attractor(arena, PROVER, (), rest)
    core = frozenset(rest - stuck1)
    win0, win1, strategy0, strategy1 = _zielonka(arena, core)
    win0 |= stuck1
    win1 |= stuck0
    strategy0.update(strategy_s0)
    strategy1.update(strategy_s1)
    return win0, win1, strategy0, strategy1


def _zielonka(arena: Arena, within: frozenset) -> tuple[set, set, dict, dict]:
    if not within:
        return set(), set(), {}, {}
    lowest = min(arena.color[v] for v in within)
    player = lowest % 2
    opponent = 1 - player
    top = {v for v in within if arena.color[v] == lowest}
    attracted, attract_strategy = attractor(arena, player, top, within)
    sub = _solve(arena, within - attracted)
    if not sub[opponent]:
        regions: list[set] = [set(), set()]
        strategies: list[dict] = [{}, {}]
        regions[player] = set(within)
        strategies[player] = dict(sub[2 + player])
        strategies[player].update(attract_strategy)
        for vertex in top:
            if arena.owner[vertex] == player and vertex not in strategies[player]:
                strategies[player][vertex] = _edge_inside(arena, vertex, within)
        return regions[0], regions[1], strategies[0], strategies[1]
    escaped, escape_strategy = attractor(arena, opponent, sub[opponent], within)
    rest = _solve(arena, within - escaped)
    regions = [set(rest[0]), set(rest[1])]
    strategies = [dict(rest[2]), dict(rest[3])]
    regions[opponent] |= escaped
    strategies[opponent].update(sub[2 + opponent])
    strategies[opponent].update(escape_strategy)
    return regions[0], regions[1], strategies[0], strategies[1]


def _edge_inside(arena: Arena, vertex: Vertex, within: frozenset) -> int:
    for edge in arena.out_edges[vertex]:
        if arena.target(edge) in within:
            return edge
    msg = f"vertex {vertex!r} has no edge inside its subgame"
    raise MalformedSolutionError(msg)


def verify_strategy(arena: Arena, solution: GameSolution) -> bool:
    """Checks that both strategies win everywhere on their regions.

    Returns:
        True iff the regions partition the arena, every strategy edge stays in its
        region, the opponent cannot leave a region, and no play consistent with a
        strategy is lost by its owner.

    Raises:
        MalformedSolutionError: If the solution names unknown vertices or edges.

    """
    vertices = set(arena.owner)
    for player in (PROVER, SPOILER):
        region = solution.region(player)
        if not region <= vertices:
            msg = "solution names vertices outside the arena"
            raise MalformedSolutionError(msg)
        for vertex, edge in solution.strategy(player).items():
            if vertex not in vertices or not 0 <= edge < len(arena.edges):
                msg = f"strategy entry {vertex!r} -> {edge} does not fit the arena"
                raise MalformedSolutionError(msg)
            if arena.source(edge) != vertex:
                msg = f"strategy edge {edge} does not leave {vertex!r}"
                raise MalformedSolutionError(msg)
    if solution.win0 | solution.win1 != vertices or solution.win0 & solution.win1:
        return False
    return all(_region_is_won(arena, solution, player) for player in (PROVER, SPOILER))


def _region_is_won(arena: Arena, solution: GameSolution, player: int) -> bool:
    region = solution.region(player)
    strategy = solution.strategy(player)
    graph = nx.DiGraph()
    graph.add_nodes_from(region)
    for vertex in region:
        if arena.owner[vertex] == player:
            if vertex not in strategy:
                return False
            target = arena.target(strategy[vertex])
            if target not in region:
                return False
            graph.add_edge(vertex, target)
        else:
            for edge in arena.out_edges[vertex]:
                if arena.target(edge) not in region:
                    return False
                graph.add_edge(vertex, arena.target(edge))
    return not _has_losing_cycle(graph, arena.color, player)


def _has_losing_cycle(graph: nx.DiGraph, color: Mapping[Vertex, int], player: int) -> bool:
    """Whether some cycle of the graph has a minimal color of the opponent's parity."""
    bad_colors = sorted({color[v] for v in graph if color[v] % 2 != player})
    for bad in bad_colors:
        sub = graph.subgraph([v for v in graph if color[v] >= bad])
        for component in nx.strongly_connected_components(sub):
            if not any(color[v] == bad for v in component):
                continue
            if len(component) > 1 or any(sub.has_edge(v, v) for v in component):
                return True
    return False


def brute_force_solve(arena: Arena) -> GameSolution:
    """Solves a small game by enumerating every positional strategy of each player.

    Raises:
        ArenaTooLargeError: If the arena has more than BRUTE_FORCE_LIMIT vertices.

    """
    if len(arena) > BRUTE_FORCE_LIMIT:
        msg = f"arena has {len(arena)} vertices, brute force handles at most {BRUTE_FORCE_LIMIT}"
        raise ArenaTooLargeError(msg)
    win0, strategy0 = _best_positional(arena, PROVER)
    win1, strategy1 = _best_positional(arena, SPOILER)
    return GameSolution(frozenset(win0), frozenset(win1), strategy0, strategy1)


def _best_positional(arena: Arena, player: int) -> tuple[set, dict[Vertex, int]]:
    mine = [v for v in arena.vertices if arena.owner[v] == player and arena.out_edges[v]]
    choices = [_distinct_targets(arena, v) for v in mine]
    best: set = set()
    best_strategy: dict[Vertex, int] = {}
    for picks in product(*choices):
        strategy = dict(zip(mine, picks))
        won = _won_with(arena, player, strategy)
        if len(won) > len(best) or not best_strategy:
            best, best_strategy = won, strategy
    return best, {v: e for v, e in best_strategy.items() if v in best}


def _distinct_targets(arena: Arena, vertex: Vertex) -> list[int]:
    seen: dict[Vertex, int] = {}
    for edge in arena.out_edges[vertex]:
        seen.setdefault(arena.target(edge), edge)
    return list(seen.values())


def _won_with(arena: Arena, player: int, strategy: Mapping[Vertex, int]) -> set:
    """Vertices from which every play consistent with the strategy is won by the player."""
    graph = nx.DiGraph()
    graph.add_nodes_from(arena.owner)
    for vertex in arena.owner:
        if arena.owner[vertex] == player:
            if vertex in strategy:
                graph.add_edge(vertex, arena.target(strategy[vertex]))
        else:
            for edge in arena.out_edges[vertex]:
                graph.add_edge(vertex, arena.target(edge))
    losing = {v for v in arena.owner if arena.owner[v] == player and not arena.out_edges[v]}
    bad_colors = sorted({c for c in arena.color.values() if c % 2 != player})
    for bad in bad_colors:
        sub = graph.subgraph([v for v in graph if arena.color[v] >= bad])
        for component in nx.strongly_connected_components(sub):
            if not any(arena.color[v] == bad for v in component):
                continue
            if len(component) > 1 or any(sub.has_edge(v, v) for v in component):
                losing |= component
    reaching_loss = set(losing)
    for vertex in losing:
        reaching_loss |= nx.ancestors(graph, vertex)
    return set(arena.owner) - reaching_loss
