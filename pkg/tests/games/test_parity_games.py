from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import ArenaTooLargeError, ColorRangeError, MalformedSolutionError
from src.games.arena import PROVER, SPOILER, Arena, GameSolution, arena_to_dot
from src.games.solver import BRUTE_FORCE_LIMIT, attractor, brute_force_solve, solve, verify_strategy


@st.composite
def arenas(draw, max_vertices=5, max_color=3, min_color=0, max_edges=None):
    count = draw(st.integers(min_value=1, max_value=max_vertices))
    vertices = {
        v: (
            draw(st.sampled_from([PROVER, SPOILER])),
            draw(st.integers(min_value=min_color, max_value=max_color)),
        )
        for v in range(count)
    }
    pairs = st.tuples(st.integers(0, count - 1), st.integers(0, count - 1))
    edges = draw(st.lists(pairs, max_size=2 * count if max_edges is None else max_edges))
    return Arena.build(vertices, edges)


def _four_cycle() -> Arena:
    # Prover escapes the odd loop at 1 by moving to 2; Spoiler at 3 can only go back to 2.
    return Arena.build(
        {0: (PROVER, 1), 1: (SPOILER, 3), 2: (PROVER, 2), 3: (SPOILER, 4)},
        [(0, 1), (1, 0), (0, 2), (2, 3), (3, 2), (1, 1)],
    )


def test_spoiler_self_loop_with_even_color():
    solution = solve(Arena.build({"v": (SPOILER, 2)}, [("v", "v")]))
    assert solution.win0 == {"v"}
    assert solution.winner("v") == PROVER


def test_sinks_lose_for_their_owner():
    arena = Arena.build({"p": (PROVER, 2), "s": (SPOILER, 1), "top": (PROVER, 2)}, [("top", "s")])
    solution = solve(arena)
    assert solution.win1 == {"p"}
    assert solution.win0 == {"s", "top"}
    assert verify_strategy(arena, solution)


def test_small_arena_against_brute_force():
    arena = _four_cycle()
    solution = solve(arena)
    assert solution.win0 == brute_force_solve(arena).win0
    assert solution.strategy0[0] == 2
    assert verify_strategy(arena, solution)


def test_attractor_collects_forced_vertices():
    arena = _four_cycle()
    attracted, strategy = attractor(arena, PROVER, {2}, frozenset(arena.owner))
    assert attracted == {0, 2, 3}
    assert strategy == {0: 2}


def test_swapped_solution_fails_verification():
    arena = _four_cycle()
    assert not verify_strategy(arena, solve(arena).swapped())


def test_verify_rejects_foreign_edges():
    arena = _four_cycle()
    bogus = GameSolution(frozenset({0, 1, 2, 3}), frozenset(), {0: 1}, {})
    with pytest.raises(MalformedSolutionError):
        verify_strategy(arena, bogus)


def test_malformed_arenas():
    with pytest.raises(MalformedSolutionError):
        Arena.build({"v": (2, 0)}, [])
    with pytest.raises(MalformedSolutionError):
        Arena.build({"v": (PROVER, 0)}, [("v", "w")])
    with pytest.raises(ColorRangeError):
        Arena.build({"v": (PROVER, -1)}, [])


def test_brute_force_refuses_large_arenas():
    arena = Arena.build({v: (PROVER, 0) for v in range(BRUTE_FORCE_LIMIT + 1)}, [])
    with pytest.raises(ArenaTooLargeError):
        brute_force_solve(arena)


def test_arena_to_dot_colors_regions():
    arena = _four_cycle()
    text = arena_to_dot(arena, solve(arena))
    assert text.startswith("digraph arena {")
    assert "palegreen" in text
    assert text.count("->") == len(arena.edges)


@settings(max_examples=300, deadline=None)
@given(arenas())
def test_solver_agrees_with_brute_force(arena):
    solution = solve(arena)
    expected = brute_force_solve(arena)
    assert solution.win0 == expected.win0
    assert solution.win1 == expected.win1
    assert verify_strategy(arena, solution)


@settings(max_examples=2000, deadline=None)
@given(arenas(max_vertices=4, min_color=1, max_color=3, max_edges=8))
def test_solver_agrees_with_brute_force_on_four_vertices(arena):
    assert solve(arena).win0 == brute_force_solve(arena).win0


@settings(max_examples=1000, deadline=None)
@given(arenas(max_vertices=BRUTE_FORCE_LIMIT, max_color=5))
def test_solver_agrees_with_brute_force_up_to_the_limit(arena):
    solution = solve(arena)
    expected = brute_force_solve(arena)
    assert (solution.win0, solution.win1) == (expected.win0, expected.win1)
    assert verify_strategy(arena, solution)


def _canonical_arenas(count: int, max_edges: int = 8):
    """Every arena on count vertices with colors 1..3 and an edge set, one per renaming class."""
    pairs = [(a, b) for a in range(count) for b in range(count)]
    renamings = list(permutations(range(count)))
    for owners in product((PROVER, SPOILER), repeat=count):
        for colors in product((1, 2, 3), repeat=count):
            for mask in range(1 << len(pairs)):
                edges = tuple(pair for i, pair in enumerate(pairs) if mask >> i & 1)
                if len(edges) > max_edges:
                    continue
                key = (owners, colors, edges)
                if any(_renamed(key, p) < key for p in renamings):
                    continue
                yield Arena.build({v: (owners[v], colors[v]) for v in range(count)}, edges)


def _renamed(key, renaming):
    owners, colors, edges = key
    new_owners = [0] * len(owners)
    new_colors = [0] * len(colors)
    for v, w in enumerate(renaming):
        new_owners[w] = owners[v]
        new_colors[w] = colors[v]
    return tuple(new_owners), tuple(new_colors), tuple(sorted((renaming[a], renaming[b]) for a, b in edges))


@pytest.mark.parametrize("count", [1, 2, 3])
def test_solver_agrees_with_brute_force_on_every_small_arena(count):
    checked = 0
    for arena in _canonical_arenas(count):
        solution = solve(arena)
        assert solution.win0 == brute_force_solve(arena).win0
        assert solution.win0 | solution.win1 == frozenset(arena.owner)
        assert not solution.win0 & solution.win1
        assert verify_strategy(arena, solution)
        checked += 1
    assert checked > 0
