from itertools import combinations

import pytest

from src.automata.nta import ParityNTA, from_trees, member
from src.solver.instance import MatchingInstance
from src.solver.search import solve
from src.substitutions.evaluation import eval_io_finite
from src.substitutions.images import explicit_substitution
from src.trees.symbols import Signature
from src.trees.terms import parse_term

LEFTS = [["f(x,x)"], ["f(x,a)"], ["x"], ["f(x,b)", "a"], ["f(f(x,x),x)"]]
# (upper, lower): image trees of size at most 3
BOUNDS = [
    (["a", "b", "f(a,b)"], []),
    (["a", "f(a,a)", "f(b,a)"], ["a"]),
    (["b", "f(b,b)"], []),
    (["a", "b"], ["b"]),
]


@pytest.fixture
def root_f() -> ParityNTA:
    """Finite or infinite trees with f at the root."""
    return ParityNTA(
        Signature({"f": 2, "a": 0, "b": 0}),
        ["p", "q"],
        [("p", "f", ("q", "q")), ("q", "f", ("q", "q")), ("q", "a", ()), ("q", "b", ())],
        {"p": 2, "q": 2},
    )


def _brute_force(alphabet, left, right, lower, upper) -> list[frozenset]:
    """Every image set between the bounds whose IO image of the left trees stays in the right language."""
    free = [t for t in upper if t not in lower]
    passing = []
    for size in range(len(free) + 1):
        for extra in combinations(free, size):
            chosen = [*lower, *extra]
            sigma = explicit_substitution(alphabet, {"x": chosen})
            if all(member(right, t, "p") for s in left for t in eval_io_finite(sigma, s)):
                passing.append(frozenset(chosen))
    return passing


@pytest.mark.parametrize("bounds", BOUNDS)
@pytest.mark.parametrize("left_texts", LEFTS)
@pytest.mark.parametrize("name", ["all_a", "some_b", "root_f"])
def test_solver_agrees_with_candidate_enumeration(request, alphabet, budget, name, left_texts, bounds):
    right = request.getfixturevalue(name)
    upper_texts, lower_texts = bounds
    upper = [parse_term(t) for t in upper_texts]
    lower = [parse_term(t) for t in lower_texts]
    left = [parse_term(t) for t in left_texts]
    instance = MatchingInstance(
        alphabet,
        from_trees(alphabet.full, left),
        (right, "p"),
        explicit_substitution(alphabet, {"x": lower}),
        explicit_substitution(alphabet, {"x": upper}),
    )
    expected = _brute_force(alphabet, left, right, lower, upper)
    result = solve(instance, budget=budget)
    assert result.decision == bool(expected)
    found = []
    for solution in result.solutions:
        automaton, state = solution.substitution.automaton("x")
        found.append(frozenset(t for t in upper if member(automaton, t, state)))
    assert all(image in expected for image in found)
    assert all(any(image <= maximal for maximal in found) for image in expected)
