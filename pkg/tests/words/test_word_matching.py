import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.budget import Budget
from src.core.errors import AlphabetMismatchError, ResourceBudgetExceeded, SubstitutionOrderError
from src.words.matching import (
    TransitionMonoid,
    WordInstance,
    compose,
    matrix_key,
    solve_word_matching,
    transition_morphism,
)
from src.words.nfa import equivalent, from_regex

A_OR_B = from_regex("a | b")


def _instance(left: str, right=A_OR_B, **kwargs) -> WordInstance:
    return WordInstance(from_regex(left), right, frozenset({"x"}), **kwargs)


def test_compose():
    first = np.array([[False, True], [False, False]])
    second = np.array([[False, False], [True, False]])
    assert compose(first, second).tolist() == [[True, False], [False, False]]
    assert compose(second, first).tolist() == [[False, False], [False, True]]


def test_transition_monoid():
    monoid = TransitionMonoid(from_regex("(a b)*"))
    assert monoid.same_class(("a", "b"), ("a", "b", "a", "b"))
    assert not monoid.same_class(("a",), ("b",))
    key = matrix_key(monoid.of_word(("a", "b")))
    assert monoid.accepts_class(key)
    assert not monoid.accepts_class(matrix_key(monoid.of_word(("a",))))
    words = monoid.class_automaton(key)
    assert words.accepts(("a", "b", "a", "b"))
    assert not words.accepts(("a",))
    assert not words.accepts(())


THIRD_FROM_END = from_regex("(a|b)* a (a|b) (a|b)")
WORDS = st.lists(st.sampled_from(["a", "b"]), max_size=6).map(tuple)


@given(u=WORDS, v=WORDS)
def test_morphism_is_multiplicative(u, v):
    monoid = transition_morphism(THIRD_FROM_END)
    assert np.array_equal(monoid.of_word(u + v), compose(monoid.of_word(u), monoid.of_word(v)))


def test_monoid_is_bounded_by_the_matrices():
    monoid = transition_morphism(THIRD_FROM_END)
    n = len(monoid.order)
    assert 0 < len(monoid.elements) <= 2 ** (n * n)
    assert all(matrix_key(monoid.of_word((a,))) in monoid.elements for a in ("a", "b"))


def test_single_variable(budget):
    result = solve_word_matching(_instance("x"), budget=budget)
    assert result.decision
    [solution] = result.solutions
    assert equivalent(solution.images["x"], A_OR_B)
    assert result.monoid_size >= 2


def test_single_variable_equality(budget):
    result = solve_word_matching(_instance("x", relation="equal"), budget=budget)
    assert result.decision
    [solution] = result.solutions
    assert equivalent(solution.images["x"], A_OR_B)


def test_square_only_fits_the_empty_image(budget):
    result = solve_word_matching(_instance("x x"), budget=budget)
    assert result.decision
    [solution] = result.solutions
    assert solution.images["x"].is_empty()
    assert not solve_word_matching(_instance("x x", relation="equal"), budget=budget).decision


def test_bounds(budget):
    lower = {"x": from_regex("a")}
    result = solve_word_matching(_instance("x a", right=from_regex("a a | b a"), lower=lower), budget=budget)
    assert result.decision
    assert equivalent(result.solutions[0].images["x"], A_OR_B)
    upper = {"x": from_regex("a")}
    result = solve_word_matching(_instance("x a", right=from_regex("a a | b a"), upper=upper), budget=budget)
    assert equivalent(result.solutions[0].images["x"], from_regex("a"))
    result = solve_word_matching(_instance("x a", right=from_regex("b a"), lower=lower), budget=budget)
    assert not result.decision


@pytest.mark.parametrize(
    "instance, error, message",
    [
        (WordInstance(from_regex("a"), from_regex("a"), frozenset({"a"})), AlphabetMismatchError, "letter of the right"),
        (_instance("x", lower={"x": from_regex("eps | a")}), AlphabetMismatchError, "empty word"),
        (_instance("x", lower={"x": from_regex("a")}, upper={"x": from_regex("b")}), SubstitutionOrderError, "not contained"),
    ],
)
def test_instance_errors(instance, error, message):
    with pytest.raises(error, match=message):
        solve_word_matching(instance)


def test_candidate_budget():
    with pytest.raises(ResourceBudgetExceeded) as info:
        solve_word_matching(_instance("x"), budget=Budget.from_settings(max_candidates=1))
    assert info.value.stage == "word-candidates"
