import pytest

from src.automata.nta import (
    ParityNTA,
    accepted_trees,
    add_holes,
    empty_automaton,
    from_trees,
    is_empty,
    member,
    member_finite,
    normalized,
    product,
    productive_states,
    relabel_project,
    runs_finite,
    to_dot,
    trim,
    union,
    universal,
    witness,
)
from src.core.errors import AlphabetMismatchError, ColorRangeError, RankMismatchError, StateMismatchError
from src.trees.graphs import TreeGraph, unfold
from src.trees.symbols import Signature
from src.trees.terms import enumerate_trees, leaf, parse_term

# t = f(t, a) and t = f(t, b)
COMB_A = TreeGraph.build(["f", "a"], [[0, 1], []], 0)
COMB_B = TreeGraph.build(["f", "b"], [[0, 1], []], 0)


def test_member_finite(all_a):
    assert member_finite(all_a, parse_term("f(a,f(a,a))"), "p")
    assert not member_finite(all_a, parse_term("f(a,b)"), "p")


def test_runs_finite(sigma, some_b):
    only_a = ParityNTA(sigma, ["p"], [("p", "a", ())], {"p": 2})
    assert list(runs_finite(only_a, leaf("a"), "p")) == [{(): "p"}]
    assert list(runs_finite(only_a, leaf("b"), "p")) == []
    runs = list(runs_finite(some_b, parse_term("f(b,b)"), "p"))
    assert len(runs) == 2
    assert {run[(1,)] for run in runs} == {"p", "q"}


def test_member_rational(all_a, some_b, finite_only):
    assert member(all_a, COMB_A, "p")
    assert not member(finite_only, COMB_A, "p")
    assert member(some_b, COMB_B, "p")
    assert not member(some_b, COMB_A, "p")


def test_emptiness_and_witness(sigma, all_a):
    none, state = empty_automaton(sigma)
    assert is_empty(none, state)
    assert witness(none, state) is None
    found = witness(all_a, "p")
    assert found is not None
    assert member(all_a, found, "p")


def test_witness_of_a_singleton(sigma):
    automaton, start = from_trees(sigma, [leaf("a")])
    assert unfold(witness(automaton, start), 3) == leaf("a")


def test_odd_loop_is_empty(sigma):
    # only infinite trees, all of color 1
    loop = ParityNTA(sigma, ["r"], [("r", "f", ("r", "r"))], {"r": 1})
    assert is_empty(loop, "r")
    assert productive_states(loop) == frozenset()


def test_universal(sigma):
    automaton, state = universal(sigma)
    assert all(member(automaton, t, state) for t in enumerate_trees(sigma, 5))
    assert member(automaton, COMB_B, state)


def test_union_agrees_with_members(sigma, all_a, some_b):
    automaton, start = union(all_a, "p", some_b, "p")
    for t in enumerate_trees(sigma, 5):
        assert member(automaton, t, start) == (member(all_a, t, "p") or member(some_b, t, "p"))
    assert member(automaton, COMB_A, start)


def test_union_with_empty_language(sigma, all_a):
    none, state = empty_automaton(sigma)
    automaton, start = union(all_a, "p", none, state)
    for t in enumerate_trees(sigma, 5):
        assert member(automaton, t, start) == member(all_a, t, "p")


def test_product_with_single_parity(sigma, all_a, finite_only, some_b):
    automaton, start = product(finite_only, "p", all_a, "p")
    assert member(automaton, parse_term("f(a,a)"), start)
    assert not member(automaton, parse_term("f(a,b)"), start)
    assert not member(automaton, COMB_A, start)
    disjoint, start = product(some_b, "p", all_a, "p")
    assert is_empty(disjoint, start)


def test_product_needs_single_parity(some_b):
    with pytest.raises(ValueError):
        product(some_b, "p", some_b, "p")


def test_product_needs_the_same_alphabet(all_a):
    other = ParityNTA(Signature({"g": 1, "a": 0}), ["p"], [("p", "a", ())], {"p": 2})
    with pytest.raises(AlphabetMismatchError):
        product(all_a, "p", other, "p")


def test_add_holes(sigma):
    automaton = add_holes(ParityNTA(sigma, ["q"], [("q", "a", ())], {"q": 2}), 2)
    assert automaton.moves("q", 2) == [()]
    assert member(automaton, parse_term("#1"), "q")
    for t in enumerate_trees(sigma, 3):
        assert member(automaton, t, "q") == (t == leaf("a"))


def test_relabel_project(sigma, some_b):
    same = relabel_project(some_b, {})
    for t in enumerate_trees(sigma, 5):
        assert member(same, t, "p") == member(some_b, t, "p")
    merged = relabel_project(some_b, {"b": "a"}, Signature({"f": 2, "a": 0}))
    assert member(merged, parse_term("f(a,a)"), "p")
    with pytest.raises(RankMismatchError):
        relabel_project(some_b, {"f": "a"})


def test_projection_of_empty_automaton(sigma):
    none, state = empty_automaton(sigma)
    assert is_empty(relabel_project(none, {"b": "a"}), state)


def test_trim_drops_useless_states(sigma):
    automaton = ParityNTA(
        sigma,
        ["p", "dead", "away"],
        [("p", "f", ("p", "dead")), ("p", "a", ()), ("dead", "f", ("dead", "dead")), ("away", "b", ())],
        {"p": 2, "dead": 1, "away": 2},
    )
    trimmed = trim(automaton, ["p"])
    assert trimmed.states == ("p",)
    assert len(trimmed.transitions) == 1


def test_constructor_checks():
    signature = Signature({"f": 2, "a": 0})
    with pytest.raises(ColorRangeError):
        ParityNTA(signature, ["p"], [], {"p": 0})
    with pytest.raises(ColorRangeError):
        ParityNTA(signature, ["p"], [], {})
    with pytest.raises(AlphabetMismatchError):
        ParityNTA(signature, ["p"], [("p", "b", ())], {"p": 2})
    with pytest.raises(RankMismatchError):
        ParityNTA(signature, ["p"], [("p", "f", ("p",))], {"p": 2})
    with pytest.raises(StateMismatchError):
        ParityNTA(signature, ["p"], [("p", "f", ("p", "q"))], {"p": 2})


def test_accepted_trees(all_a):
    assert accepted_trees(all_a, "p", 3) == [leaf("a"), parse_term("f(a,a)")]


def test_normalized_and_dot(some_b):
    renamed, start = normalized(some_b, "q")
    assert start == 0
    assert set(renamed.states) == {0, 1}
    assert renamed.colors[0] == 2
    text = to_dot(renamed, start)
    assert text.startswith("digraph automaton {")
    assert "doublecircle" in text
