import pytest

from src.automata.boolean import boolean_combination, complement, intersect, intersect_all
from src.automata.nta import ParityNTA, empty_automaton, is_empty, member, universal
from src.core.errors import AlphabetMismatchError
from src.trees.graphs import TreeGraph
from src.trees.symbols import Signature
from src.trees.terms import enumerate_trees, parse_term

COMB_A = TreeGraph.build(["f", "a"], [[0, 1], []], 0)
COMB_B = TreeGraph.build(["f", "b"], [[0, 1], []], 0)


def test_intersect_with_everything_is_identity(sigma, some_b):
    automaton, state = universal(sigma)
    result = intersect(some_b, "p", automaton, state)
    for t in enumerate_trees(sigma, 5):
        assert member(result[0], t, result[1]) == member(some_b, t, "p")


def test_intersect_of_disjoint_languages(all_a, some_b):
    assert is_empty(*intersect(all_a, "p", some_b, "p"))


def test_intersect_all_of_weak_operands(sigma, all_a, finite_only):
    automaton, state = universal(sigma)
    result = intersect_all([(finite_only, "p"), (all_a, "p"), (automaton, state)])
    assert member(result[0], parse_term("f(a,a)"), result[1])
    assert not member(result[0], COMB_A, result[1])


def test_intersect_of_two_mixed_parity_operands(sigma, some_b):
    result = intersect(some_b, "p", some_b, "p")
    for t in enumerate_trees(sigma, 3):
        assert member(result[0], t, result[1]) == member(some_b, t, "p")
    assert member(result[0], COMB_B, result[1])
    assert not member(result[0], COMB_A, result[1])


def test_complement_of_empty(sigma):
    automaton, state = complement(*empty_automaton(sigma))
    assert all(member(automaton, t, state) for t in enumerate_trees(sigma, 4))


def test_complement(sigma, all_a):
    automaton, state = complement(all_a, "p")
    for t in enumerate_trees(sigma, 5):
        assert member(automaton, t, state) != member(all_a, t, "p")
    assert member(automaton, COMB_B, state)


def test_boolean_combination(sigma, finite_only, all_a):
    # finite trees with a b leaf
    automaton, state = boolean_combination([(finite_only, "p")], [(all_a, "p")])
    for t in enumerate_trees(sigma, 5):
        assert member(automaton, t, state) == ("b" in str(t))
    assert not member(automaton, COMB_B, state)


def test_boolean_combination_checks_alphabets(all_a):
    other = ParityNTA(Signature({"g": 1, "a": 0}), ["p"], [("p", "a", ())], {"p": 2})
    with pytest.raises(AlphabetMismatchError):
        boolean_combination([(all_a, "p")], [(other, "p")])
    with pytest.raises(ValueError):
        boolean_combination([], [])
