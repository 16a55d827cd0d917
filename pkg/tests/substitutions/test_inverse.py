import pytest

from src.automata.ata import member_rational_game
from src.automata.nta import member
from src.profiles.tasks import Profile, ProfileContext
from src.substitutions.evaluation import eval_io_finite, hom_image_finite
from src.substitutions.images import explicit_substitution
from src.substitutions.inverse import (
    Annotated,
    EmptyImage,
    annotated_complement,
    inverse_image_ata,
    inverse_image_complement,
    inverse_image_nta,
    reach_automaton,
)
from src.trees.symbols import RankedAlphabet, Signature
from src.trees.terms import Tree, enumerate_trees, parse_term

SOURCE = Signature({"f": 2, "a": 0, "b": 0, "x": 1})


@pytest.mark.parametrize("image", ["f(#1,#1)", "a", "f(#1,b)"])
@pytest.mark.parametrize("name", ["all_a", "some_b"])
def test_inverse_image_ata(request, name, image):
    automaton = request.getfixturevalue(name)
    phi = {"x": parse_term(image)}
    ata, starts = inverse_image_ata(phi, SOURCE, automaton)
    for s in enumerate_trees(SOURCE, 4):
        expected = member(automaton, hom_image_finite(phi, s), "p")
        assert member_rational_game(ata, s, starts["p"]) == expected


@pytest.mark.parametrize("images", [["a"], ["a", "b"], []])
def test_inverse_image_complement(alphabet, all_a, budget, images):
    sigma = explicit_substitution(alphabet, {"x": [parse_term(t) for t in images]})
    automaton, state = inverse_image_complement(sigma, all_a, "p", budget=budget)
    for s in enumerate_trees(alphabet.full, 4):
        escapes = any(not member(all_a, t, "p") for t in eval_io_finite(sigma, s))
        assert member(automaton, s, state) == escapes


def test_inverse_image(alphabet, all_a, budget):
    sigma = explicit_substitution(alphabet, {"x": [parse_term("a")]})
    automaton, state = inverse_image_nta(sigma, all_a, "p", budget=budget)
    for s in enumerate_trees(alphabet.full, 3):
        assert member(automaton, s, state) == ("b" not in str(s))


@pytest.mark.parametrize("images", [["f(#1,#1)"], ["a"], ["f(#2,#2)", "a"]])
def test_symbol_that_is_also_a_variable_reads_only_its_images(sigma, all_a, budget, images):
    shared = RankedAlphabet(sigma, Signature({"f": 2}))
    substitution = explicit_substitution(shared, {"f": [parse_term(t) for t in images]})
    automaton, state = inverse_image_complement(substitution, all_a, "p", budget=budget)
    for s in enumerate_trees(sigma, 4):
        escapes = any(not member(all_a, t, "p") for t in eval_io_finite(substitution, s))
        assert member(automaton, s, state) == escapes


def test_shared_symbol_in_the_inverse_image(sigma, all_a, budget):
    shared = RankedAlphabet(sigma, Signature({"f": 2}))
    substitution = explicit_substitution(shared, {"f": [parse_term("f(#1,#1)")]})
    automaton, state = inverse_image_nta(substitution, all_a, "p", budget=budget)
    assert member(automaton, parse_term("f(a,b)"), state)
    assert not member(automaton, parse_term("f(b,a)"), state)


def test_annotated_complement_restricted_to_no_profile(alphabet, all_a, budget):
    sigma = explicit_substitution(alphabet, {"x": [parse_term("a"), parse_term("b")]})
    result = annotated_complement(sigma, all_a, "p", budget=budget)
    assert len(result.options["x"]) == 2
    automaton, state = result.restricted({"x": frozenset()})
    assert member(automaton, parse_term("f(a,b)"), state)
    assert not member(automaton, parse_term("f(x,b)"), state)
    assert not member(automaton, parse_term("f(x,a)"), state)


def test_reach_automaton(all_a):
    empty = Profile(ProfileContext(all_a, 1))
    marked = Annotated("y", empty, frozenset({1}))
    unmarked = Annotated("y", empty, frozenset())
    signature = Signature({"f": 2, "a": 0, marked: 1, unmarked: 1, EmptyImage("y"): 1, EmptyImage("z"): 0})
    automaton, state = reach_automaton(signature)
    a = Tree("a")
    assert member(automaton, Tree("f", (Tree(marked, (a,)), a)), state)
    assert member(automaton, Tree(unmarked, (Tree(EmptyImage("z")),)), state)
    assert not member(automaton, Tree(marked, (Tree(EmptyImage("z")),)), state)
    assert not member(automaton, Tree("f", (a, Tree(EmptyImage("z")))), state)
