import pytest

from src.automata.nta import ParityNTA, member
from src.core.errors import MissingImageError, RankMismatchError
from src.substitutions.images import (
    AutomatonImage,
    FullImage,
    ProfileUnion,
    Substitution,
    TreeSet,
    explicit_substitution,
    full_substitution,
    image_guard,
)
from src.trees.symbols import RankedAlphabet, Signature, with_holes
from src.trees.terms import parse_term

SIGMA = Signature({"f": 2, "a": 0, "b": 0})
UNARY = RankedAlphabet(SIGMA, Signature({"x": 1, "z": 0}))


def test_image_guard():
    automaton, state = image_guard(with_holes(SIGMA, 2), 1)
    assert member(automaton, parse_term("f(#1,a)"), state)
    assert member(automaton, parse_term("b"), state)
    assert not member(automaton, parse_term("#1"), state)
    assert not member(automaton, parse_term("f(#2,a)"), state)


def test_missing_image():
    with pytest.raises(MissingImageError, match="z has no image"):
        explicit_substitution(UNARY, {"x": [parse_term("a")]})


@pytest.mark.parametrize(
    "image, message",
    [
        ("#1", "bare hole"),
        ("f(#2,a)", "above its rank 1"),
    ],
)
def test_explicit_image_rank_errors(image, message):
    with pytest.raises(RankMismatchError, match=message):
        explicit_substitution(UNARY, {"x": [parse_term(image)], "z": []})


def test_automaton_image_with_a_hole_above_the_rank():
    signature = with_holes(SIGMA, 2)
    automaton = ParityNTA(signature, ["p"], [("p", "f", ("p", "p")), ("p", "a", ()), ("p", 2, ())], {"p": 2})
    with pytest.raises(RankMismatchError, match="hole 2"):
        Substitution(UNARY, {"x": AutomatonImage(automaton, "p"), "z": FullImage()})


def test_automaton_image_drops_the_bare_hole():
    signature = with_holes(SIGMA, 2)
    automaton = ParityNTA(signature, ["p"], [("p", "f", ("p", "p")), ("p", "a", ()), ("p", 1, ())], {"p": 2})
    sigma = Substitution(UNARY, {"x": AutomatonImage(automaton, "p"), "z": FullImage()})
    image, state = sigma.automaton("x")
    assert member(image, parse_term("f(#1,a)"), state)
    assert not member(image, parse_term("#1"), state)
    assert not member(image, parse_term("f(#1,b)"), state)


def test_full_substitution():
    sigma = full_substitution(UNARY)
    image, state = sigma.automaton("z")
    assert member(image, parse_term("f(a,b)"), state)
    assert not member(image, parse_term("f(#1,b)"), state)
    image, state = sigma.automaton("x")
    assert member(image, parse_term("f(#1,b)"), state)
    assert not member(image, parse_term("#1"), state)


def test_explicit_images():
    sigma = explicit_substitution(UNARY, {"x": [parse_term("f(#1,#1)")], "z": [parse_term("a"), parse_term("b")]})
    assert sigma.variables == ["x", "z"]
    assert sigma.explicit("z") == [parse_term("a"), parse_term("b")]
    assert sigma.image("f") == TreeSet((parse_term("f(#1,#2)"),))
    assert sigma.is_explicit()
    assert not sigma.is_homomorphism()
    image, state = sigma.automaton("z")
    assert member(image, parse_term("b"), state)
    assert not member(image, parse_term("f(a,b)"), state)


def test_explicit_of_an_automaton_image():
    with pytest.raises(TypeError, match="not an explicit set"):
        full_substitution(UNARY).explicit("x")


def test_empty_images():
    sigma = explicit_substitution(UNARY, {"x": [], "z": []})
    image, state = sigma.automaton("z")
    assert not member(image, parse_term("a"), state)
    union, state = ProfileUnion((), ()).to_automaton(sigma.signature, 1)
    assert not member(union, parse_term("a"), state)


def test_with_images():
    sigma = explicit_substitution(UNARY, {"x": [parse_term("f(#1,#1)")], "z": [parse_term("a")]})
    assert sigma.is_homomorphism()
    widened = sigma.with_images({"z": FullImage()})
    assert widened.image("x") == sigma.image("x")
    assert not widened.is_explicit()
