import pytest

from src.core.errors import AlphabetMismatchError, RankMismatchError
from src.trees.symbols import BOTTOM, RankedAlphabet, Signature, is_hole, sort_symbols


def test_signature_rejects_conflicting_ranks():
    with pytest.raises(RankMismatchError):
        Signature([("f", 2), ("f", 1)])
    with pytest.raises(RankMismatchError):
        Signature({"f": -1})


def test_signature_rank_of_unknown_symbol():
    with pytest.raises(AlphabetMismatchError):
        Signature({"a": 0}).rank("b")


def test_signature_order_and_union():
    signature = Signature({"b": 0, 2: 0, "a": 0, 1: 0}) | Signature({"f": 2})
    assert list(signature) == [1, 2, "a", "b", "f"]
    assert signature.holes() == [1, 2]
    assert signature.without_holes() == Signature({"a": 0, "b": 0, "f": 2})
    assert signature.max_rank == 2


def test_holes_are_positive_integers():
    assert is_hole(1)
    assert not is_hole(0)
    assert not is_hole(True)
    assert not is_hole("1")
    assert sort_symbols(["b", 3, BOTTOM, 1]) == [1, 3, "b", BOTTOM]


def test_ranked_alphabet_holes():
    alphabet = RankedAlphabet(Signature({"a": 0, "g": 1}), Signature({"x": 3}))
    assert alphabet.hole_count == 3
    assert alphabet.holes == [1, 2, 3]
    assert alphabet.sigma_with_holes()[3] == 0
    assert alphabet.is_variable("x")
    assert alphabet.full.rank("x") == 3


def test_ranked_alphabet_needs_a_symbol_of_positive_rank():
    with pytest.raises(RankMismatchError):
        RankedAlphabet(Signature({"a": 0}), Signature({"x": 0}))


def test_ranked_alphabet_rejects_reserved_symbols():
    with pytest.raises(AlphabetMismatchError):
        RankedAlphabet(Signature({"f": 1, 2: 0}))
