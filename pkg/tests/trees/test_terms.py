from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.errors import DocumentSyntaxError, MissingImageError, PositionError, RankMismatchError
from src.trees.symbols import BOTTOM, Signature
from src.trees.terms import (
    Tree,
    check_tree,
    enumerate_trees,
    format_term,
    hole,
    hole_leaves,
    hole_substitute_pointwise,
    hole_substitute_uniform,
    holes_of,
    identity_tree,
    leaf,
    parse_term,
    positions,
    replace_at,
    subtree_at,
    tree_distance,
    tree_height,
    tree_size,
)

SIGMA = Signature({"f": 2, "g": 2, "a": 0, "b": 0})

# g(#1, f(g(a, #1)))
T_PRIME = parse_term("g(#1,f(g(a,#1)))")


def test_parse_and_format():
    t = parse_term("f( a , #2 )")
    assert t == Tree("f", (leaf("a"), hole(2)))
    assert format_term(t) == "f(a,#2)"
    assert format_term(Tree(BOTTOM)) == "_|_"


@pytest.mark.parametrize("text, column", [("f(a,", 5), ("f(a b)", 4), ("#0", 3), ("f(a))", 5)])
def test_parse_errors_carry_the_column(text, column):
    with pytest.raises(DocumentSyntaxError) as info:
        parse_term(text, line=3)
    assert info.value.line == 3
    assert info.value.column == column


def test_subtree_at():
    assert subtree_at(T_PRIME, (2, 1)) == parse_term("g(a,#1)")
    assert subtree_at(T_PRIME, ()) == T_PRIME
    with pytest.raises(PositionError):
        subtree_at(T_PRIME, (3,))


def test_replace_at():
    assert replace_at(parse_term("f(a,b)"), (1,), leaf("c")) == parse_term("f(c,b)")
    assert replace_at(T_PRIME, (1,), leaf("a")) == parse_term("g(a,f(g(a,#1)))")
    with pytest.raises(PositionError):
        replace_at(leaf("a"), (1,), leaf("b"))


def test_hole_leaves_are_length_lexicographic():
    assert hole_leaves(T_PRIME, 1) == [(1,), (2, 1, 2)]
    assert hole_leaves(leaf("a"), 1) == []
    assert holes_of(T_PRIME) == frozenset({1})


def test_hole_substitute_uniform():
    t = parse_term("f(b,b)")
    assert hole_substitute_uniform(T_PRIME, {1: t}) == parse_term("g(f(b,b),f(g(a,f(b,b))))")
    assert hole_substitute_uniform(leaf("a"), {}) == leaf("a")
    assert hole_substitute_uniform(parse_term("f(#1,#2)"), {1: leaf("a"), 2: leaf("b")}) == parse_term("f(a,b)")
    with pytest.raises(MissingImageError):
        hole_substitute_uniform(parse_term("f(#1,#2)"), {1: leaf("a")})


def test_hole_substitute_pointwise():
    t = parse_term("f(#1,#1)")
    assert hole_substitute_pointwise(t, {(1,): leaf("a"), (2,): leaf("b")}) == parse_term("f(a,b)")
    assert hole_substitute_pointwise(leaf("b"), {}) == leaf("b")
    with pytest.raises(MissingImageError):
        hole_substitute_pointwise(t, {(1,): leaf("a")})
    with pytest.raises(PositionError):
        hole_substitute_pointwise(t, {(1,): leaf("a"), (2,): leaf("b"), (3,): leaf("a")})


def test_identity_tree():
    assert identity_tree("f", 2) == parse_term("f(#1,#2)")
    assert identity_tree("a", 0) == leaf("a")


def test_size_and_height():
    assert tree_size(T_PRIME) == 6
    assert tree_height(T_PRIME) == 3
    assert list(positions(parse_term("f(a,b)"))) == [(), (1,), (2,)]


def test_check_tree():
    check_tree(parse_term("f(a,g(b,a))"), SIGMA)
    with pytest.raises(RankMismatchError):
        check_tree(parse_term("f(a)"), SIGMA)


def test_tree_distance():
    assert tree_distance(leaf("a"), leaf("a")) == 0
    assert tree_distance(leaf("a"), leaf("b")) == 1
    assert tree_distance(parse_term("f(a,b)"), parse_term("f(a,a)")) == Fraction(1, 2)
    assert tree_distance(parse_term("f(_|_,a)"), parse_term("f(a,a)")) == 1


def test_enumerate_trees_counts():
    signature = Signature({"f": 2, "a": 0})
    # Catalan numbers over odd sizes
    sizes = [tree_size(t) for t in enumerate_trees(signature, 7)]
    assert [sizes.count(n) for n in (1, 3, 5, 7)] == [1, 1, 2, 5]
    assert sizes == sorted(sizes)


@given(st.sampled_from(list(enumerate_trees(SIGMA, 5))))
def test_format_parse_round_trip(t):
    assert parse_term(format_term(t)) == t


@given(st.sampled_from(list(enumerate_trees(SIGMA, 5))), st.sampled_from(list(enumerate_trees(SIGMA, 3))))
def test_distance_is_symmetric(t, s):
    assert tree_distance(t, t) == 0
    assert tree_distance(t, s) == tree_distance(s, t)
