import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.errors import AlphabetMismatchError, DocumentSyntaxError
from src.words.nfa import (
    WordNFA,
    complement,
    counterexample,
    equivalent,
    format_nfa,
    from_regex,
    from_words,
    included_in,
    intersection,
    normalized,
    regular_substitution,
    union,
    universal,
)


def test_regex_membership():
    nfa = from_regex("a b* | c")
    assert nfa.accepts(("a",))
    assert nfa.accepts(("a", "b", "b"))
    assert nfa.accepts(("c",))
    assert not nfa.accepts(("b",))
    assert not nfa.accepts(("a", "c"))


def test_empty_word_and_empty_language():
    assert from_regex("eps").accepts(())
    assert from_regex("a?").accepts(())
    assert not from_regex("a+").accepts(())
    assert from_regex("empty", ["a"]).is_empty()
    assert from_regex("empty", ["a"]).letters == frozenset({"a"})


@given(st.lists(st.sampled_from("ab"), max_size=8))
def test_regex_agrees_with_re(word):
    nfa = from_regex("(a|b)* a (a|b) | b+")
    assert nfa.accepts(word) == bool(re.fullmatch(r"[ab]*a[ab]|b+", "".join(word)))


@pytest.mark.parametrize(
    "text, message, column",
    [
        ("a (b", "expected ')'", 5),
        ("a | *", "unexpected '\\*'", 5),
        ("a ) b", "after the expression", 3),
        ("a $", "unexpected character", 3),
    ],
)
def test_regex_errors(text, message, column):
    with pytest.raises(DocumentSyntaxError, match=message) as info:
        from_regex(text, line=7)
    assert (info.value.line, info.value.column) == (7, column)


def test_words_are_shortest_first():
    nfa = from_regex("b a | a | b b a")
    assert list(nfa.words(3)) == [("a",), ("b", "a"), ("b", "b", "a")]
    assert list(nfa.words(1)) == [("a",)]


def test_from_words():
    nfa = from_words(["a", "b"], [("a", "b"), ()])
    assert nfa.accepts(())
    assert nfa.accepts(("a", "b"))
    assert not nfa.accepts(("a",))


def test_boolean_operations():
    a_star = from_regex("a*")
    ends_in_b = from_regex("(a|b)* b")
    both = union(a_star, ends_in_b)
    assert both.accepts(("a", "a")) and both.accepts(("a", "b"))
    assert not both.accepts(("b", "a"))
    meet = intersection(from_regex("a (a|b)*"), ends_in_b)
    assert meet.accepts(("a", "b"))
    assert not meet.accepts(("b",))
    outside = complement(a_star, ["b"])
    assert outside.accepts(("b",))
    assert not outside.accepts(("a", "a"))


def test_inclusion():
    assert counterexample(from_regex("a*"), from_regex("a a*")) == ()
    assert counterexample(from_regex("a a | a b"), from_regex("a a")) == ("a", "b")
    assert included_in(from_regex("a a"), from_regex("a*"))
    assert equivalent(from_regex("(a|b)*"), from_regex("(a* b*)*"))
    assert not equivalent(from_regex("a*"), from_regex("a+"))


def test_regular_substitution():
    nfa = regular_substitution(from_regex("x y x"), {"x": from_regex("a | b b")})
    assert nfa.letters == frozenset({"a", "b", "y"})
    assert nfa.accepts(("a", "y", "b", "b"))
    assert not nfa.accepts(("x", "y", "x"))
    assert regular_substitution(from_regex("x y"), {"x": from_regex("empty", ["a"])}).is_empty()


def test_unknown_states_and_letters():
    with pytest.raises(AlphabetMismatchError, match="unknown state"):
        WordNFA.build([0], ["a"], [(0, "a", 1)], [0], [0])
    with pytest.raises(AlphabetMismatchError, match="unknown letter"):
        WordNFA.build([0], ["a"], [(0, "b", 0)], [0], [0])
    with pytest.raises(AlphabetMismatchError, match="initial and final"):
        WordNFA.build([0], ["a"], [], [1], [0])


def test_normalized_and_format():
    nfa = WordNFA.build(["s", "t", "dead"], ["a"], [("s", "a", "t"), ("t", "a", "t")], ["s"], ["t", "dead"])
    renamed = normalized(nfa)
    assert renamed.states == frozenset({0, 1})
    assert format_nfa(renamed) == ["0 -a-> 1", "1 -a-> 1", "initial 0", "final 1"]
    assert format_nfa(universal(["a"], nonempty=True)) == format_nfa(renamed)
