import pytest

from src.automata.nta import from_trees
from src.core.errors import AlphabetMismatchError, SubstitutionOrderError
from src.solver.instance import MatchingInstance, check_order
from src.substitutions.images import explicit_substitution, full_substitution
from src.trees.symbols import RankedAlphabet, Signature
from src.trees.terms import parse_term


def _trees(*texts):
    return [parse_term(t) for t in texts]


def test_check_order(alphabet, budget):
    small = explicit_substitution(alphabet, {"x": _trees("a")})
    large = explicit_substitution(alphabet, {"x": _trees("a", "b")})
    check_order(small, large, budget=budget)
    check_order(large, full_substitution(alphabet), budget=budget)
    with pytest.raises(SubstitutionOrderError, match="lower bound of x"):
        check_order(large, small, budget=budget)


def test_instance_alphabets(alphabet, all_a):
    upper = full_substitution(alphabet)
    left = from_trees(alphabet.full, _trees("f(x,x)"))
    MatchingInstance(alphabet, left, (all_a, "p"), upper, upper)
    with pytest.raises(AlphabetMismatchError, match="right language"):
        MatchingInstance(alphabet, left, left, upper, upper)
    with pytest.raises(AlphabetMismatchError, match="left language"):
        MatchingInstance(alphabet, from_trees(Signature({"g": 1, "y": 0}), _trees("g(y)")), (all_a, "p"), upper, upper)
    other = full_substitution(RankedAlphabet(alphabet.sigma, Signature({"y": 0})))
    with pytest.raises(AlphabetMismatchError, match="bounds"):
        MatchingInstance(alphabet, left, (all_a, "p"), other, upper)
