import pytest

from src.automata.nta import from_trees, member
from src.core.budget import Budget
from src.core.errors import ResourceBudgetExceeded, SubstitutionOrderError
from src.solver.instance import MatchingInstance
from src.solver.search import candidate_set, check_candidate, solve, solve_nonempty, verify_equality
from src.substitutions.images import explicit_substitution, full_substitution
from src.trees.terms import parse_term


@pytest.fixture
def instance(alphabet, all_a) -> MatchingInstance:
    """f(x,x) against the trees whose leaves are all a."""
    upper = full_substitution(alphabet)
    lower = explicit_substitution(alphabet, {"x": []})
    left = from_trees(alphabet.full, [parse_term("f(x,x)")])
    return MatchingInstance(alphabet, left, (all_a, "p"), lower, upper)


def _with_bounds(instance, lower=None, upper=None):
    return MatchingInstance(
        instance.alphabet, instance.left, instance.right, lower or instance.lower, upper or instance.upper
    )


def _explicit(alphabet, *texts):
    return explicit_substitution(alphabet, {"x": [parse_term(t) for t in texts]})


def test_solve(instance, budget):
    result = solve(instance, budget=budget)
    assert result.decision
    assert result.checked == 3
    assert result.profile_count == 5
    [solution] = result.solutions
    automaton, state = solution.substitution.automaton("x")
    assert member(automaton, parse_term("a"), state)
    assert member(automaton, parse_term("f(a,a)"), state)
    assert not member(automaton, parse_term("b"), state)
    assert not member(automaton, parse_term("f(a,b)"), state)


def test_solve_with_an_unsatisfiable_lower_bound(instance, alphabet, budget):
    result = solve(_with_bounds(instance, lower=_explicit(alphabet, "b")), budget=budget)
    assert not result.decision
    assert result.solutions == ()
    assert result.checked == 2


def test_solve_checks_the_bounds(instance, alphabet, budget):
    bounded = _with_bounds(instance, lower=_explicit(alphabet, "a", "b"), upper=_explicit(alphabet, "a"))
    with pytest.raises(SubstitutionOrderError):
        solve(bounded, budget=budget)


def test_check_candidate(instance, alphabet, budget):
    assert check_candidate(instance, _explicit(alphabet, "a"), budget=budget)
    assert not check_candidate(instance, _explicit(alphabet, "a", "b"), budget=budget)
    assert check_candidate(instance, _explicit(alphabet), budget=budget)


def test_candidate_set(instance, budget):
    candidates = candidate_set(instance, budget=budget)
    assert [len(c.image("x").profiles) for c in candidates] == [2, 1, 1, 0]


def test_candidate_budget(instance):
    with pytest.raises(ResourceBudgetExceeded) as info:
        candidate_set(instance, budget=Budget.from_settings(max_candidates=1))
    assert info.value.stage == "candidate-set"


def test_solve_nonempty(instance, budget):
    result = solve_nonempty(instance.alphabet, instance.left, instance.right, budget=budget)
    assert result.decision
    [solution] = result.solutions
    automaton, state = solution.substitution.automaton("x")
    assert member(automaton, parse_term("f(a,f(a,a))"), state)
    assert not member(automaton, parse_term("b"), state)


def test_verify_equality(instance, alphabet, budget):
    check = verify_equality(_explicit(alphabet, "a"), instance.left, instance.right, budget=budget)
    assert not check.refuted
    assert check.unmatched == (parse_term("a"),)
    check = verify_equality(_explicit(alphabet, "b"), instance.left, instance.right, budget=budget)
    assert check.refuted
    assert check.counterexample == parse_term("f(b,b)")
