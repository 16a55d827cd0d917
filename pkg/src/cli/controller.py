import logging
from pathlib import Path

from src.automata.ata import member_rational_game
from src.automata.boolean import complement
from src.automata.nta import ParityNTA, State, extend_signature, is_empty, member, normalized, to_dot, trim, witness
from src.cli.document import InstanceDocument
from src.core.budget import Budget
from src.core.config import get_settings
from src.core.schemas import (
    AutomatonReport,
    EmptinessReport,
    EvaluationReport,
    GameReport,
    MembershipReport,
    ProfileEntry,
    ProfilesReport,
    SolutionEntry,
    SolutionReport,
    SubstitutionReport,
    VariableImage,
    WordImage,
    WordSolutionReport,
)
from src.games.arena import PROVER, SPOILER, arena_to_dot
from src.games.solver import solve as solve_game
from src.games.solver import verify_strategy
from src.profiles.classes import ProfileClass, realizable_profiles
from src.profiles.extended import witness_tree
from src.profiles.tasks import Profile, ProfileContext, format_profile, holes_of_profile
from src.solver.instance import SolutionSet
from src.solver.search import check_candidate, solve, solve_nonempty
from src.substitutions.evaluation import eval_io_finite, eval_oi_finite
from src.substitutions.images import TreeSet
from src.substitutions.inverse import inverse_image_nta
from src.substitutions.saturation import saturate, specialize
from src.trees.graphs import TreeGraph, format_graph
from src.trees.symbols import value_key
from src.trees.terms import Tree, format_symbol, format_term
from src.words.matching import solve_word_matching
from src.words.nfa import format_nfa

logger = logging.getLogger(get_settings().LOGGER_CLI_NAME)


def _write_dot(path: str | None, text: str) -> str | None:
    if path is None:
        return None
    Path(path).write_text(text + "\n", encoding="utf-8")
    logger.info(f"Wrote DOT rendering to {path}.")
    return path


def _tree_text(t: Tree | TreeGraph) -> str:
    return format_term(t) if isinstance(t, Tree) else format_graph(t).replace("\n", "; ")


def automaton_report(verb: str, automaton: ParityNTA, state: State, dot: str | None = None) -> AutomatonReport:
    """The trimmed automaton with states renamed 0, 1, ... from the start."""
    renamed, start = normalized(trim(automaton, [state]), state)
    lines = []
    for t in renamed.transitions:
        targets = "".join(f" {c}" for c in t.children)
        lines.append(f"{t.state} -{format_symbol(t.symbol)}->{targets}")
    return AutomatonReport(
        verb=verb,
        start=start,
        colors={str(q): renamed.colors[q] for q in renamed.states},
        transitions=lines,
        dot=_write_dot(dot, to_dot(renamed, start)),
    )


def member_report(doc: InstanceDocument, name: str, state: str, tree: str) -> MembershipReport:
    """Checks membership in an automaton or an alternating automaton."""
    t = doc.tree(tree)
    if name in doc.alternating:
        accepted = member_rational_game(doc.alternating[name], t, state)
    else:
        automaton, state = doc.language(name, state)
        accepted = member(automaton, t, state)
    logger.info(f"Membership of {tree} in {name} @ {state}: {accepted}.")
    return MembershipReport(verb="member", automaton=name, state=state, tree=_tree_text(t), member=accepted)


def empty_report(doc: InstanceDocument, name: str, state: str, dot: str | None) -> EmptinessReport:
    automaton, state = doc.language(name, state)
    found = None if is_empty(automaton, state) else witness(automaton, state)
    return EmptinessReport(
        verb="empty",
        automaton=name,
        state=state,
        empty=found is None,
        witness=format_graph(found) if found is not None else None,
        dot=_write_dot(dot, to_dot(automaton, state)),
    )


def complement_report(doc: InstanceDocument, name: str, state: str, dot: str | None, budget: Budget) -> AutomatonReport:
    result = complement(*doc.language(name, state), budget=budget)
    return automaton_report("complement", *result, dot=dot)


def _context(doc: InstanceDocument, name: str) -> ProfileContext:
    alphabet = doc.require_alphabet()
    return ProfileContext(extend_signature(doc.automaton(name), alphabet.sigma), alphabet.hole_count)


def _profile_entry(ctx: ProfileContext, profile: Profile, entry: ProfileClass) -> ProfileEntry:
    holes = [] if profile.is_empty else sorted(holes_of_profile(ctx, profile))
    return ProfileEntry(
        tasks=format_profile(ctx, profile),
        holes=holes,
        witness=format_term(witness_tree(ctx, profile)),
        member=_tree_text(entry.witness),
    )


def profiles_report(doc: InstanceDocument, name: str, budget: Budget) -> ProfilesReport:
    ctx = _context(doc, name)
    classes = realizable_profiles(ctx, budget=budget)
    return ProfilesReport(
        verb="profiles",
        automaton=name,
        profiles=[_profile_entry(ctx, p, entry) for p, entry in classes.items()],
    )


def saturate_report(doc: InstanceDocument, name: str, substitution: str, budget: Budget) -> SubstitutionReport:
    """Lists the profile classes each image is closed up to."""
    ctx = _context(doc, name)
    classes = realizable_profiles(ctx, budget=budget)
    index = {p: k for k, p in enumerate(classes)}
    saturated = saturate(doc.substitution(substitution), ctx, classes, budget=budget)
    images = [
        VariableImage(variable=str(x), profiles=[index[p] for p in saturated.image(x).profiles])
        for x in saturated.variables
    ]
    entries = [_profile_entry(ctx, p, entry) for p, entry in classes.items()]
    return SubstitutionReport(verb="saturate", profiles=entries, images=images)


def specialize_report(doc: InstanceDocument, name: str, substitution: str, budget: Budget) -> SubstitutionReport:
    """Lists the witness trees that replace each image."""
    ctx = _context(doc, name)
    classes = realizable_profiles(ctx, budget=budget)
    index = {p: k for k, p in enumerate(classes)}
    result = specialize(doc.substitution(substitution), ctx, classes, budget=budget)
    images = []
    for x in result.substitution.variables:
        image = result.substitution.image(x)
        trees = [format_term(t) for t in image.trees] if isinstance(image, TreeSet) else []
        images.append(VariableImage(variable=str(x), profiles=[index[p] for p in result.profiles[x]], trees=trees))
    entries = [_profile_entry(ctx, p, entry) for p, entry in classes.items()]
    return SubstitutionReport(verb="specialize", profiles=entries, images=images)


def inverse_image_report(
    doc: InstanceDocument, name: str, state: str, substitution: str, dot: str | None, budget: Budget
) -> AutomatonReport:
    automaton, state = doc.language(name, state)
    result = inverse_image_nta(doc.substitution(substitution), automaton, state, budget=budget)
    return automaton_report("inverse-image", *result, dot=dot)


def _solution_report(verb: str, result: SolutionSet) -> SolutionReport:
    index = {p: k for k, p in enumerate(result.profiles)}
    entries = []
    for solution in result.solutions:
        substitution = solution.substitution
        entries.append(SolutionEntry(
            profiles={str(x): [index[p] for p in ps] for x, ps in solution.profiles.items()},
            images={str(x): automaton_report(verb, *substitution.automaton(x)) for x in substitution.variables},
        ))
    return SolutionReport(
        verb=verb,
        decision=result.decision,
        checked=result.checked,
        profile_count=result.profile_count,
        solutions=entries,
    )


def solve_report(doc: InstanceDocument, budget: Budget) -> SolutionReport:
    return _solution_report("solve", solve(doc.matching_instance(), budget=budget))


def solve_nonempty_report(doc: InstanceDocument, budget: Budget) -> SolutionReport:
    instance = doc.matching_instance()
    result = solve_nonempty(instance.alphabet, instance.left, instance.right, budget=budget)
    return _solution_report("solve-nonempty", result)


def check_report(doc: InstanceDocument, substitution: str, budget: Budget) -> SolutionReport:
    holds = check_candidate(doc.matching_instance(), doc.substitution(substitution), budget=budget)
    return SolutionReport(verb="check", decision=holds)


def word_solve_report(doc: InstanceDocument, budget: Budget, samples: int) -> WordSolutionReport:
    instance = doc.word_instance()
    result = solve_word_matching(instance, budget=budget)
    solutions = []
    for solution in result.solutions:
        solutions.append({
            str(x): WordImage(
                automaton=format_nfa(image),
                words=[" ".join(w) for w in image.words(samples)],
            )
            for x, image in sorted(solution.images.items(), key=lambda item: value_key(item[0]))
        })
    return WordSolutionReport(
        verb="word-solve",
        relation=instance.relation,
        decision=result.decision,
        checked=result.checked,
        monoid_size=result.monoid_size,
        solutions=solutions,
    )


def eval_report(doc: InstanceDocument, substitution: str, tree: str, mode: str) -> EvaluationReport:
    t = doc.tree(tree)
    if not isinstance(t, Tree):
        t = t.to_tree()
    sigma = doc.substitution(substitution)
    images = eval_io_finite(sigma, t) if mode == "io" else eval_oi_finite(sigma, t)
    return EvaluationReport(verb=f"eval-{mode}", mode=mode, tree=format_term(t), images=sorted(format_term(i) for i in images))


def game_report(doc: InstanceDocument, name: str, dot: str | None) -> GameReport:
    arena = doc.arena(name)
    solution = solve_game(arena)
    strategy = {}
    for vertex in arena.vertices:
        owner = arena.owner[vertex]
        moves = solution.strategy(owner)
        if vertex in solution.region(owner) and vertex in moves:
            strategy[str(vertex)] = str(arena.target(moves[vertex]))
    return GameReport(
        verb="game",
        prover=[str(v) for v in arena.vertices if solution.winner(v) == PROVER],
        spoiler=[str(v) for v in arena.vertices if solution.winner(v) == SPOILER],
        strategy=strategy,
        verified=verify_strategy(arena, solution),
        dot=_write_dot(dot, arena_to_dot(arena, solution)),
    )
