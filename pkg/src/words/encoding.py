"""Finite words as rank-1 trees a1(a2(...an($)...)) and word instances as tree instances."""

from __future__ import annotations

from collections import deque
from typing import Iterable

from src.automata.nta import ParityNTA, State, Transition
from src.solver.instance import MatchingInstance, Solution
from src.substitutions.images import AutomatonImage, Substitution
from src.trees.symbols import RankedAlphabet, Signature, Symbol
from src.trees.terms import Tree
from src.words.matching import WordInstance
from src.words.nfa import Word, WordNFA, empty

END = "$"
START = ("start",)


def encode_word(word: Iterable[Symbol], end: Symbol = END) -> Tree:
    tree = Tree(end)
    for letter in reversed(tuple(word)):
        tree = Tree(letter, (tree,))
    return tree


def decode_tree(t: Tree, end: Symbol = END) -> Word:
    """The word spelled by a rank-1 chain.

    Raises:
        ValueError: If the tree is no chain ending in the end symbol.

    """
    word = []
    node = t
    while node.children:
        if len(node.children) != 1:
            msg = f"{node.symbol} has {len(node.children)} children in a word tree"
            raise ValueError(msg)
        word.append(node.symbol)
        node = node.children[0]
    if node.symbol != end:
        msg = f"word trees end in {end}, not {node.symbol}"
        raise ValueError(msg)
    return tuple(word)


def encode_alphabet(sigma: Iterable[Symbol], variables: Iterable[Symbol]) -> RankedAlphabet:
    return RankedAlphabet(
        Signature({**{a: 1 for a in sigma}, END: 0}),
        Signature({x: 1 for x in variables}),
    )


def encode_language(nfa: WordNFA, signature: Signature, end: Symbol = END) -> tuple[ParityNTA, State]:
    """An automaton for the chains w(end) with w in L(nfa).

    Every color is odd, so no infinite chain is accepted.

    """
    states = [START, *nfa.sorted_states()]
    transitions = []
    for p, a, q in nfa.transitions:
        transitions.append(Transition(p, a, (q,)))
        if p in nfa.initial:
            transitions.append(Transition(START, a, (q,)))
    for p in nfa.final:
        transitions.append(Transition(p, end, ()))
    if nfa.initial & nfa.final:
        transitions.append(Transition(START, end, ()))
    return ParityNTA(signature, states, set(transitions), {q: 1 for q in states}), START


def encode_word_instance(instance: WordInstance) -> MatchingInstance:
    """L, R and the bounds over the rank-1 alphabet; images end in hole 1."""
    alphabet = encode_alphabet(instance.sigma, instance.variables)
    image_signature = alphabet.sigma_with_holes()

    def images(bound) -> dict[Symbol, AutomatonImage]:
        return {x: AutomatonImage(*encode_language(bound(x), image_signature, end=1)) for x in alphabet.variables}

    return MatchingInstance(
        alphabet,
        encode_language(instance.left, alphabet.full),
        encode_language(instance.right, alphabet.sigma),
        Substitution(alphabet, images(instance.lower_bound)),
        Substitution(alphabet, images(instance.upper_bound)),
    )


def decode_language(automaton: ParityNTA, state: State, end: Symbol) -> WordNFA:
    """The words w whose chains w(end) are accepted; infinite chains are left out."""
    letters = {f for f, rank in automaton.signature.items() if rank == 1}
    seen = {state}
    queue = deque([state])
    transitions = []
    final = set()
    while queue:
        p = queue.popleft()
        for t in automaton.transitions:
            if t.state != p:
                continue
            if t.symbol == end:
                final.add(p)
            elif len(t.children) == 1 and t.symbol in letters:
                q = t.children[0]
                transitions.append((p, t.symbol, q))
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
    return WordNFA.build(seen, letters, transitions, [state], final)


def decode_solution(solution: Solution | Substitution, sigma: Iterable[Symbol]) -> dict[Symbol, WordNFA]:
    """The word images of a tree solution: the chains of each image that end in hole 1."""
    substitution = solution.substitution if isinstance(solution, Solution) else solution
    decoded = {}
    for x in substitution.variables:
        automaton, state = substitution.automaton(x)
        nfa = decode_language(automaton, state, 1)
        decoded[x] = nfa if nfa.final else empty(sigma)
    return decoded

