"""Instance documents: the model, the parser and the pretty-printer."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal, Union

from src.automata.ata import ParityATA, format_formula, sorted_formulas
from src.automata.nta import ParityNTA
from src.cli import grammar
from src.core.config import get_settings
from src.core.errors import DocumentSemanticError, DocumentSyntaxError, TreeMatchError
from src.games.arena import Arena
from src.solver.instance import MatchingInstance
from src.substitutions.images import AutomatonImage, FullImage, Image, Substitution, TreeSet, full_substitution
from src.trees.graphs import TreeGraph, format_graph, graph_from_equations
from src.trees.symbols import RankedAlphabet, Signature, is_hole, sort_symbols, value_key, with_holes
from src.trees.terms import Tree, check_tree, format_symbol, format_term, holes_of, parse_term
from src.words.matching import Relation, WordInstance
from src.words.nfa import WordNFA, from_regex

logger = logging.getLogger(get_settings().LOGGER_CLI_NAME)

Over = Literal["sigma", "sigma+holes", "full", "full+holes"]
Lines = list[tuple[int, str]]


@dataclass(frozen=True)
class ImageSpec:
    """How a substitution block gives the image of one variable."""

    kind: Literal["trees", "lang", "full"]
    trees: tuple[Tree, ...] = ()
    automaton: str | None = None
    state: str | None = None


@dataclass
class SubstitutionBlock:
    ranks: dict[str, int]
    images: dict[str, ImageSpec]
    substitution: Substitution


@dataclass
class Problem:
    """A matching problem over named automata and substitutions; bounds are optional."""

    left: tuple[str, str]
    right: tuple[str, str]
    lower: str | None = None
    upper: str | None = None


@dataclass
class WordProblem:
    left: str
    right: str
    variables: list[str]
    lower: dict[str, str] = field(default_factory=dict)
    upper: dict[str, str] = field(default_factory=dict)
    relation: Relation = "subset"


@dataclass
class InstanceDocument:
    """Everything a document defines, by name."""

    alphabet: RankedAlphabet | None = None
    automata: dict[str, ParityNTA] = field(default_factory=dict)
    alternating: dict[str, ParityATA] = field(default_factory=dict)
    overs: dict[str, Over] = field(default_factory=dict)
    graphs: dict[str, TreeGraph] = field(default_factory=dict)
    trees: dict[str, Tree] = field(default_factory=dict)
    substitutions: dict[str, SubstitutionBlock] = field(default_factory=dict)
    nfas: dict[str, WordNFA] = field(default_factory=dict)
    regexes: dict[str, str] = field(default_factory=dict)
    arenas: dict[str, Arena] = field(default_factory=dict)
    problem: Problem | None = None
    word_problem: WordProblem | None = None

    def automaton(self, name: str) -> ParityNTA:
        if name not in self.automata:
            msg = f"automaton '{name}' is not defined"
            raise DocumentSemanticError(msg)
        return self.automata[name]

    def language(self, name: str, state: str) -> tuple[ParityNTA, str]:
        automaton = self.automaton(name)
        if state not in automaton.states:
            msg = f"automaton '{name}' has no state '{state}'"
            raise DocumentSemanticError(msg)
        return automaton, state

    def tree(self, name: str) -> Union[Tree, TreeGraph]:
        if name in self.trees:
            return self.trees[name]
        if name in self.graphs:
            return self.graphs[name]
        msg = f"tree '{name}' is not defined"
        raise DocumentSemanticError(msg)

    def substitution(self, name: str) -> Substitution:
        if name not in self.substitutions:
            msg = f"substitution '{name}' is not defined"
            raise DocumentSemanticError(msg)
        return self.substitutions[name].substitution

    def word_language(self, name: str) -> WordNFA:
        if name not in self.nfas:
            msg = f"word language '{name}' is not defined"
            raise DocumentSemanticError(msg)
        return self.nfas[name]

    def arena(self, name: str) -> Arena:
        if name not in self.arenas:
            msg = f"arena '{name}' is not defined"
            raise DocumentSemanticError(msg)
        return self.arenas[name]

    def require_alphabet(self) -> RankedAlphabet:
        if self.alphabet is None:
            msg = "the document has no alphabet"
            raise DocumentSemanticError(msg)
        return self.alphabet

    def matching_instance(self) -> MatchingInstance:
        """The problem block; σ1 defaults to empty images and σ2 to every image."""
        if self.problem is None:
            msg = "the document has no problem block"
            raise DocumentSemanticError(msg)
        alphabet = self.require_alphabet()
        problem = self.problem
        lower = (
            self.substitution(problem.lower)
            if problem.lower
            else Substitution(alphabet, {x: TreeSet(()) for x in alphabet.variables})
        )
        upper = self.substitution(problem.upper) if problem.upper else full_substitution(alphabet)
        try:
            return MatchingInstance(
                alphabet, self.language(*problem.left), self.language(*problem.right), lower, upper
            )
        except TreeMatchError as error:
            raise DocumentSemanticError(str(error)) from error

    def word_instance(self) -> WordInstance:
        if self.word_problem is None:
            msg = "the document has no word-problem block"
            raise DocumentSemanticError(msg)
        problem = self.word_problem
        return WordInstance(
            left=self.word_language(problem.left),
            right=self.word_language(problem.right),
            variables=frozenset(problem.variables),
            lower={x: self.word_language(name) for x, name in problem.lower.items()},
            upper={x: self.word_language(name) for x, name in problem.upper.items()},
            relation=problem.relation,
        )


@dataclass
class _Block:
    kind: str
    name: str | None
    line: int
    body: Lines


def _blocks(text: str) -> list[_Block]:
    blocks: list[_Block] = []
    current: _Block | None = None
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("--"):
            continue
        if current is not None:
            if grammar.END.match(line):
                blocks.append(current)
                current = None
            else:
                current.body.append((number, line))
            continue
        definition = grammar.DEFINITION.match(line)
        if definition:
            blocks.append(_Block(definition.group(1), definition.group(2), number, [(number, line)]))
            continue
        header = grammar.BLOCK.match(line)
        if header is None:
            column = len(raw) - len(raw.lstrip()) + 1
            msg = f"expected a block header, found '{line}'"
            raise DocumentSyntaxError(msg, number, column)
        if header.group(1):
            current = _Block(header.group(1), None, number, [])
        else:
            current = _Block(header.group(2), header.group(3), number, [])
    if current is not None:
        msg = f"block '{current.kind}' is not closed with 'end'"
        raise DocumentSyntaxError(msg, current.line)
    return blocks


def _fail(line: int, message: str) -> DocumentSyntaxError:
    return DocumentSyntaxError(message, line)


class _Parser:
    def __init__(self, blocks: list[_Block]):
        self.blocks = blocks
        self.doc = InstanceDocument()
        self.names: dict[str, int] = {}

    def claim(self, block: _Block) -> None:
        if block.name in self.names:
            msg = f"'{block.name}' is already defined on line {self.names[block.name]}"
            raise DocumentSemanticError(msg, block.line)
        self.names[block.name] = block.line

    def run(self) -> InstanceDocument:
        order = [
            ("alphabet", "variables"),
            ("automaton", "ata", "graph", "tree", "nfa", "regex", "arena"),
            ("substitution",),
            ("problem", "word-problem"),
        ]
        ranked: dict[str, Signature] = {}
        for block in self.blocks:
            if block.kind in ("alphabet", "variables"):
                if block.kind in ranked:
                    raise DocumentSemanticError(f"second '{block.kind}' block", block.line)
                ranked[block.kind] = self.ranked(block)
        if "alphabet" in ranked:
            try:
                self.doc.alphabet = RankedAlphabet(ranked["alphabet"], ranked.get("variables", Signature()))
            except TreeMatchError as error:
                raise DocumentSemanticError(str(error), 1) from error
        elif "variables" in ranked:
            raise DocumentSemanticError("variables need an alphabet block", 1)
        for kinds in order[1:]:
            for block in self.blocks:
                if block.kind in kinds:
                    getattr(self, block.kind.replace("-", "_"))(block)
        return self.doc

    def ranked(self, block: _Block) -> Signature:
        ranks: dict[str, int] = {}
        for number, line in block.body:
            match = grammar.RANKED.match(line)
            if match is None:
                raise _fail(number, f"expected 'name rank', found '{line}'")
            if match.group(1) in ranks:
                raise DocumentSemanticError(f"symbol '{match.group(1)}' is declared twice", number)
            ranks[match.group(1)] = int(match.group(2))
        return Signature(ranks)

    def signature(self, over: Over) -> Signature:
        alphabet = self.doc.require_alphabet()
        return {
            "sigma": alphabet.sigma,
            "sigma+holes": alphabet.sigma_with_holes(),
            "full": alphabet.full,
            "full+holes": with_holes(alphabet.full, alphabet.hole_count),
        }[over]

    def infer_over(self, symbols: set) -> Over:
        alphabet = self.doc.require_alphabet()
        variables = any(s in alphabet.variables and s not in alphabet.sigma for s in symbols)
        holes = any(is_hole(s) for s in symbols)
        if variables:
            return "full+holes" if holes else "full"
        return "sigma+holes" if holes else "sigma"

    def check_symbol(self, symbol, rank: int, number: int, rule: str) -> None:
        alphabet = self.doc.require_alphabet()
        if is_hole(symbol):
            if symbol > alphabet.hole_count:
                raise DocumentSemanticError(f"hole #{symbol} exceeds the largest rank {alphabet.hole_count}", number)
            expected = 0
        elif symbol in alphabet.full:
            expected = alphabet.full[symbol]
        else:
            raise DocumentSemanticError(f"unknown symbol '{symbol}' in '{rule}'", number)
        if rank != expected:
            raise DocumentSemanticError(f"'{rule}' gives {format_symbol(symbol)} {rank} targets, its rank is {expected}", number)

    def header(self, block: _Block) -> tuple[Over | None, list[str] | None, dict[str, int], Lines]:
        over = None
        states = None
        colors: dict[str, int] = {}
        rest: Lines = []
        for number, line in block.body:
            if match := grammar.OVER.match(line):
                over = match.group(1)
            elif match := grammar.STATES.match(line):
                states = grammar.words(match.group(1))
            elif match := grammar.COLORS.match(line):
                colors.update(grammar.pairs(match.group(1)))
            else:
                rest.append((number, line))
        return over, states, colors, rest

    def automaton(self, block: _Block) -> None:
        self.claim(block)
        over, states, colors, rest = self.header(block)
        transitions = []
        mentioned: list[str] = []
        for number, line in rest:
            match = grammar.TRANSITION.match(line)
            if match is None:
                raise _fail(number, f"expected a transition 'q -f-> q1 ... qk', found '{line}'")
            state, symbol, targets = match.group(1), grammar.parse_symbol(match.group(2)), grammar.words(match.group(3))
            self.check_symbol(symbol, len(targets), number, line)
            transitions.append((state, symbol, tuple(targets)))
            mentioned.extend([state, *targets])
        self.finish_states(block, states, colors, mentioned)
        over = over or self.infer_over({t[1] for t in transitions})
        try:
            automaton = ParityNTA(self.signature(over), states or colors, transitions, colors)
        except TreeMatchError as error:
            raise DocumentSemanticError(str(error), block.line) from error
        self.doc.automata[block.name] = automaton
        self.doc.overs[block.name] = over

    def finish_states(self, block: _Block, states: list[str] | None, colors: dict[str, int], mentioned: list[str]) -> None:
        known = set(states) if states is not None else set(colors)
        for q in [*mentioned, *(states or [])]:
            if q not in colors:
                raise DocumentSemanticError(f"state '{q}' of '{block.name}' has no color", block.line)
            if q not in known:
                raise DocumentSemanticError(f"state '{q}' of '{block.name}' is not declared", block.line)

    def ata(self, block: _Block) -> None:
        self.claim(block)
        over, states, colors, rest = self.header(block)
        formulas = {}
        mentioned: list[str] = []
        for number, line in rest:
            match = grammar.FORMULA.match(line)
            if match is None:
                raise _fail(number, f"expected a formula 'q, f : ...', found '{line}'")
            state, symbol = match.group(1), grammar.parse_symbol(match.group(2))
            formula = grammar.parse_formula(match.group(3), number)
            formulas[(state, symbol)] = formula
            mentioned.append(state)
            mentioned.extend(p for disjunct in formula for _, p in disjunct)
        self.finish_states(block, states, colors, mentioned)
        over = over or self.infer_over({symbol for _, symbol in formulas})
        try:
            automaton = ParityATA(self.signature(over), states or colors, formulas, colors)
        except TreeMatchError as error:
            raise DocumentSemanticError(str(error), block.line) from error
        self.doc.alternating[block.name] = automaton
        self.doc.overs[block.name] = over

    def graph(self, block: _Block) -> None:
        self.claim(block)
        equations: dict[str, tuple] = {}
        root = None
        for number, line in block.body:
            if match := grammar.ROOT.match(line):
                root = match.group(1)
                continue
            match = grammar.EQUATION.match(line)
            if match is None:
                raise _fail(number, f"expected 'n = f(n1, ..., nk)' or 'root n', found '{line}'")
            label = grammar.parse_symbol(match.group(2))
            targets = [t.strip() for t in (match.group(3) or "").split(",") if t.strip()]
            self.check_symbol(label, len(targets), number, line)
            equations[match.group(1)] = (label, targets)
        if root is None:
            raise DocumentSemanticError(f"graph '{block.name}' has no root", block.line)
        self.doc.graphs[block.name] = graph_from_equations(equations, root, block.line)

    def tree(self, block: _Block) -> None:
        self.claim(block)
        number, line = block.body[0]
        text = grammar.DEFINITION.match(line).group(3)
        t = parse_term(text, number, len(line) - len(text))
        alphabet = self.doc.require_alphabet()
        try:
            check_tree(t, with_holes(alphabet.full, alphabet.hole_count))
        except TreeMatchError as error:
            raise DocumentSemanticError(str(error), number) from error
        self.doc.trees[block.name] = t

    def nfa(self, block: _Block) -> None:
        self.claim(block)
        letters: set[str] = set()
        moves = []
        initial: list[str] = []
        final: list[str] = []
        for number, line in block.body:
            if match := grammar.NFA_MOVE.match(line):
                moves.append(match.groups())
                letters.add(match.group(2))
            elif match := grammar.LETTERS.match(line):
                letters.update(grammar.words(match.group(1)))
            elif match := grammar.INITIAL.match(line):
                initial.extend(grammar.words(match.group(1)))
            elif match := grammar.FINAL.match(line):
                final.extend(grammar.words(match.group(1)))
            else:
                raise _fail(number, f"expected a move 'p -a-> q', letters, initial or final, found '{line}'")
        states = {p for p, _, q in moves} | {q for _, _, q in moves} | set(initial) | set(final)
        self.doc.nfas[block.name] = WordNFA.build(states, letters, moves, initial, final)

    def regex(self, block: _Block) -> None:
        self.claim(block)
        number, line = block.body[0]
        text = grammar.DEFINITION.match(line).group(3).strip()
        self.doc.nfas[block.name] = from_regex(text, line=number)
        self.doc.regexes[block.name] = text

    def arena(self, block: _Block) -> None:
        self.claim(block)
        vertices: dict[str, tuple[int, int]] = {}
        edges = []
        for number, line in block.body:
            if match := grammar.VERTEX.match(line):
                vertices[match.group(1)] = (int(match.group(2)), int(match.group(3)))
            elif match := grammar.EDGE.match(line):
                edges.append((match.group(1), match.group(2)))
            else:
                raise _fail(number, f"expected 'v owner color' or 'u -> v', found '{line}'")
        try:
            self.doc.arenas[block.name] = Arena.build(vertices, edges)
        except TreeMatchError as error:
            raise DocumentSemanticError(str(error), block.line) from error

    def substitution(self, block: _Block) -> None:
        self.claim(block)
        alphabet = self.doc.require_alphabet()
        ranks: dict[str, int] = {}
        specs: dict[str, ImageSpec] = {}
        current = None
        for number, line in block.body:
            if match := grammar.VARIABLE.match(line):
                current = match.group(1)
                if current not in alphabet.variables:
                    raise DocumentSemanticError(f"'{current}' is not a variable", number)
                ranks[current] = int(match.group(2))
                if ranks[current] != alphabet.variables[current]:
                    msg = f"variable '{current}' has rank {alphabet.variables[current]}, not {ranks[current]}"
                    raise DocumentSemanticError(msg, number)
                continue
            if current is None:
                raise _fail(number, "expected 'var x rank k'")
            if current in specs:
                raise DocumentSemanticError(f"variable '{current}' has two images", number)
            specs[current] = self.image_spec(current, ranks[current], number, line)
        missing = [x for x in alphabet.variables if x not in specs]
        if missing:
            raise DocumentSemanticError(f"variable '{missing[0]}' has no image in '{block.name}'", block.line)
        images: dict = {x: self.image(spec, block.line) for x, spec in specs.items()}
        try:
            substitution = Substitution(alphabet, images)
        except TreeMatchError as error:
            raise DocumentSemanticError(str(error), block.line) from error
        self.doc.substitutions[block.name] = SubstitutionBlock(ranks, specs, substitution)

    def image_spec(self, x: str, rank: int, number: int, line: str) -> ImageSpec:
        if match := grammar.TREES.match(line):
            column = line.index(":") + 1
            trees = []
            for item in grammar.split_items(match.group(1)):
                t = parse_term(item, number, column + line[column:].index(item))
                bad = sorted(i for i in holes_of(t) if i > rank)
                if bad:
                    raise DocumentSemanticError(f"image {format_term(t)} of '{x}' uses hole #{bad[0]} above rank {rank}", number)
                if is_hole(t.symbol):
                    raise DocumentSemanticError(f"the image of '{x}' contains the bare hole {format_term(t)}", number)
                trees.append(t)
            return ImageSpec("trees", tuple(trees))
        if match := grammar.LANG.match(line):
            return ImageSpec("lang", automaton=match.group(1), state=match.group(2))
        if grammar.FULL.match(line):
            return ImageSpec("full")
        raise _fail(number, f"expected 'trees: ...', 'lang: A @ q' or 'full', found '{line}'")

    def image(self, spec: ImageSpec, line: int) -> Image:
        if spec.kind == "trees":
            alphabet = self.doc.require_alphabet()
            for t in spec.trees:
                try:
                    check_tree(t, alphabet.sigma_with_holes())
                except TreeMatchError as error:
                    raise DocumentSemanticError(str(error), line) from error
            return TreeSet(spec.trees)
        if spec.kind == "lang":
            try:
                return AutomatonImage(*self.doc.language(spec.automaton, spec.state))
            except DocumentSemanticError as error:
                raise DocumentSemanticError(error.message, line) from error
        return FullImage()

    def problem(self, block: _Block) -> None:
        references: dict[str, tuple[str, str]] = {}
        bounds: dict[str, str] = {}
        for number, line in block.body:
            if match := grammar.REFERENCE.match(line):
                references[match.group(1)] = (match.group(2), match.group(3))
            elif match := grammar.BOUND.match(line):
                bounds[match.group(1)] = match.group(2)
            else:
                raise _fail(number, f"expected 'left A @ q', 'right A @ q', 'lower s' or 'upper s', found '{line}'")
        for side in ("left", "right"):
            if side not in references:
                raise DocumentSemanticError(f"the problem has no {side} language", block.line)
            try:
                self.doc.language(*references[side])
            except DocumentSemanticError as error:
                raise DocumentSemanticError(error.message, block.line) from error
        for name in bounds.values():
            if name not in self.doc.substitutions:
                raise DocumentSemanticError(f"substitution '{name}' is not defined", block.line)
        self.doc.problem = Problem(references["left"], references["right"], bounds.get("lower"), bounds.get("upper"))

    def word_problem(self, block: _Block) -> None:
        references: dict[str, str] = {}
        variables: list[str] = []
        bounds: dict[str, dict[str, str]] = {"lower": {}, "upper": {}}
        relation: Relation = "subset"
        for number, line in block.body:
            if match := grammar.WORD_REFERENCE.match(line):
                references[match.group(1)] = match.group(2)
            elif match := grammar.WORD_BOUND.match(line):
                bounds[match.group(1)][match.group(2)] = match.group(3)
            elif match := grammar.WORD_VARIABLES.match(line):
                variables.extend(grammar.words(match.group(1)))
            elif match := grammar.RELATION.match(line):
                relation = match.group(1)
            else:
                raise _fail(number, f"unexpected line '{line}' in the word problem")
        for side in ("left", "right"):
            if references.get(side) not in self.doc.nfas:
                raise DocumentSemanticError(f"the word problem has no {side} language", block.line)
        for side in bounds.values():
            for x, name in side.items():
                if x not in variables or name not in self.doc.nfas:
                    raise DocumentSemanticError(f"bound '{x} = {name}' names no variable or language", block.line)
        self.doc.word_problem = WordProblem(
            references["left"], references["right"], variables, bounds["lower"], bounds["upper"], relation
        )


def parse(text: str) -> InstanceDocument:
    """Parses and validates a document.

    Raises:
        DocumentSyntaxError: With the line and column of the first malformed line.
        DocumentSemanticError: For undefined names, rank mismatches and hole-bound violations.

    """
    document = _Parser(_blocks(text)).run()
    logger.debug(
        f"Parsed a document with {len(document.automata)} automata and {len(document.substitutions)} substitutions."
    )
    return document


def _ranked_lines(kind: str, signature: Signature) -> list[str]:
    return [kind, *(f"  {f} {signature[f]}" for f in sort_symbols(signature)), "end"]


def _automaton_lines(name: str, automaton: ParityNTA, over: Over) -> list[str]:
    lines = [f"automaton {name}", f"  over {over}"]
    lines.append("  states " + " ".join(str(q) for q in automaton.states))
    lines.append("  colors " + " ".join(f"{q}={automaton.colors[q]}" for q in automaton.states))
    for t in automaton.transitions:
        targets = "".join(f" {c}" for c in t.children)
        lines.append(f"  {t.state} -{format_symbol(t.symbol)}->{targets}")
    return [*lines, "end"]


def _ata_lines(name: str, automaton: ParityATA, over: Over) -> list[str]:
    lines = [f"ata {name}", f"  over {over}"]
    lines.append("  states " + " ".join(str(q) for q in automaton.states))
    lines.append("  colors " + " ".join(f"{q}={automaton.colors[q]}" for q in automaton.states))
    for q, symbol, formula in sorted_formulas(automaton):
        lines.append(f"  {q}, {format_symbol(symbol)} : {format_formula(formula)}")
    return [*lines, "end"]


def _spec_line(spec: ImageSpec) -> str:
    if spec.kind == "trees":
        return "trees: " + "; ".join(format_term(t) for t in spec.trees)
    if spec.kind == "lang":
        return f"lang: {spec.automaton} @ {spec.state}"
    return "full"


def format_document(doc: InstanceDocument) -> str:
    """Prints a document in canonical form; parsing the result gives the same document."""
    lines: list[str] = []
    if doc.alphabet is not None:
        lines.extend(_ranked_lines("alphabet", doc.alphabet.sigma))
        if len(doc.alphabet.variables):
            lines.extend(_ranked_lines("variables", doc.alphabet.variables))
    for name, automaton in doc.automata.items():
        lines.extend(_automaton_lines(name, automaton, doc.overs[name]))
    for name, automaton in doc.alternating.items():
        lines.extend(_ata_lines(name, automaton, doc.overs[name]))
    for name, g in doc.graphs.items():
        lines.extend([f"graph {name}", *(f"  {line}" for line in format_graph(g).splitlines()), "end"])
    for name, t in doc.trees.items():
        lines.append(f"tree {name} = {format_term(t)}")
    for name, block in doc.substitutions.items():
        lines.append(f"substitution {name}")
        for x, spec in block.images.items():
            lines.extend([f"  var {x} rank {block.ranks[x]}", f"    {_spec_line(spec)}"])
        lines.append("end")
    for name, nfa in doc.nfas.items():
        if name in doc.regexes:
            lines.append(f"regex {name} = {doc.regexes[name]}")
            continue
        lines.append(f"nfa {name}")
        lines.append("  letters " + " ".join(nfa.sorted_letters()))
        lines.extend(f"  {p} -{a}-> {q}" for p, a, q in sorted(nfa.transitions, key=value_key))
        lines.append("  initial " + " ".join(str(p) for p in sorted(nfa.initial, key=value_key)))
        lines.append("  final " + " ".join(str(p) for p in sorted(nfa.final, key=value_key)))
        lines.append("end")
    for name, arena in doc.arenas.items():
        lines.append(f"arena {name}")
        lines.extend(f"  {v} {arena.owner[v]} {arena.color[v]}" for v in arena.vertices)
        lines.extend(f"  {u} -> {v}" for u, v in arena.edges)
        lines.append("end")
    if doc.problem is not None:
        problem = doc.problem
        lines.extend(["problem", f"  left {problem.left[0]} @ {problem.left[1]}", f"  right {problem.right[0]} @ {problem.right[1]}"])
        if problem.lower:
            lines.append(f"  lower {problem.lower}")
        if problem.upper:
            lines.append(f"  upper {problem.upper}")
        lines.append("end")
    if doc.word_problem is not None:
        problem = doc.word_problem
        lines.extend(["word-problem", f"  left {problem.left}", f"  right {problem.right}"])
        lines.append("  variables " + " ".join(problem.variables))
        lines.extend(f"  lower {x} = {name}" for x, name in problem.lower.items())
        lines.extend(f"  upper {x} = {name}" for x, name in problem.upper.items())
        lines.extend([f"  relation {problem.relation}", "end"])
    return "\n".join(lines) + "\n"
