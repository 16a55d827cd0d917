from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class BaseReport(BaseModel):
    verb: str = Field(
        ...,
        examples=["solve"],
        title="Verb",
        description="The command that produced the report.",
    )

    def lines(self) -> list[str]:
        return []

    def render(self) -> str:
        """Renders the text view of the report."""
        return "\n".join(self.lines()) + "\n"


class ErrorReport(BaseReport):
    kind: str = Field(
        ...,
        examples=["ResourceBudgetExceeded"],
        title="Kind",
        description="The class of the error.",
    )
    message: str = Field(..., title="Message", description="The error message.")
    stage: Optional[str] = Field(
        default=None,
        examples=["ata-to-nta"],
        title="Stage",
        description="The pipeline stage that ran out of budget.",
    )
    line: Optional[int] = Field(default=None, title="Line", description="Line of a document error.")
    column: Optional[int] = Field(default=None, title="Column", description="Column of a syntax error.")

    def lines(self) -> list[str]:
        where = f" in stage {self.stage}" if self.stage else ""
        return [f"error: {self.kind}{where}: {self.message}"]


class AutomatonReport(BaseReport):
    start: int = Field(0, title="Start", description="The start state after renaming.")
    colors: dict[str, int] = Field(
        default_factory=dict,
        examples=[{"0": 2, "1": 1}],
        title="Colors",
        description="The color of every state.",
    )
    transitions: list[str] = Field(
        default_factory=list,
        examples=[["0 -f-> 0 1", "1 -a->"]],
        title="Transitions",
        description="One line per transition.",
    )
    dot: Optional[str] = Field(default=None, title="DOT path", description="Where the DOT rendering went.")

    def lines(self) -> list[str]:
        lines = [f"start {self.start}", "colors " + " ".join(f"{q}={c}" for q, c in self.colors.items())]
        lines.extend(self.transitions)
        return lines


class MembershipReport(BaseReport):
    automaton: str = Field(..., examples=["B"], title="Automaton", description="The automaton block.")
    state: str = Field(..., examples=["p"], title="State", description="The state whose language is meant.")
    tree: str = Field(..., examples=["f(a,b)"], title="Tree", description="The tree that was tested.")
    member: bool = Field(..., title="Member", description="Whether the tree is accepted.")

    def lines(self) -> list[str]:
        verdict = "member" if self.member else "not a member"
        return [f"{self.tree}: {verdict} of {self.automaton} @ {self.state}"]


class EmptinessReport(BaseReport):
    automaton: str = Field(..., examples=["B"], title="Automaton", description="The automaton block.")
    state: str = Field(..., examples=["p"], title="State", description="The state whose language is meant.")
    empty: bool = Field(..., title="Empty", description="Whether the language is empty.")
    witness: Optional[str] = Field(
        default=None,
        examples=["n0 = f(n0, n1)\nn1 = a\nroot n0"],
        title="Witness",
        description="An accepted rational tree when the language is not empty.",
    )
    dot: Optional[str] = Field(default=None, title="DOT path", description="Where the DOT rendering went.")

    def lines(self) -> list[str]:
        if self.empty:
            return ["empty"]
        return ["nonempty", *(self.witness or "").splitlines()]


class ProfileEntry(BaseModel):
    tasks: list[str] = Field(
        default_factory=list,
        examples=[["task p | 1:q=2"]],
        title="Tasks",
        description="The minimal tasks of the profile.",
    )
    holes: list[int] = Field(default_factory=list, title="Holes", description="The holes every member uses.")
    witness: str = Field(..., examples=["f(#1,a)"], title="Witness", description="The canonical tree of the profile.")
    member: str = Field(..., title="Member", description="A tree over the original alphabet with this profile.")


class ProfilesReport(BaseReport):
    automaton: str = Field(..., examples=["B"], title="Automaton", description="The automaton block.")
    profiles: list[ProfileEntry] = Field(
        default_factory=list,
        title="Profiles",
        description="The realizable profiles.",
    )

    def lines(self) -> list[str]:
        lines = [f"{len(self.profiles)} realizable profiles of {self.automaton}"]
        for k, entry in enumerate(self.profiles):
            holes = ",".join(map(str, entry.holes)) or "-"
            lines.append(f"profile {k} holes {holes} witness {entry.witness}")
            lines.extend(f"  {task}" for task in entry.tasks)
        return lines


class VariableImage(BaseModel):
    variable: str = Field(..., examples=["x"], title="Variable", description="The variable.")
    profiles: list[int] = Field(
        default_factory=list,
        title="Profiles",
        description="Indices of the profiles the image realizes.",
    )
    trees: list[str] = Field(default_factory=list, title="Trees", description="Image trees, when finite.")


class SubstitutionReport(BaseReport):
    profiles: list[ProfileEntry] = Field(default_factory=list, title="Profiles", description="The profiles in use.")
    images: list[VariableImage] = Field(default_factory=list, title="Images", description="One entry per variable.")

    def lines(self) -> list[str]:
        lines = []
        for k, entry in enumerate(self.profiles):
            lines.append(f"profile {k} witness {entry.witness}")
        for image in self.images:
            lines.append(f"{image.variable}: profiles {' '.join(map(str, image.profiles)) or '-'}")
            lines.extend(f"  {t}" for t in image.trees)
        return lines


class EvaluationReport(BaseReport):
    mode: Literal["io", "oi"] = Field(..., title="Mode", description="Inside-out or outside-in.")
    tree: str = Field(..., examples=["x(x(z))"], title="Tree", description="The evaluated tree.")
    images: list[str] = Field(default_factory=list, title="Images", description="The image trees, sorted.")

    def lines(self) -> list[str]:
        return [f"{len(self.images)} {self.mode} images of {self.tree}", *self.images]


class SolutionEntry(BaseModel):
    profiles: dict[str, list[int]] = Field(
        default_factory=dict,
        title="Profiles",
        description="Per variable, the indices of the profile classes in its image.",
    )
    images: dict[str, AutomatonReport] = Field(
        default_factory=dict,
        title="Images",
        description="Per variable, the image as an automaton.",
    )


class SolutionReport(BaseReport):
    decision: bool = Field(..., title="Decision", description="Whether a solution exists.")
    checked: int = Field(0, title="Checked", description="Number of candidate checks.")
    profile_count: int = Field(0, title="Profile count", description="Number of realizable profiles.")
    solutions: list[SolutionEntry] = Field(
        default_factory=list,
        title="Solutions",
        description="The maximal solutions.",
    )

    def lines(self) -> list[str]:
        lines = [f"decision {'yes' if self.decision else 'no'}"]
        if self.verb == "check":
            return lines
        lines.append(f"{len(self.solutions)} maximal solutions, {self.checked} candidates checked")
        for k, entry in enumerate(self.solutions):
            lines.append(f"solution {k}")
            for variable, image in entry.images.items():
                indices = " ".join(map(str, entry.profiles.get(variable, []))) or "-"
                lines.append(f"  {variable}: profiles {indices}")
                lines.extend(f"    {line}" for line in image.lines())
        return lines


class WordImage(BaseModel):
    automaton: list[str] = Field(default_factory=list, title="Automaton", description="The image NFA.")
    words: list[str] = Field(default_factory=list, title="Words", description="Its shortest words.")


class WordSolutionReport(BaseReport):
    relation: Literal["subset", "equal"] = Field(..., title="Relation", description="Inclusion or equality.")
    decision: bool = Field(..., title="Decision", description="Whether a solution exists.")
    checked: int = Field(0, title="Checked", description="Number of candidate checks.")
    monoid_size: int = Field(0, title="Monoid size", description="Elements of the transition monoid on nonempty words.")
    solutions: list[dict[str, WordImage]] = Field(
        default_factory=list,
        title="Solutions",
        description="The maximal solutions, per variable.",
    )

    def lines(self) -> list[str]:
        lines = [f"decision {'yes' if self.decision else 'no'}", f"{len(self.solutions)} maximal solutions"]
        for k, solution in enumerate(self.solutions):
            lines.append(f"solution {k}")
            for variable, image in solution.items():
                lines.append(f"  {variable}: {' '.join(image.words) or '-'}")
                lines.extend(f"    {line}" for line in image.automaton)
        return lines


class GameReport(BaseReport):
    prover: list[str] = Field(default_factory=list, title="Prover", description="Vertices player 0 wins.")
    spoiler: list[str] = Field(default_factory=list, title="Spoiler", description="Vertices player 1 wins.")
    strategy: dict[str, str] = Field(
        default_factory=dict,
        title="Strategy",
        description="The winning move of the owner at every vertex it wins.",
    )
    verified: bool = Field(..., title="Verified", description="Whether the strategies were checked.")
    dot: Optional[str] = Field(default=None, title="DOT path", description="Where the DOT rendering went.")

    def lines(self) -> list[str]:
        lines = ["prover " + " ".join(self.prover), "spoiler " + " ".join(self.spoiler)]
        lines.extend(f"{v} -> {w}" for v, w in self.strategy.items())
        return lines
