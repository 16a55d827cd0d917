import pytest

from src.automata.nta import ParityNTA
from src.cli import controller
from src.cli.document import parse


@pytest.fixture
def doc(document_text):
    return parse(document_text)


def test_member_report(doc):
    assert not controller.member_report(doc, "A", "p", "t").member
    report = controller.member_report(doc, "A", "p", "comb")
    assert report.member
    assert report.tree == "n0 = f(n0, n1); n1 = a; root n0"


def test_empty_report(doc, tmp_path):
    path = tmp_path / "a.dot"
    report = controller.empty_report(doc, "A", "p", str(path))
    assert not report.empty
    assert report.witness is not None
    assert report.dot == str(path)
    assert path.read_text(encoding="utf-8").startswith("digraph automaton {")


def test_automaton_report(sigma):
    automaton = ParityNTA(sigma, ["p", "dead"], [("p", "f", ("p", "p")), ("p", "a", ()), ("dead", "b", ())], {"p": 2, "dead": 1})
    report = controller.automaton_report("complement", automaton, "p")
    assert report.start == 0
    assert report.colors == {"0": 2}
    assert sorted(report.transitions) == ["0 -a->", "0 -f-> 0 0"]


def test_complement_report(doc, budget):
    report = controller.complement_report(doc, "A", "p", None, budget)
    assert report.verb == "complement"
    assert report.transitions
    assert report.render().startswith("start 0\n")


@pytest.mark.parametrize("mode", ["io", "oi"])
def test_eval_report(doc, mode):
    report = controller.eval_report(doc, "two", "s", mode)
    assert report.images == ["f(a,a)", "f(a,b)", "f(b,a)", "f(b,b)"]
    assert report.render().startswith(f"4 {mode} images of f(x,x)\n")


def test_game_report(doc, tmp_path):
    report = controller.game_report(doc, "G", str(tmp_path / "g.dot"))
    assert report.prover == ["v0"]
    assert report.spoiler == ["v1"]
    assert report.strategy["v0"] == "v0"
    assert report.verified


def test_profiles_report(doc, budget):
    report = controller.profiles_report(doc, "A", budget)
    assert len(report.profiles) == 5
    assert report.profiles[0].tasks == []
    assert report.profiles[1].tasks == ["task p"]
    assert report.render().startswith("5 realizable profiles of A\n")


def test_saturate_and_specialize_reports(doc, budget):
    saturated = controller.saturate_report(doc, "A", "two", budget)
    assert [(i.variable, i.profiles) for i in saturated.images] == [("x", [0, 1])]
    specialized = controller.specialize_report(doc, "A", "one", budget)
    [image] = specialized.images
    assert image.profiles == [1]
    assert len(image.trees) == 1


def test_check_report(doc, budget):
    assert controller.check_report(doc, "one", budget).decision
    assert not controller.check_report(doc, "two", budget).decision


def test_solve_report(doc, budget):
    report = controller.solve_report(doc, budget)
    assert report.decision
    assert report.checked == 3
    assert report.profile_count == 5
    [solution] = report.solutions
    assert solution.profiles == {"x": [1]}
    assert "decision yes" in report.render()


def test_word_solve_report(doc, budget):
    report = controller.word_solve_report(doc, budget, 3)
    assert report.decision
    assert report.relation == "subset"
    assert [image.words for image in report.solutions[0].values()] == [["a", "b"]]
