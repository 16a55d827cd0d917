import pytest

from src.automata.nta import ParityNTA
from src.core.budget import Budget
from src.trees.symbols import RankedAlphabet, Signature

SIGMA = Signature({"f": 2, "a": 0, "b": 0})


@pytest.fixture
def sigma() -> Signature:
    return SIGMA


@pytest.fixture
def alphabet() -> RankedAlphabet:
    return RankedAlphabet(SIGMA, Signature({"x": 0}))


@pytest.fixture
def all_a() -> ParityNTA:
    """Trees whose leaves are all a, finite or not."""
    return ParityNTA(SIGMA, ["p"], [("p", "f", ("p", "p")), ("p", "a", ())], {"p": 2})


@pytest.fixture
def some_b() -> ParityNTA:
    """Finite or infinite trees with a b leaf."""
    return ParityNTA(
        SIGMA,
        ["p", "q"],
        [
            ("p", "f", ("p", "q")),
            ("p", "f", ("q", "p")),
            ("p", "b", ()),
            ("q", "f", ("q", "q")),
            ("q", "a", ()),
            ("q", "b", ()),
        ],
        {"p": 1, "q": 2},
    )


@pytest.fixture
def finite_only() -> ParityNTA:
    """Exactly the finite trees: the only state has color 1."""
    return ParityNTA(
        SIGMA, ["p"], [("p", "f", ("p", "p")), ("p", "a", ()), ("p", "b", ())], {"p": 1}
    )


@pytest.fixture
def budget() -> Budget:
    return Budget.from_settings(max_seconds=300)


DOCUMENT = """\
-- f(x,x) against the trees whose leaves are all a
alphabet
  f 2
  a 0
  b 0
end
variables
  x 0
end
automaton A
  states p
  colors p=2
  p -f-> p p
  p -a->
end
automaton L
  over full
  states s l
  colors s=2 l=2
  s -f-> l l
  l -x->
end
tree t = f(a,b)
tree s = f(x,x)
graph comb
  n0 = f(n0, n1)
  n1 = a
  root n0
end
substitution one
  var x rank 0
    trees: a
end
substitution two
  var x rank 0
    trees: a; b
end
regex W = x
regex R = a | b
nfa N
  letters a b
  0 -a-> 1
  initial 0
  final 1
end
arena G
  v0 0 2
  v1 1 1
  v0 -> v0
  v0 -> v1
  v1 -> v1
end
problem
  left L @ s
  right A @ p
end
word-problem
  left W
  right R
  variables x
  relation subset
end
"""


@pytest.fixture
def document_path(tmp_path):
    path = tmp_path / "instance.tm"
    path.write_text(DOCUMENT, encoding="utf-8")
    return path


@pytest.fixture
def document_text() -> str:
    return DOCUMENT
