"""Determinization of Büchi word automata into parity word automata with compact Safra trees.

A Safra tree is stored as the nested tuple ``(name, label, children)``, where the
label is a sorted tuple of automaton states and the children are ordered from
oldest to youngest. Names are kept compact: after every step they are 1..n in the
order of their age, so trees of the same shape compare equal.

The emitted colors follow the min-parity convention used everywhere else: the
deterministic automaton accepts a word iff the least color seen infinitely often
is even, which happens iff the Büchi automaton has an accepting run.

"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Generic, Hashable, Iterable, Sequence, TypeVar

Letter = TypeVar("Letter")
S = TypeVar("S", bound=Hashable)

SafraTree = tuple


@dataclass
class _Node:
    name: int
    label: set
    children: list[_Node] = field(default_factory=list)


def _thaw(tree: SafraTree) -> _Node:
    name, label, children = tree
    return _Node(name, set(label), [_thaw(child) for child in children])


def _freeze(node: _Node, key: Callable) -> SafraTree:
    return (node.name, tuple(sorted(node.label, key=key)), tuple(_freeze(c, key) for c in node.children))


def _preorder(node: _Node) -> list[_Node]:
    found = [node]
    for child in node.children:
        found.extend(_preorder(child))
    return found


class SafraDeterminizer(Generic[S, Letter]):
    """Deterministic parity automaton for a nondeterministic Büchi automaton.

    Args:
        post: The successor states of a set of states on a letter.
        accepting: The Büchi condition on single states.
        size: An upper bound on the number of Büchi states; it fixes the neutral color.
        key: The sort key for states inside labels.

    """

    def __init__(
        self,
        post: Callable[[Iterable[S], Letter], set],
        accepting: Callable[[S], bool],
        size: int,
        key: Callable = repr,
    ):
        self.post = post
        self.accepting = accepting
        self.size = max(size, 1)
        self.key = key

    @property
    def neutral_color(self) -> int:
        """The odd color of a step where nothing turns green and nothing is removed."""
        return 4 * self.size + 1

    @property
    def dead_color(self) -> int:
        """The color of every step taken from the empty tree."""
        return 1

    def initial(self, states: Iterable[S]) -> SafraTree | None:
        label = set(states)
        if not label:
            return None
        return _freeze(_Node(1, label), self.key)

    def step(self, tree: SafraTree | None, letter: Letter) -> tuple[SafraTree | None, int]:
        """One transition: the successor tree and the color of the step."""
        if tree is None:
            return None, self.dead_color
        root = _thaw(tree)
        next_name = max(node.name for node in _preorder(root)) + 1
        for node in _preorder(root):
            final = {s for s in node.label if self.accepting(s)}
            if final:
                node.children.append(_Node(next_name, final))
                next_name += 1
        for node in _preorder(root):
            node.label = set(self.post(node.label, letter))
        self._merge_horizontally(root)
        removed: list[int] = []
        if not root.label:
            removed.extend(node.name for node in _preorder(root))
            return None, 2 * min(removed) - 1
        self._drop_empty(root, removed)
        green: list[int] = []
        self._merge_vertically(root, green, removed)
        color = self._color(green, removed)
        names = sorted(node.name for node in _preorder(root))
        compact = {name: i for i, name in enumerate(names, 1)}
        for node in _preorder(root):
            node.name = compact[node.name]
        return _freeze(root, self.key), color

    def _merge_horizontally(self, node: _Node) -> None:
        taken: set = set()
        for child in node.children:
            child.label &= node.label
            child.label -= taken
            taken |= child.label
            self._merge_horizontally(child)

    def _drop_empty(self, node: _Node, removed: list[int]) -> None:
        kept = []
        for child in node.children:
            if child.label:
                self._drop_empty(child, removed)
                kept.append(child)
            else:
                removed.extend(n.name for n in _preorder(child))
        node.children = kept

    def _merge_vertically(self, node: _Node, green: list[int], removed: list[int]) -> None:
        if node.children and set().union(*(c.label for c in node.children)) == node.label:
            for child in node.children:
                removed.extend(n.name for n in _preorder(child))
            node.children = []
            green.append(node.name)
            return
        for child in node.children:
            self._merge_vertically(child, green, removed)

    def _color(self, green: Sequence[int], removed: Sequence[int]) -> int:
        best_green = min(green, default=None)
        best_removed = min(removed, default=None)
        if best_green is not None and (best_removed is None or best_green < best_removed):
            return 2 * best_green
        if best_removed is not None:
            return 2 * best_removed - 1
        return self.neutral_color

    def accepts_lasso(
        self, states: Iterable[S], prefix: Sequence[Letter], loop: Sequence[Letter]
    ) -> bool:
        """Runs the deterministic automaton on prefix·loop^ω."""
        if not loop:
            msg = "the loop of an ultimately periodic word must be nonempty"
            raise ValueError(msg)
        tree = self.initial(states)
        for letter in prefix:
            tree, _ = self.step(tree, letter)
        seen: dict[tuple, int] = {}
        colors: list[int] = []
        position = 0
        while (tree, position) not in seen:
            seen[(tree, position)] = len(colors)
            tree, color = self.step(tree, loop[position])
            colors.append(color)
            position = (position + 1) % len(loop)
        cycle = colors[seen[(tree, position)]:]
        return min(cycle) % 2 == 0
