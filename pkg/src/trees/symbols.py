"""Ranked alphabets, signatures and the reserved symbols."""

from __future__ import annotations

from enum import Enum
from typing import Any, Hashable, Iterable, Iterator, Mapping

from src.core.errors import AlphabetMismatchError, RankMismatchError

Symbol = Hashable


class Marker(Enum):
    """Reserved constants that never occur in user alphabets."""

    BOTTOM = "_|_"
    FRESH = "@fresh"

    def __repr__(self) -> str:
        return self.value

    def __str__(self) -> str:
        return self.value


BOTTOM = Marker.BOTTOM
FRESH = Marker.FRESH


def is_hole(symbol: Symbol) -> bool:
    """Holes are the positive integers."""
    return isinstance(symbol, int) and not isinstance(symbol, bool) and symbol >= 1


def symbol_key(symbol: Symbol) -> tuple:
    """Total order on mixed symbols: holes numerically, then names, then the rest by repr."""
    if is_hole(symbol):
        return (0, symbol, "")
    if isinstance(symbol, str):
        return (1, 0, symbol)
    return (2, 0, repr(symbol))


def sort_symbols(symbols: Iterable[Symbol]) -> list[Symbol]:
    return sorted(symbols, key=symbol_key)


def value_key(value: Any) -> str:
    """Deterministic sort key for states and other hashable values."""
    return repr(value)


class Signature(Mapping[Symbol, int]):
    """An immutable map from symbols to ranks.

    Iteration follows ``symbol_key`` so that everything derived from a signature
    comes out in the same order on every run.

    """

    __slots__ = ("_ranks", "_order", "_hash")

    def __init__(self, ranks: Mapping[Symbol, int] | Iterable[tuple[Symbol, int]] = ()):
        pairs = ranks.items() if isinstance(ranks, Mapping) else ranks
        table: dict[Symbol, int] = {}
        for symbol, rank in pairs:
            if not isinstance(rank, int) or rank < 0:
                msg = f"symbol {symbol!r} has invalid rank {rank!r}"
                raise RankMismatchError(msg)
            if symbol in table and table[symbol] != rank:
                msg = f"symbol {symbol!r} declared with ranks {table[symbol]} and {rank}"
                raise RankMismatchError(msg)
            table[symbol] = rank
        self._ranks = table
        self._order = tuple(sort_symbols(table))
        self._hash: int | None = None

    def __getitem__(self, symbol: Symbol) -> int:
        return self._ranks[symbol]

    def rank(self, symbol: Symbol) -> int:
        """The rank of a symbol, with an alphabet error for unknown symbols."""
        try:
            return self._ranks[symbol]
        except KeyError as e:
            msg = f"symbol {symbol!r} is not in the alphabet"
            raise AlphabetMismatchError(msg) from e

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._ranks

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self._order)

    def __len__(self) -> int:
        return len(self._ranks)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Signature):
            return self._ranks == other._ranks
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._ranks.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{symbol}/{self._ranks[symbol]}" for symbol in self._order)
        return f"Signature({body})"

    def __or__(self, other: Signature) -> Signature:
        return Signature([*self.items(), *other.items()])

    @property
    def max_rank(self) -> int:
        return max(self._ranks.values(), default=0)

    def restrict(self, symbols: Iterable[Symbol]) -> Signature:
        keep = set(symbols)
        return Signature((s, r) for s, r in self.items() if s in keep)

    def without_holes(self) -> Signature:
        return Signature((s, r) for s, r in self.items() if not is_hole(s))

    def holes(self) -> list[int]:
        return [s for s in self._order if is_hole(s)]


def hole_signature(count: int) -> Signature:
    return Signature((i, 0) for i in range(1, count + 1))


def with_holes(signature: Signature, count: int) -> Signature:
    """The signature extended by the holes 1..count."""
    return signature | hole_signature(count)


class RankedAlphabet:
    """Function symbols, variables and the derived holes.

    Attributes:
        sigma: The function symbols.
        variables: The variables; a name may be both a symbol and a variable.
        hole_count: The largest rank over symbols and variables; holes are 1..hole_count.

    """

    def __init__(self, sigma: Signature, variables: Signature = Signature()):
        for symbol in [*sigma, *variables]:
            if is_hole(symbol) or symbol in (BOTTOM, FRESH):
                msg = f"symbol {symbol!r} is reserved"
                raise AlphabetMismatchError(msg)
        self.sigma = sigma
        self.variables = variables
        self.full = sigma | variables
        if self.full.max_rank < 1:
            msg = "the alphabet needs a symbol of rank at least 1"
            raise RankMismatchError(msg)
        self.hole_count = self.full.max_rank

    @property
    def holes(self) -> list[int]:
        return list(range(1, self.hole_count + 1))

    def sigma_with_holes(self) -> Signature:
        return with_holes(self.sigma, self.hole_count)

    def is_variable(self, symbol: Symbol) -> bool:
        return symbol in self.variables

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RankedAlphabet):
            return self.sigma == other.sigma and self.variables == other.variables
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.sigma, self.variables))

    def __repr__(self) -> str:
        return f"RankedAlphabet(sigma={self.sigma!r}, variables={self.variables!r})"
