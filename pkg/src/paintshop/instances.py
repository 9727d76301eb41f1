"""Problem instances: double-occurrence words over [n].

An instance is a sequence of 2n car ids (1-based, each id appearing exactly
twice).  This module owns validation, uniform random generation, the text
file format, and the two combinatorial quantities every downstream formula
consumes: the boundary parity function ``eta`` and the double-letter count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from ._rng import Stream, mix

__all__ = [
    "BpspInstance",
    "InvalidInstanceError",
    "OddLengthError",
    "SymbolCountNotTwoError",
    "SymbolOutOfRangeError",
    "validate_instance",
    "generate_instance",
    "eta",
    "eta_values",
    "double_letter_count",
    "first_occurrence_flags",
    "parse_instances",
    "format_instance",
]


class InvalidInstanceError(ValueError):
    """The word is not a double-occurrence word over [n]."""


class OddLengthError(InvalidInstanceError):
    def __init__(self, length: int):
        super().__init__(f"word length {length} is odd; expected 2n symbols")
        self.length = length


class SymbolCountNotTwoError(InvalidInstanceError):
    def __init__(self, symbol: int, count: int):
        super().__init__(f"symbol {symbol} occurs {count} times; expected exactly 2")
        self.symbol = symbol
        self.count = count


class SymbolOutOfRangeError(InvalidInstanceError):
    def __init__(self, symbol):
        super().__init__(f"symbol {symbol!r} outside 1..n")
        self.symbol = symbol


@dataclass(frozen=True)
class BpspInstance:
    """A double-occurrence word of length 2n over car ids 1..n."""

    word: tuple[int, ...]
    n: int

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)


def validate_instance(word: Sequence[int]) -> BpspInstance:
    """Check the double-occurrence invariants and wrap the word.

    Raises OddLengthError, SymbolOutOfRangeError, or SymbolCountNotTwoError;
    the symbol order is preserved.
    """
    word = tuple(word)
    if len(word) % 2 != 0:
        raise OddLengthError(len(word))
    n = len(word) // 2
    counts: dict[int, int] = {}
    for sym in word:
        if not isinstance(sym, int) or isinstance(sym, bool) or not (1 <= sym <= n):
            raise SymbolOutOfRangeError(sym)
        counts[sym] = counts.get(sym, 0) + 1
    for sym in range(1, n + 1):
        if counts.get(sym, 0) != 2:
            raise SymbolCountNotTwoError(sym, counts.get(sym, 0))
    return BpspInstance(word, n)


def generate_instance(n: int, seed: int) -> BpspInstance:
    """Uniformly random instance: an unbiased shuffle of (1,1,2,2,...,n,n).

    Deterministic for a given (n, seed).
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    slots = [sym for sym in range(1, n + 1) for _ in range(2)]
    Stream(mix(seed, n)).shuffle(slots)
    return BpspInstance(tuple(slots), n)


def first_occurrence_flags(x: BpspInstance) -> list[bool]:
    """flags[i] is True when position i (0-based) is a symbol's first visit."""
    seen: set[int] = set()
    flags = []
    for sym in x.word:
        flags.append(sym not in seen)
        seen.add(sym)
    return flags


def eta(x: BpspInstance, i: int) -> int:
    """Boundary parity at 1-based position i in [1, 2n-1].

    Returns 1 when the boundary (x_i, x_{i+1}) mixes a first and a second
    occurrence, 0 when both are of the same kind.
    """
    if not 1 <= i <= 2 * x.n - 1:
        raise IndexError(f"boundary position {i} outside 1..{2 * x.n - 1}")
    flags = first_occurrence_flags(x)
    return int(flags[i - 1] != flags[i])


def eta_values(x: BpspInstance) -> list[int]:
    """All 2n-1 boundary parities in one streaming pass."""
    flags = first_occurrence_flags(x)
    return [int(flags[i] != flags[i + 1]) for i in range(len(flags) - 1)]


def double_letter_count(x: BpspInstance) -> int:
    """Number of adjacent equal-symbol boundaries."""
    w = x.word
    return sum(1 for i in range(len(w) - 1) if w[i] == w[i + 1])


def format_instance(x: BpspInstance) -> str:
    return " ".join(str(sym) for sym in x.word)


def parse_instances(lines: Iterable[str]) -> list[BpspInstance]:
    """Parse the one-instance-per-line text format.

    Symbols are space-separated decimals; blank lines and lines starting
    with '#' are ignored.
    """
    instances = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            word = [int(tok) for tok in stripped.split()]
        except ValueError as exc:
            raise InvalidInstanceError(f"line {lineno}: {exc}") from None
        instances.append(validate_instance(word))
    return instances
