"""Colouring representations and the cost functions that connect them.

Three equivalent views of a colouring are used throughout:

* a full colouring: one colour per position, a length-2n string over 'r'/'b';
* an initial-colour string: one colour per car, length n ('r'/'b'), giving
  the colour of each car's first occurrence;
* a spin assignment: one value per car in {+1, -1}, with r = +1 and b = -1.

The initial-colour form expands bijectively onto the valid full colourings,
and the swap count can be evaluated in any of the three forms.
"""

from __future__ import annotations

from typing import Sequence

from .instances import BpspInstance, eta_values, first_occurrence_flags

__all__ = [
    "RED",
    "BLUE",
    "InvalidColoringError",
    "is_valid_coloring",
    "expand",
    "compress",
    "swap_count",
    "icc_swap_count",
    "icc_swap_count_spin",
    "colors_to_spins",
    "spins_to_colors",
]

RED = "r"
BLUE = "b"

_FLIP = {RED: BLUE, BLUE: RED}


class InvalidColoringError(ValueError):
    """The colouring does not give each car's two occurrences opposite colours."""


def _check_colors(s: str, expected_len: int, what: str) -> None:
    if len(s) != expected_len:
        raise ValueError(f"{what} has length {len(s)}, expected {expected_len}")
    for ch in s:
        if ch not in (RED, BLUE):
            raise ValueError(f"{what} contains {ch!r}; colours are 'r'/'b'")


def is_valid_coloring(x: BpspInstance, f: str) -> bool:
    """True iff the two occurrences of every car have different colours."""
    _check_colors(f, 2 * x.n, "colouring")
    first_color: dict[int, str] = {}
    for sym, color in zip(x.word, f):
        if sym in first_color:
            if first_color[sym] == color:
                return False
        else:
            first_color[sym] = color
    return True


def expand(x: BpspInstance, z: str) -> str:
    """Expand an initial-colour string to the full colouring it encodes.

    Position i takes car x_i's initial colour, negated when the car has
    already appeared.  The output is always a valid colouring.
    """
    _check_colors(z, x.n, "initial-colour string")
    flags = first_occurrence_flags(x)
    return "".join(
        z[sym - 1] if first else _FLIP[z[sym - 1]]
        for sym, first in zip(x.word, flags)
    )


def compress(x: BpspInstance, f: str) -> str:
    """Invert expand: read off each car's colour at its first occurrence.

    Only defined on valid colourings; raises InvalidColoringError otherwise.
    """
    if not is_valid_coloring(x, f):
        raise InvalidColoringError("colouring repeats a colour on some car")
    initial: dict[int, str] = {}
    for sym, color in zip(x.word, f):
        if sym not in initial:
            initial[sym] = color
    return "".join(initial[sym] for sym in range(1, x.n + 1))


def swap_count(f: str) -> int:
    """Number of adjacent positions painted differently."""
    return sum(1 for a, b in zip(f, f[1:]) if a != b)


def icc_swap_count(x: BpspInstance, z: str) -> int:
    """Swap count of the colouring encoded by an initial-colour string.

    Evaluated directly on the boundary parities, without materialising the
    expansion; equals swap_count(expand(x, z)).
    """
    _check_colors(z, x.n, "initial-colour string")
    etas = eta_values(x)
    w = x.word
    total = 0
    for i, e in enumerate(etas):
        a = z[w[i] - 1]
        if e:
            a = _FLIP[a]
        if a != z[w[i + 1] - 1]:
            total += 1
    return total


def colors_to_spins(z: str) -> tuple[int, ...]:
    """Map colours to spins with r = +1 and b = -1."""
    return tuple(1 if ch == RED else -1 for ch in z)


def spins_to_colors(spins: Sequence[int]) -> str:
    out = []
    for s in spins:
        if s == 1:
            out.append(RED)
        elif s == -1:
            out.append(BLUE)
        else:
            raise ValueError(f"spin {s!r} is not +1 or -1")
    return "".join(out)


def icc_swap_count_spin(x: BpspInstance, spins: Sequence[int]) -> int:
    """Swap count evaluated on a spin assignment, in exact integer arithmetic.

    Computes (2n - 1 - sum_i (-1)^eta(x,i) * s_{x_i} * s_{x_{i+1}}) / 2; the
    sum always has the parity that makes this an integer on valid inputs.
    """
    spins = tuple(spins)
    if len(spins) != x.n:
        raise ValueError(f"spin assignment has length {len(spins)}, expected {x.n}")
    for s in spins:
        if s not in (1, -1):
            raise ValueError(f"spin {s!r} is not +1 or -1")
    etas = eta_values(x)
    w = x.word
    signed = 0
    for i, e in enumerate(etas):
        term = spins[w[i] - 1] * spins[w[i + 1] - 1]
        signed += -term if e else term
    doubled = 2 * x.n - 1 - signed
    if doubled % 2 != 0:
        raise ArithmeticError("spin cost formula produced a non-integer")
    return doubled // 2
