"""Classical colouring schemes.

Four deterministic heuristics, each mapping an instance to a valid full
colouring:

* red_first: first occurrence red, second blue.
* greedy: copy the previous position's colour on a first occurrence, take
  the forced opposite on a second.
* recursive_greedy: peel the last car and its partner off the sequence,
  colour the reduced instance, then reinsert the pair with locally optimal
  colours.
* recursive_star_greedy: same peel-and-reinsert idea from the front, with a
  deferred 'star' colour for cars whose choice is locally indifferent; stars
  are resolved in a final pass.

All outputs are normalised to colour the first position red (a global flip
never changes the swap count).  The recursions are realised iteratively on a
doubly-linked list, so large instances do not hit call-depth limits.
"""

from __future__ import annotations

from .encoding import BLUE, RED
from .instances import BpspInstance, eta_values, first_occurrence_flags

__all__ = [
    "red_first",
    "greedy",
    "recursive_greedy",
    "recursive_star_greedy",
    "red_first_cost_via_eta",
]

_STAR = "*"
_FLIP = {RED: BLUE, BLUE: RED}


def red_first(x: BpspInstance) -> str:
    """Colour every first occurrence red and every second occurrence blue."""
    return "".join(RED if first else BLUE for first in first_occurrence_flags(x))


def greedy(x: BpspInstance) -> str:
    """Switch colours only when a car's second occurrence forces it."""
    first_color: dict[int, str] = {}
    out: list[str] = []
    for sym in x.word:
        if sym not in first_color:
            color = out[-1] if out else RED
            first_color[sym] = color
        else:
            color = _FLIP[first_color[sym]]
        out.append(color)
    return "".join(out)


def red_first_cost_via_eta(x: BpspInstance) -> int:
    """Swap count of the red-first colouring, as the boundary-parity sum."""
    return sum(eta_values(x))


class _Links:
    """Doubly-linked list over occurrence slots 1..2n with sentinels 0, 2n+1."""

    def __init__(self, x: BpspInstance):
        size = 2 * x.n
        self.head = 0
        self.tail = size + 1
        self.left = list(range(-1, size + 1))
        self.right = list(range(1, size + 3))
        self.paint: list[str | None] = [None] * (size + 2)
        # car id per slot; partner[slot] is the car's other occurrence
        self.car = [0] + list(x.word) + [0]
        seen: dict[int, int] = {}
        self.partner = [0] * (size + 2)
        for slot, sym in enumerate(x.word, start=1):
            if sym in seen:
                self.partner[slot] = seen[sym]
                self.partner[seen[sym]] = slot
            else:
                seen[sym] = slot

    def detach(self, slot: int) -> None:
        self.right[self.left[slot]] = self.right[slot]
        self.left[self.right[slot]] = self.left[slot]

    def attach(self, slot: int) -> None:
        # valid only in exact reverse order of the detaches (the slot's own
        # left/right pointers still name its original neighbours)
        self.right[self.left[slot]] = slot
        self.left[self.right[slot]] = slot

    def colors(self) -> str:
        return "".join(self.paint[1:-1])  # type: ignore[arg-type]


def _normalize_red_first(f: str) -> str:
    if f and f[0] == BLUE:
        return "".join(_FLIP[c] for c in f)
    return f


def recursive_greedy(x: BpspInstance) -> str:
    """Peel pairs from the right, then reinsert with local colour rules."""
    links = _Links(x)
    removed: list[tuple[int, int]] = []
    size = 2 * x.n
    while size > 2:
        last = links.left[links.tail]
        mate = links.partner[last]
        links.detach(mate)
        links.detach(last)
        removed.append((last, mate))
        size -= 2

    first = links.right[links.head]
    links.paint[first] = RED
    links.paint[links.right[first]] = BLUE

    for last, mate in reversed(removed):
        links.attach(last)
        links.attach(mate)
        left_of_mate = links.left[mate]
        right_of_mate = links.right[mate]
        if left_of_mate == links.head:
            color = links.paint[right_of_mate]
            links.paint[mate] = color
            links.paint[last] = _FLIP[color]
        elif right_of_mate == last:
            color = links.paint[left_of_mate]
            links.paint[mate] = color
            links.paint[last] = _FLIP[color]
        else:
            left_color = links.paint[left_of_mate]
            right_color = links.paint[right_of_mate]
            if left_color == right_color:
                links.paint[mate] = left_color
                links.paint[last] = _FLIP[left_color]
            else:
                tail_color = links.paint[links.left[last]]
                links.paint[last] = tail_color
                links.paint[mate] = _FLIP[tail_color]

    return _normalize_red_first(links.colors())


def _star_pattern(links: _Links, slot_a: int, slot_b: int) -> bool:
    """Indifference test for a candidate car with occurrences at both slots.

    Requires all four neighbours to be concrete occupied slots; fires when
    both occurrences sit in uniform surroundings of one shared colour, or
    both sit on a colour boundary.
    """
    sides = []
    for slot in (slot_a, slot_b):
        lft, rgt = links.left[slot], links.right[slot]
        if lft == links.head or rgt == links.tail:
            return False
        lc, rc = links.paint[lft], links.paint[rgt]
        if lc not in (RED, BLUE) or rc not in (RED, BLUE):
            return False
        sides.append((lc, rc))
    (l1, r1), (l2, r2) = sides
    if l1 == r1 and l2 == r2 and l1 == l2:
        return True
    return l1 != r1 and l2 != r2


def recursive_star_greedy(x: BpspInstance) -> str:
    """Peel pairs from the left; defer indifferent choices with a star."""
    links = _Links(x)
    removed: list[tuple[int, int]] = []
    size = 2 * x.n
    while size > 2:
        front = links.right[links.head]
        mate = links.partner[front]
        links.detach(front)
        links.detach(mate)
        removed.append((front, mate))
        size -= 2

    first = links.right[links.head]
    links.paint[first] = RED
    links.paint[links.right[first]] = BLUE

    for front, mate in reversed(removed):
        links.attach(mate)
        links.attach(front)

        lft, rgt = links.left[mate], links.right[mate]
        after_front = links.paint[links.right[front]]
        if rgt != links.tail and links.right[front] == mate:
            # pair adjacent at the front: match the partner's right neighbour
            color = links.paint[rgt]
            links.paint[mate] = color
            links.paint[front] = _FLIP[color]
        elif rgt == links.tail:
            # partner at the very end
            links.paint[front] = RED
            links.paint[mate] = BLUE
        else:
            left_color = links.paint[lft]
            right_color = links.paint[rgt]
            if left_color != _STAR and right_color != _STAR:
                if left_color == right_color:
                    links.paint[mate] = left_color
                    links.paint[front] = _FLIP[left_color]
                else:
                    links.paint[front] = after_front
                    links.paint[mate] = _FLIP[after_front]
            elif (left_color == _STAR) != (right_color == _STAR):
                other = right_color if left_color == _STAR else left_color
                links.paint[front] = after_front
                links.paint[mate] = _FLIP[after_front]
                if other == after_front:
                    # the concrete side now mismatches: concretise the starred
                    # car so its near occurrence absorbs the partner's colour
                    star_slot = lft if left_color == _STAR else rgt
                    links.paint[star_slot] = _FLIP[after_front]
                    links.paint[links.partner[star_slot]] = after_front
            else:
                links.paint[front] = after_front
                links.paint[mate] = _FLIP[after_front]

        # consider deferring the second car in the list (the previous front)
        candidate = links.right[links.right[links.head]]
        occ_a = min(candidate, links.partner[candidate])
        occ_b = max(candidate, links.partner[candidate])
        if links.right[occ_a] != occ_b and _star_pattern(links, occ_a, occ_b):
            links.paint[occ_a] = _STAR
            links.paint[occ_b] = _STAR

    # resolve remaining stars left to right: first occurrence met copies its
    # left neighbour, the partner takes the opposite
    slot = links.right[links.head]
    while slot != links.tail:
        if links.paint[slot] == _STAR:
            left_slot = links.left[slot]
            color = RED if left_slot == links.head else links.paint[left_slot]
            links.paint[slot] = color
            links.paint[links.partner[slot]] = _FLIP[color]
        slot = links.right[slot]

    return _normalize_red_first(links.colors())
