"""The six-number elemental sequence.

Every integer ``N >= 5`` is written ``N = 5 + 6n + (i - 1)`` with block index
``n >= 0`` and 1-based position ``i`` in ``1..6``.  Only positions 1 and 3
(``6n + 5`` and ``6n + 7``) can hold numbers coprime to 6.
"""
from dataclasses import dataclass
from enum import Enum

from .limits import check_width

COPRIME_POSITIONS = (1, 3)


class Progression(Enum):
    PROG1 = "Prog1"  # 6n + 5
    PROG2 = "Prog2"  # 6n + 7
    NON_COPRIME = "NonCoprime"


@dataclass(frozen=True, order=True)
class SequencePos:
    n: int
    i: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"sequence index must be non-negative, got {self.n}")
        if not 1 <= self.i <= 6:
            raise ValueError(f"position must be in 1..6, got {self.i}")

    @property
    def value(self):
        return from_sequence_pos(self)


def to_sequence_pos(N):
    if N < 5:
        raise ValueError(f"sequence notation starts at 5, got {N}")
    check_width(N)
    n, r = divmod(N - 5, 6)
    return SequencePos(n, r + 1)


def from_sequence_pos(pos):
    return check_width(5 + 6 * pos.n + (pos.i - 1))


def product_pos(a, b):
    """Position of ``value(a) * value(b)`` via the closed-form product rules.

    Both factors must sit at position 1 or 3.  The result is always at one of
    those positions: 1*1 and 3*3 land on 3, mixed products land on 1.
    """
    if a.i not in COPRIME_POSITIONS or b.i not in COPRIME_POSITIONS:
        raise ValueError(f"product rules need positions 1 or 3, got {a.i} and {b.i}")
    check_width(from_sequence_pos(a) * from_sequence_pos(b), "product")
    ni, nj = a.n, b.n
    if a.i == 1 and b.i == 1:
        return SequencePos(6 * ni * nj + 5 * (ni + nj) + 3, 3)
    if a.i == 3 and b.i == 3:
        return SequencePos(6 * ni * nj + 7 * (ni + nj) + 7, 3)
    if a.i == 3:  # rule is written with the position-1 factor first
        ni, nj = nj, ni
    return SequencePos(6 * ni * nj + 7 * ni + 5 * nj + 5, 1)


def progression_class(N):
    if N < 5:
        raise ValueError(f"classification starts at 5, got {N}")
    r = N % 6
    if r == 5:
        return Progression.PROG1
    if r == 1:
        return Progression.PROG2
    return Progression.NON_COPRIME
