# project_root/src/core/bitvec.py
"""
Bit-vector sorts, constants and the static attractor machinery.

Bit order convention: every bit sequence in this package is MSB-first,
i.e. `bits[0]` is the most significant bit. This is the opposite of the
usual LSB-first list encoding, so APIs that take an index always mean
"distance from the MSB".

Values are plain Python ints, so any width is exact.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Sequence, Tuple

from src.utils.errors import SortError


class Signedness(Enum):
    UNSIGNED = "unsigned"
    SIGNED = "signed"


class Direction(Enum):
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"

    @property
    def dual(self) -> "Direction":
        return Direction.MAXIMIZE if self is Direction.MINIMIZE else Direction.MINIMIZE


@dataclass(frozen=True)
class BvSort:
    width: int

    def __post_init__(self):
        if not isinstance(self.width, int) or self.width < 1:
            raise SortError(f"bit-vector width must be a positive integer, got {self.width!r}")

    def __str__(self) -> str:
        return f"(_ BitVec {self.width})"


def _check_bits(bits: Sequence[int], width: int) -> Tuple[int, ...]:
    bits = tuple(int(b) for b in bits)
    if len(bits) != width:
        raise SortError(f"expected {width} bits, got {len(bits)}")
    if any(b not in (0, 1) for b in bits):
        raise SortError(f"bits must be 0/1, got {bits}")
    return bits


@dataclass(frozen=True)
class BvConst:
    """A bit-vector constant; `bits[0]` is the MSB."""

    sort: BvSort
    bits: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", _check_bits(self.bits, self.sort.width))

    @property
    def width(self) -> int:
        return self.sort.width

    @classmethod
    def from_int(cls, sort: BvSort, value: int) -> "BvConst":
        """Two's-complement wrap of any Python int into `sort`."""
        value %= 1 << sort.width
        return cls(sort, tuple((value >> (sort.width - 1 - i)) & 1 for i in range(sort.width)))

    @classmethod
    def from_literal(cls, text: str) -> "BvConst":
        """Parse `#b0101` or `#x1C`."""
        bits = parse_bv_literal(text)
        return cls(BvSort(len(bits)), bits)

    def to_int(self) -> int:
        return bits_to_int(self.bits)

    def to_literal(self) -> str:
        return "#b" + "".join(str(b) for b in self.bits)

    def __str__(self) -> str:
        return self.to_literal()


def bits_to_int(bits: Iterable[int]) -> int:
    """Unsigned integer of an MSB-first bit sequence."""
    value = 0
    for b in bits:
        value = (value << 1) | b
    return value


def int_to_bits(value: int, width: int) -> Tuple[int, ...]:
    value %= 1 << width
    return tuple((value >> (width - 1 - i)) & 1 for i in range(width))


def parse_bv_literal(text: str) -> Tuple[int, ...]:
    """Normalize an SMT-LIB `#b`/`#x` literal to MSB-first bits."""
    if text.startswith("#b") and len(text) > 2 and set(text[2:]) <= {"0", "1"}:
        return tuple(int(c) for c in text[2:])
    if text.startswith("#x") and len(text) > 2:
        try:
            digits = [int(c, 16) for c in text[2:]]
        except ValueError:
            raise SortError(f"malformed hexadecimal literal {text!r}") from None
        bits: List[int] = []
        for d in digits:
            bits.extend((d >> s) & 1 for s in (3, 2, 1, 0))
        return tuple(bits)
    raise SortError(f"malformed bit-vector literal {text!r}")


def bv_value(c: BvConst, sign: Signedness) -> int:
    """Exact integer value of `c` as unsigned or two's complement."""
    unsigned = bits_to_int(c.bits)
    if sign is Signedness.SIGNED and c.bits[0] == 1:
        return unsigned - (1 << c.width)
    return unsigned


def bv_attractor(sort: BvSort, sign: Signedness, direction: Direction) -> BvConst:
    """Extremal value of the sort: the static target of OBV-BS."""
    n = sort.width
    if sign is Signedness.UNSIGNED:
        fill = 0 if direction is Direction.MINIMIZE else 1
        return BvConst(sort, (fill,) * n)
    if direction is Direction.MINIMIZE:
        return BvConst(sort, (1,) + (0,) * (n - 1))
    return BvConst(sort, (0,) + (1,) * (n - 1))


@dataclass(frozen=True)
class AttractorEquality:
    """The per-bit predicate cost[index] == value."""

    index: int
    value: int

    def holds(self, bits: Sequence[int]) -> bool:
        return bits[self.index] == self.value


@dataclass(frozen=True)
class AttractorEqualities:
    attractor: BvConst
    equalities: Tuple[AttractorEquality, ...]

    def __post_init__(self):
        if len(self.equalities) != self.attractor.width:
            raise SortError("one attractor equality per bit is required")
        if [e.index for e in self.equalities] != list(range(self.attractor.width)):
            raise SortError("attractor equalities must be ordered MSB to LSB")

    @classmethod
    def of(cls, attractor: BvConst) -> "AttractorEqualities":
        return cls(attractor, tuple(AttractorEquality(k, b) for k, b in enumerate(attractor.bits)))

    @property
    def targets(self) -> Tuple[int, ...]:
        return tuple(e.value for e in self.equalities)

    def satisfied(self, c: BvConst) -> Tuple[bool, ...]:
        if c.sort != self.attractor.sort:
            raise SortError(f"sort mismatch: {c.sort} vs {self.attractor.sort}")
        return tuple(e.holds(c.bits) for e in self.equalities)

    def score(self, c: BvConst) -> int:
        """Weighted agreement sum over 2^(n-1-k) * (c[k] nxor attr[k])."""
        return bits_to_int(int(s) for s in self.satisfied(c))


def lex_better(a: BvConst, b: BvConst, eqs: AttractorEqualities) -> bool:
    """True iff `a` satisfies the first attractor equality on which a and b differ."""
    if a.sort != b.sort:
        raise SortError(f"sort mismatch: {a.sort} vs {b.sort}")
    for sat_a, sat_b in zip(eqs.satisfied(a), eqs.satisfied(b)):
        if sat_a != sat_b:
            return sat_a
    return False


def xor_objective(cost: Sequence, attr: BvConst, direction: Direction) -> AttractorEqualities:
    """
    Per-bit targets that turn optimization of `cost` into unsigned
    lexicographic maximization of bit agreement.

    `attr` is the minimization attractor of the signedness in use; `cost`
    is any per-bit handle of the objective (SAT variables, a constant).
    Minimize keeps attr (maximize cost nxor attr), Maximize complements it
    (maximize cost xor attr). The formula itself is never touched.
    """
    if len(cost) != attr.width:
        raise SortError(f"width mismatch: objective has {len(cost)} bits, attractor {attr.width}")
    if direction is Direction.MINIMIZE:
        return AttractorEqualities.of(attr)
    return AttractorEqualities.of(BvConst(attr.sort, tuple(1 - b for b in attr.bits)))
