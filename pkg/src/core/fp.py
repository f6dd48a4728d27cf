# project_root/src/core/fp.py
"""
Floating-point sorts as raw bit patterns.

An FP term of sort (_ FloatingPoint eb sb) is the triple <sign, exp, sig>
laid out MSB-first in n = eb + sb bits: bit 0 is the sign, bits 1..eb the
biased exponent, the remaining sb - 1 bits the fraction (the hidden bit is
not stored).

All values are exact `Fraction`s; host floats are never used. Comparisons
follow SMT-LIB: anything involving NaN is false, -0 == +0.

This module also holds the dynamic attractor used by OFP-BS: the extremal
non-NaN value compatible with the bits decided so far.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from src.core.bitvec import Direction, bits_to_int, int_to_bits, parse_bv_literal
from src.core.prefix import PrefixAssignment
from src.utils.errors import InternalError, SortError


@dataclass(frozen=True)
class FpSort:
    ebits: int
    sbits: int

    def __post_init__(self):
        if not isinstance(self.ebits, int) or self.ebits < 2:
            raise SortError(f"ebits must be an integer >= 2, got {self.ebits!r}")
        if not isinstance(self.sbits, int) or self.sbits < 2:
            raise SortError(f"sbits must be an integer >= 2, got {self.sbits!r}")

    @property
    def n(self) -> int:
        return self.ebits + self.sbits

    @property
    def width(self) -> int:
        return self.n

    @property
    def fbits(self) -> int:
        """Stored fraction bits (sbits without the hidden bit)."""
        return self.sbits - 1

    @property
    def bias(self) -> int:
        return (1 << (self.ebits - 1)) - 1

    @property
    def exponent_indices(self) -> range:
        return range(1, 1 + self.ebits)

    @property
    def fraction_indices(self) -> range:
        return range(1 + self.ebits, self.n)

    def __str__(self) -> str:
        return f"(_ FloatingPoint {self.ebits} {self.sbits})"


class FpClass(Enum):
    NAN = "NaN"
    POS_INF = "+oo"
    NEG_INF = "-oo"
    POS_ZERO = "+zero"
    NEG_ZERO = "-zero"
    NORMAL = "normal"
    SUBNORMAL = "subnormal"


@dataclass(frozen=True)
class FpBits:
    """An FP bit pattern; `bits[0]` is the sign bit."""

    sort: FpSort
    bits: Tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if len(bits) != self.sort.n:
            raise SortError(f"{self.sort} needs {self.sort.n} bits, got {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise SortError(f"bits must be 0/1, got {bits}")
        object.__setattr__(self, "bits", bits)

    @property
    def width(self) -> int:
        return self.sort.n

    @property
    def sign(self) -> int:
        return self.bits[0]

    @property
    def exponent(self) -> Tuple[int, ...]:
        return self.bits[1:1 + self.sort.ebits]

    @property
    def fraction(self) -> Tuple[int, ...]:
        return self.bits[1 + self.sort.ebits:]

    @classmethod
    def from_fields(cls, sign: Sequence[int], exponent: Sequence[int], fraction: Sequence[int]) -> "FpBits":
        if len(sign) != 1:
            raise SortError("the sign field of an fp literal must be 1 bit wide")
        sort = FpSort(len(exponent), len(fraction) + 1)
        return cls(sort, tuple(sign) + tuple(exponent) + tuple(fraction))

    @classmethod
    def from_literals(cls, sign: str, exponent: str, fraction: str) -> "FpBits":
        """Build from the three bit-vector literals of `(fp #b0 #b110 #b1101)`."""
        return cls.from_fields(parse_bv_literal(sign), parse_bv_literal(exponent), parse_bv_literal(fraction))

    @classmethod
    def from_int(cls, sort: FpSort, pattern: int) -> "FpBits":
        return cls(sort, int_to_bits(pattern, sort.n))

    def to_int(self) -> int:
        return bits_to_int(self.bits)

    def to_literal(self) -> str:
        def field(bs):
            return "#b" + "".join(str(b) for b in bs)
        return f"(fp {field((self.sign,))} {field(self.exponent)} {field(self.fraction)})"

    def __str__(self) -> str:
        return self.to_literal()


@dataclass(frozen=True)
class FpValue:
    """Either a special class (NaN, +-oo) or an exact finite rational with its sign bit."""

    special: Optional[FpClass] = None
    rational: Optional[Fraction] = None
    negative: bool = False

    @classmethod
    def of_special(cls, kind: FpClass) -> "FpValue":
        return cls(special=kind, negative=kind is FpClass.NEG_INF)

    @classmethod
    def finite(cls, rational: Fraction, negative: bool) -> "FpValue":
        return cls(rational=Fraction(rational), negative=negative)

    @property
    def is_nan(self) -> bool:
        return self.special is FpClass.NAN

    @property
    def is_infinite(self) -> bool:
        return self.special in (FpClass.POS_INF, FpClass.NEG_INF)

    @property
    def is_zero(self) -> bool:
        return self.special is None and self.rational == 0

    def __str__(self) -> str:
        if self.special is not None:
            return self.special.value if self.special is not FpClass.NAN else "NaN"
        if self.rational == 0:
            return "-0" if self.negative else "0"
        return str(self.rational)


def fp_classify(x: FpBits) -> FpClass:
    exp_ones = all(x.exponent)
    exp_zero = not any(x.exponent)
    frac_zero = not any(x.fraction)
    if exp_ones:
        if not frac_zero:
            return FpClass.NAN
        return FpClass.NEG_INF if x.sign else FpClass.POS_INF
    if exp_zero:
        if frac_zero:
            return FpClass.NEG_ZERO if x.sign else FpClass.POS_ZERO
        return FpClass.SUBNORMAL
    return FpClass.NORMAL


def _scale(q: Fraction, e: int) -> Fraction:
    return q * (1 << e) if e >= 0 else q / (1 << -e)


def fp_value(x: FpBits) -> FpValue:
    kind = fp_classify(x)
    if kind in (FpClass.NAN, FpClass.POS_INF, FpClass.NEG_INF):
        return FpValue.of_special(kind)
    sort = x.sort
    frac = Fraction(bits_to_int(x.fraction), 1 << sort.fbits)
    if kind is FpClass.NORMAL:
        magnitude = _scale(1 + frac, bits_to_int(x.exponent) - sort.bias)
    else:
        magnitude = _scale(frac, 1 - sort.bias)
    return FpValue.finite(-magnitude if x.sign else magnitude, negative=bool(x.sign))


def is_nan(x: FpBits) -> bool:
    return fp_classify(x) is FpClass.NAN


def _check_same_sort(a: FpBits, b: FpBits) -> None:
    if a.sort != b.sort:
        raise SortError(f"sort mismatch: {a.sort} vs {b.sort}")


def _ordinal(x: FpBits) -> Tuple[int, Fraction]:
    value = fp_value(x)
    if value.special is FpClass.NEG_INF:
        return (-1, Fraction(0))
    if value.special is FpClass.POS_INF:
        return (1, Fraction(0))
    return (0, value.rational)


def fp_leq(a: FpBits, b: FpBits) -> bool:
    _check_same_sort(a, b)
    if is_nan(a) or is_nan(b):
        return False
    return _ordinal(a) <= _ordinal(b)


def fp_lt(a: FpBits, b: FpBits) -> bool:
    _check_same_sort(a, b)
    if is_nan(a) or is_nan(b):
        return False
    return _ordinal(a) < _ordinal(b)


def fp_geq(a: FpBits, b: FpBits) -> bool:
    return fp_leq(b, a)


def fp_gt(a: FpBits, b: FpBits) -> bool:
    return fp_lt(b, a)


def fp_eq(a: FpBits, b: FpBits) -> bool:
    _check_same_sort(a, b)
    if is_nan(a) or is_nan(b):
        return False
    return _ordinal(a) == _ordinal(b)


def fp_neg(x: FpBits) -> FpBits:
    return FpBits(x.sort, (1 - x.sign,) + x.bits[1:])


def fp_abs(x: FpBits) -> FpBits:
    return FpBits(x.sort, (0,) + x.bits[1:])


def _both_zero(a: FpBits, b: FpBits) -> bool:
    zeros = (FpClass.POS_ZERO, FpClass.NEG_ZERO)
    return fp_classify(a) in zeros and fp_classify(b) in zeros


def fp_min(a: FpBits, b: FpBits) -> FpBits:
    """SMT-LIB fp.min; on a -0/+0 pair we return -0."""
    _check_same_sort(a, b)
    if is_nan(a):
        return b
    if is_nan(b):
        return a
    if _both_zero(a, b):
        return FpBits(a.sort, (a.sign | b.sign,) + a.bits[1:])
    return a if fp_leq(a, b) else b


def fp_max(a: FpBits, b: FpBits) -> FpBits:
    """SMT-LIB fp.max; on a -0/+0 pair we return +0."""
    _check_same_sort(a, b)
    if is_nan(a):
        return b
    if is_nan(b):
        return a
    if _both_zero(a, b):
        return FpBits(a.sort, (a.sign & b.sign,) + a.bits[1:])
    return a if fp_leq(b, a) else b


def fp_infinity(sort: FpSort, negative: bool) -> FpBits:
    return FpBits(sort, (int(negative),) + (1,) * sort.ebits + (0,) * sort.fbits)


def fp_zero(sort: FpSort, negative: bool) -> FpBits:
    return FpBits(sort, (int(negative),) + (0,) * (sort.n - 1))


def canonical_nan(sort: FpSort) -> FpBits:
    """Quiet-NaN style pattern: sign 0, exponent all ones, fraction 10...0."""
    return FpBits(sort, (0,) + (1,) * sort.ebits + (1,) + (0,) * (sort.fbits - 1))


# Rank space: the non-NaN patterns of a sort in fp_leq order, -0 right before +0.
# With M the magnitude of the infinity pattern, a negative pattern of
# magnitude m has rank M - m and a positive one rank M + 1 + m.

def _max_magnitude(sort: FpSort) -> int:
    return ((1 << sort.ebits) - 1) << sort.fbits


def fp_rank_count(sort: FpSort) -> int:
    return 2 * _max_magnitude(sort) + 2


def fp_rank(x: FpBits) -> int:
    if is_nan(x):
        raise InternalError("NaN patterns have no rank")
    magnitude = bits_to_int(x.bits[1:])
    top = _max_magnitude(x.sort)
    return top - magnitude if x.sign else top + 1 + magnitude


def fp_from_rank(sort: FpSort, rank: int) -> FpBits:
    top = _max_magnitude(sort)
    if not 0 <= rank <= 2 * top + 1:
        raise InternalError(f"rank {rank} outside 0..{2 * top + 1}")
    if rank <= top:
        return FpBits(sort, (1,) + int_to_bits(top - rank, sort.n - 1))
    return FpBits(sort, (0,) + int_to_bits(rank - top - 1, sort.n - 1))


@dataclass(frozen=True)
class DynamicAttractor:
    """The extremal non-NaN pattern extending `basis`."""

    pattern: FpBits
    basis: PrefixAssignment

    def __post_init__(self):
        if not self.basis.admits(self.pattern.bits):
            raise InternalError(f"attractor {self.pattern} does not extend {self.basis.decided}")
        if is_nan(self.pattern):
            raise InternalError("a dynamic attractor cannot be NaN")

    @property
    def bits(self) -> Tuple[int, ...]:
        return self.pattern.bits


def initial_dynamic_attractor(sort: FpSort, direction: Direction) -> DynamicAttractor:
    """-oo when minimizing, +oo when maximizing."""
    return DynamicAttractor(fp_infinity(sort, direction is Direction.MINIMIZE), PrefixAssignment(sort))


def update_dynamic_attractor(tau: PrefixAssignment, direction: Direction) -> DynamicAttractor:
    """
    Recompute the attractor after the prefix `tau` has been fixed.

    Minimizing: a positive prefix moves towards the smallest magnitude
    (fill with zeros); a negative prefix moves towards the largest magnitude
    (fill with ones), unless every decided exponent bit is 1, in which case
    only -oo is left. Maximizing swaps the roles of the two signs.
    """
    sort = tau.sort
    if tau.is_empty():
        return initial_dynamic_attractor(sort, direction)

    decided = tau.decided
    k = len(decided)
    shrink_sign = 0 if direction is Direction.MINIMIZE else 1
    if decided[0] == shrink_sign:
        rest = (0,) * (sort.n - k)
    elif 0 in decided[1:1 + sort.ebits]:
        rest = (1,) * (sort.n - k)
    else:
        rest = tuple(1 if i <= sort.ebits else 0 for i in range(k, sort.n))

    pattern = FpBits(sort, decided + rest)
    if is_nan(pattern):
        raise InternalError(f"prefix {decided} admits only NaN completions")
    return DynamicAttractor(pattern, tau)
