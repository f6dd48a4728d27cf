import itertools
from fractions import Fraction

import pytest

from src.core.bitvec import Direction
from src.core.fp import (FpBits, FpClass, FpSort, canonical_nan, fp_abs, fp_classify, fp_eq, fp_from_rank,
                         fp_geq, fp_gt, fp_leq, fp_lt, fp_max, fp_min, fp_neg, fp_rank, fp_rank_count,
                         fp_value, fp_zero, initial_dynamic_attractor, is_nan, update_dynamic_attractor)
from src.core.prefix import PrefixAssignment
from src.utils.errors import InternalError, SortError

S35 = FpSort(3, 5)
S23 = FpSort(2, 3)


def fp(sign, exponent, fraction):
    return FpBits.from_literals(sign, exponent, fraction)


def all_patterns(sort):
    return [FpBits.from_int(sort, p) for p in range(1 << sort.n)]


def completions(sort, decided):
    free = sort.n - len(decided)
    return [FpBits(sort, tuple(decided) + rest) for rest in itertools.product((0, 1), repeat=free)]


# Sample values of (_ FP 3 5), from the largest NaN down to the negative NaNs.
SAMPLE_ROWS = [
    (("#b0", "#b111", "#b1111"), FpClass.NAN, "NaN"),
    (("#b0", "#b111", "#b0000"), FpClass.POS_INF, "+oo"),
    (("#b0", "#b110", "#b1111"), FpClass.NORMAL, "31/2"),
    (("#b0", "#b000", "#b0001"), FpClass.SUBNORMAL, "1/64"),
    (("#b0", "#b000", "#b0000"), FpClass.POS_ZERO, "0"),
    (("#b1", "#b000", "#b0000"), FpClass.NEG_ZERO, "-0"),
    (("#b1", "#b000", "#b0001"), FpClass.SUBNORMAL, "-1/64"),
    (("#b1", "#b110", "#b1111"), FpClass.NORMAL, "-31/2"),
    (("#b1", "#b111", "#b0000"), FpClass.NEG_INF, "-oo"),
    (("#b1", "#b111", "#b1111"), FpClass.NAN, "NaN"),
]


@pytest.mark.parametrize("fields, kind, text", SAMPLE_ROWS)
def test_sample_values(fields, kind, text):
    x = fp(*fields)
    assert fp_classify(x) is kind
    assert str(fp_value(x)) == text


def test_exact_values_of_wider_sort():
    assert fp_value(fp("#b0", "#b1100", "#b0101000")).rational == 42
    assert fp_value(fp("#b0", "#b0000", "#b0101000")).rational == Fraction(5, 1024)


def test_lower_bound_value():
    assert fp_value(fp("#b0", "#b110", "#b1101")).rational == Fraction(29, 2)


def test_sort_checks():
    with pytest.raises(SortError):
        FpSort(1, 5)
    with pytest.raises(SortError):
        FpBits(S35, (0,) * 7)
    with pytest.raises(SortError):
        fp_leq(fp_zero(S35, False), fp_zero(S23, False))


def test_classification_is_a_partition_of_all_patterns():
    counts = {kind: 0 for kind in FpClass}
    for x in all_patterns(S35):
        counts[fp_classify(x)] += 1
    assert counts[FpClass.NAN] == 2 * 15
    assert counts[FpClass.POS_INF] == counts[FpClass.NEG_INF] == 1
    assert counts[FpClass.POS_ZERO] == counts[FpClass.NEG_ZERO] == 1
    assert counts[FpClass.SUBNORMAL] == 2 * 15
    assert counts[FpClass.NORMAL] == 2 * 6 * 16
    assert sum(counts.values()) == 256


def test_rank_order_is_monotone_in_value():
    finite = [x for x in all_patterns(S35) if not is_nan(x)]
    assert len(finite) == fp_rank_count(S35)
    ordered = sorted(finite, key=fp_rank)
    for a, b in zip(ordered, ordered[1:]):
        assert fp_leq(a, b)
    middle = len(ordered) // 2
    assert [fp_classify(x) for x in ordered[middle - 1:middle + 1]] == [FpClass.NEG_ZERO, FpClass.POS_ZERO]
    assert fp_classify(ordered[0]) is FpClass.NEG_INF
    assert fp_classify(ordered[-1]) is FpClass.POS_INF
    for rank in range(fp_rank_count(S35)):
        assert fp_rank(fp_from_rank(S35, rank)) == rank


def test_comparisons_with_nan_and_signed_zero():
    nan = canonical_nan(S35)
    neg_zero, pos_zero = fp_zero(S35, True), fp_zero(S35, False)
    neg_inf = fp("#b1", "#b111", "#b0000")
    assert fp_leq(neg_inf, fp("#b0", "#b110", "#b1111"))
    for predicate in (fp_leq, fp_lt, fp_geq, fp_gt, fp_eq):
        assert not predicate(nan, nan)
        assert not predicate(nan, pos_zero)
    assert fp_leq(neg_zero, pos_zero) and fp_geq(neg_zero, pos_zero)
    assert not fp_lt(neg_zero, pos_zero)
    assert fp_eq(neg_zero, pos_zero)


def test_min_max_neg_abs():
    nan = canonical_nan(S35)
    one = fp("#b0", "#b011", "#b0000")
    minus_two = fp("#b1", "#b100", "#b0000")
    assert fp_min(one, minus_two) == minus_two
    assert fp_max(one, minus_two) == one
    assert fp_min(nan, one) == one
    assert fp_max(one, nan) == one
    assert fp_min(fp_zero(S35, False), fp_zero(S35, True)).sign == 1
    assert fp_max(fp_zero(S35, True), fp_zero(S35, False)).sign == 0
    assert fp_neg(one).sign == 1
    assert fp_abs(minus_two).sign == 0


def test_canonical_nan():
    assert canonical_nan(S35) == fp("#b0", "#b111", "#b1000")
    assert canonical_nan(FpSort(4, 8)) == fp("#b0", "#b1111", "#b1000000")
    assert fp_value(canonical_nan(S35)).is_nan


@pytest.mark.parametrize("sort, direction, expected", [
    (S35, Direction.MINIMIZE, ("#b1", "#b111", "#b0000")),
    (S35, Direction.MAXIMIZE, ("#b0", "#b111", "#b0000")),
    (FpSort(4, 8), Direction.MINIMIZE, ("#b1", "#b1111", "#b0000000")),
])
def test_initial_dynamic_attractor(sort, direction, expected):
    attractor = initial_dynamic_attractor(sort, direction)
    assert attractor.pattern == fp(*expected)
    assert attractor.basis.is_empty()


@pytest.mark.parametrize("decided, expected, value", [
    ((0,), ("#b0", "#b000", "#b0000"), 0),
    ((0, 1), ("#b0", "#b100", "#b0000"), 2),
    ((0, 1, 1), ("#b0", "#b110", "#b0000"), 8),
    ((0, 1, 1, 0, 1), ("#b0", "#b110", "#b1000"), 12),
])
def test_update_dynamic_attractor_on_lower_bound_prefixes(decided, expected, value):
    attractor = update_dynamic_attractor(PrefixAssignment(S35, decided), Direction.MINIMIZE)
    assert attractor.pattern == fp(*expected)
    assert fp_value(attractor.pattern).rational == value


@pytest.mark.parametrize("direction", list(Direction))
def test_dynamic_attractor_is_the_extremal_completion(direction):
    better_or_equal = fp_leq if direction is Direction.MINIMIZE else fp_geq
    for k in range(1, S35.n + 1):
        for decided in itertools.product((0, 1), repeat=k):
            tau = PrefixAssignment(S35, decided)
            candidates = [c for c in completions(S35, decided) if not is_nan(c)]
            if not candidates:
                with pytest.raises(InternalError):
                    update_dynamic_attractor(tau, direction)
                continue
            attractor = update_dynamic_attractor(tau, direction).pattern
            assert attractor in candidates
            assert all(better_or_equal(attractor, c) for c in candidates)


@pytest.mark.parametrize("sort", [S35, S23])
@pytest.mark.parametrize("direction", list(Direction))
def test_following_the_attractor_bit_never_loses(sort, direction):
    """Completions agreeing with the attractor on the next bit are all at least as good as the others."""
    better_or_equal = fp_leq if direction is Direction.MINIMIZE else fp_geq
    for k in range(sort.n):
        for decided in itertools.product((0, 1), repeat=k):
            tau = PrefixAssignment(sort, decided)
            try:
                attractor = update_dynamic_attractor(tau, direction)
            except InternalError:
                continue
            target = attractor.bits[k]
            good = [c for c in completions(sort, decided + (target,)) if not is_nan(c)]
            bad = [c for c in completions(sort, decided + (1 - target,)) if not is_nan(c)]
            assert all(better_or_equal(g, b) for g in good for b in bad)


def test_values_agree_with_z3():
    z3 = pytest.importorskip("z3")
    sort = z3.FPSort(S35.ebits, S35.sbits)
    for x in all_patterns(S35):
        ref = z3.fpBVToFP(z3.BitVecVal(x.to_int(), S35.n), sort)
        assert z3.is_true(z3.simplify(z3.fpIsNaN(ref))) == is_nan(x)
        value = fp_value(x)
        if value.special is None:
            assert z3.simplify(z3.fpToReal(ref)).as_fraction() == value.rational
            assert z3.is_true(z3.simplify(z3.fpIsNegative(ref))) == value.negative
