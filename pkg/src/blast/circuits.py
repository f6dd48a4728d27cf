# project_root/src/blast/circuits.py
"""
Tseitin gates and word-level circuits over DIMACS literals.

Words are lists of literals, MSB first, the same order as bit-vector
literals and FP patterns. Gates constant-fold against the builder's `true`
literal and are structurally hashed, so blasting a DAG never duplicates a gate.
"""

from typing import Dict, List, Sequence, Tuple

from src.core.fp import FpSort

Word = List[int]


class GateBuilder:
    """Creates gate outputs in `sink`, anything with `new_var()` and `add_clause(lits)`."""

    def __init__(self, sink):
        self.sink = sink
        self.true = sink.new_var()
        self.false = -self.true
        sink.add_clause([self.true])
        self._cache: Dict[Tuple, int] = {}

    def const(self, value: bool) -> int:
        return self.true if value else self.false

    def fresh(self) -> int:
        return self.sink.new_var()

    def _clause(self, *lits: int) -> None:
        self.sink.add_clause(list(lits))

    # ------------------------------------------------------------------ gates

    def and2(self, a: int, b: int) -> int:
        if a == self.false or b == self.false or a == -b:
            return self.false
        if a == self.true or a == b:
            return b
        if b == self.true:
            return a
        key = ("and", min(a, b), max(a, b))
        if key not in self._cache:
            g = self.fresh()
            self._clause(-g, a)
            self._clause(-g, b)
            self._clause(g, -a, -b)
            self._cache[key] = g
        return self._cache[key]

    def or2(self, a: int, b: int) -> int:
        return -self.and2(-a, -b)

    def xor2(self, a: int, b: int) -> int:
        if a == self.false:
            return b
        if b == self.false:
            return a
        if a == self.true:
            return -b
        if b == self.true:
            return -a
        if a == b:
            return self.false
        if a == -b:
            return self.true
        # xor(-a, b) == -xor(a, b): normalise both inputs to positive literals.
        flip = (a < 0) != (b < 0)
        a, b = abs(a), abs(b)
        key = ("xor", min(a, b), max(a, b))
        if key not in self._cache:
            g = self.fresh()
            self._clause(-g, a, b)
            self._clause(-g, -a, -b)
            self._clause(g, -a, b)
            self._clause(g, a, -b)
            self._cache[key] = g
        return -self._cache[key] if flip else self._cache[key]

    def iff(self, a: int, b: int) -> int:
        return -self.xor2(a, b)

    def ite(self, c: int, t: int, e: int) -> int:
        if c == self.true or t == e:
            return t
        if c == self.false:
            return e
        if t == self.true or t == c:
            return self.or2(c, e)
        if t == self.false or t == -c:
            return self.and2(-c, e)
        if e == self.true or e == -c:
            return self.or2(-c, t)
        if e == self.false or e == c:
            return self.and2(c, t)
        key = ("ite", c, t, e)
        if key not in self._cache:
            g = self.fresh()
            self._clause(-c, -t, g)
            self._clause(-c, t, -g)
            self._clause(c, -e, g)
            self._clause(c, e, -g)
            self._clause(-t, -e, g)
            self._clause(t, e, -g)
            self._cache[key] = g
        return self._cache[key]

    def and_n(self, lits: Sequence[int]) -> int:
        result = self.true
        for lit in lits:
            result = self.and2(result, lit)
        return result

    def or_n(self, lits: Sequence[int]) -> int:
        return -self.and_n([-l for l in lits])

    # ------------------------------------------------------------------ words

    def word_const(self, bits: Sequence[int]) -> Word:
        return [self.const(b) for b in bits]

    def word_not(self, a: Word) -> Word:
        return [-x for x in a]

    def word_and(self, a: Word, b: Word) -> Word:
        return [self.and2(x, y) for x, y in zip(a, b)]

    def word_or(self, a: Word, b: Word) -> Word:
        return [self.or2(x, y) for x, y in zip(a, b)]

    def word_xor(self, a: Word, b: Word) -> Word:
        return [self.xor2(x, y) for x, y in zip(a, b)]

    def word_ite(self, c: int, t: Word, e: Word) -> Word:
        return [self.ite(c, x, y) for x, y in zip(t, e)]

    def word_eq(self, a: Word, b: Word) -> int:
        return self.and_n([self.iff(x, y) for x, y in zip(a, b)])

    def add(self, a: Word, b: Word, carry_in: int = None) -> Word:
        carry = self.false if carry_in is None else carry_in
        out = []
        for x, y in zip(reversed(a), reversed(b)):
            half = self.xor2(x, y)
            out.append(self.xor2(half, carry))
            carry = self.or2(self.and2(x, y), self.and2(half, carry))
        return out[::-1]

    def neg(self, a: Word) -> Word:
        return self.add(self.word_not(a), [self.false] * len(a), self.true)

    def sub(self, a: Word, b: Word) -> Word:
        return self.add(a, self.word_not(b), self.true)

    def mul(self, a: Word, b: Word) -> Word:
        """Shift-add multiplier, truncated to the operand width."""
        n = len(a)
        a_lsb = a[::-1]
        acc = [self.false] * n
        for i, bi in enumerate(reversed(b)):
            partial_lsb = [self.and2(bi, a_lsb[j - i]) if j >= i else self.false for j in range(n)]
            acc = self.add(acc, partial_lsb[::-1])
        return acc

    def _barrel(self, a: Word, s: Word, left: bool) -> Word:
        n = len(a)
        cur = a[::-1]
        overflow = []
        for k, sk in enumerate(reversed(s)):
            step = 1 << k
            if step >= n:
                overflow.append(sk)
                continue
            if left:
                shifted = [cur[j - step] if j >= step else self.false for j in range(n)]
            else:
                shifted = [cur[j + step] if j + step < n else self.false for j in range(n)]
            cur = [self.ite(sk, x, y) for x, y in zip(shifted, cur)]
        big = self.or_n(overflow)
        return [self.and2(-big, x) for x in cur[::-1]]

    def shl(self, a: Word, s: Word) -> Word:
        return self._barrel(a, s, left=True)

    def lshr(self, a: Word, s: Word) -> Word:
        return self._barrel(a, s, left=False)

    def ult(self, a: Word, b: Word) -> int:
        lt = self.false
        for x, y in zip(reversed(a), reversed(b)):
            lt = self.or2(self.and2(-x, y), self.and2(self.iff(x, y), lt))
        return lt

    def ule(self, a: Word, b: Word) -> int:
        return -self.ult(b, a)

    def slt(self, a: Word, b: Word) -> int:
        # Two's complement order is unsigned order with the sign bits flipped.
        return self.ult([-a[0]] + a[1:], [-b[0]] + b[1:])

    def sle(self, a: Word, b: Word) -> int:
        return -self.slt(b, a)


class FpCircuits:
    """Classification and ordering circuits for FP words of one sort."""

    def __init__(self, gates: GateBuilder, sort: FpSort):
        self.g = gates
        self.sort = sort

    def _fields(self, x: Word):
        eb = self.sort.ebits
        return x[0], x[1:1 + eb], x[1 + eb:]

    def _exp_ones(self, x: Word) -> int:
        return self.g.and_n(self._fields(x)[1])

    def _exp_zero(self, x: Word) -> int:
        return self.g.and_n([-e for e in self._fields(x)[1]])

    def _frac_zero(self, x: Word) -> int:
        return self.g.and_n([-f for f in self._fields(x)[2]])

    def is_nan(self, x: Word) -> int:
        return self.g.and2(self._exp_ones(x), -self._frac_zero(x))

    def is_infinite(self, x: Word) -> int:
        return self.g.and2(self._exp_ones(x), self._frac_zero(x))

    def is_zero(self, x: Word) -> int:
        return self.g.and2(self._exp_zero(x), self._frac_zero(x))

    def is_subnormal(self, x: Word) -> int:
        return self.g.and2(self._exp_zero(x), -self._frac_zero(x))

    def is_normal(self, x: Word) -> int:
        return self.g.and2(-self._exp_ones(x), -self._exp_zero(x))

    def is_negative(self, x: Word) -> int:
        return self.g.and2(-self.is_nan(x), x[0])

    def is_positive(self, x: Word) -> int:
        return self.g.and2(-self.is_nan(x), -x[0])

    def total_lt(self, a: Word, b: Word) -> int:
        """Strict order on non-NaN patterns with -0 below +0 (rank order)."""
        g = self.g
        sa, sb = a[0], b[0]
        return g.ite(sa,
                     g.ite(sb, g.ult(b[1:], a[1:]), g.true),
                     g.ite(sb, g.false, g.ult(a[1:], b[1:])))

    def lt(self, a: Word, b: Word) -> int:
        g = self.g
        both_zero = g.and2(self.is_zero(a), self.is_zero(b))
        return g.and_n([-self.is_nan(a), -self.is_nan(b), -both_zero, self.total_lt(a, b)])

    def eq(self, a: Word, b: Word) -> int:
        g = self.g
        both_zero = g.and2(self.is_zero(a), self.is_zero(b))
        return g.and_n([-self.is_nan(a), -self.is_nan(b), g.or2(both_zero, g.word_eq(a, b))])

    def leq(self, a: Word, b: Word) -> int:
        return self.g.or2(self.lt(a, b), self.eq(a, b))

    def neg(self, a: Word) -> Word:
        return [-a[0]] + a[1:]

    def abs(self, a: Word) -> Word:
        return [self.g.false] + a[1:]

    def _select(self, a: Word, b: Word, take_a: int, zero_sign: int) -> Word:
        g = self.g
        na, nb = self.is_nan(a), self.is_nan(b)
        both_zero = g.and2(self.is_zero(a), self.is_zero(b))
        ordered = g.word_ite(take_a, a, b)
        zeros = g.word_ite(both_zero, [zero_sign] + a[1:], ordered)
        return g.word_ite(na, b, g.word_ite(nb, a, zeros))

    def min(self, a: Word, b: Word) -> Word:
        return self._select(a, b, self.leq(a, b), self.g.or2(a[0], b[0]))

    def max(self, a: Word, b: Word) -> Word:
        return self._select(a, b, self.leq(b, a), self.g.and2(a[0], b[0]))
