# project_root/src/smtlib/evaluator.py
"""
Direct semantic evaluation of terms under a full assignment.

Independent of the bit-blaster: it works on `BvConst`/`FpBits` values with
the exact semantics of `src.core.bitvec` and `src.core.fp`, so it can serve
as the reference when checking blasted circuits and printing `get-value`.
`=` on FP sorts is bit-pattern identity.
"""

from typing import Dict, Mapping, Union

from src.core.bitvec import BvConst, BvSort, Signedness, bv_value
from src.core.fp import (FpBits, FpClass, fp_abs, fp_classify, fp_eq, fp_geq, fp_gt, fp_leq,
                         fp_lt, fp_max, fp_min, fp_neg)
from src.smtlib.terms import Term
from src.utils.errors import BlastError, InternalError

Value = Union[bool, BvConst, FpBits]

_FP_COMPARE = {"fp.eq": fp_eq, "fp.lt": fp_lt, "fp.leq": fp_leq, "fp.gt": fp_gt, "fp.geq": fp_geq}


def _mask(width: int) -> int:
    return (1 << width) - 1


def _bv(sort: BvSort, value: int) -> BvConst:
    return BvConst.from_int(sort, value & _mask(sort.width))


def _bv_op(op: str, a: BvConst, b: BvConst) -> Union[bool, BvConst]:
    ua, ub = a.to_int(), b.to_int()
    sa, sb = bv_value(a, Signedness.SIGNED), bv_value(b, Signedness.SIGNED)
    width = a.width
    if op == "bvand":
        return _bv(a.sort, ua & ub)
    if op == "bvor":
        return _bv(a.sort, ua | ub)
    if op == "bvxor":
        return _bv(a.sort, ua ^ ub)
    if op == "bvxnor":
        return _bv(a.sort, ~(ua ^ ub))
    if op == "bvadd":
        return _bv(a.sort, ua + ub)
    if op == "bvsub":
        return _bv(a.sort, ua - ub)
    if op == "bvmul":
        return _bv(a.sort, ua * ub)
    if op == "bvshl":
        return _bv(a.sort, ua << ub if ub < width else 0)
    if op == "bvlshr":
        return _bv(a.sort, ua >> ub if ub < width else 0)
    comparisons = {
        "bvult": ua < ub, "bvule": ua <= ub, "bvugt": ua > ub, "bvuge": ua >= ub,
        "bvslt": sa < sb, "bvsle": sa <= sb, "bvsgt": sa > sb, "bvsge": sa >= sb,
    }
    return comparisons[op]


def _fp_predicate(op: str, x: FpBits) -> bool:
    kind = fp_classify(x)
    if op == "fp.isNaN":
        return kind is FpClass.NAN
    if op == "fp.isInfinite":
        return kind in (FpClass.POS_INF, FpClass.NEG_INF)
    if op == "fp.isZero":
        return kind in (FpClass.POS_ZERO, FpClass.NEG_ZERO)
    if op == "fp.isNormal":
        return kind is FpClass.NORMAL
    if op == "fp.isSubnormal":
        return kind is FpClass.SUBNORMAL
    if op == "fp.isNegative":
        return kind is not FpClass.NAN and x.sign == 1
    return kind is not FpClass.NAN and x.sign == 0


def evaluate(term: Term, env: Mapping[str, Value]) -> Value:
    """Value of `term` when every free variable takes its value from `env`."""
    cache: Dict[int, Value] = {}
    stack = [(term, False)]
    while stack:
        t, expanded = stack.pop()
        if id(t) in cache:
            continue
        if not expanded and t.args:
            stack.append((t, True))
            stack.extend((a, False) for a in t.args if id(a) not in cache)
            continue
        cache[id(t)] = _apply(t, [cache[id(a)] for a in t.args], env)
    return cache[id(term)]


def _apply(t: Term, args: list, env: Mapping[str, Value]) -> Value:
    op = t.op
    if op == "var":
        if t.name not in env:
            raise BlastError(f"no value for variable '{t.name}'")
        return env[t.name]
    if op == "const":
        return t.value

    if op == "not":
        return not args[0]
    if op == "and":
        return all(args)
    if op == "or":
        return any(args)
    if op == "xor":
        return sum(bool(a) for a in args) % 2 == 1
    if op == "=>":
        result = args[-1]
        for a in reversed(args[:-1]):
            result = (not a) or result
        return result
    if op == "=":
        return all(a == args[0] for a in args[1:])
    if op == "distinct":
        return len(set(args)) == len(args)
    if op == "ite":
        return args[1] if args[0] else args[2]

    if op == "concat":
        return BvConst(t.sort, args[0].bits + args[1].bits)
    if op == "extract":
        hi, lo = t.params
        width = args[0].width
        return BvConst(t.sort, args[0].bits[width - 1 - hi:width - lo])
    if op == "bvnot":
        return BvConst(t.sort, tuple(1 - b for b in args[0].bits))
    if op == "bvneg":
        return _bv(t.sort, -args[0].to_int())
    if op.startswith("bv"):
        return _bv_op(op, args[0], args[1])

    if op == "fp":
        return FpBits(t.sort, args[0].bits + args[1].bits + args[2].bits)
    if op in _FP_COMPARE:
        return _FP_COMPARE[op](args[0], args[1])
    if op.startswith("fp.is"):
        return _fp_predicate(op, args[0])
    if op == "fp.neg":
        return fp_neg(args[0])
    if op == "fp.abs":
        return fp_abs(args[0])
    if op == "fp.min":
        return fp_min(args[0], args[1])
    if op == "fp.max":
        return fp_max(args[0], args[1])
    raise InternalError(f"no evaluation rule for '{op}'")


def holds(assertions, env: Mapping[str, Value]) -> bool:
    """True iff every assertion evaluates to true under `env`."""
    return all(evaluate(a, env) for a in assertions)
