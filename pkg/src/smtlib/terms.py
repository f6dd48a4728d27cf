# project_root/src/smtlib/terms.py
"""
Sorted term AST for the supported SMT-LIB fragment.

Every node is built through `mk_app` (or the leaf constructors), which is
the single place where well-sortedness is checked. `let` and `define-fun`
are expanded by the parser, so the AST has no binders.

Supported operators:
- Bool: true false not and or xor => = distinct ite
- BV:   concat extract bvnot bvand bvor bvxor bvxnor bvneg bvadd bvsub bvmul
        bvshl bvlshr bvult bvule bvugt bvuge bvslt bvsle bvsgt bvsge
- FP:   fp fp.eq fp.lt fp.leq fp.gt fp.geq fp.isNaN fp.isInfinite fp.isZero
        fp.isNormal fp.isSubnormal fp.isNegative fp.isPositive fp.neg fp.abs
        fp.min fp.max
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

from src.core.bitvec import BvConst, BvSort
from src.core.fp import FpBits, FpSort
from src.utils.errors import SmtLibSortError, UnsupportedConstructError


@dataclass(frozen=True)
class BoolSort:
    def __str__(self) -> str:
        return "Bool"


BOOL = BoolSort()

Sort = Union[BoolSort, BvSort, FpSort]


@dataclass(frozen=True)
class Term:
    op: str
    sort: Sort
    args: Tuple["Term", ...] = ()
    params: Tuple[int, ...] = ()
    name: Optional[str] = None
    value: Union[None, bool, BvConst, FpBits] = None
    pos: Optional[Tuple[int, int]] = field(default=None, compare=False, repr=False)
    _hash: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.op, self.sort, self.args, self.params, self.name, self.value)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, Term):
            return NotImplemented
        seen = set()
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b or (id(a), id(b)) in seen:
                continue
            seen.add((id(a), id(b)))
            if (a._hash != b._hash or a.op != b.op or a.sort != b.sort or a.params != b.params
                    or a.name != b.name or a.value != b.value or len(a.args) != len(b.args)):
                return False
            stack.extend(zip(a.args, b.args))
        return True

    @property
    def is_var(self) -> bool:
        return self.op == "var"

    @property
    def is_const(self) -> bool:
        return self.op == "const"

    def __str__(self) -> str:
        from src.smtlib.printer import term_to_smtlib
        return term_to_smtlib(self)


def mk_var(name: str, sort: Sort, pos=None) -> Term:
    return Term("var", sort, name=name, pos=pos)


def mk_bool(value: bool) -> Term:
    return Term("const", BOOL, value=bool(value))


TRUE = mk_bool(True)
FALSE = mk_bool(False)


def mk_bv(value: BvConst) -> Term:
    return Term("const", value.sort, value=value)


def mk_fp(value: FpBits) -> Term:
    return Term("const", value.sort, value=value)


def mk_const(value) -> Term:
    if isinstance(value, bool):
        return mk_bool(value)
    if isinstance(value, BvConst):
        return mk_bv(value)
    return mk_fp(value)


BOOL_NARY = {"and", "or", "xor", "=>"}
BV_BITWISE = {"bvand", "bvor", "bvxor", "bvxnor"}
BV_ARITH = {"bvadd", "bvsub", "bvmul", "bvshl", "bvlshr"}
BV_LEFT_ASSOC = {"bvand", "bvor", "bvxor", "bvadd", "bvmul", "concat"}
BV_COMPARE = {"bvult", "bvule", "bvugt", "bvuge", "bvslt", "bvsle", "bvsgt", "bvsge"}
FP_COMPARE = {"fp.eq", "fp.lt", "fp.leq", "fp.gt", "fp.geq"}
FP_CLASSIFY = {"fp.isNaN", "fp.isInfinite", "fp.isZero", "fp.isNormal",
               "fp.isSubnormal", "fp.isNegative", "fp.isPositive"}
FP_UNARY = {"fp.neg", "fp.abs"}
FP_BINARY = {"fp.min", "fp.max"}

SUPPORTED_OPS = ({"not", "=", "distinct", "ite", "extract", "bvnot", "bvneg", "fp"}
                 | BOOL_NARY | BV_BITWISE | BV_ARITH | BV_LEFT_ASSOC | BV_COMPARE
                 | FP_COMPARE | FP_CLASSIFY | FP_UNARY | FP_BINARY)


def _fail(message: str, op: str, args: Sequence[Term], pos) -> SmtLibSortError:
    from src.smtlib.printer import term_to_smtlib
    text = f"({op} {' '.join(term_to_smtlib(a) for a in args)})"
    line, column = pos if pos else (0, 0)
    return SmtLibSortError(message, text, line, column)


def _arity(op, args, pos, exactly=None, at_least=None):
    if exactly is not None and len(args) != exactly:
        raise _fail(f"'{op}' expects {exactly} argument(s), got {len(args)}", op, args, pos)
    if at_least is not None and len(args) < at_least:
        raise _fail(f"'{op}' expects at least {at_least} argument(s), got {len(args)}", op, args, pos)


def _all_sort(op, args, pos, kind):
    for a in args:
        if not isinstance(a.sort, kind):
            raise _fail(f"'{op}' expects {kind.__name__} arguments, got {a.sort}", op, args, pos)


def _same_sort(op, args, pos):
    if any(a.sort != args[0].sort for a in args):
        raise _fail(f"'{op}' arguments must share one sort", op, args, pos)


def mk_app(op: str, args: Sequence[Term], params: Sequence[int] = (), pos=None) -> Term:
    """Build an application node, checking its sort."""
    args = tuple(args)
    params = tuple(params)

    if op not in SUPPORTED_OPS:
        line, column = pos if pos else (0, 0)
        raise UnsupportedConstructError(op, line, column)

    if op == "not":
        _arity(op, args, pos, exactly=1)
        _all_sort(op, args, pos, BoolSort)
        return Term(op, BOOL, args, pos=pos)

    if op in BOOL_NARY:
        _arity(op, args, pos, at_least=1)
        _all_sort(op, args, pos, BoolSort)
        return Term(op, BOOL, args, pos=pos)

    if op in ("=", "distinct"):
        _arity(op, args, pos, at_least=2)
        _same_sort(op, args, pos)
        return Term(op, BOOL, args, pos=pos)

    if op == "ite":
        _arity(op, args, pos, exactly=3)
        if args[0].sort != BOOL:
            raise _fail("'ite' condition must be Bool", op, args, pos)
        _same_sort(op, args[1:], pos)
        return Term(op, args[1].sort, args, pos=pos)

    if op in BV_LEFT_ASSOC and len(args) > 2:
        folded = mk_app(op, args[:2], pos=pos)
        for arg in args[2:]:
            folded = mk_app(op, (folded, arg), pos=pos)
        return folded

    if op == "concat":
        _arity(op, args, pos, exactly=2)
        _all_sort(op, args, pos, BvSort)
        return Term(op, BvSort(args[0].sort.width + args[1].sort.width), args, pos=pos)

    if op == "extract":
        _arity(op, args, pos, exactly=1)
        _all_sort(op, args, pos, BvSort)
        if len(params) != 2:
            raise _fail("'extract' needs two indices", op, args, pos)
        hi, lo = params
        if not 0 <= lo <= hi < args[0].sort.width:
            raise _fail(f"extract indices {hi} {lo} out of range", op, args, pos)
        return Term(op, BvSort(hi - lo + 1), args, params, pos=pos)

    if op in ("bvnot", "bvneg"):
        _arity(op, args, pos, exactly=1)
        _all_sort(op, args, pos, BvSort)
        return Term(op, args[0].sort, args, pos=pos)

    if op in BV_BITWISE or op in BV_ARITH:
        _arity(op, args, pos, exactly=2)
        _all_sort(op, args, pos, BvSort)
        _same_sort(op, args, pos)
        return Term(op, args[0].sort, args, pos=pos)

    if op in BV_COMPARE:
        _arity(op, args, pos, exactly=2)
        _all_sort(op, args, pos, BvSort)
        _same_sort(op, args, pos)
        return Term(op, BOOL, args, pos=pos)

    if op == "fp":
        _arity(op, args, pos, exactly=3)
        _all_sort(op, args, pos, BvSort)
        if args[0].sort.width != 1:
            raise _fail("the sign of 'fp' must be 1 bit wide", op, args, pos)
        if args[1].sort.width < 2:
            raise _fail("the exponent of 'fp' must be at least 2 bits wide", op, args, pos)
        sort = FpSort(args[1].sort.width, args[2].sort.width + 1)
        if all(a.is_const for a in args):
            bits = args[0].value.bits + args[1].value.bits + args[2].value.bits
            return Term("const", sort, value=FpBits(sort, bits), pos=pos)
        return Term(op, sort, args, pos=pos)

    if op in FP_COMPARE:
        _arity(op, args, pos, at_least=2)
        _all_sort(op, args, pos, FpSort)
        _same_sort(op, args, pos)
        if len(args) > 2:
            # Chainable: (fp.lt a b c) == (and (fp.lt a b) (fp.lt b c)).
            return mk_app("and", [mk_app(op, pair, pos=pos) for pair in zip(args, args[1:])], pos=pos)
        return Term(op, BOOL, args, pos=pos)

    if op in FP_CLASSIFY:
        _arity(op, args, pos, exactly=1)
        _all_sort(op, args, pos, FpSort)
        return Term(op, BOOL, args, pos=pos)

    if op in FP_UNARY:
        _arity(op, args, pos, exactly=1)
        _all_sort(op, args, pos, FpSort)
        return Term(op, args[0].sort, args, pos=pos)

    # fp.min / fp.max
    _arity(op, args, pos, exactly=2)
    _all_sort(op, args, pos, FpSort)
    _same_sort(op, args, pos)
    return Term(op, args[0].sort, args, pos=pos)


def free_vars(term: Term) -> set:
    """Names of the variables occurring in `term`."""
    found = set()
    stack = [term]
    while stack:
        t = stack.pop()
        if t.is_var:
            found.add(t.name)
        stack.extend(t.args)
    return found


def substitute(term: Term, mapping: dict) -> Term:
    """Replace variables by name; used to expand define-fun macros."""
    done: dict = {}
    stack = [(term, False)]
    while stack:
        t, expanded = stack.pop()
        if id(t) in done:
            continue
        if t.is_var:
            done[id(t)] = mapping.get(t.name, t)
        elif not t.args:
            done[id(t)] = t
        elif not expanded:
            stack.append((t, True))
            stack.extend((a, False) for a in t.args if id(a) not in done)
        else:
            new_args = tuple(done[id(a)] for a in t.args)
            if all(n is a for n, a in zip(new_args, t.args)):
                done[id(t)] = t
            else:
                done[id(t)] = mk_app(t.op, new_args, t.params, t.pos)
    return done[id(term)]
