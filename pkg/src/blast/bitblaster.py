# project_root/src/blast/bitblaster.py
"""
Eager translation of BV/FP formulas into CNF.

`Bitblaster` writes into any clause sink with `new_var()`/`add_clause()`;
the engines hand it their `SatSolver` directly so the objective bits keep
the same SAT variables across incremental calls. `blast()` is the
stand-alone form that returns a `CnfInstance` snapshot.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Tuple, Union

from src.blast.circuits import FpCircuits, GateBuilder, Word
from src.core.bitvec import BvConst, BvSort
from src.core.fp import FpBits, FpSort
from src.sat.dimacs import load_into
from src.sat.solver import SatResult, SatSolver
from src.smtlib.terms import BOOL, BoolSort, Sort, Term
from src.utils.errors import BlastError, InternalError
from src.utils.logger import logger

Blasted = Union[int, Word]


@dataclass
class BlastMap:
    """Declared variable -> SAT variables (MSB first); Bool atom -> Tseitin literal."""

    variables: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    sorts: Dict[str, Sort] = field(default_factory=dict)
    atoms: Dict[Term, int] = field(default_factory=dict)

    def bits(self, name: str) -> Tuple[int, ...]:
        if name not in self.variables:
            raise BlastError(f"unknown variable '{name}'")
        return self.variables[name]

    def assume_literal_for_bit(self, name: str, index: int, value: int) -> int:
        """The literal asserting bit `index` (0 = MSB) of `name` equals `value`."""
        bits = self.bits(name)
        if not 0 <= index < len(bits):
            raise BlastError(f"bit index {index} out of range for '{name}' of width {len(bits)}")
        return bits[index] if value else -bits[index]

    def decode(self, name: str, result: SatResult):
        bits = tuple(int(result.value(v)) for v in self.bits(name))
        sort = self.sorts[name]
        if isinstance(sort, BoolSort):
            return bool(bits[0])
        if isinstance(sort, BvSort):
            return BvConst(sort, bits)
        return FpBits(sort, bits)

    def decode_all(self, result: SatResult) -> dict:
        return {name: self.decode(name, result) for name in self.variables}


@dataclass(frozen=True)
class CnfInstance:
    num_vars: int
    clauses: Tuple[Tuple[int, ...], ...]

    def load(self, solver: SatSolver) -> None:
        load_into(solver, self.num_vars, [list(c) for c in self.clauses])


class ClauseCollector:
    """A sink that only records clauses."""

    def __init__(self):
        self.num_vars = 0
        self.clauses: List[Tuple[int, ...]] = []

    def new_var(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def add_clause(self, lits: Iterable[int]) -> bool:
        self.clauses.append(tuple(lits))
        return True


class Bitblaster:
    def __init__(self, sink):
        self.sink = sink
        self.gates = GateBuilder(sink)
        self.map = BlastMap()
        self._cache: Dict[Term, Blasted] = {}
        self._fp: Dict[FpSort, FpCircuits] = {}

    def declare(self, name: str, sort: Sort) -> Tuple[int, ...]:
        if name in self.map.variables:
            if self.map.sorts[name] != sort:
                raise BlastError(f"'{name}' redeclared with sort {sort}")
            return self.map.variables[name]
        width = 1 if isinstance(sort, BoolSort) else sort.width
        bits = tuple(self.sink.new_var() for _ in range(width))
        self.map.variables[name] = bits
        self.map.sorts[name] = sort
        return bits

    def declare_all(self, declarations: Dict[str, Sort]) -> None:
        for name, sort in declarations.items():
            self.declare(name, sort)

    def assert_formula(self, formula: Term) -> None:
        if formula.sort != BOOL:
            raise InternalError("only Bool terms can be asserted")
        self.sink.add_clause([self.blast_term(formula)])

    def fp(self, sort: FpSort) -> FpCircuits:
        if sort not in self._fp:
            self._fp[sort] = FpCircuits(self.gates, sort)
        return self._fp[sort]

    def blast_term(self, term: Term) -> Blasted:
        """Literal (Bool) or word (BV/FP) for `term`, iterative over the DAG."""
        stack = [(term, False)]
        while stack:
            t, expanded = stack.pop()
            if t in self._cache:
                continue
            if not expanded:
                stack.append((t, True))
                stack.extend((a, False) for a in t.args if a not in self._cache)
                continue
            result = self._blast_node(t, [self._cache[a] for a in t.args])
            self._cache[t] = result
            if t.sort == BOOL and t.op not in ("var", "const"):
                self.map.atoms[t] = result
        return self._cache[term]

    def _blast_node(self, t: Term, args: list) -> Blasted:
        g = self.gates
        op = t.op
        if op == "var":
            bits = self.declare(t.name, t.sort)
            return bits[0] if t.sort == BOOL else list(bits)
        if op == "const":
            if t.sort == BOOL:
                return g.const(t.value)
            return g.word_const(t.value.bits)

        if op == "not":
            return -args[0]
        if op == "and":
            return g.and_n(args)
        if op == "or":
            return g.or_n(args)
        if op == "xor":
            result = g.false
            for a in args:
                result = g.xor2(result, a)
            return result
        if op == "=>":
            result = args[-1]
            for a in reversed(args[:-1]):
                result = g.or2(-a, result)
            return result
        if op in ("=", "distinct"):
            same = g.iff if t.args[0].sort == BOOL else g.word_eq
            if op == "=":
                return g.and_n([same(a, b) for a, b in zip(args, args[1:])])
            return g.and_n([-same(a, b) for a, b in combinations(args, 2)])
        if op == "ite":
            if t.sort == BOOL:
                return g.ite(*args)
            return g.word_ite(args[0], args[1], args[2])

        if op == "concat":
            return args[0] + args[1]
        if op == "extract":
            hi, lo = t.params
            width = len(args[0])
            return args[0][width - 1 - hi:width - lo]
        if op == "bvnot":
            return g.word_not(args[0])
        if op == "bvneg":
            return g.neg(args[0])
        word_ops = {
            "bvand": g.word_and, "bvor": g.word_or, "bvxor": g.word_xor,
            "bvadd": g.add, "bvsub": g.sub, "bvmul": g.mul, "bvshl": g.shl, "bvlshr": g.lshr,
        }
        if op in word_ops:
            return word_ops[op](args[0], args[1])
        if op == "bvxnor":
            return g.word_not(g.word_xor(args[0], args[1]))
        compare = {
            "bvult": lambda a, b: g.ult(a, b), "bvule": lambda a, b: g.ule(a, b),
            "bvugt": lambda a, b: g.ult(b, a), "bvuge": lambda a, b: g.ule(b, a),
            "bvslt": lambda a, b: g.slt(a, b), "bvsle": lambda a, b: g.sle(a, b),
            "bvsgt": lambda a, b: g.slt(b, a), "bvsge": lambda a, b: g.sle(b, a),
        }
        if op in compare:
            return compare[op](args[0], args[1])

        if op == "fp":
            return args[0] + args[1] + args[2]
        sort = t.args[0].sort
        if isinstance(sort, FpSort):
            fp = self.fp(sort)
            fp_ops = {
                "fp.eq": lambda: fp.eq(args[0], args[1]),
                "fp.lt": lambda: fp.lt(args[0], args[1]),
                "fp.leq": lambda: fp.leq(args[0], args[1]),
                "fp.gt": lambda: fp.lt(args[1], args[0]),
                "fp.geq": lambda: fp.leq(args[1], args[0]),
                "fp.isNaN": lambda: fp.is_nan(args[0]),
                "fp.isInfinite": lambda: fp.is_infinite(args[0]),
                "fp.isZero": lambda: fp.is_zero(args[0]),
                "fp.isNormal": lambda: fp.is_normal(args[0]),
                "fp.isSubnormal": lambda: fp.is_subnormal(args[0]),
                "fp.isNegative": lambda: fp.is_negative(args[0]),
                "fp.isPositive": lambda: fp.is_positive(args[0]),
                "fp.neg": lambda: fp.neg(args[0]),
                "fp.abs": lambda: fp.abs(args[0]),
                "fp.min": lambda: fp.min(args[0], args[1]),
                "fp.max": lambda: fp.max(args[0], args[1]),
            }
            if op in fp_ops:
                return fp_ops[op]()
        raise InternalError(f"no blasting rule for '{op}'")


def blast(formula: Union[Term, Iterable[Term]], declarations: Dict[str, Sort] = None) -> Tuple[CnfInstance, BlastMap]:
    """Blast one formula (or a conjunction given as an iterable) into a CNF snapshot."""
    collector = ClauseCollector()
    blaster = Bitblaster(collector)
    if declarations:
        blaster.declare_all(declarations)
    formulas = [formula] if isinstance(formula, Term) else list(formula)
    for f in formulas:
        blaster.assert_formula(f)
    logger.debug(f"Blasted {len(formulas)} formula(s): {collector.num_vars} vars, "
                 f"{len(collector.clauses)} clauses")
    return CnfInstance(collector.num_vars, tuple(collector.clauses)), blaster.map


def assume_literal_for_bit(blast_map: BlastMap, name: str, index: int, value: int) -> int:
    return blast_map.assume_literal_for_bit(name, index, value)
