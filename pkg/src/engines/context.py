"""
The state an engine works on: one SAT solver holding the blasted formula,
the SAT variables of the objective, a deadline and the call counter.

Every engine-side solver query goes through `check`, so `smt_calls` counts
exactly the solve-under-assumptions invocations of a run.
"""

import time
from typing import Dict, List, Optional, Sequence, Union

from src.blast.bitblaster import Bitblaster
from src.core.bitvec import BvConst, Direction, Signedness, bv_value
from src.core.fp import FpBits, fp_from_rank, fp_rank, fp_rank_count
from src.sat.solver import SatSolver
from src.smtlib.script import Problem
from src.utils.errors import EngineError
from src.utils.logger import logger

Value = Union[BvConst, FpBits]


class OptContext:
    def __init__(self, problem: Problem, timeout: Optional[float] = None):
        if problem.objective is None:
            raise EngineError("no objective to optimize")
        self.problem = problem
        self.objective = problem.objective
        self.direction = self.objective.direction
        self.solver = SatSolver()
        self.blaster = Bitblaster(self.solver)
        self.blaster.declare_all(problem.declarations)
        self.blaster.declare(self.objective.name, self.objective.sort)
        for assertion in problem.assertions:
            self.blaster.assert_formula(assertion)
        self.cost_vars: List[int] = list(self.blaster.map.bits(self.objective.name))
        self.started = time.monotonic()
        self.deadline = self.started + timeout if timeout else None
        self.smt_calls = 0
        logger.debug(f"Blasted problem: {self.solver.num_vars} vars, {len(self.solver.clauses)} clauses")

    @property
    def width(self) -> int:
        return len(self.cost_vars)

    @property
    def elapsed_ms(self) -> float:
        return (time.monotonic() - self.started) * 1000.0

    # ------------------------------------------------------------------ solving

    def check(self, assumptions: Sequence[int] = ()) -> Optional[Dict[str, object]]:
        """Solve under `assumptions`; the decoded model, or None when unsat."""
        self.smt_calls += 1
        result = self.solver.solve(assumptions, self.deadline)
        if not result.is_sat:
            return None
        return self.blaster.map.decode_all(result)

    def add_permanent(self, literal: int) -> None:
        self.solver.add_clause([literal])

    def cost_of(self, model: Dict[str, object]) -> Value:
        return model[self.objective.name]

    def bit_literal(self, index: int, value: int) -> int:
        return self.blaster.map.assume_literal_for_bit(self.objective.name, index, value)

    # ------------------------------------------------------------------ literals

    def not_nan_literal(self) -> int:
        fp = self.blaster.fp(self.objective.sort)
        return -fp.is_nan(self.cost_vars)

    def improves_literal(self, value: Value, total_order: bool = False) -> int:
        """
        Literal for "cost is strictly better than `value`" in the objective's
        direction. FP uses fp.lt semantics (both zeros excluded below +-0)
        unless `total_order` asks for rank order, where -0 < +0.
        """
        gates = self.blaster.gates
        other = gates.word_const(value.bits)
        cost = self.cost_vars
        lo, hi = (cost, other) if self.direction is Direction.MINIMIZE else (other, cost)
        if self.objective.is_fp:
            fp = self.blaster.fp(self.objective.sort)
            return fp.total_lt(lo, hi) if total_order else fp.lt(lo, hi)
        if self.objective.signedness is Signedness.SIGNED:
            return gates.slt(lo, hi)
        return gates.ult(lo, hi)

    # ------------------------------------------------------------------ index space

    # Index 0 is the best value of the sort in the objective's direction;
    # consecutive indices are consecutive non-NaN values.

    def index_count(self) -> int:
        if self.objective.is_fp:
            return fp_rank_count(self.objective.sort)
        return 1 << self.width

    def index_of(self, value: Value) -> int:
        count = self.index_count()
        if self.objective.is_fp:
            rank = fp_rank(value)
        else:
            rank = bv_value(value, self.objective.signedness) - self._bv_min()
        return rank if self.direction is Direction.MINIMIZE else count - 1 - rank

    def value_at(self, index: int) -> Value:
        count = self.index_count()
        if not 0 <= index < count:
            raise EngineError(f"index {index} outside 0..{count - 1}")
        rank = index if self.direction is Direction.MINIMIZE else count - 1 - index
        if self.objective.is_fp:
            return fp_from_rank(self.objective.sort, rank)
        return BvConst.from_int(self.objective.sort, (rank + self._bv_min()) % count)

    def _bv_min(self) -> int:
        if self.objective.signedness is Signedness.SIGNED:
            return -(1 << (self.width - 1))
        return 0
