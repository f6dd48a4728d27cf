# project_root/src/harness/oracle.py
"""
Reference answers for the optimization engines.

Nothing here goes through `src.engines`: the oracle only uses the SAT
solver, the bit-blaster and the exact orders of `src.core`, so it can
judge the engines independently.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple, Union

from src.blast.bitblaster import Bitblaster
from src.core.bitvec import BvConst, Direction, Signedness, bv_value, int_to_bits
from src.core.fp import FpBits, FpValue, fp_gt, fp_lt, fp_value, is_nan
from src.core.prefix import Trajectory
from src.sat.solver import SatSolver
from src.smtlib.script import Objective, Problem
from src.utils.config import ORACLE_MAX_WIDTH
from src.utils.errors import EngineError, OracleGuardrailError
from src.utils.logger import logger

Pattern = Union[BvConst, FpBits]


class OracleStatus(Enum):
    UNSAT = "unsat"
    NAN_ONLY = "nan-only"
    OPTIMUM = "optimum"


@dataclass(frozen=True)
class OracleResult:
    status: OracleStatus
    pattern: Optional[Pattern] = None
    candidates_tested: int = 0

    @property
    def bits(self) -> Optional[Tuple[int, ...]]:
        return None if self.pattern is None else self.pattern.bits

    def value(self, objective: Objective) -> Optional[Union[int, FpValue]]:
        if self.pattern is None:
            return None
        if isinstance(self.pattern, FpBits):
            return fp_value(self.pattern)
        return bv_value(self.pattern, objective.signedness)


def _fresh(problem: Problem):
    objective = problem.objective
    if objective is None:
        raise EngineError("the oracle needs an objective")
    solver = SatSolver()
    blaster = Bitblaster(solver)
    blaster.declare_all(problem.declarations)
    cost_vars = list(blaster.declare(objective.name, objective.sort))
    for assertion in problem.assertions:
        blaster.assert_formula(assertion)
    return solver, blaster, cost_vars


def _pattern(objective: Objective, bits) -> Pattern:
    if objective.is_fp:
        return FpBits(objective.sort, bits)
    return BvConst(objective.sort, bits)


def strictly_better(objective: Objective, a: Pattern, b: Pattern) -> bool:
    """True iff non-NaN `a` beats `b` in the objective's direction."""
    minimize = objective.direction is Direction.MINIMIZE
    if objective.is_fp:
        return fp_lt(a, b) if minimize else fp_gt(a, b)
    va, vb = bv_value(a, objective.signedness), bv_value(b, objective.signedness)
    return va < vb if minimize else va > vb


def _fix(cost_vars, bits) -> List[int]:
    return [v if b else -v for v, b in zip(cost_vars, bits)]


def brute_force_opt(problem: Problem) -> OracleResult:
    """Test every pattern of the objective under assumptions and keep the best non-NaN one."""
    objective = problem.objective
    width = objective.width
    if width > ORACLE_MAX_WIDTH:
        raise OracleGuardrailError(f"objective of width {width} exceeds the oracle limit of {ORACLE_MAX_WIDTH}")

    solver, _, cost_vars = _fresh(problem)
    best: Optional[Pattern] = None
    first_nan: Optional[Pattern] = None
    tested = 0
    for p in range(1 << width):
        bits = int_to_bits(p, width)
        tested += 1
        if not solver.solve(_fix(cost_vars, bits)).is_sat:
            continue
        candidate = _pattern(objective, bits)
        if objective.is_fp and is_nan(candidate):
            first_nan = first_nan or candidate
            continue
        if best is None or strictly_better(objective, candidate, best):
            best = candidate

    if best is not None:
        return OracleResult(OracleStatus.OPTIMUM, best, tested)
    if first_nan is not None:
        return OracleResult(OracleStatus.NAN_ONLY, first_nan, tested)
    return OracleResult(OracleStatus.UNSAT, None, tested)


def verify_optimum(problem: Problem, claimed: Tuple[int, ...]) -> bool:
    """
    (a) the formula admits cost = claimed, and (b) no non-NaN cost is
    strictly better. A NaN claim is accepted only when no non-NaN cost
    exists at all. Both checks run on fresh solvers.
    """
    objective = problem.objective
    solver, _, cost_vars = _fresh(problem)
    if not solver.solve(_fix(cost_vars, claimed)).is_sat:
        logger.debug(f"verify_optimum: claimed {claimed} violates the formula")
        return False

    solver, blaster, cost_vars = _fresh(problem)
    pattern = _pattern(objective, claimed)
    if objective.is_fp:
        fp = blaster.fp(objective.sort)
        solver.add_clause([-fp.is_nan(cost_vars)])
        if not is_nan(pattern):
            other = blaster.gates.word_const(claimed)
            lo, hi = (cost_vars, other) if objective.direction is Direction.MINIMIZE else (other, cost_vars)
            solver.add_clause([fp.lt(lo, hi)])
    else:
        gates = blaster.gates
        other = gates.word_const(claimed)
        lo, hi = (cost_vars, other) if objective.direction is Direction.MINIMIZE else (other, cost_vars)
        signed = objective.signedness is Signedness.SIGNED
        solver.add_clause([gates.slt(lo, hi) if signed else gates.ult(lo, hi)])
    better_exists = solver.solve().is_sat
    if better_exists:
        logger.debug(f"verify_optimum: a value better than {pattern} exists")
    return not better_exists


def recheck_trajectory(problem: Problem, trajectory: Trajectory) -> List[int]:
    """
    Re-solve every unsat record on a fresh solver: the formula (with cost
    non-NaN for FP), the prefix before the record and the record's target
    bit must be jointly unsatisfiable. Returns the indices of records that
    fail the check.
    """
    objective = problem.objective
    violations = []
    decided: List[int] = []
    for record in trajectory:
        if record.outcome == "unsat":
            solver, blaster, cost_vars = _fresh(problem)
            if objective.is_fp:
                solver.add_clause([-blaster.fp(objective.sort).is_nan(cost_vars)])
            assumptions = _fix(cost_vars[:record.k], decided)
            assumptions.append(cost_vars[record.k] if record.target else -cost_vars[record.k])
            if solver.solve(assumptions).is_sat:
                violations.append(record.k)
        decided.append(record.target if record.satisfied else 1 - record.target)
    return violations
