"""
SAT-heuristic enhancements that steer the solver towards the attractor.

- bp: the objective bits become the first decision variables, MSB first.
- pi: each objective bit's saved phase is set to its attractor bit.
- so: both are restricted to the "safe" bits, whose improving value can no
  longer change as more bits get fixed.

They only change the order of the search, never its answer.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from src.core.bitvec import Direction, bv_attractor
from src.core.fp import FpSort, fp_infinity
from src.core.prefix import PrefixAssignment
from src.engines.config import EngineConfig
from src.utils.logger import logger


@dataclass(frozen=True)
class HintPlan:
    priority: Tuple[int, ...] = ()
    polarity: Tuple[Tuple[int, bool], ...] = ()

    @property
    def empty(self) -> bool:
        return not self.priority and not self.polarity


def safe_bits(tau: PrefixAssignment, direction: Direction) -> List[int]:
    """
    Indices of the objective bits whose attractor value is final given `tau`.

    The sign bit always is. Exponent bits are once the sign is decided.
    Fraction bits are once the sign is decided and, if the sign is the one
    whose magnitude should grow (negative when minimizing), a decided
    exponent bit is 0. Every bit of a BV objective is safe.
    """
    sort = tau.sort
    if not isinstance(sort, FpSort):
        return list(range(sort.width))
    if tau.is_empty():
        return [0]
    safe = [0] + list(sort.exponent_indices)
    growing_sign = 1 if direction is Direction.MINIMIZE else 0
    if tau[0] != growing_sign or 0 in tau.decided[1:1 + sort.ebits]:
        safe.extend(sort.fraction_indices)
    return safe


def plan_enhancements(cfg: EngineConfig, cost_vars: Sequence[int], attractor_bits: Sequence[int],
                      tau: PrefixAssignment, direction: Direction) -> HintPlan:
    if not cfg.any_hints:
        return HintPlan()
    indices = safe_bits(tau, direction) if cfg.so else list(range(len(cost_vars)))
    priority = tuple(cost_vars[i] for i in indices) if cfg.bp else ()
    polarity = tuple((cost_vars[i], bool(attractor_bits[i])) for i in indices) if cfg.pi else ()
    return HintPlan(priority, polarity)


def apply_enhancements(solver, cfg: EngineConfig, cost_vars: Sequence[int], attractor_bits: Sequence[int],
                       tau: PrefixAssignment, direction: Direction) -> HintPlan:
    """Issue the solver hint calls for the current attractor and prefix; no calls when all flags are off."""
    plan = plan_enhancements(cfg, cost_vars, attractor_bits, tau, direction)
    if plan.empty:
        return plan
    if cfg.bp:
        solver.set_branch_priority(list(plan.priority))
    for var, phase in plan.polarity:
        solver.set_polarity_hint(var, phase)
    logger.debug(f"Hints: {len(plan.priority)} priority vars, {len(plan.polarity)} polarity hints")
    return plan


def static_attractor_bits(objective) -> Tuple[int, ...]:
    """Hint target of the cut-based engines: the extremal value of the sort."""
    if objective.is_fp:
        return fp_infinity(objective.sort, objective.direction is Direction.MINIMIZE).bits
    return bv_attractor(objective.sort, objective.signedness, objective.direction).bits
