"""
OMT by binary search over the index space of the objective's sort.

Index 0 is the best value in the optimization direction; every non-NaN
value has its own index (-0 and +0 are adjacent, -0 first when
minimizing). Bounds:

- ub: index of the best model found so far.
- lb: no model has an index below lb.

Each round cuts at pivot = floor(rho * ub + (1 - rho) * lb), falling back
to ub when that is not in ]lb, ub]. The cut is an assumption; when it is
unsat its negation is learned as a permanent clause and lb moves up to the
pivot. The search ends when lb >= ub.
"""

import math
from fractions import Fraction
from typing import Optional

from src.core.prefix import PrefixAssignment
from src.engines.base_engine import BaseEngine, SearchState
from src.engines.config import EngineConfig, EngineKind
from src.engines.context import OptContext
from src.engines.enhancements import apply_enhancements, static_attractor_bits
from src.engines.result import OptResult, OptStatus
from src.smtlib.script import Problem
from src.utils.logger import logger


def pivot_rank(lb: int, ub: int, rho: Fraction) -> int:
    pivot = math.floor(rho * ub + (1 - rho) * lb)
    if not lb < pivot <= ub:
        return ub
    return pivot


class BinarySearchEngine(BaseEngine):

    def search(self, ctx: OptContext, state: SearchState) -> None:
        if not self.first_model(ctx, state):
            return
        objective = ctx.objective
        hint_bits = static_attractor_bits(objective)
        empty = PrefixAssignment(objective.sort)

        lb = 0
        ub = ctx.index_of(ctx.cost_of(state.model))
        while lb < ub:
            pivot = pivot_rank(lb, ub, self.config.rho)
            cut = ctx.improves_literal(ctx.value_at(pivot), total_order=True)
            apply_enhancements(ctx.solver, self.config, ctx.cost_vars, hint_bits, empty, objective.direction)
            model = ctx.check([cut])
            if model is not None:
                state.model = model
                ub = ctx.index_of(ctx.cost_of(model))
                logger.debug(f"binary: pivot {pivot} sat, ub -> {ub}")
            else:
                lb = pivot
                ctx.add_permanent(-cut)
                logger.debug(f"binary: pivot {pivot} unsat, lb -> {lb}")
        state.status = OptStatus.OPTIMUM


def omt_binary(problem: Problem, config: Optional[EngineConfig] = None) -> OptResult:
    config = config or EngineConfig(engine=EngineKind.OMT_BINARY)
    return BinarySearchEngine(config).optimize(problem)
