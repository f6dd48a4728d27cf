"""
OMT by linear search: after each model with objective value v, add the
permanent cut "cost strictly better than v" and solve again. The first
unsat call proves v optimal.

For FP the cut uses fp.lt, so a model at -0 or +0 excludes both zeros.
"""

from typing import Optional

from src.core.prefix import PrefixAssignment
from src.engines.base_engine import BaseEngine, SearchState
from src.engines.config import EngineConfig, EngineKind
from src.engines.context import OptContext
from src.engines.enhancements import apply_enhancements, static_attractor_bits
from src.engines.result import OptResult, OptStatus
from src.smtlib.script import Problem
from src.utils.logger import logger


class LinearSearchEngine(BaseEngine):

    def search(self, ctx: OptContext, state: SearchState) -> None:
        if not self.first_model(ctx, state):
            return
        objective = ctx.objective
        hint_bits = static_attractor_bits(objective)
        empty = PrefixAssignment(objective.sort)

        while True:
            value = ctx.cost_of(state.model)
            ctx.add_permanent(ctx.improves_literal(value))
            apply_enhancements(ctx.solver, self.config, ctx.cost_vars, hint_bits, empty, objective.direction)
            model = ctx.check()
            if model is None:
                logger.debug(f"linear: nothing better than {value}")
                break
            logger.debug(f"linear: improved {value} -> {ctx.cost_of(model)}")
            state.model = model
        state.status = OptStatus.OPTIMUM


def omt_linear(problem: Problem, config: Optional[EngineConfig] = None) -> OptResult:
    config = config or EngineConfig(engine=EngineKind.OMT_LINEAR)
    return LinearSearchEngine(config).optimize(problem)
