"""
The two satisfiability tests run before any FP optimization loop.

1. Solve the formula. Unsat ends the run.
2. If the model's cost is NaN, solve again with cost assumed non-NaN.
   Unsat means NaN is the only possible value: report the first model.

When the search proceeds, `not isNaN(cost)` is added as a permanent
clause in both branches, so no later model can fall back to NaN.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional

from src.core.fp import is_nan
from src.engines.context import OptContext
from src.utils.logger import logger


class PrecheckKind(Enum):
    UNSAT = "unsat"
    NAN_ONLY = "nan-only"
    PROCEED = "proceed"


@dataclass(frozen=True)
class PrecheckOutcome:
    kind: PrecheckKind
    model: Optional[Dict[str, object]] = None


def nan_prechecks(ctx: OptContext) -> PrecheckOutcome:
    model = ctx.check()
    if model is None:
        logger.info("Prechecks: formula is unsatisfiable")
        return PrecheckOutcome(PrecheckKind.UNSAT)

    not_nan = ctx.not_nan_literal()
    if is_nan(ctx.cost_of(model)):
        retry = ctx.check([not_nan])
        if retry is None:
            logger.info("Prechecks: every model assigns NaN to the objective")
            return PrecheckOutcome(PrecheckKind.NAN_ONLY, model)
        logger.info("Prechecks: first model was NaN, a non-NaN model exists")
        model = retry

    ctx.add_permanent(not_nan)
    return PrecheckOutcome(PrecheckKind.PROCEED, model)
