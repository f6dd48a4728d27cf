from typing import Optional

from src.engines.bit_search import BitSearchEngine
from src.engines.config import EngineConfig, EngineKind
from src.engines.result import OptResult
from src.smtlib.script import Objective, Problem


class OfpBsEngine(BitSearchEngine):
    """
    Bit-wise FP optimization with a dynamic attractor.

    At most n + 2 solver calls for an n-bit objective: two NaN prechecks,
    then at most one per bit.
    """

    def supports(self, objective: Objective) -> bool:
        return objective.is_fp


def ofp_bs(problem: Problem, config: Optional[EngineConfig] = None) -> OptResult:
    config = config or EngineConfig(engine=EngineKind.OFP_BS)
    return OfpBsEngine(config).optimize(problem)
