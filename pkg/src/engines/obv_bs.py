from typing import Optional

from src.engines.bit_search import BitSearchEngine
from src.engines.config import EngineConfig, EngineKind
from src.engines.result import OptResult
from src.smtlib.script import Objective, Problem


class ObvBsEngine(BitSearchEngine):
    """Bit-wise BV optimization towards the static attractor of the signedness."""

    def supports(self, objective: Objective) -> bool:
        return not objective.is_fp


def obv_bs(problem: Problem, config: Optional[EngineConfig] = None) -> OptResult:
    config = config or EngineConfig(engine=EngineKind.OBV_BS)
    return ObvBsEngine(config).optimize(problem)
