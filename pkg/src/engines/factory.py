from typing import Optional

from src.engines.base_engine import BaseEngine
from src.engines.binary_search import BinarySearchEngine
from src.engines.config import EngineConfig, EngineKind
from src.engines.linear_search import LinearSearchEngine
from src.engines.obv_bs import ObvBsEngine
from src.engines.ofp_bs import OfpBsEngine
from src.engines.result import OptResult
from src.smtlib.script import Objective, Problem
from src.utils.logger import logger

ENGINES = {
    EngineKind.OFP_BS: OfpBsEngine,
    EngineKind.OBV_BS: ObvBsEngine,
    EngineKind.OMT_LINEAR: LinearSearchEngine,
    EngineKind.OMT_BINARY: BinarySearchEngine,
}


def create_engine(config: EngineConfig, objective: Optional[Objective] = None) -> BaseEngine:
    """
    Instantiate the configured engine. The two bit-wise engines stand in
    for each other: asking for ofp-bs on a BV objective runs obv-bs.
    """
    kind = config.engine
    if objective is not None and kind in (EngineKind.OFP_BS, EngineKind.OBV_BS):
        wanted = EngineKind.OFP_BS if objective.is_fp else EngineKind.OBV_BS
        if wanted is not kind:
            logger.info(f"{kind.value} does not apply to a {objective.sort} objective, using {wanted.value}")
            kind = wanted
    return ENGINES[kind](config)


def optimize(problem: Problem, config: Optional[EngineConfig] = None) -> OptResult:
    config = config or EngineConfig()
    return create_engine(config, problem.objective).optimize(problem)
