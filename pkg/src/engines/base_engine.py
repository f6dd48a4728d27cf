from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, Optional

from src.core.prefix import Trajectory
from src.engines.config import EngineConfig
from src.engines.context import OptContext
from src.engines.prechecks import PrecheckKind, nan_prechecks
from src.engines.result import OptResult, OptStats, OptStatus
from src.sat.solver import SolverTimeout
from src.smtlib.script import Objective, Problem
from src.utils.errors import EngineError
from src.utils.logger import logger


@dataclass
class SearchState:
    """What a search has established so far; survives a timeout."""

    status: OptStatus = OptStatus.TIMEOUT
    model: Optional[Dict[str, object]] = None
    trajectory: Optional[Trajectory] = None


class BaseEngine(ABC):
    """
    Abstract base class defining the contract for all optimization engines.
    """

    def __init__(self, config: Optional[EngineConfig] = None):
        self.config = config or EngineConfig()

    @property
    def name(self) -> str:
        return self.__class__.__name__

    def supports(self, objective: Objective) -> bool:
        return True

    def optimize(self, problem: Problem) -> OptResult:
        """
        Optimize `problem.objective` subject to the problem's assertions.
        A timeout is not an error: the best model found so far is returned
        with status TIMEOUT and `partial` set.
        """
        objective = problem.objective
        if objective is None:
            raise EngineError("no objective to optimize")
        if not self.supports(objective):
            raise EngineError(f"{self.name} cannot optimize an objective of sort {objective.sort}")

        logger.info(f"Running {self.name} ({self.config.label}) on {objective.direction.value} "
                    f"{objective.name} : {objective.sort}")
        ctx = OptContext(problem, self.config.timeout)
        state = SearchState()
        try:
            self.search(ctx, state)
        except SolverTimeout:
            logger.warning(f"{self.name}: timeout after {ctx.smt_calls} solver calls, reporting best-so-far")
            state.status = OptStatus.TIMEOUT
        ctx.solver.log_stats()

        result = OptResult(
            status=state.status,
            objective=objective,
            model=state.model,
            stats=OptStats(smt_calls=ctx.smt_calls, wall_ms=ctx.elapsed_ms),
            trajectory=state.trajectory,
            partial=state.status is OptStatus.TIMEOUT,
        )
        logger.info(f"{self.name}: {result.status.value} {result.value_text()} "
                    f"({result.stats.smt_calls} calls, {result.stats.wall_ms:.1f} ms)")
        return result

    def first_model(self, ctx: OptContext, state: SearchState) -> bool:
        """
        Find the model the search starts from, running the NaN prechecks for
        FP objectives. False when the run is already decided (unsat, NaN only).
        """
        if ctx.objective.is_fp:
            outcome = nan_prechecks(ctx)
            if outcome.kind is PrecheckKind.UNSAT:
                state.status = OptStatus.UNSAT
                return False
            state.model = outcome.model
            if outcome.kind is PrecheckKind.NAN_ONLY:
                state.status = OptStatus.NAN_ONLY
                return False
            return True
        state.model = ctx.check()
        if state.model is None:
            state.status = OptStatus.UNSAT
            return False
        return True

    @abstractmethod
    def search(self, ctx: OptContext, state: SearchState) -> None:
        """
        Run the search, keeping `state` current after every solver call.
        Must set `state.status` before returning normally.
        """
        pass
