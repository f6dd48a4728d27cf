from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Union

from src.core.bitvec import BvConst, bv_value
from src.core.fp import FpBits, FpValue, fp_value
from src.core.prefix import Trajectory
from src.smtlib.script import Objective


class OptStatus(Enum):
    UNSAT = "unsat"
    OPTIMUM = "optimum"
    NAN_ONLY = "nan-only"
    TIMEOUT = "timeout"


@dataclass
class OptStats:
    smt_calls: int = 0
    wall_ms: float = 0.0


@dataclass
class OptResult:
    """
    Outcome of one optimization run.

    With OPTIMUM or NAN_ONLY, `model` assigns every declared variable and
    `model[objective.name]` is `optimum`. With TIMEOUT, `model` is the best
    model found before the deadline (possibly None) and `partial` is set.
    """

    status: OptStatus
    objective: Objective
    model: Optional[Dict[str, object]] = None
    stats: OptStats = field(default_factory=OptStats)
    trajectory: Optional[Trajectory] = None
    partial: bool = False

    @property
    def has_model(self) -> bool:
        return self.model is not None

    @property
    def optimum(self) -> Optional[Union[BvConst, FpBits]]:
        if self.model is None:
            return None
        return self.model[self.objective.name]

    @property
    def optimum_bits(self):
        return None if self.optimum is None else self.optimum.bits

    @property
    def optimum_value(self) -> Optional[Union[int, FpValue]]:
        """Exact value of the optimum: FpValue for FP, integer for BV."""
        best = self.optimum
        if best is None:
            return None
        if isinstance(best, FpBits):
            return fp_value(best)
        return bv_value(best, self.objective.signedness)

    def value_text(self) -> str:
        value = self.optimum_value
        return "" if value is None else str(value)
