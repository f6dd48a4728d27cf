# project_root/src/core/prefix.py
"""
Partial assignments over the most-significant bits of an objective and the
per-bit record of an optimization run.

Both are sort-agnostic: they only need a `width`, so OBV-BS and OFP-BS share them.
"""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, List, Optional, Tuple, Union

from src.core.bitvec import BvSort
from src.utils.errors import InternalError

if TYPE_CHECKING:
    from src.core.fp import FpSort


@dataclass(frozen=True)
class PrefixAssignment:
    """Decisions on bits 0..k-1 (MSB-first) of an objective of sort `sort`."""

    sort: Union[BvSort, "FpSort"]
    decided: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "decided", tuple(int(b) for b in self.decided))
        if len(self.decided) > self.width:
            raise InternalError(f"prefix of length {len(self.decided)} exceeds width {self.width}")

    @property
    def width(self) -> int:
        return self.sort.width

    @property
    def k(self) -> int:
        return len(self.decided)

    def __len__(self) -> int:
        return len(self.decided)

    def __getitem__(self, index):
        return self.decided[index]

    def is_empty(self) -> bool:
        return not self.decided

    def is_complete(self) -> bool:
        return len(self.decided) == self.width

    def extend(self, bit: int) -> "PrefixAssignment":
        return PrefixAssignment(self.sort, self.decided + (bit,))

    def restriction(self, i: int) -> "PrefixAssignment":
        """The prefix on the first `i` bits."""
        if i > len(self.decided):
            raise InternalError(f"cannot restrict a length-{self.k} prefix to {i} bits")
        return PrefixAssignment(self.sort, self.decided[:i])

    def admits(self, bits) -> bool:
        """True iff the full pattern `bits` agrees with every decided bit."""
        return tuple(bits[: self.k]) == self.decided


@dataclass(frozen=True)
class TrajectoryRecord:
    """
    One loop iteration of a bit-wise search: the target tried for bit `k`,
    the outcome, and whether a solver call was needed (model reuse skips it).
    """

    k: int
    target: int
    outcome: str  # "sat" | "unsat"
    solver_called: bool
    attractor: Optional[object] = None

    @property
    def satisfied(self) -> bool:
        return self.outcome == "sat"


@dataclass
class Trajectory:
    records: List[TrajectoryRecord] = field(default_factory=list)

    def append(self, record: TrajectoryRecord) -> None:
        if record.k != len(self.records):
            raise InternalError(f"trajectory record for bit {record.k} out of order")
        self.records.append(record)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def outcomes(self) -> List[str]:
        return [r.outcome for r in self.records]

    @property
    def attractors(self) -> list:
        return [r.attractor for r in self.records]

    @property
    def solver_calls(self) -> int:
        return sum(1 for r in self.records if r.solver_called)
