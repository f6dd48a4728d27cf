# project_root/src/smtlib/script.py
"""
Parsed SMT-LIB scripts: one dataclass per supported command, plus the
`Objective` and `Problem` views the engines and the oracle consume.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from src.core.bitvec import BvSort, Direction, Signedness
from src.core.fp import FpSort
from src.smtlib.terms import Sort, Term, mk_var


@dataclass(frozen=True)
class SetOption:
    key: str
    value: str


@dataclass(frozen=True)
class SetInfo:
    key: str
    value: str


@dataclass(frozen=True)
class SetLogic:
    logic: str


@dataclass(frozen=True)
class DeclareConst:
    name: str
    sort: Sort


@dataclass(frozen=True)
class DefineFun:
    name: str
    params: Tuple[Tuple[str, Sort], ...]
    sort: Sort
    body: Term


@dataclass(frozen=True)
class Assert:
    term: Term


@dataclass(frozen=True)
class Objective:
    """Single optimization target; always a declared variable after parsing."""

    name: str
    direction: Direction
    sort: Union[BvSort, FpSort]
    signedness: Signedness = Signedness.UNSIGNED

    @property
    def is_fp(self) -> bool:
        return isinstance(self.sort, FpSort)

    @property
    def width(self) -> int:
        return self.sort.width

    @property
    def term(self) -> Term:
        return mk_var(self.name, self.sort)


@dataclass(frozen=True)
class Optimize:
    objective: Objective


@dataclass(frozen=True)
class CheckSat:
    pass


@dataclass(frozen=True)
class GetModel:
    pass


@dataclass(frozen=True)
class GetObjectives:
    pass


@dataclass(frozen=True)
class GetValue:
    terms: Tuple[Term, ...]


@dataclass(frozen=True)
class Echo:
    text: str


@dataclass(frozen=True)
class Exit:
    pass


Command = Union[SetOption, SetInfo, SetLogic, DeclareConst, DefineFun, Assert,
                Optimize, CheckSat, GetModel, GetObjectives, GetValue, Echo, Exit]


@dataclass
class Script:
    commands: List[Command] = field(default_factory=list)

    @property
    def declarations(self) -> Dict[str, Sort]:
        return {c.name: c.sort for c in self.commands if isinstance(c, DeclareConst)}

    @property
    def assertions(self) -> List[Term]:
        return [c.term for c in self.commands if isinstance(c, Assert)]

    @property
    def objective(self) -> Optional[Objective]:
        for c in self.commands:
            if isinstance(c, Optimize):
                return c.objective
        return None

    def to_problem(self) -> "Problem":
        return Problem(self.declarations, tuple(self.assertions), self.objective)


@dataclass(frozen=True)
class Problem:
    """A formula (declarations + assertions) with an optional objective."""

    declarations: Dict[str, Sort]
    assertions: Tuple[Term, ...]
    objective: Optional[Objective] = None

    def with_objective(self, objective: Objective) -> "Problem":
        return Problem(self.declarations, self.assertions, objective)
