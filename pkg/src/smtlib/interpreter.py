# project_root/src/smtlib/interpreter.py
"""
Executes a parsed script and yields the SMT-LIB response lines.

Output grammar, one item per line (multi-line for the model):

    sat | unsat | unknown
    smt_calls=<k> wall_ms=<t>              (with show_stats)
    (objectives (<name> <value>))          (`:partial` appended after a timeout)
    (model
      (define-fun <name> () <sort> <literal>) ; <exact value>
    )
    ((<term> <value>) ...)                 (get-value)

Each check-sat works on a fresh solver built from every assertion seen so
far, so the output never depends on the order of earlier queries.
"""

import time
from typing import Dict, Iterator, List, Optional

from src.blast.bitblaster import Bitblaster
from src.core.bitvec import BvConst, Signedness, bv_value
from src.core.fp import FpBits, fp_value
from src.engines.config import EngineConfig
from src.engines.factory import optimize
from src.engines.result import OptResult, OptStatus
from src.sat.dimacs import dump_dimacs
from src.sat.solver import SatSolver, SolverTimeout
from src.smtlib.evaluator import evaluate
from src.smtlib.printer import quote_symbol, sort_to_smtlib, term_to_smtlib, value_to_smtlib
from src.smtlib.script import (Assert, CheckSat, DeclareConst, Echo, Exit, GetModel, GetObjectives,
                               GetValue, Optimize, Problem, Script, SetInfo, SetLogic, SetOption)
from src.utils.errors import EngineError, OmtBitsError
from src.utils.logger import logger


class Interpreter:
    def __init__(self, config: Optional[EngineConfig] = None, show_stats: bool = False,
                 dump_cnf: Optional[str] = None):
        self.config = config or EngineConfig()
        self.show_stats = show_stats
        self.dump_cnf = dump_cnf
        self.declarations: Dict[str, object] = {}
        self.assertions: List = []
        self.objective = None
        self.model: Optional[Dict[str, object]] = None
        self.last: Optional[OptResult] = None
        self.last_status: Optional[str] = None

    def run(self, script: Script) -> Iterator[str]:
        for index, command in enumerate(script.commands):
            if isinstance(command, Exit):
                return
            try:
                yield from self.execute(command)
            except EngineError as e:
                if e.command_index is not None:
                    raise
                raise EngineError(str(e), index) from e
            except OmtBitsError as e:
                raise EngineError(str(e), index) from e

    def execute(self, command) -> Iterator[str]:
        if isinstance(command, (SetOption, SetInfo, SetLogic)):
            logger.debug(f"Ignoring {type(command).__name__}: {command}")
        elif isinstance(command, DeclareConst):
            self.declarations[command.name] = command.sort
        elif isinstance(command, Assert):
            self.assertions.append(command.term)
        elif isinstance(command, Optimize):
            self.objective = command.objective
        elif isinstance(command, CheckSat):
            yield from self._check_sat()
        elif isinstance(command, GetModel):
            yield from self._get_model()
        elif isinstance(command, GetObjectives):
            yield self._get_objectives()
        elif isinstance(command, GetValue):
            yield self._get_value(command)
        elif isinstance(command, Echo):
            yield command.text[1:-1].replace('""', '"')

    # ------------------------------------------------------------------ check-sat

    def _problem(self) -> Problem:
        return Problem(dict(self.declarations), tuple(self.assertions), self.objective)

    def _check_sat(self) -> Iterator[str]:
        problem = self._problem()
        if self.dump_cnf:
            self._dump(problem)
        if problem.objective is None:
            status, calls, wall_ms = self._plain_check(problem)
        else:
            self.last = optimize(problem, self.config)
            self.model = self.last.model
            calls, wall_ms = self.last.stats.smt_calls, self.last.stats.wall_ms
            if self.last.status is OptStatus.UNSAT:
                status = "unsat"
            elif self.model is None:
                status = "unknown"
            else:
                status = "sat"
        self.last_status = status
        yield status
        if self.show_stats:
            yield f"smt_calls={calls} wall_ms={wall_ms:.0f}"

    def _plain_check(self, problem: Problem):
        started = time.monotonic()
        solver = SatSolver()
        blaster = Bitblaster(solver)
        blaster.declare_all(problem.declarations)
        for assertion in problem.assertions:
            blaster.assert_formula(assertion)
        deadline = started + self.config.timeout if self.config.timeout else None
        self.last = None
        try:
            result = solver.solve((), deadline)
        except SolverTimeout:
            logger.warning("check-sat: timeout")
            self.model = None
            return "unknown", 1, (time.monotonic() - started) * 1000.0
        self.model = blaster.map.decode_all(result) if result.is_sat else None
        return ("sat" if result.is_sat else "unsat"), 1, (time.monotonic() - started) * 1000.0

    def _dump(self, problem: Problem) -> None:
        solver = SatSolver()
        blaster = Bitblaster(solver)
        blaster.declare_all(problem.declarations)
        for assertion in problem.assertions:
            blaster.assert_formula(assertion)
        comments = [f"{name} {' '.join(str(v) for v in bits)}" for name, bits in blaster.map.variables.items()]
        dump_dimacs(solver, self.dump_cnf, comments)

    # ------------------------------------------------------------------ output

    def _require_model(self, what: str) -> Dict[str, object]:
        if self.model is None:
            raise EngineError(f"{what} is not available: last check-sat was {self.last_status or 'not run'}")
        return self.model

    def _exact(self, name: str, value) -> str:
        if isinstance(value, FpBits):
            return str(fp_value(value))
        if isinstance(value, BvConst):
            signed = (self.objective is not None and self.objective.name == name
                      and self.objective.signedness is Signedness.SIGNED)
            return str(bv_value(value, Signedness.SIGNED if signed else Signedness.UNSIGNED))
        return ""

    def _get_model(self) -> Iterator[str]:
        model = self._require_model("model")
        yield "(model"
        for name, sort in self.declarations.items():
            if name not in model:
                continue
            value = model[name]
            line = f"  (define-fun {quote_symbol(name)} () {sort_to_smtlib(sort)} {value_to_smtlib(value)})"
            exact = self._exact(name, value)
            yield f"{line} ; {exact}" if exact else line
        yield ")"

    def _get_objectives(self) -> str:
        if self.last is None or self.last.model is None:
            return "(objectives)"
        suffix = " :partial" if self.last.partial else ""
        return f"(objectives ({quote_symbol(self.objective.name)} {self.last.value_text()}{suffix}))"

    def _get_value(self, command: GetValue) -> str:
        model = self._require_model("get-value")
        pairs = [f"({term_to_smtlib(t)} {value_to_smtlib(evaluate(t, model))})" for t in command.terms]
        return f"({' '.join(pairs)})"


def interpret(script: Script, config: Optional[EngineConfig] = None, show_stats: bool = False) -> List[str]:
    return list(Interpreter(config, show_stats).run(script))
