# project_root/src/sat/solver.py
"""
Incremental CDCL SAT solver.

The public interface speaks DIMACS literals (non-zero ints, negative means
negated). Internally a literal is `2 * var + sign` so that negation is `lit ^ 1`
and per-literal arrays can be plain lists.

Features, kept to what the optimization engines need:
- two watched literals, first-UIP clause learning, non-chronological backjumping
- VSIDS activity heap, with an optional priority tier of variables decided first
- phase saving; polarity hints write straight into the saved phase
- Luby restarts
- solving under assumptions; clauses added between calls are permanent

No clause deletion, no preprocessing beyond level-0 unit propagation.
"""

import heapq
import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence

from src.utils.errors import InternalError, OmtBitsError
from src.utils.logger import logger


class SolverTimeout(OmtBitsError):
    """The deadline passed while a solve call was running."""


class SatStatus(Enum):
    SAT = "sat"
    UNSAT = "unsat"


@dataclass(frozen=True)
class SatResult:
    status: SatStatus
    model: Optional[Sequence[bool]] = None  # index 0 unused

    @property
    def is_sat(self) -> bool:
        return self.status is SatStatus.SAT

    def value(self, lit: int) -> bool:
        """Truth value of a DIMACS literal in the model."""
        if self.model is None:
            raise InternalError("no model available for an unsat result")
        v = self.model[abs(lit)]
        return v if lit > 0 else not v


def luby(i: int) -> int:
    """i-th element (1-based) of the Luby sequence 1 1 2 1 1 2 4 ..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1


class SatSolver:
    RESTART_BASE = 100
    VAR_DECAY = 0.95
    RESCALE_LIMIT = 1e100

    def __init__(self):
        self._num_vars = 0
        self._val: List[int] = [0, 0]          # per literal: 1 true, -1 false, 0 unassigned
        self._level: List[int] = [0]
        self._reason: List[Optional[int]] = [None]
        self._phase: List[bool] = [False]
        self._activity: List[float] = [0.0]
        self._heap: List = []
        self._var_inc = 1.0

        self._clauses: List[List[int]] = []
        self._watches: List[List[int]] = [[], []]
        self._original: List[List[int]] = []   # DIMACS form, as added

        self._trail: List[int] = []
        self._trail_lim: List[int] = []
        self._qhead = 0
        self._ok = True

        self._priority: List[int] = []

        self.solve_calls = 0
        self.conflicts = 0
        self.decisions = 0
        self.propagations = 0

    # ------------------------------------------------------------------ variables

    @property
    def num_vars(self) -> int:
        return self._num_vars

    @property
    def clauses(self) -> List[List[int]]:
        """Every clause handed to `add_clause`, in DIMACS form."""
        return self._original

    def new_var(self) -> int:
        self._num_vars += 1
        v = self._num_vars
        self._val.extend((0, 0))
        self._level.append(0)
        self._reason.append(None)
        self._phase.append(False)
        self._activity.append(0.0)
        self._watches.extend(([], []))
        heapq.heappush(self._heap, (-0.0, v))
        return v

    def new_vars(self, count: int) -> List[int]:
        return [self.new_var() for _ in range(count)]

    def _lit(self, dimacs: int) -> int:
        v = abs(dimacs)
        if dimacs == 0 or v > self._num_vars:
            raise InternalError(f"literal {dimacs} references an unallocated variable")
        return 2 * v + (dimacs < 0)

    # ------------------------------------------------------------------ heuristics

    def set_polarity_hint(self, var: int, phase: bool) -> None:
        self._lit(var)
        self._phase[var] = bool(phase)

    def set_branch_priority(self, variables: Sequence[int]) -> None:
        for v in variables:
            self._lit(v)
        self._priority = list(variables)

    # ------------------------------------------------------------------ clauses

    def add_clause(self, literals: Iterable[int]) -> bool:
        """
        Permanently assert a clause. Returns False once the instance is
        known to be unsatisfiable (an empty clause was derived).
        """
        lits = []
        for x in literals:
            lit = self._lit(x)
            if lit ^ 1 in lits:
                return self._ok  # tautology
            if lit not in lits:
                lits.append(lit)
        self._original.append([(l >> 1) * (-1 if l & 1 else 1) for l in lits])
        if not self._ok:
            return False

        # Drop literals false at level 0; a true one satisfies the clause.
        kept = []
        for lit in lits:
            value = self._val[lit]
            if value == 1:
                return True
            if value == 0:
                kept.append(lit)
        if not kept:
            self._ok = False
            return False
        if len(kept) == 1:
            self._enqueue(kept[0], None)
            if self._propagate() is not None:
                self._ok = False
            return self._ok
        self._attach(kept)
        return True

    def _attach(self, lits: List[int]) -> int:
        index = len(self._clauses)
        self._clauses.append(lits)
        self._watches[lits[0]].append(index)
        self._watches[lits[1]].append(index)
        return index

    # ------------------------------------------------------------------ trail

    def _decision_level(self) -> int:
        return len(self._trail_lim)

    def _enqueue(self, lit: int, reason: Optional[int]) -> None:
        v = lit >> 1
        self._val[lit] = 1
        self._val[lit ^ 1] = -1
        self._level[v] = len(self._trail_lim)
        self._reason[v] = reason
        self._trail.append(lit)

    def _backtrack(self, level: int) -> None:
        if len(self._trail_lim) <= level:
            return
        lim = self._trail_lim[level]
        for lit in reversed(self._trail[lim:]):
            v = lit >> 1
            self._val[lit] = 0
            self._val[lit ^ 1] = 0
            self._reason[v] = None
            self._phase[v] = not (lit & 1)
            heapq.heappush(self._heap, (-self._activity[v], v))
        del self._trail[lim:]
        del self._trail_lim[level:]
        self._qhead = lim

    def _propagate(self) -> Optional[int]:
        """Unit propagation; returns the index of a conflicting clause or None."""
        val = self._val
        clauses = self._clauses
        watches = self._watches
        while self._qhead < len(self._trail):
            p = self._trail[self._qhead]
            self._qhead += 1
            self.propagations += 1
            false_lit = p ^ 1
            ws = watches[false_lit]
            kept: List[int] = []
            i = 0
            n_ws = len(ws)
            while i < n_ws:
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                if val[first] == 1:
                    kept.append(ci)
                    continue
                for k in range(2, len(c)):
                    if val[c[k]] != -1:
                        c[1], c[k] = c[k], c[1]
                        watches[c[1]].append(ci)
                        break
                else:
                    kept.append(ci)
                    if val[first] == -1:
                        kept.extend(ws[i:])
                        watches[false_lit] = kept
                        self._qhead = len(self._trail)
                        return ci
                    self._enqueue(first, ci)
            watches[false_lit] = kept
        return None

    # ------------------------------------------------------------------ learning

    def _bump(self, v: int) -> None:
        self._activity[v] += self._var_inc
        if self._activity[v] > self.RESCALE_LIMIT:
            for u in range(1, self._num_vars + 1):
                self._activity[u] *= 1e-100
            self._var_inc *= 1e-100
            self._heap = [(-self._activity[u], u) for u in range(1, self._num_vars + 1)
                          if self._val[2 * u] == 0]
            heapq.heapify(self._heap)
        elif self._val[2 * v] == 0:
            heapq.heappush(self._heap, (-self._activity[v], v))

    def _analyze(self, confl: int):
        """First-UIP analysis; returns (learnt clause, backjump level)."""
        seen = set()
        learnt = [0]
        counter = 0
        p = None
        index = len(self._trail) - 1
        current = self._decision_level()
        clause = self._clauses[confl]
        while True:
            for q in clause:
                v = q >> 1
                if p is not None and v == p >> 1:
                    continue
                if v not in seen and self._level[v] > 0:
                    seen.add(v)
                    self._bump(v)
                    if self._level[v] >= current:
                        counter += 1
                    else:
                        learnt.append(q)
            while (self._trail[index] >> 1) not in seen:
                index -= 1
            p = self._trail[index]
            index -= 1
            seen.discard(p >> 1)
            counter -= 1
            if counter == 0:
                break
            clause = self._clauses[self._reason[p >> 1]]
        learnt[0] = p ^ 1

        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda j: self._level[learnt[j] >> 1])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, self._level[learnt[1] >> 1]

    # ------------------------------------------------------------------ decisions

    def _pick_branch_var(self) -> int:
        for v in self._priority:
            if self._val[2 * v] == 0:
                return v
        heap = self._heap
        while heap:
            neg_act, v = heapq.heappop(heap)
            if self._val[2 * v] == 0 and -neg_act == self._activity[v]:
                return v
        # Stale heap entries only: fall back to a linear scan.
        for v in range(1, self._num_vars + 1):
            if self._val[2 * v] == 0:
                return v
        return 0

    # ------------------------------------------------------------------ solving

    def solve(self, assumptions: Sequence[int] = (), deadline: Optional[float] = None) -> SatResult:
        """
        Decide the asserted clauses together with `assumptions` (DIMACS literals).
        `deadline` is a `time.monotonic()` instant after which SolverTimeout is raised.
        """
        self.solve_calls += 1
        assumed = [self._lit(a) for a in assumptions]
        if not self._ok:
            return SatResult(SatStatus.UNSAT)
        try:
            return self._search(assumed, deadline)
        finally:
            self._backtrack(0)

    solve_under_assumptions = solve

    def _search(self, assumed: List[int], deadline: Optional[float]) -> SatResult:
        if self._propagate() is not None:
            self._ok = False
            return SatResult(SatStatus.UNSAT)

        restarts = 0
        budget = self.RESTART_BASE * luby(1)
        conflicts_here = 0
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                conflicts_here += 1
                if self._decision_level() == 0:
                    self._ok = False
                    return SatResult(SatStatus.UNSAT)
                learnt, back_level = self._analyze(confl)
                self._backtrack(back_level)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._enqueue(learnt[0], self._attach(learnt))
                self._var_inc /= self.VAR_DECAY
                if deadline is not None and conflicts_here % 64 == 0 and time.monotonic() > deadline:
                    raise SolverTimeout("solver deadline exceeded")
                continue

            if conflicts_here >= budget:
                restarts += 1
                budget += self.RESTART_BASE * luby(restarts + 1)
                self._backtrack(0)
                continue

            next_lit = None
            while self._decision_level() < len(assumed):
                a = assumed[self._decision_level()]
                if self._val[a] == 1:
                    self._trail_lim.append(len(self._trail))
                elif self._val[a] == -1:
                    return SatResult(SatStatus.UNSAT)
                else:
                    next_lit = a
                    break

            if next_lit is None:
                v = self._pick_branch_var()
                if v == 0:
                    model = [False] + [self._val[2 * u] == 1 for u in range(1, self._num_vars + 1)]
                    return SatResult(SatStatus.SAT, model)
                self.decisions += 1
                if deadline is not None and self.decisions % 256 == 0 and time.monotonic() > deadline:
                    raise SolverTimeout("solver deadline exceeded")
                next_lit = 2 * v + (0 if self._phase[v] else 1)

            self._trail_lim.append(len(self._trail))
            self._enqueue(next_lit, None)

    def stats(self) -> dict:
        return {
            "solve_calls": self.solve_calls,
            "conflicts": self.conflicts,
            "decisions": self.decisions,
            "propagations": self.propagations,
            "vars": self._num_vars,
            "clauses": len(self._original),
        }

    def log_stats(self) -> None:
        logger.debug(f"SAT stats: {self.stats()}")
