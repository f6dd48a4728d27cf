import itertools
from typing import Dict, List, Optional, Sequence

import pytest

from src.smtlib.parser import parse
from src.smtlib.script import Problem

LOWER_BOUND_SCRIPT = """
(declare-const cost (_ FloatingPoint 3 5))
(assert (fp.geq cost (fp #b0 #b110 #b1101)))
(minimize cost)
(check-sat)
(get-objectives)
"""


def problem_from(text: str) -> Problem:
    return parse(text).to_problem()


def truth_table_sat(num_vars: int, clauses: Sequence[Sequence[int]],
                    assumptions: Sequence[int] = ()) -> Optional[Dict[int, bool]]:
    """Exhaustive reference: the first satisfying assignment, or None."""
    for values in itertools.product((False, True), repeat=num_vars):
        model = {v + 1: values[v] for v in range(num_vars)}

        def true(lit):
            return model[abs(lit)] if lit > 0 else not model[abs(lit)]

        if all(true(a) for a in assumptions) and all(any(true(l) for l in c) for c in clauses):
            return model
    return None


def reference_dpll(clauses: List[List[int]], assignment: Optional[Dict[int, bool]] = None) -> bool:
    """Plain recursive DPLL with unit propagation; slow, obviously correct."""
    assignment = dict(assignment or {})
    while True:
        unit = None
        remaining = []
        for clause in clauses:
            if any(assignment.get(abs(l)) == (l > 0) for l in clause):
                continue
            open_lits = [l for l in clause if abs(l) not in assignment]
            if not open_lits:
                return False
            if len(open_lits) == 1:
                unit = open_lits[0]
            remaining.append(open_lits)
        if not remaining:
            return True
        if unit is None:
            break
        assignment[abs(unit)] = unit > 0
    var = abs(remaining[0][0])
    return any(reference_dpll(clauses, {**assignment, var: phase}) for phase in (True, False))


@pytest.fixture
def lower_bound_text() -> str:
    return LOWER_BOUND_SCRIPT


@pytest.fixture
def lower_bound_problem() -> Problem:
    return problem_from(LOWER_BOUND_SCRIPT)
