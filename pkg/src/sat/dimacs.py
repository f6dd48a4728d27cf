# project_root/src/sat/dimacs.py
"""
DIMACS CNF reading and writing, for debugging dumps (`solve --dump-cnf`).
"""

from typing import List, Tuple

from src.sat.solver import SatSolver
from src.utils.errors import SmtLibSyntaxError
from src.utils.logger import logger


def format_dimacs(num_vars: int, clauses: List[List[int]], comments: List[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {num_vars} {len(clauses)}")
    lines.extend(" ".join(str(l) for l in clause) + " 0" for clause in clauses)
    return "\n".join(lines) + "\n"


def dump_dimacs(solver: SatSolver, path: str, comments: List[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_dimacs(solver.num_vars, solver.clauses, comments))
    logger.info(f"Wrote {len(solver.clauses)} clauses over {solver.num_vars} variables to {path}")


def parse_dimacs(text: str) -> Tuple[int, List[List[int]]]:
    """Return (variable count, clauses) from DIMACS text."""
    num_vars = 0
    clauses: List[List[int]] = []
    current: List[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise SmtLibSyntaxError(f"bad DIMACS header {line!r}", lineno, 1)
            num_vars = int(parts[2])
            continue
        for token in line.split():
            lit = int(token)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
                num_vars = max(num_vars, abs(lit))
    if current:
        clauses.append(current)
    return num_vars, clauses


def load_into(solver: SatSolver, num_vars: int, clauses: List[List[int]]) -> None:
    while solver.num_vars < num_vars:
        solver.new_var()
    for clause in clauses:
        solver.add_clause(clause)
