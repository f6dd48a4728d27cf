import random

import pytest

from conftest import reference_dpll, truth_table_sat
from src.sat.dimacs import format_dimacs, load_into, parse_dimacs
from src.sat.solver import SatSolver, luby
from src.utils.errors import InternalError, SmtLibSyntaxError


def random_cnf(rng, num_vars, num_clauses, k=3):
    return [[rng.choice((1, -1)) * v for v in rng.sample(range(1, num_vars + 1), k)]
            for _ in range(num_clauses)]


def solver_for(num_vars, clauses):
    solver = SatSolver()
    load_into(solver, num_vars, clauses)
    return solver


def satisfies(result, clauses):
    return all(any(result.value(l) for l in c) for c in clauses)


def test_luby_sequence():
    assert [luby(i) for i in range(1, 16)] == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]


def test_empty_and_trivial_instances():
    solver = SatSolver()
    assert solver.solve().is_sat
    v = solver.new_var()
    solver.add_clause([v])
    assert solver.solve().value(v)
    assert solver.add_clause([-v]) is False
    assert not solver.solve().is_sat


def test_unallocated_literal_is_rejected():
    solver = SatSolver()
    solver.new_var()
    with pytest.raises(InternalError):
        solver.add_clause([2])
    with pytest.raises(InternalError):
        solver.solve([0])


@pytest.mark.parametrize("seed", range(40))
def test_random_3cnf_against_truth_table(seed):
    rng = random.Random(seed)
    num_vars = rng.randint(3, 10)
    clauses = random_cnf(rng, num_vars, rng.randint(1, 5 * num_vars))
    result = solver_for(num_vars, clauses).solve()
    expected = truth_table_sat(num_vars, clauses)
    assert result.is_sat == (expected is not None)
    if result.is_sat:
        assert satisfies(result, clauses)


@pytest.mark.parametrize("seed", range(20))
def test_random_3cnf_against_reference_dpll(seed):
    rng = random.Random(1000 + seed)
    num_vars = 30
    clauses = random_cnf(rng, num_vars, 128)
    result = solver_for(num_vars, clauses).solve()
    assert result.is_sat == reference_dpll(clauses)
    if result.is_sat:
        assert satisfies(result, clauses)


@pytest.mark.parametrize("seed", range(20))
def test_assumptions_are_not_permanent(seed):
    rng = random.Random(2000 + seed)
    num_vars = 8
    clauses = random_cnf(rng, num_vars, 20)
    solver = solver_for(num_vars, clauses)
    baseline = solver.solve().is_sat
    for _ in range(10):
        assumptions = [rng.choice((1, -1)) * v for v in rng.sample(range(1, num_vars + 1), 3)]
        result = solver.solve(assumptions)
        assert result.is_sat == (truth_table_sat(num_vars, clauses, assumptions) is not None)
        if result.is_sat:
            assert all(result.value(a) for a in assumptions)
    assert solver.solve().is_sat == baseline


def test_clauses_added_between_calls_are_permanent():
    solver = SatSolver()
    a, b = solver.new_vars(2)
    solver.add_clause([a, b])
    assert solver.solve([-a]).value(b)
    solver.add_clause([-b])
    assert not solver.solve([-a]).is_sat
    assert solver.solve().value(a)


def test_pigeonhole_is_unsat():
    # 4 pigeons, 3 holes
    solver = SatSolver()
    x = {(p, h): solver.new_var() for p in range(4) for h in range(3)}
    for p in range(4):
        solver.add_clause([x[p, h] for h in range(3)])
    for h in range(3):
        for p in range(4):
            for q in range(p + 1, 4):
                solver.add_clause([-x[p, h], -x[q, h]])
    assert not solver.solve().is_sat
    assert solver.stats()["conflicts"] > 0


def test_polarity_hints_pick_the_model_on_a_free_instance():
    solver = SatSolver()
    variables = solver.new_vars(6)
    for v, phase in zip(variables, (True, False, True, True, False, False)):
        solver.set_polarity_hint(v, phase)
    result = solver.solve()
    assert [result.value(v) for v in variables] == [True, False, True, True, False, False]


def test_branch_priority_does_not_change_satisfiability():
    rng = random.Random(7)
    clauses = random_cnf(rng, 12, 50)
    plain = solver_for(12, clauses).solve()
    hinted = solver_for(12, clauses)
    hinted.set_branch_priority([12, 11, 10])
    assert hinted.solve().is_sat == plain.is_sat


def test_dimacs_round_trip_of_clause_database():
    solver = SatSolver()
    a, b, c = solver.new_vars(3)
    solver.add_clause([a, -b])
    solver.add_clause([b, c, -a])
    text = format_dimacs(solver.num_vars, solver.clauses, ["cost 1 2 3"])
    assert text.startswith("c cost 1 2 3\np cnf 3 2\n")
    assert parse_dimacs(text) == (3, [[a, -b], [b, c, -a]])


def test_bad_dimacs_header():
    with pytest.raises(SmtLibSyntaxError):
        parse_dimacs("p dnf 3 1\n1 0\n")
