import itertools

import pytest

from src.blast.bitblaster import Bitblaster, blast
from src.core.bitvec import BvConst, BvSort
from src.core.fp import FpBits, FpSort, is_nan
from src.sat.solver import SatSolver
from src.smtlib.evaluator import evaluate
from src.smtlib.printer import term_to_smtlib
from src.smtlib.terms import BOOL, mk_app, mk_bv, mk_var, substitute
from src.utils.errors import BlastError

BV3 = BvSort(3)
FP22 = FpSort(2, 2)


def blasted_value(term, env):
    """Blast `term`, pin every variable to `env` by assumptions and read the term back from the model."""
    solver = SatSolver()
    blaster = Bitblaster(solver)
    for name, value in env.items():
        blaster.declare(name, value.sort)
    word = blaster.blast_term(term)
    assumptions = []
    for name, value in env.items():
        assumptions.extend(v if b else -v for v, b in zip(blaster.map.bits(name), value.bits))
    result = solver.solve(assumptions)
    assert result.is_sat
    if term.sort == BOOL:
        return result.value(word)
    bits = tuple(int(result.value(l)) for l in word)
    if isinstance(term.sort, BvSort):
        return BvConst(term.sort, bits)
    return FpBits(term.sort, bits)


def same(a, b):
    if isinstance(a, FpBits) and is_nan(a) and is_nan(b):
        return True
    return a == b


def every_env(sort, names=("x", "y")):
    values = ([BvConst.from_int(sort, i) for i in range(1 << sort.width)] if isinstance(sort, BvSort)
              else [FpBits.from_int(sort, i) for i in range(1 << sort.n)])
    for combo in itertools.product(values, repeat=len(names)):
        yield dict(zip(names, combo))


BV_BINARY_OPS = ["bvand", "bvor", "bvxor", "bvxnor", "bvadd", "bvsub", "bvmul", "bvshl", "bvlshr",
                 "bvult", "bvule", "bvugt", "bvuge", "bvslt", "bvsle", "bvsgt", "bvsge", "=", "distinct",
                 "concat"]


@pytest.mark.parametrize("op", BV_BINARY_OPS)
def test_bv_binary_ops_match_the_evaluator(op):
    x, y = mk_var("x", BV3), mk_var("y", BV3)
    term = mk_app(op, [x, y])
    for env in every_env(BV3):
        assert blasted_value(term, env) == evaluate(term, env), (op, env)


@pytest.mark.parametrize("op, params", [("bvnot", ()), ("bvneg", ()), ("extract", (2, 1)), ("extract", (0, 0))])
def test_bv_unary_ops_match_the_evaluator(op, params):
    term = mk_app(op, [mk_var("x", BV3)], params)
    for env in every_env(BV3, ("x",)):
        assert blasted_value(term, env) == evaluate(term, env)


FP_BINARY_OPS = ["fp.eq", "fp.lt", "fp.leq", "fp.gt", "fp.geq", "fp.min", "fp.max", "="]
FP_UNARY_OPS = ["fp.neg", "fp.abs", "fp.isNaN", "fp.isInfinite", "fp.isZero", "fp.isNormal",
                "fp.isSubnormal", "fp.isNegative", "fp.isPositive"]


@pytest.mark.parametrize("op", FP_BINARY_OPS)
def test_fp_binary_ops_match_the_evaluator(op):
    x, y = mk_var("x", FP22), mk_var("y", FP22)
    term = mk_app(op, [x, y])
    for env in every_env(FP22):
        assert same(blasted_value(term, env), evaluate(term, env)), (op, env)


@pytest.mark.parametrize("op", FP_UNARY_OPS)
def test_fp_unary_ops_match_the_evaluator(op):
    term = mk_app(op, [mk_var("x", FP22)])
    for env in every_env(FP22, ("x",)):
        assert blasted_value(term, env) == evaluate(term, env)


def test_fp_constructor_and_ite():
    s, e, f = mk_var("s", BvSort(1)), mk_var("e", BvSort(2)), mk_var("f", BvSort(1))
    c = mk_var("c", BvSort(1))
    built = mk_app("fp", [s, e, f])
    term = mk_app("ite", [mk_app("=", [c, mk_bv(BvConst.from_int(BvSort(1), 1))]),
                          built, mk_app("fp.neg", [built])])
    for bits in itertools.product((0, 1), repeat=5):
        env = {"s": BvConst(BvSort(1), bits[:1]), "e": BvConst(BvSort(2), bits[1:3]),
               "f": BvConst(BvSort(1), bits[3:4]), "c": BvConst(BvSort(1), bits[4:])}
        assert blasted_value(term, env) == evaluate(term, env)


def test_boolean_connectives_are_equisatisfiable():
    p, q, r = (mk_var(n, BOOL) for n in "pqr")
    formula = mk_app("and", [mk_app("=>", [p, q, r]), mk_app("xor", [p, q]), mk_app("not", [r])])
    cnf, blast_map = blast(formula)
    solver = SatSolver()
    cnf.load(solver)
    result = solver.solve()
    assert result.is_sat
    model = {n: result.value(blast_map.bits(n)[0]) for n in "pqr"}
    assert evaluate(formula, model)
    assert formula in blast_map.atoms


def test_repeated_terms_are_blasted_once():
    solver = SatSolver()
    blaster = Bitblaster(solver)
    x, y = mk_var("x", BvSort(8)), mk_var("y", BvSort(8))
    blaster.blast_term(mk_app("bvult", [x, y]))
    before = solver.num_vars
    blaster.blast_term(mk_app("bvult", [x, y]))
    assert solver.num_vars == before


def test_deep_terms_do_not_recurse():
    x = mk_var("x", BvSort(4))
    term = x
    for _ in range(3000):
        term = mk_app("bvnot", [term])
    cnf, _ = blast(mk_app("=", [term, x]))
    solver = SatSolver()
    cnf.load(solver)
    assert solver.solve().is_sat


def _bvnot_chain(leaf, depth):
    term = leaf
    for _ in range(depth):
        term = mk_app("bvnot", [term])
    return term


def test_deep_terms_evaluate_print_and_substitute():
    x, y = mk_var("x", BvSort(4)), mk_var("y", BvSort(4))
    term = _bvnot_chain(x, 3001)
    assert evaluate(term, {"x": BvConst.from_int(BvSort(4), 5)}) == BvConst.from_int(BvSort(4), 10)
    text = term_to_smtlib(term)
    assert text.startswith("(bvnot (bvnot ") and text.endswith(" x" + ")" * 3001)
    renamed = substitute(term, {"x": y})
    assert renamed == _bvnot_chain(y, 3001)
    assert renamed != term


def test_blast_map_errors():
    _, blast_map = blast(mk_app("bvult", [mk_var("x", BV3), mk_var("y", BV3)]))
    assert len(blast_map.bits("x")) == 3
    assert blast_map.assume_literal_for_bit("x", 0, 1) == blast_map.bits("x")[0]
    assert blast_map.assume_literal_for_bit("x", 2, 0) == -blast_map.bits("x")[2]
    with pytest.raises(BlastError):
        blast_map.assume_literal_for_bit("x", 3, 1)
    with pytest.raises(BlastError):
        blast_map.bits("nope")


def test_redeclaration_with_another_sort():
    blaster = Bitblaster(SatSolver())
    blaster.declare("x", BV3)
    with pytest.raises(BlastError):
        blaster.declare("x", BvSort(4))
