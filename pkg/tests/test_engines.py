import itertools
from fractions import Fraction

import pytest

from conftest import LOWER_BOUND_SCRIPT, problem_from
from src.core.bitvec import BvSort, Direction
from src.core.fp import FpBits, FpSort, fp_eq, fp_from_rank, fp_value
from src.core.prefix import PrefixAssignment
from src.engines.binary_search import omt_binary, pivot_rank
from src.engines.config import EngineConfig, EngineKind
from src.engines.enhancements import apply_enhancements, safe_bits
from src.engines.factory import create_engine, optimize
from src.engines.linear_search import omt_linear
from src.engines.obv_bs import ObvBsEngine, obv_bs
from src.engines.ofp_bs import OfpBsEngine, ofp_bs
from src.engines.result import OptStatus
from src.harness.bench import agrees_with_oracle
from src.harness.generator import generate_instances
from src.harness.oracle import brute_force_opt, recheck_trajectory
from src.sat.solver import SatSolver, SolverTimeout
from src.utils.errors import EngineError

S35 = FpSort(3, 5)
S23 = FpSort(2, 3)

ENGINE_LABELS = ["ofp-bs", "omt-lin", "omt-bin"]

# so without bp or pi is rejected, so seven of the eight flag combinations are valid.
ENHANCEMENT_COMBOS = [(bp, pi, so) for bp, pi, so in itertools.product((False, True), repeat=3)
                      if bp or pi or not so]


def generated(seed, sort, count, profile="fp"):
    return [(name, problem_from(text)) for name, text in generate_instances(seed, sort, count, profile)]


def bv_family_script(width, op, k, signed, direction):
    attribute = " :signed" if signed else ""
    return f"""
    (declare-const cost (_ BitVec {width}))
    (assert ({op} cost (_ bv{k} {width})))
    ({direction} cost{attribute})
    (check-sat)
    """


def check_against_oracle(problem, config):
    result = optimize(problem, config)
    oracle = brute_force_opt(problem)
    assert agrees_with_oracle(result, oracle), (config.label, result.value_text(), oracle)
    if result.trajectory is not None:
        assert recheck_trajectory(problem, result.trajectory) == []
    return result


# ---------------------------------------------------------------------- OFP-BS on cost >= 29/2


def test_lower_bound_trajectory(lower_bound_problem):
    result = ofp_bs(lower_bound_problem)
    assert result.status is OptStatus.OPTIMUM
    assert result.trajectory.outcomes == ["unsat", "unsat", "unsat", "sat", "unsat", "unsat", "sat", "unsat"]
    assert [str(fp_value(p)) for p in result.trajectory.attractors] == ["-oo", "0", "2", "8", "8", "12", "14", "14"]
    assert result.optimum == FpBits.from_literals("#b0", "#b110", "#b1101")
    assert result.optimum_value.rational == Fraction(29, 2)
    assert result.stats.smt_calls <= S35.n + 2


def test_lower_bound_trajectory_survives_an_independent_recheck(lower_bound_problem):
    result = ofp_bs(lower_bound_problem)
    assert recheck_trajectory(lower_bound_problem, result.trajectory) == []


@pytest.mark.parametrize("engine", [omt_linear, omt_binary])
def test_lower_bound_cut_based_engines(lower_bound_problem, engine):
    result = engine(lower_bound_problem)
    assert result.status is OptStatus.OPTIMUM
    assert result.optimum_value.rational == Fraction(29, 2)


def test_maximize_below_an_upper_bound():
    text = LOWER_BOUND_SCRIPT.replace("fp.geq", "fp.leq").replace("minimize", "maximize")
    for label in ENGINE_LABELS:
        result = optimize(problem_from(text), EngineConfig.from_label(label))
        assert result.optimum_value.rational == Fraction(29, 2), label


def test_unconstrained_fp_reaches_infinity():
    text = "(declare-const cost (_ FP 3 5)) (maximize cost)"
    for label in ENGINE_LABELS:
        result = optimize(problem_from(text), EngineConfig.from_label(label))
        assert str(result.optimum_value) == "+oo", label


# ---------------------------------------------------------------------- NaN protocol


def test_unsat_formula_makes_one_call():
    problem = problem_from("(declare-const cost (_ FP 3 5)) (assert (fp.lt cost cost)) (minimize cost)")
    result = ofp_bs(problem)
    assert result.status is OptStatus.UNSAT
    assert result.stats.smt_calls == 1
    assert not result.has_model


@pytest.mark.parametrize("label", ENGINE_LABELS)
def test_nan_only_objective(label):
    problem = problem_from("(declare-const cost (_ FP 3 5)) (assert (fp.isNaN cost)) (minimize cost)")
    result = optimize(problem, EngineConfig.from_label(label))
    assert result.status is OptStatus.NAN_ONLY
    assert result.optimum_value.is_nan
    assert result.stats.smt_calls == 2


@pytest.mark.parametrize("label", ENGINE_LABELS)
def test_nan_or_value_never_reports_nan(label):
    text = """
    (declare-const cost (_ FP 3 5))
    (assert (or (fp.isNaN cost) (fp.eq cost (fp #b0 #b100 #b0100))))
    (minimize cost)
    """
    result = optimize(problem_from(text), EngineConfig.from_label(label))
    assert result.status is OptStatus.OPTIMUM
    assert result.optimum_value.rational == Fraction(5, 2)


# ---------------------------------------------------------------------- OBV-BS


@pytest.mark.parametrize("text, expected", [
    ("(declare-const cost (_ BitVec 4)) (assert (bvult cost #b1010)) (maximize cost)", 9),
    ("(declare-const cost (_ BitVec 3)) (assert (bvsge cost #b101)) (minimize cost :signed)", -3),
    ("(declare-const cost (_ BitVec 3)) (minimize cost :signed)", -4),
    ("(declare-const cost (_ BitVec 3)) (maximize cost :signed)", 3),
    ("(declare-const cost (_ BitVec 5)) (assert (bvugt cost #b00110)) (minimize cost)", 7),
])
def test_obv_bs_examples(text, expected):
    result = obv_bs(problem_from(text))
    assert result.status is OptStatus.OPTIMUM
    assert result.optimum_value == expected
    assert result.stats.smt_calls <= result.objective.width + 1


def test_obv_bs_on_unsat_bv():
    result = obv_bs(problem_from("(declare-const cost (_ BitVec 4)) (assert (bvult cost #b0000)) (minimize cost)"))
    assert result.status is OptStatus.UNSAT


BV_OPS = ["bvult", "bvule", "bvugt", "bvuge", "bvslt", "bvsle", "bvsgt", "bvsge", "=", "distinct"]


def _bv_family(width):
    for op, k, signed, direction in itertools.product(BV_OPS, range(1 << width), (False, True),
                                                      ("minimize", "maximize")):
        yield problem_from(bv_family_script(width, op, k, signed, direction))


def test_bv_families_of_width_3_match_the_oracle():
    for problem in _bv_family(3):
        check_against_oracle(problem, EngineConfig(engine=EngineKind.OBV_BS))


@pytest.mark.slow
@pytest.mark.parametrize("width", [4, 5, 6])
def test_bv_families_match_the_oracle(width):
    for problem in _bv_family(width):
        check_against_oracle(problem, EngineConfig(engine=EngineKind.OBV_BS))


@pytest.mark.slow
def test_random_bv_instances_match_the_oracle():
    for width, seed in [(4, 11), (5, 12), (6, 13)]:
        for _, problem in generated(seed, BvSort(width), 100, "bv"):
            for label in ("obv-bs", "omt-lin", "omt-bin"):
                check_against_oracle(problem, EngineConfig.from_label(label))


# ---------------------------------------------------------------------- cut-based engines


def test_linear_search_stops_after_one_cut_at_zero():
    text = "(declare-const cost (_ FP 3 5)) (assert (= cost (fp #b0 #b000 #b0000))) (minimize cost)"
    result = omt_linear(problem_from(text))
    assert result.status is OptStatus.OPTIMUM
    assert str(result.optimum_value) == "0"
    assert result.stats.smt_calls == 2


def test_linear_search_treats_both_zeros_as_one_value():
    text = "(declare-const cost (_ FP 3 5)) (assert (fp.isZero cost)) (minimize cost)"
    result = omt_linear(problem_from(text))
    assert fp_eq(result.optimum, FpBits.from_literals("#b0", "#b000", "#b0000"))
    assert result.stats.smt_calls == 2


@pytest.mark.parametrize("lb, ub, rho, expected", [
    (0, 10, Fraction(1, 2), 5),
    (4, 5, Fraction(1, 2), 5),
    (4, 6, Fraction(1, 2), 5),
    (0, 10, Fraction(1, 10), 1),
    (0, 10, Fraction(1, 100), 10),
    (113, 224, Fraction(1, 2), 168),
])
def test_pivot_rank(lb, ub, rho, expected):
    assert pivot_rank(lb, ub, rho) == expected


def test_pivot_between_zero_and_the_lower_bound():
    assert fp_value(fp_from_rank(S35, 168)).rational == Fraction(23, 16)


def test_binary_search_on_a_single_feasible_value():
    text = "(declare-const cost (_ FP 3 5)) (assert (fp.eq cost (fp #b0 #b110 #b1111))) (minimize cost)"
    result = omt_binary(problem_from(text))
    assert result.optimum_value.rational == Fraction(31, 2)
    # first model, then one cut per halving of the 226 indices plus the closing one
    assert result.stats.smt_calls <= 1 + 9 + 1


def test_binary_search_distinguishes_signed_zeros():
    text = "(declare-const cost (_ FP 3 5)) (assert (fp.isZero cost)) (minimize cost)"
    result = omt_binary(problem_from(text))
    assert str(result.optimum_value) == "-0"


@pytest.mark.parametrize("rho", ["1/4", "1/2", "9/10"])
def test_binary_search_pivot_ratio_does_not_change_the_optimum(lower_bound_problem, rho):
    result = omt_binary(lower_bound_problem, EngineConfig(engine=EngineKind.OMT_BINARY, rho=rho))
    assert result.optimum_value.rational == Fraction(29, 2)


# ---------------------------------------------------------------------- random FP suites


@pytest.mark.parametrize("sort, seed", [(S23, 1), (S35, 2)])
def test_ofp_bs_matches_the_oracle_on_generated_instances(sort, seed):
    for _, problem in generated(seed, sort, 25):
        result = check_against_oracle(problem, EngineConfig())
        assert result.stats.smt_calls <= sort.n + 2


@pytest.mark.parametrize("sort, seed", [(S23, 3), (S35, 4)])
def test_nan_heavy_instances_match_the_oracle(sort, seed):
    for _, problem in generated(seed, sort, 20, "nan-heavy"):
        check_against_oracle(problem, EngineConfig())


@pytest.mark.slow
@pytest.mark.parametrize("sort, seed", [(S23, 21), (S35, 22)])
def test_engines_match_the_oracle_on_large_suites(sort, seed):
    for _, problem in generated(seed, sort, 250):
        for label in ENGINE_LABELS:
            result = check_against_oracle(problem, EngineConfig.from_label(label))
            if label == "ofp-bs":
                assert result.stats.smt_calls <= sort.n + 2


@pytest.mark.parametrize("bp, pi, so", ENHANCEMENT_COMBOS)
@pytest.mark.parametrize("engine", ["ofp-bs", "omt-lin", "omt-bin"])
def test_enhancements_do_not_change_the_answer(engine, bp, pi, so):
    config = EngineConfig(engine=engine, bp=bp, pi=pi, so=so)
    for _, problem in generated(5, S23, 8, "mixed"):
        check_against_oracle(problem, config)


# ---------------------------------------------------------------------- enhancements


class RecordingSolver:
    def __init__(self):
        self.calls = []

    def set_branch_priority(self, variables):
        self.calls.append(("priority", tuple(variables)))

    def set_polarity_hint(self, var, phase):
        self.calls.append(("polarity", var, phase))


@pytest.mark.parametrize("decided, direction, expected", [
    ((), Direction.MINIMIZE, [0]),
    ((0,), Direction.MINIMIZE, list(range(8))),
    ((1,), Direction.MINIMIZE, [0, 1, 2, 3]),
    ((1, 1, 0), Direction.MINIMIZE, list(range(8))),
    ((0,), Direction.MAXIMIZE, [0, 1, 2, 3]),
    ((1,), Direction.MAXIMIZE, list(range(8))),
])
def test_safe_bits_for_fp(decided, direction, expected):
    assert safe_bits(PrefixAssignment(S35, decided), direction) == expected


def test_every_bv_bit_is_safe():
    assert safe_bits(PrefixAssignment(BvSort(5)), Direction.MINIMIZE) == [0, 1, 2, 3, 4]


def test_no_hint_calls_without_flags():
    solver = RecordingSolver()
    plan = apply_enhancements(solver, EngineConfig(), [1, 2, 3], (1, 0, 1),
                              PrefixAssignment(BvSort(3)), Direction.MINIMIZE)
    assert plan.empty
    assert solver.calls == []


def test_hint_calls_follow_the_flags():
    solver = RecordingSolver()
    tau = PrefixAssignment(S23, (1,))
    cfg = EngineConfig(bp=True, pi=True, so=True)
    apply_enhancements(solver, cfg, [10, 11, 12, 13, 14], (1, 1, 1, 0, 0), tau, Direction.MINIMIZE)
    assert solver.calls[0] == ("priority", (10, 11, 12))
    assert solver.calls[1:] == [("polarity", 10, True), ("polarity", 11, True), ("polarity", 12, True)]


def test_polarity_hints_do_not_cost_more_calls(lower_bound_problem):
    plain = ofp_bs(lower_bound_problem)
    hinted = ofp_bs(lower_bound_problem, EngineConfig(pi=True))
    assert hinted.optimum == plain.optimum
    assert hinted.stats.smt_calls <= plain.stats.smt_calls


# ---------------------------------------------------------------------- timeout


def _timeout_after(monkeypatch, allowed):
    original = SatSolver.solve
    calls = {"n": 0}

    def solve(self, assumptions=(), deadline=None):
        calls["n"] += 1
        if calls["n"] > allowed:
            raise SolverTimeout("deadline passed")
        return original(self, assumptions, deadline)

    monkeypatch.setattr(SatSolver, "solve", solve)


@pytest.mark.parametrize("label", ENGINE_LABELS)
def test_timeout_reports_the_best_model_so_far(monkeypatch, lower_bound_problem, label):
    _timeout_after(monkeypatch, 1)
    result = optimize(lower_bound_problem, EngineConfig.from_label(label))
    assert result.status is OptStatus.TIMEOUT
    assert result.partial
    assert result.has_model
    assert fp_value(result.optimum).rational >= Fraction(29, 2)


def test_timeout_before_any_model(monkeypatch, lower_bound_problem):
    _timeout_after(monkeypatch, 0)
    result = ofp_bs(lower_bound_problem)
    assert result.status is OptStatus.TIMEOUT
    assert result.partial
    assert not result.has_model
    assert result.value_text() == ""


# ---------------------------------------------------------------------- configuration and factory


@pytest.mark.parametrize("kwargs", [
    {"so": True},
    {"rho": 0},
    {"rho": 1},
    {"rho": "abc"},
    {"engine": "simplex"},
    {"timeout": -1},
])
def test_invalid_configurations(kwargs):
    with pytest.raises(EngineError):
        EngineConfig(**kwargs)


def test_labels_round_trip():
    for label in ["ofp-bs", "ofp-bs+pi", "omt-bin+bp+so", "obv-bs+bp+pi+so"]:
        assert EngineConfig.from_label(label).label == label
    assert EngineConfig.from_label("omt-lin+pi+bp").label == "omt-lin+bp+pi"
    with pytest.raises(EngineError):
        EngineConfig.from_label("ofp-bs+xx")


def test_from_mapping():
    config = EngineConfig.from_mapping({"engine": "omt-bin", "rho": "1/3", "timeout": 5})
    assert config.engine is EngineKind.OMT_BINARY
    assert config.rho == Fraction(1, 3)
    assert config.timeout == 5.0
    with pytest.raises(EngineError):
        EngineConfig.from_mapping({"engine": "ofp-bs", "colour": "blue"})
    with pytest.raises(EngineError):
        EngineConfig.from_mapping({"pi": "yes"})


def test_factory_swaps_bit_wise_engines_by_objective_sort(lower_bound_problem):
    bv = problem_from("(declare-const cost (_ BitVec 4)) (minimize cost)")
    assert isinstance(create_engine(EngineConfig(engine="ofp-bs"), bv.objective), ObvBsEngine)
    assert isinstance(create_engine(EngineConfig(engine="obv-bs"), lower_bound_problem.objective), OfpBsEngine)


def test_engine_refuses_an_unsupported_objective():
    bv = problem_from("(declare-const cost (_ BitVec 4)) (minimize cost)")
    with pytest.raises(EngineError):
        OfpBsEngine().optimize(bv)


def test_problem_without_objective():
    with pytest.raises(EngineError):
        optimize(problem_from("(declare-const x (_ BitVec 4))"))
