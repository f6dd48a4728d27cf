# project_root/src/utils/config.py
"""
Configuration and constants for the solver, the generator and the bench runner.
"""

from fractions import Fraction

# Instance files picked up by `bench --dir`.
INSTANCE_EXTENSIONS = [".smt2"]

DEFAULT_ENGINE = "ofp-bs"
ENGINE_NAMES = ["ofp-bs", "obv-bs", "omt-lin", "omt-bin"]

# Pivot ratio for binary search.
DEFAULT_RHO = Fraction(1, 2)

# Seconds; None means no limit.
DEFAULT_TIMEOUT = None

# Brute-force oracle refuses objectives wider than this.
ORACLE_MAX_WIDTH = 16

# Fixed CSV schema of the bench runner.
CSV_COLUMNS = [
    "instance", "engine", "bp", "pi", "so", "status",
    "optimum", "smt_calls", "wall_ms", "oracle_agreement",
]

GENERATOR_PROFILES = ["mixed", "fp", "bv", "nan-heavy"]
DEFAULT_PROFILE = "mixed"

# Maximum nesting of the random boolean skeletons.
GENERATOR_MAX_DEPTH = 4

DEFAULT_BENCH_CONFIGS = ["ofp-bs", "ofp-bs+pi", "omt-lin", "omt-bin"]

REPORTS_DIR = "reports"
