# project_root/src/harness/bench.py
"""
Benchmark runner: every (instance, configuration) pair, one CSV row each.

Two phases over a process pool. First the brute-force oracle runs once per
instance (when the objective is narrow enough), then every configuration
runs on every instance and its answer is checked with `verify_optimum` and
against the oracle. Workers receive file paths and parse them themselves;
parsed terms never cross process boundaries.

A failing row is logged and recorded with status `error`; it never stops
the run.
"""

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence

import tomli

from src.core.fp import FpBits, fp_eq
from src.engines.config import EngineConfig
from src.engines.factory import optimize
from src.engines.result import OptResult, OptStatus
from src.harness.oracle import OracleResult, OracleStatus, brute_force_opt, verify_optimum
from src.smtlib.parser import parse
from src.utils.config import CSV_COLUMNS, ORACLE_MAX_WIDTH
from src.utils.errors import EngineError
from src.utils.instance_handler import read_source
from src.utils.logger import logger


@dataclass
class BenchRow:
    instance: str
    engine: str
    bp: bool
    pi: bool
    so: bool
    status: str
    optimum: str = ""
    smt_calls: int = 0
    wall_ms: float = 0.0
    oracle_agreement: Optional[bool] = None

    @property
    def solved(self) -> bool:
        return self.status in (OptStatus.OPTIMUM.value, OptStatus.NAN_ONLY.value, OptStatus.UNSAT.value)

    def as_csv(self) -> Dict[str, str]:
        def cell(value):
            if value is None:
                return ""
            if isinstance(value, bool):
                return "true" if value else "false"
            if isinstance(value, float):
                return f"{value:.1f}"
            return str(value)
        return {k: cell(v) for k, v in asdict(self).items()}


def load_bench_configs(spec: str) -> List[EngineConfig]:
    """A TOML file with `[[config]]` tables, or a comma-separated list of labels."""
    if spec.endswith(".toml"):
        with open(spec, "rb") as f:
            data = tomli.load(f)
        tables = data.get("config", [])
        if not tables:
            raise EngineError(f"{spec} defines no [[config]] tables")
        return [EngineConfig.from_mapping(t) for t in tables]
    return [EngineConfig.from_label(label) for label in spec.split(",") if label.strip()]


def _load_problem(path: str):
    problem = parse(read_source(path)).to_problem()
    if problem.objective is None:
        raise EngineError(f"{path} has no minimize/maximize command")
    return problem


def oracle_for(path: str) -> Optional[OracleResult]:
    """Phase one worker: the oracle answer, or None when the objective is too wide or unreadable."""
    try:
        problem = _load_problem(path)
        if problem.objective.width > ORACLE_MAX_WIDTH:
            return None
        return brute_force_opt(problem)
    except Exception as e:
        logger.error(f"Oracle failed on {path}: {e}")
        return None


def agrees_with_oracle(result: OptResult, oracle: OracleResult) -> bool:
    """Value agreement: fp_eq for FP, integer equality for BV; never bit identity."""
    status_map = {
        OptStatus.UNSAT: OracleStatus.UNSAT,
        OptStatus.NAN_ONLY: OracleStatus.NAN_ONLY,
        OptStatus.OPTIMUM: OracleStatus.OPTIMUM,
    }
    if status_map.get(result.status) is not oracle.status:
        return False
    if result.status is not OptStatus.OPTIMUM:
        return True
    if isinstance(result.optimum, FpBits):
        return fp_eq(result.optimum, oracle.pattern)
    return result.optimum_value == oracle.value(result.objective)


def run_pair(path: str, config: EngineConfig, oracle: Optional[OracleResult] = None) -> BenchRow:
    """Phase two worker: one configuration on one instance."""
    row = BenchRow(os.path.basename(path), config.label, config.bp, config.pi, config.so, "error")
    try:
        problem = _load_problem(path)
        result = optimize(problem, config)
        row.status = result.status.value
        row.optimum = result.value_text()
        row.smt_calls = result.stats.smt_calls
        row.wall_ms = result.stats.wall_ms
        if result.status is OptStatus.TIMEOUT:
            return row
        agreement = True
        if result.has_model:
            agreement = verify_optimum(problem, result.optimum_bits)
        if oracle is not None:
            agreement = agreement and agrees_with_oracle(result, oracle)
        elif result.status is OptStatus.UNSAT:
            agreement = None
        row.oracle_agreement = agreement
        if agreement is False:
            logger.error(f"{row.instance} [{row.engine}]: answer {row.optimum or row.status} disagrees with the oracle")
    except Exception as e:
        logger.error(f"{row.instance} [{row.engine}]: {e}")
        row.status = "error"
    return row


def run_bench(instances: Sequence[str], configs: Sequence[EngineConfig], jobs: int = 1,
              timeout: Optional[float] = None) -> List[BenchRow]:
    """Rows ordered by instance, then by configuration."""
    if timeout is not None:
        configs = [c.with_timeout(timeout) for c in configs]
    instances = list(instances)
    pairs = [(path, config) for path in instances for config in configs]
    logger.info(f"Benchmarking {len(instances)} instance(s) x {len(configs)} configuration(s), jobs={jobs}")
    if not pairs:
        return []

    if jobs <= 1:
        oracles = dict(zip(instances, map(oracle_for, instances)))
        return [run_pair(path, config, oracles[path]) for path, config in pairs]

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        oracles = dict(zip(instances, pool.map(oracle_for, instances)))
        futures = [pool.submit(run_pair, path, config, oracles[path]) for path, config in pairs]
        return [f.result() for f in futures]


def write_csv(rows: Sequence[BenchRow], out: str) -> None:
    directory = os.path.dirname(out)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row.as_csv())
    logger.info(f"Wrote {len(rows)} row(s) to {out}")
