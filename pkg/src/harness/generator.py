# project_root/src/harness/generator.py
"""
Seeded random OMT instances.

Each instance declares one objective `cost` and two auxiliary variables
of the same sort, asserts a random boolean skeleton (depth <= 4) of
comparisons between them and random constants, and adds one minimize or
maximize. The same seed always yields byte-identical files.

Profiles:
- fp: FP objective of the requested sort.
- bv: BV objective (signed or unsigned at random).
- mixed: alternates fp and bv instances.
- nan-heavy: FP, and every other instance forces the objective to NaN
  while keeping the rest satisfiable, so at least half resolve to NaN-only.
"""

import os
import random
import re
from typing import List, Tuple, Union

from src.core.bitvec import BvConst, BvSort, Direction, Signedness
from src.core.fp import FpBits, FpSort, fp_infinity, fp_zero
from src.smtlib.printer import print_script
from src.smtlib.script import (Assert, CheckSat, DeclareConst, GetObjectives, Objective, Optimize,
                               Script, SetInfo, SetLogic)
from src.smtlib.terms import Term, mk_app, mk_bv, mk_fp, mk_var
from src.utils.config import GENERATOR_MAX_DEPTH, GENERATOR_PROFILES
from src.utils.errors import SortError
from src.utils.logger import logger

ObjectiveSort = Union[FpSort, BvSort]

FP_COMPARISONS = ["fp.lt", "fp.leq", "fp.gt", "fp.geq", "fp.eq"]
FP_PREDICATES = ["fp.isNaN", "fp.isInfinite", "fp.isZero", "fp.isNormal",
                 "fp.isSubnormal", "fp.isNegative", "fp.isPositive"]
BV_COMPARISONS = ["bvult", "bvule", "bvugt", "bvuge", "bvslt", "bvsle", "bvsgt", "bvsge", "="]
BV_BINARY = ["bvadd", "bvsub", "bvand", "bvor", "bvxor", "bvmul"]
CONNECTIVES = ["and", "or", "or", "not", "=>"]


def parse_sort_spec(text: str) -> ObjectiveSort:
    """`"(3 5)"` is FP with 3 exponent and 5 significand bits, `"(6)"` a 6-bit BV."""
    numbers = re.fullmatch(r"\s*\(?\s*(\d+)(?:\s+(\d+))?\s*\)?\s*", text)
    if not numbers:
        raise SortError(f"cannot read sort {text!r}; expected '(e s)' or '(w)'")
    first, second = numbers.groups()
    if second is None:
        return BvSort(int(first))
    return FpSort(int(first), int(second))


def _companion(sort: ObjectiveSort, want_fp: bool) -> ObjectiveSort:
    """The sort used for the other kind of objective in the mixed profile."""
    if want_fp:
        if isinstance(sort, FpSort):
            return sort
        return FpSort(2, max(2, sort.width - 2))
    if isinstance(sort, BvSort):
        return sort
    return BvSort(sort.width)


class InstanceGenerator:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)
        self.seed = seed

    # ------------------------------------------------------------------ FP

    def _fp_const(self, sort: FpSort) -> Term:
        roll = self.rng.random()
        if roll < 0.1:
            return mk_fp(fp_infinity(sort, self.rng.random() < 0.5))
        if roll < 0.2:
            return mk_fp(fp_zero(sort, self.rng.random() < 0.5))
        while True:
            bits = tuple(self.rng.randint(0, 1) for _ in range(sort.n))
            if not all(bits[1:1 + sort.ebits]):
                return mk_fp(FpBits(sort, bits))

    def _fp_term(self, variables: List[Term], depth: int) -> Term:
        sort = variables[0].sort
        roll = self.rng.random()
        if depth <= 0 or roll < 0.6:
            return self.rng.choice(variables) if self.rng.random() < 0.6 else self._fp_const(sort)
        if roll < 0.8:
            return mk_app(self.rng.choice(["fp.neg", "fp.abs"]), [self._fp_term(variables, depth - 1)])
        return mk_app(self.rng.choice(["fp.min", "fp.max"]),
                      [self._fp_term(variables, depth - 1), self._fp_term(variables, depth - 1)])

    def _fp_atom(self, variables: List[Term]) -> Term:
        if self.rng.random() < 0.2:
            return mk_app(self.rng.choice(FP_PREDICATES), [self._fp_term(variables, 1)])
        lhs = self._fp_term(variables, 1)
        rhs = self._fp_const(lhs.sort) if self.rng.random() < 0.6 else self._fp_term(variables, 1)
        return mk_app(self.rng.choice(FP_COMPARISONS), [lhs, rhs])

    # ------------------------------------------------------------------ BV

    def _bv_const(self, sort: BvSort) -> Term:
        return mk_bv(BvConst.from_int(sort, self.rng.randrange(1 << sort.width)))

    def _bv_term(self, variables: List[Term], depth: int) -> Term:
        sort = variables[0].sort
        roll = self.rng.random()
        if depth <= 0 or roll < 0.55:
            return self.rng.choice(variables) if self.rng.random() < 0.6 else self._bv_const(sort)
        if roll < 0.7:
            return mk_app(self.rng.choice(["bvnot", "bvneg"]), [self._bv_term(variables, depth - 1)])
        return mk_app(self.rng.choice(BV_BINARY),
                      [self._bv_term(variables, depth - 1), self._bv_term(variables, depth - 1)])

    def _bv_atom(self, variables: List[Term]) -> Term:
        lhs = self._bv_term(variables, 1)
        rhs = self._bv_const(lhs.sort) if self.rng.random() < 0.6 else self._bv_term(variables, 1)
        return mk_app(self.rng.choice(BV_COMPARISONS), [lhs, rhs])

    # ------------------------------------------------------------------ skeleton

    def _formula(self, atom, depth: int) -> Term:
        if depth <= 0 or self.rng.random() < 0.3:
            return atom()
        op = self.rng.choice(CONNECTIVES)
        if op == "not":
            return mk_app("not", [self._formula(atom, depth - 1)])
        return mk_app(op, [self._formula(atom, depth - 1), self._formula(atom, depth - 1)])

    def instance(self, sort: ObjectiveSort, force_nan: bool = False) -> Script:
        names = ["cost", "x", "y"]
        variables = [mk_var(n, sort) for n in names]
        is_fp = isinstance(sort, FpSort)
        atom = (lambda: self._fp_atom(variables)) if is_fp else (lambda: self._bv_atom(variables))
        direction = self.rng.choice([Direction.MINIMIZE, Direction.MAXIMIZE])
        signedness = Signedness.UNSIGNED
        if not is_fp and self.rng.random() < 0.5:
            signedness = Signedness.SIGNED

        commands = [
            SetInfo(":source", f"|omt-bits generator, seed {self.seed}|"),
            SetLogic("QF_FP" if is_fp else "QF_BV"),
        ]
        commands.extend(DeclareConst(n, sort) for n in names)
        skeleton = self._formula(atom, GENERATOR_MAX_DEPTH)
        if force_nan:
            commands.append(Assert(mk_app("fp.isNaN", [variables[0]])))
            commands.append(Assert(mk_app("or", [skeleton, mk_app("fp.isZero", [variables[1]])])))
        else:
            commands.append(Assert(skeleton))
            commands.append(Assert(atom()))
        commands.append(Optimize(Objective("cost", direction, sort, signedness)))
        commands.append(CheckSat())
        commands.append(GetObjectives())
        return Script(commands)


def generate_instances(seed: int, sort: ObjectiveSort, count: int, profile: str) -> List[Tuple[str, str]]:
    """(file name, SMT-LIB text) pairs; pure, deterministic in all four arguments."""
    if profile not in GENERATOR_PROFILES:
        raise SortError(f"unknown profile '{profile}'; choose from {', '.join(GENERATOR_PROFILES)}")
    generator = InstanceGenerator(seed)
    instances = []
    for i in range(count):
        force_nan = False
        if profile == "bv":
            target = _companion(sort, want_fp=False)
        elif profile == "mixed":
            target = _companion(sort, want_fp=(i % 2 == 0))
        else:
            target = _companion(sort, want_fp=True)
            force_nan = profile == "nan-heavy" and i % 2 == 0
        script = generator.instance(target, force_nan)
        instances.append((f"{profile}_s{seed}_{i:04d}.smt2", print_script(script)))
    logger.debug(f"Generated {count} '{profile}' instances with seed {seed}")
    return instances


def write_instances(out_dir: str, seed: int, sort: ObjectiveSort, count: int, profile: str) -> List[str]:
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for name, text in generate_instances(seed, sort, count, profile):
        path = os.path.join(out_dir, name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        paths.append(path)
    logger.info(f"Wrote {len(paths)} instances to {out_dir}")
    return paths
