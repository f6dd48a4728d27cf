# project_root/src/smtlib/printer.py
"""
Print terms, sorts, values and whole scripts back to SMT-LIB text.

`parse(print_script(s))` rebuilds the same AST as `s`.
"""

from typing import List

from src.core.bitvec import BvConst, BvSort, Direction, Signedness
from src.core.fp import FpBits, FpSort
from src.smtlib.script import (Assert, CheckSat, DeclareConst, DefineFun, Echo, Exit, GetModel,
                               GetObjectives, GetValue, Optimize, Script, SetInfo, SetLogic,
                               SetOption)
from src.smtlib.terms import BoolSort, Term
from src.smtlib.tokens import TOKEN_PATTERNS


def quote_symbol(name: str) -> str:
    if TOKEN_PATTERNS["symbol"].fullmatch(name):
        return name
    return f"|{name}|"


def sort_to_smtlib(sort) -> str:
    if isinstance(sort, BoolSort):
        return "Bool"
    if isinstance(sort, BvSort):
        return f"(_ BitVec {sort.width})"
    if isinstance(sort, FpSort):
        return f"(_ FloatingPoint {sort.ebits} {sort.sbits})"
    raise TypeError(f"not a sort: {sort!r}")


def value_to_smtlib(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, BvConst):
        return value.to_literal()
    if isinstance(value, FpBits):
        return value.to_literal()
    raise TypeError(f"not a value: {value!r}")


def term_to_smtlib(term: Term) -> str:
    parts: List[str] = []
    stack: List[object] = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, str):
            parts.append(t)
        elif t.op == "var":
            parts.append(quote_symbol(t.name))
        elif t.op == "const":
            parts.append(value_to_smtlib(t.value))
        else:
            if t.op == "extract":
                hi, lo = t.params
                parts.append(f"((_ extract {hi} {lo})")
            else:
                parts.append(f"({t.op}")
            stack.append(")")
            for a in reversed(t.args):
                stack.append(a)
                stack.append(" ")
    return "".join(parts)


def command_to_smtlib(command) -> str:
    if isinstance(command, SetOption):
        return f"(set-option {command.key} {command.value})"
    if isinstance(command, SetInfo):
        return f"(set-info {command.key} {command.value})"
    if isinstance(command, SetLogic):
        return f"(set-logic {command.logic})"
    if isinstance(command, DeclareConst):
        return f"(declare-const {quote_symbol(command.name)} {sort_to_smtlib(command.sort)})"
    if isinstance(command, DefineFun):
        params = " ".join(f"({quote_symbol(n)} {sort_to_smtlib(s)})" for n, s in command.params)
        return (f"(define-fun {quote_symbol(command.name)} ({params}) {sort_to_smtlib(command.sort)} "
                f"{term_to_smtlib(command.body)})")
    if isinstance(command, Assert):
        return f"(assert {term_to_smtlib(command.term)})"
    if isinstance(command, Optimize):
        objective = command.objective
        keyword = "minimize" if objective.direction is Direction.MINIMIZE else "maximize"
        signed = " :signed" if objective.signedness is Signedness.SIGNED else ""
        return f"({keyword} {quote_symbol(objective.name)}{signed})"
    if isinstance(command, CheckSat):
        return "(check-sat)"
    if isinstance(command, GetModel):
        return "(get-model)"
    if isinstance(command, GetObjectives):
        return "(get-objectives)"
    if isinstance(command, GetValue):
        return f"(get-value ({' '.join(term_to_smtlib(t) for t in command.terms)}))"
    if isinstance(command, Echo):
        return f"(echo {command.text})"
    if isinstance(command, Exit):
        return "(exit)"
    raise TypeError(f"not a command: {command!r}")


def print_script(script: Script) -> str:
    lines: List[str] = [command_to_smtlib(c) for c in script.commands]
    return "\n".join(lines) + "\n"
