# project_root/src/smtlib/parser.py
"""
Parser for the SMT-LIB v2 subset with OMT extensions.

Two stages: a regex lexer plus s-expression reader that keeps line:column
for every node, then a command/term builder that checks sorts through
`src.smtlib.terms.mk_app`.

Accepted commands: set-option, set-info, set-logic, declare-fun (0-ary),
declare-const, define-fun, assert, minimize, maximize, check-sat,
get-model, get-objectives, get-value, echo, exit.

`(minimize f)` on a non-variable `f` declares a fresh `cost` variable and
asserts `(= cost f)`, so objectives are always variables downstream.
BV objectives are unsigned unless the `:signed` attribute is given.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple, Union

from src.core.bitvec import BvConst, BvSort, Direction, Signedness
from src.core.fp import FpSort, canonical_nan, fp_infinity, fp_zero
from src.smtlib.script import (Assert, CheckSat, DeclareConst, DefineFun, Echo, Exit, GetModel,
                               GetObjectives, GetValue, Objective, Optimize, Script, SetInfo,
                               SetLogic, SetOption)
from src.smtlib.terms import (BOOL, FALSE, TRUE, BoolSort, Sort, Term, mk_app, mk_bv, mk_fp,
                              mk_var, substitute)
from src.smtlib.tokens import NAMED_FP_SORTS, ROUNDING_OPERATORS, TOKEN_PATTERNS, TRIVIA
from src.utils.errors import (OmtBitsError, SmtLibSortError, SmtLibSyntaxError, SortError,
                              UnsupportedConstructError)
from src.utils.logger import logger


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class SList:
    items: Tuple[Union[Token, "SList"], ...]
    line: int
    column: int


SExpr = Union[Token, SList]

UNSUPPORTED_COMMANDS = {
    "push", "pop", "reset", "reset-assertions", "check-sat-assuming", "get-unsat-core",
    "get-assertions", "get-proof", "declare-sort", "define-sort", "define-fun-rec",
    "define-funs-rec", "declare-datatype", "declare-datatypes", "assert-soft",
}


def tokenize(text: str) -> Iterator[Token]:
    pos = 0
    line, column = 1, 1
    while pos < len(text):
        for kind, pattern in TOKEN_PATTERNS.items():
            match = pattern.match(text, pos)
            if match:
                break
        else:
            raise SmtLibSyntaxError(f"unexpected character {text[pos]!r}", line, column)
        lexeme = match.group(0)
        if kind not in TRIVIA:
            yield Token(kind, lexeme, line, column)
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            column = len(lexeme) - lexeme.rfind("\n")
        else:
            column += len(lexeme)
        pos = match.end()


def _eof_position(text: str) -> Tuple[int, int]:
    line = text.count("\n") + 1
    return line, len(text) - (text.rfind("\n") + 1) + 1


def read_sexprs(text: str) -> List[SExpr]:
    """Read all top-level s-expressions, with positions."""
    top: List[SExpr] = []
    stack: List[Tuple[List[SExpr], int, int]] = []
    for token in tokenize(text):
        if token.kind == "lparen":
            stack.append(([], token.line, token.column))
        elif token.kind == "rparen":
            if not stack:
                raise SmtLibSyntaxError("unexpected ')'", token.line, token.column)
            items, line, column = stack.pop()
            node = SList(tuple(items), line, column)
            (stack[-1][0] if stack else top).append(node)
        else:
            (stack[-1][0] if stack else top).append(token)
    if stack:
        line, column = _eof_position(text)
        _, open_line, open_column = stack[-1]
        raise SmtLibSyntaxError(
            f"unexpected end of input, '(' opened at {open_line}:{open_column} is not closed",
            line, column)
    return top


def render(sx: SExpr) -> str:
    parts: List[str] = []
    work: List[Union[SExpr, str]] = [sx]
    while work:
        node = work.pop()
        if isinstance(node, str):
            parts.append(node)
        elif isinstance(node, Token):
            parts.append(node.text)
        else:
            parts.append("(")
            work.append(")")
            for k in range(len(node.items) - 1, -1, -1):
                work.append(node.items[k])
                if k:
                    work.append(" ")
    return "".join(parts)


def _take(stack: List[Term], count: int) -> List[Term]:
    """Pop the last `count` entries of `stack`, oldest first."""
    if not count:
        return []
    taken = stack[-count:]
    del stack[-count:]
    return taken


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        head = data[:e.start].decode("utf-8")
        line = head.count("\n") + 1
        column = len(head) - (head.rfind("\n") + 1) + 1
        raise SmtLibSyntaxError(f"invalid UTF-8 byte 0x{data[e.start]:02x}", line, column) from None


def _unquote(text: str) -> str:
    if len(text) >= 2 and text[0] == "|" and text[-1] == "|":
        return text[1:-1]
    return text


class SmtLibParser:
    """Builds a `Script` from text; one instance per script."""

    def __init__(self):
        self.declarations: Dict[str, Sort] = {}
        self.macros: Dict[str, Tuple[Tuple[Tuple[str, Sort], ...], Term]] = {}
        self.script = Script()
        self._objective_seen = False

    # ------------------------------------------------------------------ entry

    def parse(self, text: Union[str, bytes]) -> Script:
        if isinstance(text, bytes):
            text = _decode(text)
        for sx in read_sexprs(text):
            self._command(sx)
        logger.debug(f"Parsed {len(self.script.commands)} commands, "
                     f"{len(self.declarations)} declarations")
        return self.script

    # ------------------------------------------------------------------ helpers

    @staticmethod
    def _pos(sx: SExpr) -> Tuple[int, int]:
        return sx.line, sx.column

    def _symbol(self, sx: SExpr, what: str) -> str:
        if not isinstance(sx, Token) or sx.kind not in ("symbol", "quoted_symbol"):
            raise SmtLibSyntaxError(f"expected {what}, got '{render(sx)}'", *self._pos(sx))
        return _unquote(sx.text)

    def _numeral(self, sx: SExpr) -> int:
        if not isinstance(sx, Token) or sx.kind != "numeral":
            raise SmtLibSyntaxError(f"expected a numeral, got '{render(sx)}'", *self._pos(sx))
        return int(sx.text)

    def _expect_items(self, sx: SList, count: int, what: str) -> None:
        if len(sx.items) != count:
            raise SmtLibSyntaxError(f"malformed {what}: '{render(sx)}'", *self._pos(sx))

    # ------------------------------------------------------------------ sorts

    def _sort(self, sx: SExpr) -> Sort:
        if isinstance(sx, Token):
            if sx.text == "Bool":
                return BOOL
            if sx.text in NAMED_FP_SORTS:
                return FpSort(*NAMED_FP_SORTS[sx.text])
        elif len(sx.items) >= 3 and isinstance(sx.items[0], Token) and sx.items[0].text == "_":
            name = sx.items[1].text if isinstance(sx.items[1], Token) else ""
            try:
                if name == "BitVec" and len(sx.items) == 3:
                    return BvSort(self._numeral(sx.items[2]))
                if name in ("FloatingPoint", "FP") and len(sx.items) == 4:
                    return FpSort(self._numeral(sx.items[2]), self._numeral(sx.items[3]))
            except SmtLibSyntaxError:
                raise
            except OmtBitsError as e:
                raise SmtLibSortError(str(e), render(sx), *self._pos(sx)) from None
        raise SmtLibSortError("unknown sort", render(sx), *self._pos(sx))

    # ------------------------------------------------------------------ terms

    def _term(self, sx: SExpr, scope: Dict[str, Term]) -> Term:
        # Explicit-stack post-order walk: `done` holds finished subterms,
        # `work` holds nodes to visit and nodes waiting for their children.
        done: List[Term] = []
        work: List[tuple] = [("visit", sx, scope)]
        while work:
            action, node, env = work.pop()
            if action == "visit":
                self._visit(node, env, work, done)
                continue
            if action == "let":
                names = [self._symbol(b.items[0], "a variable name") for b in node.items[1].items]
                values = _take(done, len(names))
                inner = dict(env)
                inner.update(zip(names, values))
                work.append(("visit", node.items[2], inner))
            elif action == "apply":
                done.append(self._apply(node, _take(done, len(node.items) - 1)))
            else:
                name, indices = action
                done.append(self._indexed_application(node, name, indices,
                                                      _take(done, len(node.items) - 1)))
        return done[-1]

    def _visit(self, sx: SExpr, scope: Dict[str, Term], work: List[tuple], done: List[Term]) -> None:
        if isinstance(sx, Token):
            done.append(self._atom(sx, scope))
            return
        if not sx.items:
            raise SmtLibSyntaxError("empty application '()'", *self._pos(sx))
        head = sx.items[0]
        pos = self._pos(sx)

        if isinstance(head, SList):
            work.append((self._indexed_head(sx), sx, scope))
            children = sx.items[1:]
        else:
            op = head.text
            if op == "_":
                done.append(self._indexed_constant(sx))
                return
            if op in ("!", "forall", "exists", "match"):
                raise UnsupportedConstructError(op, *pos)
            if op in ROUNDING_OPERATORS:
                raise UnsupportedConstructError(op, *pos)
            if op == "let":
                work.append(("let", sx, scope))
                children = self._let_bindings(sx)
            else:
                work.append(("apply", sx, scope))
                children = sx.items[1:]
        for child in reversed(children):
            work.append(("visit", child, scope))

    def _apply(self, sx: SList, args: List[Term]) -> Term:
        op = sx.items[0].text
        pos = self._pos(sx)
        if op in self.macros:
            params, body = self.macros[op]
            if len(params) != len(args):
                raise SmtLibSortError(f"'{op}' expects {len(params)} argument(s)", render(sx), *pos)
            for (pname, psort), arg in zip(params, args):
                if arg.sort != psort:
                    raise SmtLibSortError(f"argument '{pname}' of '{op}' must be {psort}",
                                          render(sx), *pos)
            return substitute(body, {pname: arg for (pname, _), arg in zip(params, args)})
        return mk_app(op, args, pos=pos)

    def _atom(self, token: Token, scope: Dict[str, Term]) -> Term:
        pos = self._pos(token)
        if token.kind in ("binary", "hexadecimal"):
            try:
                return mk_bv(BvConst.from_literal(token.text))
            except SortError as e:
                raise SmtLibSortError(str(e), token.text, *pos) from None
        if token.kind not in ("symbol", "quoted_symbol"):
            raise SmtLibSyntaxError(f"unexpected {token.kind} '{token.text}'", *pos)
        name = _unquote(token.text)
        if name in scope:
            return scope[name]
        if token.kind == "symbol" and name == "true":
            return TRUE
        if token.kind == "symbol" and name == "false":
            return FALSE
        if name in self.declarations:
            return mk_var(name, self.declarations[name], pos)
        if name in self.macros:
            params, body = self.macros[name]
            if not params:
                return body
        raise SmtLibSortError(f"unknown symbol '{name}'", name, *pos)

    def _let_bindings(self, sx: SList) -> List[SExpr]:
        """Check the shape of a `let` and return its bound terms in order."""
        self._expect_items(sx, 3, "let")
        bindings = sx.items[1]
        if not isinstance(bindings, SList) or not bindings.items:
            raise SmtLibSyntaxError("malformed let bindings", *self._pos(sx))
        for binding in bindings.items:
            if not isinstance(binding, SList) or len(binding.items) != 2:
                raise SmtLibSyntaxError(f"malformed let binding '{render(binding)}'", *self._pos(binding))
            self._symbol(binding.items[0], "a variable name")
        return [binding.items[1] for binding in bindings.items]

    def _indexed_constant(self, sx: SList) -> Term:
        items = sx.items
        pos = self._pos(sx)
        name = items[1].text if len(items) > 1 and isinstance(items[1], Token) else ""
        try:
            if name.startswith("bv") and name[2:].isdigit() and len(items) == 3:
                return mk_bv(BvConst.from_int(BvSort(self._numeral(items[2])), int(name[2:])))
            if name in ("+oo", "-oo", "+zero", "-zero", "NaN") and len(items) == 4:
                sort = FpSort(self._numeral(items[2]), self._numeral(items[3]))
                if name == "NaN":
                    return mk_fp(canonical_nan(sort))
                negative = name.startswith("-")
                if name.endswith("oo"):
                    return mk_fp(fp_infinity(sort, negative))
                return mk_fp(fp_zero(sort, negative))
        except SortError as e:
            raise SmtLibSortError(str(e), render(sx), *pos) from None
        raise UnsupportedConstructError(render(sx), *pos)

    def _indexed_head(self, sx: SList) -> Tuple[str, List[int]]:
        head = sx.items[0]
        pos = self._pos(sx)
        if (len(head.items) < 2 or not isinstance(head.items[0], Token)
                or head.items[0].text != "_" or not isinstance(head.items[1], Token)):
            raise SmtLibSyntaxError(f"malformed indexed operator '{render(head)}'", *pos)
        name = head.items[1].text
        if name not in ("extract", "zero_extend", "sign_extend"):
            raise UnsupportedConstructError(name, *pos)
        return name, [self._numeral(i) for i in head.items[2:]]

    def _indexed_application(self, sx: SList, name: str, indices: List[int], args: List[Term]) -> Term:
        pos = self._pos(sx)
        if name == "extract":
            return mk_app("extract", args, indices, pos=pos)
        if name in ("zero_extend", "sign_extend") and len(indices) == 1 and len(args) == 1:
            (k,), (arg,) = indices, args
            if not isinstance(arg.sort, BvSort):
                raise SmtLibSortError(f"'{name}' expects a bit-vector", render(sx), *pos)
            if k == 0:
                return arg
            if name == "zero_extend":
                return mk_app("concat", [mk_bv(BvConst.from_int(BvSort(k), 0)), arg], pos=pos)
            msb = mk_app("extract", [arg], (arg.sort.width - 1, arg.sort.width - 1), pos=pos)
            return mk_app("concat", [msb] * k + [arg], pos=pos)
        raise UnsupportedConstructError(name, *pos)

    # ------------------------------------------------------------------ commands

    def _emit(self, command) -> None:
        self.script.commands.append(command)

    def _declare(self, name: str, sort: Sort, sx: SExpr) -> None:
        if name in self.declarations or name in self.macros:
            raise SmtLibSortError(f"symbol '{name}' already declared", render(sx), *self._pos(sx))
        self.declarations[name] = sort
        self._emit(DeclareConst(name, sort))

    def _command(self, sx: SExpr) -> None:
        if not isinstance(sx, SList) or not sx.items or not isinstance(sx.items[0], Token):
            raise SmtLibSyntaxError(f"expected a command, got '{render(sx)}'", *self._pos(sx))
        name = sx.items[0].text
        items = sx.items
        pos = self._pos(sx)

        if name in ("set-option", "set-info"):
            if len(items) < 2 or not isinstance(items[1], Token) or items[1].kind != "keyword":
                where = self._pos(items[1]) if len(items) > 1 else pos
                raise SmtLibSyntaxError(f"malformed {name}, expected a keyword", *where)
            value = " ".join(render(i) for i in items[2:])
            self._emit(SetOption(items[1].text, value) if name == "set-option"
                       else SetInfo(items[1].text, value))
        elif name == "set-logic":
            self._expect_items(sx, 2, name)
            self._emit(SetLogic(self._symbol(items[1], "a logic name")))
        elif name == "declare-fun":
            self._expect_items(sx, 4, name)
            if not isinstance(items[2], SList) or items[2].items:
                raise UnsupportedConstructError("declare-fun with arguments", *pos)
            self._declare(self._symbol(items[1], "a function name"), self._sort(items[3]), sx)
        elif name == "declare-const":
            self._expect_items(sx, 3, name)
            self._declare(self._symbol(items[1], "a constant name"), self._sort(items[2]), sx)
        elif name == "define-fun":
            self._define_fun(sx)
        elif name == "assert":
            self._expect_items(sx, 2, name)
            term = self._term(items[1], {})
            if term.sort != BOOL:
                raise SmtLibSortError("assertion is not Bool", render(items[1]), *pos)
            self._emit(Assert(term))
        elif name in ("minimize", "maximize"):
            self._objective(sx, Direction.MINIMIZE if name == "minimize" else Direction.MAXIMIZE)
        elif name == "check-sat":
            self._expect_items(sx, 1, name)
            self._emit(CheckSat())
        elif name == "get-model":
            self._expect_items(sx, 1, name)
            self._emit(GetModel())
        elif name == "get-objectives":
            self._expect_items(sx, 1, name)
            self._emit(GetObjectives())
        elif name == "get-value":
            self._expect_items(sx, 2, name)
            if not isinstance(items[1], SList) or not items[1].items:
                raise SmtLibSyntaxError("get-value expects a non-empty term list", *pos)
            self._emit(GetValue(tuple(self._term(t, {}) for t in items[1].items)))
        elif name == "echo":
            self._expect_items(sx, 2, name)
            if not isinstance(items[1], Token) or items[1].kind != "string":
                raise SmtLibSyntaxError("echo expects a string literal", *pos)
            self._emit(Echo(items[1].text))
        elif name == "exit":
            self._emit(Exit())
        elif name in UNSUPPORTED_COMMANDS:
            raise UnsupportedConstructError(name, *pos)
        else:
            raise SmtLibSyntaxError(f"unknown command '{name}'", *pos)

    def _define_fun(self, sx: SList) -> None:
        self._expect_items(sx, 5, "define-fun")
        _, name_sx, params_sx, sort_sx, body_sx = sx.items
        name = self._symbol(name_sx, "a function name")
        if name in self.declarations or name in self.macros:
            raise SmtLibSortError(f"symbol '{name}' already declared", render(sx), *self._pos(sx))
        if not isinstance(params_sx, SList):
            raise SmtLibSyntaxError("define-fun expects a parameter list", *self._pos(params_sx))
        params = []
        for p in params_sx.items:
            if not isinstance(p, SList) or len(p.items) != 2:
                raise SmtLibSyntaxError(f"malformed parameter '{render(p)}'", *self._pos(p))
            params.append((self._symbol(p.items[0], "a parameter name"), self._sort(p.items[1])))
        sort = self._sort(sort_sx)
        scope = {pname: mk_var(pname, psort) for pname, psort in params}
        body = self._term(body_sx, scope)
        if body.sort != sort:
            raise SmtLibSortError(f"body of '{name}' has sort {body.sort}, declared {sort}",
                                  render(body_sx), *self._pos(sx))
        self.macros[name] = (tuple(params), body)
        self._emit(DefineFun(name, tuple(params), sort, body))

    def _fresh_cost_name(self) -> str:
        name, k = "cost", 0
        while name in self.declarations or name in self.macros:
            k += 1
            name = f"cost!{k}"
        return name

    def _objective(self, sx: SList, direction: Direction) -> None:
        pos = self._pos(sx)
        if len(sx.items) < 2:
            raise SmtLibSyntaxError("objective command without a term", *pos)
        if self._objective_seen:
            raise UnsupportedConstructError("multiple objectives", *pos)
        term = self._term(sx.items[1], {})
        if isinstance(term.sort, BoolSort):
            raise SmtLibSortError("objectives must be bit-vector or floating-point",
                                  render(sx.items[1]), *pos)

        signedness = Signedness.UNSIGNED
        attributes = list(sx.items[2:])
        while attributes:
            attr = attributes.pop(0)
            if not isinstance(attr, Token) or attr.kind != "keyword":
                raise SmtLibSyntaxError(f"expected an attribute, got '{render(attr)}'", *self._pos(attr))
            if attr.text == ":signed":
                signedness = Signedness.SIGNED
            elif attr.text == ":unsigned":
                signedness = Signedness.UNSIGNED
            else:
                logger.warning(f"{attr.line}:{attr.column}: ignoring objective attribute {attr.text}")
                if attributes and not (isinstance(attributes[0], Token) and attributes[0].kind == "keyword"):
                    attributes.pop(0)
        if isinstance(term.sort, FpSort) and signedness is Signedness.SIGNED:
            logger.warning(f"{pos[0]}:{pos[1]}: ':signed' has no meaning for a floating-point objective")
            signedness = Signedness.UNSIGNED

        if term.is_var:
            name = term.name
        else:
            name = self._fresh_cost_name()
            self._declare(name, term.sort, sx)
            self._emit(Assert(mk_app("=", [mk_var(name, term.sort), term])))
        self._objective_seen = True
        self._emit(Optimize(Objective(name, direction, term.sort, signedness)))


def parse(text: Union[str, bytes]) -> Script:
    """Parse SMT-LIB text into a Script."""
    return SmtLibParser().parse(text)


def parse_file(path: str) -> Script:
    with open(path, "rb") as f:
        return parse(f.read())
