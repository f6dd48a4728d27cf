# project_root/src/smtlib/tokens.py
"""
Token patterns of the SMT-LIB v2 concrete syntax.

Order matters: the lexer tries the patterns top to bottom at each offset
and takes the first match.
"""

import re

SYMBOL_CHARS = r"A-Za-z0-9~!@$%^&*_+=<>.?/\-"

TOKEN_PATTERNS = {
    "whitespace": re.compile(r"\s+"),
    "comment": re.compile(r";[^\n]*"),
    "lparen": re.compile(r"\("),
    "rparen": re.compile(r"\)"),
    "binary": re.compile(r"#b[01]+"),
    "hexadecimal": re.compile(r"#x[0-9a-fA-F]+"),
    "decimal": re.compile(r"[0-9]+\.[0-9]+"),
    "numeral": re.compile(r"0|[1-9][0-9]*"),
    "string": re.compile(r'"(?:[^"]|"")*"'),
    "quoted_symbol": re.compile(r"\|[^|\\]*\|"),
    "keyword": re.compile(r":[" + SYMBOL_CHARS + r"]+"),
    "symbol": re.compile(r"[A-Za-z~!@$%^&*_+=<>.?/\-][" + SYMBOL_CHARS + r"]*"),
}

# Skipped by the reader.
TRIVIA = {"whitespace", "comment"}

# FP operators that exist in SMT-LIB but need rounding; rejected with a diagnostic.
ROUNDING_OPERATORS = {
    "fp.add", "fp.sub", "fp.mul", "fp.div", "fp.fma", "fp.sqrt", "fp.rem",
    "fp.roundToIntegral", "to_fp", "to_fp_unsigned", "fp.to_ubv", "fp.to_sbv", "fp.to_real",
}

# Named FP sorts accepted as sugar.
NAMED_FP_SORTS = {
    "Float16": (5, 11),
    "Float32": (8, 24),
    "Float64": (11, 53),
    "Float128": (15, 113),
}
