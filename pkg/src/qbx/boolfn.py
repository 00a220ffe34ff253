"""Single-output Boolean functions: expression ASTs, parsing and truth tables.

Row ``idx`` of a truth table with arity ``k`` is the input configuration whose
bits, read x1 first, spell ``idx`` in binary.  So x1 is the most significant
bit and row 0 is the all-zeros configuration.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ParseError, SemanticError

__all__ = [
    "MAX_ARITY",
    "Var",
    "Const",
    "Not",
    "And",
    "Or",
    "Xor",
    "BooleanExpression",
    "BooleanFunction",
    "parse_expression",
    "evaluate",
    "max_variable",
    "expression_to_function",
    "function_from_table_text",
    "format_table",
    "configuration",
    "minterms",
    "functions_of_arity",
]

#: Explicit truth tables beyond this arity are refused (2**24 rows).
MAX_ARITY = 24


# --------------------------------------------------------------------------
# expression AST


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise SemanticError(f"variable index must be >= 1, got {self.index}")

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class Const:
    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise SemanticError(f"constant must be 0 or 1, got {self.value!r}")

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Not:
    operand: "BooleanExpression"

    def __str__(self):
        inner = str(self.operand)
        if isinstance(self.operand, (Var, Const, Not)):
            return f"~{inner}"
        return f"~({inner})"


@dataclass(frozen=True)
class _NAry:
    operands: tuple

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise SemanticError(
                f"{type(self).__name__} needs at least two operands")


@dataclass(frozen=True)
class And(_NAry):
    def __str__(self):
        return " ".join(_wrap(op, (Or, Xor)) for op in self.operands)


@dataclass(frozen=True)
class Xor(_NAry):
    def __str__(self):
        return " ^ ".join(_wrap(op, (Or,)) for op in self.operands)


@dataclass(frozen=True)
class Or(_NAry):
    def __str__(self):
        return " + ".join(str(op) for op in self.operands)


BooleanExpression = Union[Var, Const, Not, And, Or, Xor]


def _wrap(expr, loose):
    return f"({expr})" if isinstance(expr, loose) else str(expr)


# --------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(x\d+)|(\d+)|([~+^*()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", position=start)
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start, m.lastindex))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message):
        tok = self.peek()
        pos = tok[1] if tok else len(self.text)
        raise ParseError(message, position=pos)

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression", position=0)
        expr = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected token {self.peek()[0]!r}")
        return expr

    def _chain(self, sub, symbol, cls):
        items = [sub()]
        while self.peek() is not None and self.peek()[0] == symbol:
            self.take()
            items.append(sub())
        return items[0] if len(items) == 1 else cls(tuple(items))

    def expr(self):
        return self._chain(self.xorterm, "+", Or)

    def xorterm(self):
        return self._chain(self.term, "^", Xor)

    def term(self):
        items = [self.factor()]
        while True:
            tok = self.peek()
            if tok is None:
                break
            if tok[0] == "*":
                self.take()
                items.append(self.factor())
            elif tok[0] in ("~", "(") or tok[2] in (1, 2):
                items.append(self.factor())
            else:
                break
        return items[0] if len(items) == 1 else And(tuple(items))

    def factor(self):
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of expression")
        value, pos, kind = tok
        if value == "~":
            self.take()
            return Not(self.factor())
        if value == "(":
            self.take()
            inner = self.expr()
            if self.peek() is None or self.peek()[0] != ")":
                self.error("expected ')'")
            self.take()
            return inner
        if kind == 1:
            self.take()
            index = int(value[1:])
            if index < 1:
                raise ParseError("variable index must be >= 1", position=pos)
            return Var(index)
        if kind == 2:
            self.take()
            if value not in ("0", "1"):
                raise ParseError(f"invalid constant {value!r}", position=pos)
            return Const(int(value))
        self.error(f"unexpected token {value!r}")


def parse_expression(text: str) -> BooleanExpression:
    """Parse ``text`` into an expression tree.

    Precedence from tightest to loosest is ``~``, AND (``*`` or adjacency),
    ``^``, ``+``.  Same-level chains become one n-ary node.

    >>> str(parse_expression("(~x1)+x2*x3"))
    '~x1 + x2 x3'
    """
    return _Parser(text).parse()


def evaluate(expr: BooleanExpression, bits: Sequence[int]) -> int:
    """Evaluate ``expr`` with ``bits[i-1]`` bound to x_i."""
    if isinstance(expr, Var):
        if expr.index > len(bits):
            raise SemanticError(f"x{expr.index} not bound by {len(bits)} bits")
        return int(bits[expr.index - 1]) & 1
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Not):
        return 1 - evaluate(expr.operand, bits)
    if isinstance(expr, And):
        return int(all(evaluate(op, bits) for op in expr.operands))
    if isinstance(expr, Or):
        return int(any(evaluate(op, bits) for op in expr.operands))
    if isinstance(expr, Xor):
        acc = 0
        for op in expr.operands:
            acc ^= evaluate(op, bits)
        return acc
    raise TypeError(f"not an expression node: {expr!r}")


def max_variable(expr: BooleanExpression) -> int:
    """Largest variable index appearing in ``expr`` (0 if none)."""
    if isinstance(expr, Var):
        return expr.index
    if isinstance(expr, Const):
        return 0
    if isinstance(expr, Not):
        return max_variable(expr.operand)
    return max(max_variable(op) for op in expr.operands)


# --------------------------------------------------------------------------
# truth tables


@dataclass(frozen=True)
class BooleanFunction:
    """Complete truth table of a ``k``-input, single-output function.

    ``outputs`` accepts any iterable of 0/1 values and is stored as ``bytes``.
    """

    arity: int
    outputs: bytes

    def __post_init__(self):
        if not 0 <= self.arity <= MAX_ARITY:
            raise SemanticError(f"arity must be in [0, {MAX_ARITY}], got {self.arity}")
        out = self.outputs
        if isinstance(out, np.ndarray):
            out = out.astype(np.uint8).tobytes()
        elif not isinstance(out, bytes):
            out = bytes(int(b) for b in out)
        if len(out) != 1 << self.arity:
            raise SemanticError(
                f"arity {self.arity} needs {1 << self.arity} outputs, got {len(out)}")
        if out.strip(b"\x00\x01"):
            raise SemanticError("outputs must be 0 or 1")
        object.__setattr__(self, "outputs", out)

    @classmethod
    def from_int(cls, arity: int, code: int) -> "BooleanFunction":
        """Function whose table, read as a binary string, equals ``code``."""
        size = 1 << arity
        return cls(arity, [(code >> (size - 1 - i)) & 1 for i in range(size)])

    @classmethod
    def constant(cls, arity: int, value: int) -> "BooleanFunction":
        return cls(arity, bytes([value & 1]) * (1 << arity))

    def to_int(self) -> int:
        return int(format_table(self), 2)

    def to_array(self) -> np.ndarray:
        return np.frombuffer(self.outputs, dtype=np.uint8)

    def __len__(self):
        return len(self.outputs)

    def __getitem__(self, index):
        return self.outputs[index]

    def __call__(self, *bits):
        if len(bits) != self.arity:
            raise SemanticError(f"expected {self.arity} bits, got {len(bits)}")
        idx = 0
        for b in bits:
            idx = (idx << 1) | (int(b) & 1)
        return self.outputs[idx]

    def __str__(self):
        return format_table(self)


def configuration(index: int, arity: int) -> tuple:
    """Input configuration (x1, ..., xk) of truth-table row ``index``."""
    return tuple((index >> (arity - i)) & 1 for i in range(1, arity + 1))


def _columns(arity):
    idx = np.arange(1 << arity, dtype=np.int64)
    return [((idx >> (arity - i)) & 1).astype(np.uint8) for i in range(1, arity + 1)]


def _eval_columns(expr, cols, size):
    if isinstance(expr, Var):
        return cols[expr.index - 1]
    if isinstance(expr, Const):
        return np.full(size, expr.value, dtype=np.uint8)
    if isinstance(expr, Not):
        return 1 - _eval_columns(expr.operand, cols, size)
    parts = [_eval_columns(op, cols, size) for op in expr.operands]
    op = {And: np.bitwise_and, Or: np.bitwise_or, Xor: np.bitwise_xor}[type(expr)]
    return op.reduce(parts)


def expression_to_function(expr: BooleanExpression, arity: int) -> BooleanFunction:
    top = max_variable(expr)
    if top > arity:
        raise SemanticError(f"x{top} exceeds arity {arity}")
    size = 1 << arity
    out = _eval_columns(expr, _columns(arity), size)
    return BooleanFunction(arity, np.asarray(out, dtype=np.uint8))


def function_from_table_text(text: str) -> BooleanFunction:
    """Read the truth-table file format.

    Lines starting with ``#`` are comments; the remaining characters are the
    output bits in row order, with whitespace ignored.
    """
    bits = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.lstrip().startswith("#"):
            continue
        for col, ch in enumerate(line):
            if ch in "01":
                bits.append(ord(ch) - 48)
            elif not ch.isspace():
                raise ParseError(f"unexpected character {ch!r} in truth table",
                                 line=lineno, position=col)
    n = len(bits)
    if n == 0 or n & (n - 1):
        raise ParseError(f"truth table length {n} is not a power of two")
    return BooleanFunction(n.bit_length() - 1, bytes(bits))


def format_table(f: BooleanFunction) -> str:
    return f.outputs.translate(bytes.maketrans(b"\x00\x01", b"01")).decode()


def minterms(f: BooleanFunction) -> list:
    """Input configurations where ``f`` is 1, in ascending row order."""
    return [configuration(i, f.arity) for i, v in enumerate(f.outputs) if v]


def functions_of_arity(arity: int) -> Iterable[BooleanFunction]:
    """Every function of the given arity, ordered by table value."""
    for code in range(1 << (1 << arity)):
        yield BooleanFunction.from_int(arity, code)
