"""Expression language for user functions of x and y.

Grammar, lowest precedence first::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?            # right associative
    atom    := NUMBER | 'x' | 'y' | NAME '(' args ')' | '(' expr ')'

Whitespace is insignificant.  ``-x^2`` is ``-(x^2)`` and ``2^3^2`` is 512.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import TimeScaleError


class ExprError(TimeScaleError):
    pass


class ExprSyntaxError(ExprError):
    def __init__(self, offset: int, expected, found: str):
        self.offset = offset
        self.expected = tuple(expected)
        self.found = found
        super().__init__(
            f"syntax error at offset {offset}: expected {' or '.join(self.expected)}, found {found!r}"
        )


class UnknownIdentifier(ExprError):
    def __init__(self, name: str, offset: int):
        self.name = name
        self.offset = offset
        super().__init__(f"unknown identifier {name!r} at offset {offset}")


class ArityError(ExprError):
    def __init__(self, name: str, expected: int, got: int, offset: int):
        self.name = name
        self.offset = offset
        super().__init__(f"{name}() takes {expected} argument(s), got {got} (offset {offset})")


class MissingVariable(ExprError):
    pass


class DomainError(ExprError, ArithmeticError):
    def __init__(self, operation: str, operand):
        self.operation = operation
        self.operand = operand
        super().__init__(f"{operation} is undefined at {operand!r}")


# AST -----------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


FUNCTIONS = {"exp": 1, "log": 1, "abs": 1, "sqrt": 1, "max": 2, "min": 2}
VARIABLES = ("x", "y")


# tokenizer -----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^(),]))"
)


def _tokenize(src: str):
    tokens = []
    pos = 0
    n = len(src)
    while pos < n:
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            if src[pos:].strip() == "":
                break
            bad = pos + (len(src[pos:]) - len(src[pos:].lstrip()))
            raise ExprSyntaxError(bad, ["a number, name or operator"], src[bad])
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def fail(self, expected):
        kind, text, offset = self.tok
        raise ExprSyntaxError(offset, expected, text or "end of input")

    def accept(self, *ops):
        kind, text, _ = self.tok
        if kind == "op" and text in ops:
            self.i += 1
            return text
        return None

    def expect(self, op):
        if self.accept(op) is None:
            self.fail([repr(op)])

    def parse(self):
        node = self.expr()
        if self.tok[0] != "end":
            self.fail(["an operator", "end of input"])
        return node

    def expr(self):
        node = self.term()
        while (op := self.accept("+", "-")) is not None:
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while (op := self.accept("*", "/")) is not None:
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.accept("-") is not None:
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept("^") is not None:
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        kind, text, offset = self.tok
        if kind == "num":
            self.i += 1
            return Num(float(text))
        if kind == "name":
            self.i += 1
            if text in VARIABLES:
                return Var(text)
            if text not in FUNCTIONS:
                raise UnknownIdentifier(text, offset)
            self.expect("(")
            args = [self.expr()]
            while self.accept(",") is not None:
                args.append(self.expr())
            self.expect(")")
            if len(args) != FUNCTIONS[text]:
                raise ArityError(text, FUNCTIONS[text], len(args), offset)
            return Call(text, tuple(args))
        if self.accept("(") is not None:
            node = self.expr()
            self.expect(")")
            return node
        self.fail(["a number", "a variable", "a function call", "'('"])


def parse(source: str):
    """Parse ``source`` into an AST; errors carry the byte offset."""
    return _Parser(source).parse()


def free_variables(e) -> frozenset:
    if isinstance(e, Var):
        return frozenset([e.name])
    if isinstance(e, Num):
        return frozenset()
    if isinstance(e, Neg):
        return free_variables(e.operand)
    if isinstance(e, BinOp):
        return free_variables(e.left) | free_variables(e.right)
    return frozenset().union(*(free_variables(a) for a in e.args))


def pretty(e) -> str:
    """Fully parenthesized source text that reparses to the same tree."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"(-{pretty(e.operand)})"
    if isinstance(e, BinOp):
        return f"({pretty(e.left)} {e.op} {pretty(e.right)})"
    return f"{e.func}({', '.join(pretty(a) for a in e.args)})"


# evaluation ----------------------------------------------------------------

def _checked(value, operation, operand):
    if not math.isfinite(value):
        raise DomainError(operation, operand)
    return value


def _div(a, b):
    if b == 0:
        raise DomainError("division", b)
    return _checked(a / b, "division", (a, b))


def _pow(a, b):
    if a < 0 and b != math.floor(b):
        raise DomainError("power", (a, b))
    if a == 0 and b < 0:
        raise DomainError("power", (a, b))
    try:
        return _checked(math.pow(a, b), "power", (a, b))
    except OverflowError:
        raise DomainError("power", (a, b)) from None


def _exp(a):
    try:
        return math.exp(a)
    except OverflowError:
        raise DomainError("exp", a) from None


def _log(a):
    if a <= 0:
        raise DomainError("log", a)
    return math.log(a)


def _sqrt(a):
    if a < 0:
        raise DomainError("sqrt", a)
    return math.sqrt(a)


_BINARY = {
    "+": lambda a, b: _checked(a + b, "addition", (a, b)),
    "-": lambda a, b: _checked(a - b, "subtraction", (a, b)),
    "*": lambda a, b: _checked(a * b, "multiplication", (a, b)),
    "/": _div,
    "^": _pow,
}
_CALLS = {"exp": _exp, "log": _log, "abs": abs, "sqrt": _sqrt, "max": max, "min": min}


def compile_expr(e):
    """Closure ``f(x, y=None)`` evaluating ``e`` in IEEE double precision."""
    if isinstance(e, Num):
        v = e.value
        return lambda x, y=None: v
    if isinstance(e, Var):
        if e.name == "x":
            return lambda x, y=None: x
        def get_y(x, y=None):
            if y is None:
                raise MissingVariable("expression uses y but no y value was supplied")
            return y
        return get_y
    if isinstance(e, Neg):
        inner = compile_expr(e.operand)
        return lambda x, y=None: -inner(x, y)
    if isinstance(e, BinOp):
        op = _BINARY[e.op]
        left, right = compile_expr(e.left), compile_expr(e.right)
        return lambda x, y=None: op(left(x, y), right(x, y))
    fn = _CALLS[e.func]
    args = [compile_expr(a) for a in e.args]
    if len(args) == 1:
        (arg,) = args
        return lambda x, y=None: fn(arg(x, y))
    first, second = args
    return lambda x, y=None: fn(first(x, y), second(x, y))


def evaluate(e, x: float, y: float | None = None) -> float:
    if isinstance(e, str):
        e = parse(e)
    return float(compile_expr(e)(float(x), None if y is None else float(y)))
