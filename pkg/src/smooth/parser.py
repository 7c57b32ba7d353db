"""Text grammar for smooth expressions.

Infix arithmetic (``+ - * / **``), parentheses, numeric literals, the constants
``pi`` and ``e``, coordinates ``x1 .. xn`` and the primitives ``exp``, ``log``,
``sin``, ``cos``, ``sqrt`` and ``bump`` (e^{-1/x^2} extended by 0). Relations
(``== < <= > >=``) joined by ``and`` / ``or`` are accepted where a predicate is
expected. Text is tokenized by Python's own parser, so line and column numbers
of errors refer to the user's text.
"""

import ast
import math
import re
from typing import Callable, Dict, Optional, Sequence, Tuple

from ..utils.errors import ExpressionParseError
from ..utils.logger import get_logger
from .nodes import (
    Bump,
    Const,
    Coord,
    Cos,
    Exp,
    Log,
    Node,
    Sin,
    Sqrt,
    add,
    div,
    mul,
    neg,
    power,
    sub,
)
from .smooth_map import SmoothMap

logger = get_logger(__name__)

_COORDINATE = re.compile(r"^x([1-9][0-9]*)$")

CONSTANTS: Dict[str, float] = {"pi": math.pi, "e": math.e}

FUNCTIONS: Dict[str, Callable[[Node], Node]] = {
    "exp": Exp,
    "log": Log,
    "sin": Sin,
    "cos": Cos,
    "sqrt": Sqrt,
    "bump": Bump,
}

_BINARY: Dict[type, Callable[[Node, Node], Node]] = {
    ast.Add: add,
    ast.Sub: sub,
    ast.Mult: mul,
    ast.Div: div,
}


def parse_tree(text: str) -> ast.expr:
    """Parse text into a Python expression tree, reporting syntax errors in text coordinates."""
    if not text or not text.strip():
        raise ExpressionParseError("Empty expression", 1, 1, text)
    try:
        # The wrapping parentheses allow expressions to span several lines
        module = ast.parse(f"({text})", mode="eval")
    except SyntaxError as e:
        line = e.lineno or 1
        column = max(1, (e.offset or 1) - (1 if line == 1 else 0))
        raise ExpressionParseError(f"Syntax error: {e.msg}", line, column, text) from e
    return module.body


def location(tree: ast.AST) -> Tuple[int, int]:
    """1-based (line, column) of a node in the unwrapped text."""
    line = getattr(tree, "lineno", 1)
    column = getattr(tree, "col_offset", 0) + 1 - (1 if line == 1 else 0)
    return line, max(1, column)


class ExpressionBuilder:
    """Turns Python expression trees into smooth-expression nodes."""

    def __init__(self, text: str, input_dim: Optional[int] = None):
        self.text = text
        self.input_dim = input_dim

    def fail(self, message: str, tree: ast.AST) -> ExpressionParseError:
        line, column = location(tree)
        return ExpressionParseError(message, line, column, self.text)

    def build(self, tree: ast.AST) -> Node:
        handlers = {
            ast.BinOp: self._binary,
            ast.UnaryOp: self._unary,
            ast.Call: self._call,
            ast.Name: self._name,
            ast.Constant: self._constant,
        }
        handler = handlers.get(type(tree))
        if handler is None:
            raise self.fail(f"Unsupported syntax '{type(tree).__name__}'", tree)
        return handler(tree)

    def _binary(self, tree: ast.BinOp) -> Node:
        left = self.build(tree.left)
        right = self.build(tree.right)
        if isinstance(tree.op, ast.Pow):
            if not isinstance(right, Const):
                raise self.fail("Exponent must be a constant", tree.right)
            return power(left, right.value)
        op = _BINARY.get(type(tree.op))
        if op is None:
            raise self.fail(f"Unsupported operator '{type(tree.op).__name__}'", tree)
        return op(left, right)

    def _unary(self, tree: ast.UnaryOp) -> Node:
        operand = self.build(tree.operand)
        if isinstance(tree.op, ast.USub):
            return neg(operand)
        if isinstance(tree.op, ast.UAdd):
            return operand
        raise self.fail(f"Unsupported unary operator '{type(tree.op).__name__}'", tree)

    def _call(self, tree: ast.Call) -> Node:
        if not isinstance(tree.func, ast.Name) or tree.func.id not in FUNCTIONS:
            name = tree.func.id if isinstance(tree.func, ast.Name) else "?"
            raise self.fail(f"Unknown function '{name}'", tree.func)
        if len(tree.args) != 1 or tree.keywords:
            raise self.fail(f"Function '{tree.func.id}' takes exactly one argument", tree)
        return FUNCTIONS[tree.func.id](self.build(tree.args[0]))

    def _name(self, tree: ast.Name) -> Node:
        if tree.id in CONSTANTS:
            return Const(CONSTANTS[tree.id])
        match = _COORDINATE.match(tree.id)
        if match is None:
            raise self.fail(f"Unknown identifier '{tree.id}'", tree)
        index = int(match.group(1))
        if self.input_dim is not None and index > self.input_dim:
            raise self.fail(
                f"Coordinate '{tree.id}' exceeds the dimension {self.input_dim}", tree
            )
        return Coord(index - 1)

    def _constant(self, tree: ast.Constant) -> Node:
        value = tree.value
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self.fail(f"Unsupported literal {value!r}", tree)
        return Const(float(value))


def parse_expression(text: str, input_dim: Optional[int] = None) -> Node:
    """Parse a scalar expression."""
    tree = parse_tree(text)
    builder = ExpressionBuilder(text, input_dim)
    if isinstance(tree, (ast.Compare, ast.BoolOp)):
        raise builder.fail("Relation found where an expression was expected", tree)
    node = builder.build(tree)
    logger.debug(f"Parsed '{text}' as {node.label()}")
    return node


def parse_map(texts: Sequence[str], input_dim: int) -> SmoothMap:
    """Parse one expression per output component."""
    return SmoothMap(input_dim, tuple(parse_expression(text, input_dim) for text in texts))
