"""Membership predicates built from relations between smooth expressions."""

import ast
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from ..smooth.nodes import ONE, Coord, Node, compose_node, sub
from ..smooth.parser import ExpressionBuilder, parse_tree


class RelationKind(str, Enum):
    """Comparison between the two sides of a relation."""

    EQ = "=="
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="


def _holds_eq(r: np.ndarray, tol: float) -> np.ndarray:
    return np.abs(r) <= tol


def _holds_lt(r: np.ndarray, tol: float) -> np.ndarray:
    return r < 0.0


def _holds_le(r: np.ndarray, tol: float) -> np.ndarray:
    return r <= tol


def _holds_gt(r: np.ndarray, tol: float) -> np.ndarray:
    return r > 0.0


def _holds_ge(r: np.ndarray, tol: float) -> np.ndarray:
    return r >= -tol


# Strict inequalities describe open sets and take no tolerance.
RELATION_TESTS: Dict[RelationKind, Callable[[np.ndarray, float], np.ndarray]] = {
    RelationKind.EQ: _holds_eq,
    RelationKind.LT: _holds_lt,
    RelationKind.LE: _holds_le,
    RelationKind.GT: _holds_gt,
    RelationKind.GE: _holds_ge,
}

RELATION_VIOLATIONS: Dict[RelationKind, Callable[[np.ndarray], np.ndarray]] = {
    RelationKind.EQ: np.abs,
    RelationKind.LT: lambda r: np.maximum(r, 0.0),
    RelationKind.LE: lambda r: np.maximum(r, 0.0),
    RelationKind.GT: lambda r: np.maximum(-r, 0.0),
    RelationKind.GE: lambda r: np.maximum(-r, 0.0),
}

_AST_RELATIONS: Dict[type, RelationKind] = {
    ast.Eq: RelationKind.EQ,
    ast.Lt: RelationKind.LT,
    ast.LtE: RelationKind.LE,
    ast.Gt: RelationKind.GT,
    ast.GtE: RelationKind.GE,
}


class Predicate:
    """Point-set membership with a tolerance on defining residuals."""

    def contains(self, points: np.ndarray, tol: float) -> np.ndarray:
        raise NotImplementedError

    def violation(self, points: np.ndarray) -> np.ndarray:
        """Non-negative amount by which each point fails the predicate (0 inside)."""
        raise NotImplementedError

    def shifted(self, offset: int) -> "Predicate":
        """The same predicate read on coordinates x_{j + offset} of a larger space."""
        raise NotImplementedError

    def equations(self) -> Tuple[Node, ...]:
        """Residual trees of the equality relations."""
        return ()

    def render(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Everything(Predicate):
    """The whole ambient space."""

    def contains(self, points: np.ndarray, tol: float) -> np.ndarray:
        return np.ones(points.shape[0], dtype=bool)

    def violation(self, points: np.ndarray) -> np.ndarray:
        return np.zeros(points.shape[0])

    def shifted(self, offset: int) -> Predicate:
        return self

    def render(self) -> str:
        return "true"


@dataclass(frozen=True)
class Relation(Predicate):
    """residual(x) <kind> 0."""

    residual: Node
    kind: RelationKind

    def contains(self, points: np.ndarray, tol: float) -> np.ndarray:
        return RELATION_TESTS[self.kind](self.residual.evaluate(points), tol)

    def violation(self, points: np.ndarray) -> np.ndarray:
        return RELATION_VIOLATIONS[self.kind](self.residual.evaluate(points))

    def shifted(self, offset: int) -> Predicate:
        width = max(self.residual.variables(), default=-1) + 1
        inner = tuple(Coord(j + offset) for j in range(width))
        return Relation(compose_node(self.residual, inner), self.kind)

    def equations(self) -> Tuple[Node, ...]:
        return (self.residual,) if self.kind == RelationKind.EQ else ()

    def render(self) -> str:
        return f"{self.residual.render()} {self.kind.value} 0"


@dataclass(frozen=True)
class AllOf(Predicate):
    parts: Tuple[Predicate, ...]

    def contains(self, points: np.ndarray, tol: float) -> np.ndarray:
        result = np.ones(points.shape[0], dtype=bool)
        for part in self.parts:
            result &= part.contains(points, tol)
        return result

    def violation(self, points: np.ndarray) -> np.ndarray:
        if not self.parts:
            return np.zeros(points.shape[0])
        return np.max([part.violation(points) for part in self.parts], axis=0)

    def shifted(self, offset: int) -> Predicate:
        return AllOf(tuple(part.shifted(offset) for part in self.parts))

    def equations(self) -> Tuple[Node, ...]:
        return tuple(eq for part in self.parts for eq in part.equations())

    def render(self) -> str:
        return " and ".join(f"({part.render()})" for part in self.parts)


@dataclass(frozen=True)
class AnyOf(Predicate):
    parts: Tuple[Predicate, ...]

    def contains(self, points: np.ndarray, tol: float) -> np.ndarray:
        result = np.zeros(points.shape[0], dtype=bool)
        for part in self.parts:
            result |= part.contains(points, tol)
        return result

    def violation(self, points: np.ndarray) -> np.ndarray:
        return np.min([part.violation(points) for part in self.parts], axis=0)

    def shifted(self, offset: int) -> Predicate:
        return AnyOf(tuple(part.shifted(offset) for part in self.parts))

    def render(self) -> str:
        return " or ".join(f"({part.render()})" for part in self.parts)


def unit_interval_predicate() -> Predicate:
    """0 <= x1 <= 1."""
    t = Coord(0)
    return AllOf((Relation(t, RelationKind.GE), Relation(sub(t, ONE), RelationKind.LE)))


class PredicateBuilder:
    """Builds predicates from Python comparison trees."""

    def __init__(self, text: str, input_dim: Optional[int]):
        self.expressions = ExpressionBuilder(text, input_dim)

    def build(self, tree: ast.AST) -> Predicate:
        if isinstance(tree, ast.BoolOp):
            parts = tuple(self.build(value) for value in tree.values)
            return AllOf(parts) if isinstance(tree.op, ast.And) else AnyOf(parts)
        if isinstance(tree, ast.Compare):
            return self._compare(tree)
        raise self.expressions.fail("Expected a relation such as 'x1**2 + x2**2 == 1'", tree)

    def _compare(self, tree: ast.Compare) -> Predicate:
        relations = []
        left = self.expressions.build(tree.left)
        for op, comparator in zip(tree.ops, tree.comparators):
            kind = _AST_RELATIONS.get(type(op))
            if kind is None:
                raise self.expressions.fail(f"Unsupported comparison '{type(op).__name__}'", tree)
            right = self.expressions.build(comparator)
            relations.append(Relation(sub(left, right), kind))
            left = right
        return relations[0] if len(relations) == 1 else AllOf(tuple(relations))


def parse_predicate(text: Optional[str], input_dim: Optional[int] = None) -> Predicate:
    """Parse a membership predicate; an empty text means the whole ambient space."""
    if text is None or not text.strip() or text.strip() == "true":
        return Everything()
    return PredicateBuilder(text, input_dim).build(parse_tree(text))
