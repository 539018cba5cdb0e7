"""Norms, exact gauge evaluation and delta-additivity checks."""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from deltaset.errors import (
    DegenerateBallError,
    DeltaRangeError,
    DeltasetError,
    DimensionMismatchError,
    DuplicateInputError,
)
from deltaset.exact import QVector, add, dimension_of, dot, is_zero, neg, rank
from deltaset.lp import Constraint, LinearProgram, Objective, Optimal, Relation, Sense, solve_lp

logger = logging.getLogger(__name__)

NORM_KINDS = ("linf", "l1", "polytope")


class Norm(ABC):
    """A norm on Q^d with an exactly computable gauge."""

    dimension: int

    @property
    @abstractmethod
    def kind(self) -> str:
        """Wire name of the norm family."""

    @abstractmethod
    def _gauge(self, x: QVector) -> Fraction:
        """Gauge of a vector already checked to have the right dimension."""

    def gauge(self, x: QVector) -> Fraction:
        if len(x) != self.dimension:
            raise DimensionMismatchError(
                f"Vector of dimension {len(x)} for a {self.dimension}-dimensional norm"
            )
        return self._gauge(x)

    @staticmethod
    def from_kind(kind: str, dimension: int) -> "Norm":
        """Closed-form norm by name ("linf" or "l1")."""
        if kind == "linf":
            return LInfNorm(dimension)
        if kind == "l1":
            return L1Norm(dimension)
        raise ValueError(f"Norm kind '{kind}' has no closed form; expected 'linf' or 'l1'")


@dataclass(frozen=True)
class LInfNorm(Norm):
    """max_i |x_i|; its unit ball is the cube [-1, 1]^d."""

    dimension: int

    @property
    def kind(self) -> str:
        return "linf"

    def _gauge(self, x: QVector) -> Fraction:
        return max((abs(a) for a in x), default=Fraction(0))


@dataclass(frozen=True)
class L1Norm(Norm):
    """sum_i |x_i|; its unit ball is the cross-polytope."""

    dimension: int

    @property
    def kind(self) -> str:
        return "l1"

    def _gauge(self, x: QVector) -> Fraction:
        return sum((abs(a) for a in x), Fraction(0))


@dataclass(frozen=True)
class PolytopeNorm(Norm):
    """Norm whose unit ball is conv{+-g_1, ..., +-g_n}.

    The generators must be nonzero and span Q^d; a lower-dimensional hull
    is not a unit ball (see ``duality.build_norm`` for thickening).
    """

    dimension: int
    generators: Tuple[QVector, ...]
    _signed: Tuple[QVector, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        gens = tuple(tuple(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise DegenerateBallError("A polytope norm needs at least one generator")
        if dimension_of(gens) != self.dimension:
            raise DimensionMismatchError(
                f"Generators have dimension {dimension_of(gens)}, expected {self.dimension}"
            )
        if any(is_zero(g) for g in gens):
            raise DegenerateBallError("Polytope generators must be nonzero")
        r = rank(gens)
        if r != self.dimension:
            raise DegenerateBallError(
                f"Generators span a {r}-dimensional subspace of Q^{self.dimension}; "
                f"the hull has no interior"
            )
        object.__setattr__(self, "_signed", gens + tuple(neg(g) for g in gens))

    @property
    def kind(self) -> str:
        return "polytope"

    def gauge_program(self, x: QVector) -> LinearProgram:
        """min sum(lambda) s.t. sum_i lambda_i s_i = x, lambda >= 0."""
        n = len(self._signed)
        rows = tuple(
            Constraint(tuple(s[k] for s in self._signed), Relation.EQ, x[k])
            for k in range(self.dimension)
        )
        return LinearProgram(
            num_vars=n,
            constraints=rows,
            objective=Objective((Fraction(1),) * n, Sense.MIN),
            nonnegative=(True,) * n,
        )

    def _gauge(self, x: QVector) -> Fraction:
        if is_zero(x):
            return Fraction(0)
        result = solve_lp(self.gauge_program(x))
        if not isinstance(result, Optimal):
            # a spanning symmetric hull makes this program feasible and bounded
            raise DeltasetError(f"Gauge program ended with {type(result).__name__}")
        return result.value


def gauge(norm: Norm, x: QVector) -> Fraction:
    """Minkowski functional inf{t >= 0 : x in tK} of the norm's unit ball K."""
    return norm.gauge(x)


def support_check(generators: Sequence[QVector], y: QVector, c: Fraction) -> bool:
    """True iff the half space {x : <x, y> <= c} contains conv{+-g}.

    With c = 1 and <x_i, y> = 1 this certifies gauge(x_i) = 1 without an LP.
    """
    return all(abs(dot(g, y)) <= c for g in generators)


def check_delta(delta: Fraction, allow_two: bool = False) -> Fraction:
    """Validate delta in (0, 2), or (0, 2] when ``allow_two`` is set.

    Raises:
        DeltaRangeError: If delta is outside the accepted interval
    """
    delta = Fraction(delta)
    upper_ok = delta <= 2 if allow_two else delta < 2
    if not (delta > 0 and upper_ok):
        interval = "(0, 2]" if allow_two else "(0, 2)"
        raise DeltaRangeError(f"delta must lie in {interval}, got: {delta}")
    return delta


@dataclass
class AdditivityReport:
    """Outcome of checking that xs is a delta-additive set.

    Attributes:
        unit_violations: (index, gauge) for vectors whose gauge is not 1
        pair_violations: (i, j, gauge of x_i + x_j) for pairs above delta
        tight_pairs: (i, j) with gauge(x_i + x_j) exactly delta
        delta: Threshold used
    """

    unit_violations: List[Tuple[int, Fraction]]
    pair_violations: List[Tuple[int, int, Fraction]]
    tight_pairs: List[Tuple[int, int]]
    delta: Fraction

    @property
    def passed(self) -> bool:
        return not self.unit_violations and not self.pair_violations

    @property
    def violation_count(self) -> int:
        return len(self.unit_violations) + len(self.pair_violations)


def verify_additive_set(norm: Norm, xs: Sequence[QVector], delta: Fraction) -> AdditivityReport:
    """Check exactly that every x_i has gauge 1 and every pair sum has gauge <= delta.

    Raises:
        DeltaRangeError: If delta is not in (0, 2)
        DuplicateInputError: If xs contains a repeated vector
    """
    delta = check_delta(delta)
    xs = [tuple(x) for x in xs]
    seen = set()
    for i, x in enumerate(xs):
        if x in seen:
            raise DuplicateInputError(f"Vector {i} repeats an earlier vector")
        seen.add(x)

    unit_violations = []
    for i, x in enumerate(xs):
        value = norm.gauge(x)
        if value != 1:
            unit_violations.append((i, value))

    pair_violations = []
    tight_pairs = []
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            value = norm.gauge(add(xs[i], xs[j]))
            if value > delta:
                pair_violations.append((i, j, value))
            elif value == delta:
                tight_pairs.append((i, j))

    report = AdditivityReport(unit_violations, pair_violations, tight_pairs, delta)
    logger.debug(
        "Checked %d vectors at delta=%s: %d violations, %d tight pairs",
        len(xs),
        delta,
        report.violation_count,
        len(tight_pairs),
    )
    return report
