"""Exact rational linear programming with self-certifying results.

Programs are stated naturally (free or sign-restricted variables, rows with
``<=``, ``=`` or ``>=``); the solver converts them to standard form
internally and runs a two-phase tableau simplex over ``Fraction``.

Every result carries enough data to be rechecked by ``check_certificate``
without trusting the solver:

* ``Optimal`` - a feasible point, its value, and dual multipliers proving
  that no feasible point does better.
* ``Feasible`` - a feasible point (programs without an objective).
* ``Infeasible`` - Farkas multipliers that combine the rows into ``0 <= -c``
  with ``c > 0``.
* ``Unbounded`` - a feasible point and an improving recession ray.

Multiplier convention: each row is first written in ``<=`` form (``>=`` rows
are negated). Multipliers are nonnegative on inequality rows and free on
equality rows.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from deltaset.errors import MalformedProgramError
from deltaset.exact import QVector, dot

logger = logging.getLogger(__name__)

PIVOT_RULES = ("bland", "dantzig")


class Relation(str, Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class Sense(str, Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class Constraint:
    """A single row ``coefficients . x (relation) rhs``."""

    coefficients: QVector
    relation: Relation
    rhs: Fraction

    @property
    def sign(self) -> int:
        """Factor that turns this row into ``<=`` form."""
        return -1 if self.relation is Relation.GE else 1

    def normalized(self) -> Tuple[QVector, Fraction]:
        """Coefficients and right-hand side of the ``<=`` (or ``=``) form."""
        s = self.sign
        return tuple(s * a for a in self.coefficients), s * self.rhs

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = dot(self.coefficients, x)
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class Objective:
    coefficients: QVector
    sense: Sense = Sense.MIN


@dataclass(frozen=True)
class LinearProgram:
    """A linear program over ``num_vars`` variables.

    Attributes:
        num_vars: Number of variables n
        constraints: Rows of the program
        objective: Optional objective; None asks only for feasibility
        nonnegative: Per-variable sign restriction flags; empty means all free
    """

    num_vars: int
    constraints: Tuple[Constraint, ...] = ()
    objective: Optional[Objective] = None
    nonnegative: Tuple[bool, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.num_vars, int) or self.num_vars < 0:
            raise MalformedProgramError(
                f"num_vars must be a nonnegative integer, got: {self.num_vars}"
            )
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for index, row in enumerate(self.constraints):
            if len(row.coefficients) != self.num_vars:
                raise MalformedProgramError(
                    f"Constraint {index} has {len(row.coefficients)} coefficients, "
                    f"expected {self.num_vars}"
                )
            if not isinstance(row.relation, Relation):
                raise MalformedProgramError(
                    f"Constraint {index} has unknown relation {row.relation!r}"
                )
        if self.objective is not None and len(self.objective.coefficients) != self.num_vars:
            raise MalformedProgramError(
                f"Objective has {len(self.objective.coefficients)} coefficients, "
                f"expected {self.num_vars}"
            )
        if not self.nonnegative:
            object.__setattr__(self, "nonnegative", (False,) * self.num_vars)
        elif len(self.nonnegative) != self.num_vars:
            raise MalformedProgramError(
                f"nonnegative has {len(self.nonnegative)} flags, expected {self.num_vars}"
            )

    def is_feasible_point(self, x: Sequence[Fraction]) -> bool:
        """True iff x satisfies every row and sign restriction exactly."""
        if len(x) != self.num_vars:
            return False
        if any(flag and value < 0 for flag, value in zip(self.nonnegative, x)):
            return False
        return all(row.holds(x) for row in self.constraints)

    def minimization_costs(self) -> QVector:
        """Objective coefficients of the equivalent minimization."""
        if self.objective is None:
            return (Fraction(0),) * self.num_vars
        if self.objective.sense is Sense.MAX:
            return tuple(-c for c in self.objective.coefficients)
        return tuple(self.objective.coefficients)


@dataclass(frozen=True)
class Optimal:
    point: QVector
    value: Fraction
    duals: QVector


@dataclass(frozen=True)
class Feasible:
    point: QVector


@dataclass(frozen=True)
class Infeasible:
    farkas: QVector


@dataclass(frozen=True)
class Unbounded:
    point: QVector
    ray: QVector


LPResult = Union[Optimal, Feasible, Infeasible, Unbounded]


def _combine(lp: LinearProgram, multipliers: Sequence[Fraction]) -> Tuple[List[Fraction], Fraction]:
    """Combine the ``<=``-normalized rows with the given multipliers."""
    combined = [Fraction(0)] * lp.num_vars
    rhs = Fraction(0)
    for u, row in zip(multipliers, lp.constraints):
        if u == 0:
            continue
        coeffs, b = row.normalized()
        for j, a in enumerate(coeffs):
            combined[j] += u * a
        rhs += u * b
    return combined, rhs


def _multipliers_have_valid_signs(lp: LinearProgram, multipliers: Sequence[Fraction]) -> bool:
    if len(multipliers) != len(lp.constraints):
        return False
    return all(
        row.relation is Relation.EQ or u >= 0 for u, row in zip(multipliers, lp.constraints)
    )


def dual_bound(lp: LinearProgram, multipliers: Sequence[Fraction]) -> Optional[Fraction]:
    """Lower bound on the minimization objective certified by ``multipliers``.

    Returns None when the multipliers are not dual feasible, i.e. when
    ``costs + sum_r u_r a_r`` is not zero on free variables and nonnegative
    on sign-restricted ones.
    """
    if not _multipliers_have_valid_signs(lp, multipliers):
        return None
    combined, rhs = _combine(lp, multipliers)
    costs = lp.minimization_costs()
    for j in range(lp.num_vars):
        reduced = costs[j] + combined[j]
        if lp.nonnegative[j]:
            if reduced < 0:
                return None
        elif reduced != 0:
            return None
    return -rhs


def check_certificate(lp: LinearProgram, result: LPResult) -> bool:
    """Recheck a solver result against ``lp`` using exact arithmetic only."""
    if isinstance(result, Feasible):
        return lp.is_feasible_point(result.point)

    if isinstance(result, Optimal):
        if lp.objective is None or not lp.is_feasible_point(result.point):
            return False
        if dot(lp.objective.coefficients, result.point) != result.value:
            return False
        bound = dual_bound(lp, result.duals)
        if bound is None:
            return False
        return dot(lp.minimization_costs(), result.point) == bound

    if isinstance(result, Infeasible):
        if not _multipliers_have_valid_signs(lp, result.farkas):
            return False
        combined, rhs = _combine(lp, result.farkas)
        for j, g in enumerate(combined):
            if lp.nonnegative[j]:
                if g < 0:
                    return False
            elif g != 0:
                return False
        return rhs < 0

    if isinstance(result, Unbounded):
        if lp.objective is None or not lp.is_feasible_point(result.point):
            return False
        ray = result.ray
        if len(ray) != lp.num_vars:
            return False
        if any(flag and r < 0 for flag, r in zip(lp.nonnegative, ray)):
            return False
        for row in lp.constraints:
            coeffs, _ = row.normalized()
            lhs = dot(coeffs, ray)
            if row.relation is Relation.EQ:
                if lhs != 0:
                    return False
            elif lhs > 0:
                return False
        return dot(lp.minimization_costs(), ray) < 0

    return False


@dataclass
class _Column:
    """A standard-form column: an original variable part, a slack, or an artificial."""

    kind: str  # "var", "slack" or "art"
    index: int
    sign: int = 1


class SimplexSolver:
    """Two-phase tableau simplex over the rationals.

    Instances hold mutable tableau state and are single use: call ``solve``
    once. Distinct instances may run concurrently on the same program.

    Attributes:
        lp: Program to solve
        pivot_rule: "bland" (default) or "dantzig"
        pivots: Number of pivots performed so far
    """

    def __init__(self, lp: LinearProgram, pivot_rule: str = "bland") -> None:
        if pivot_rule not in PIVOT_RULES:
            raise MalformedProgramError(
                f"Unknown pivot rule '{pivot_rule}'. Available: {', '.join(PIVOT_RULES)}"
            )
        self.lp = lp
        self.pivot_rule = pivot_rule
        self.pivots = 0
        self._used = False

    def solve(self) -> LPResult:
        if self._used:
            raise RuntimeError("SimplexSolver instances are single use")
        self._used = True
        self._build_tableau()

        self._run_phase(self._phase_one_costs())
        phase_one_value = self._objective_value(self._phase_one_costs())
        if phase_one_value > 0:
            farkas = self._row_multipliers(self._phase_one_costs())
            logger.debug(
                "Infeasible after %d pivots (phase one value %s)", self.pivots, phase_one_value
            )
            return Infeasible(farkas=farkas)

        self._drive_out_artificials()
        if self.lp.objective is None:
            logger.debug("Feasible after %d pivots", self.pivots)
            return Feasible(point=self._point())

        costs = self._phase_two_costs()
        entering = self._run_phase(costs)
        point = self._point()
        if entering is not None:
            logger.debug("Unbounded after %d pivots", self.pivots)
            return Unbounded(point=point, ray=self._ray(entering))

        value = dot(self.lp.objective.coefficients, point)
        logger.debug("Optimal value %s after %d pivots", value, self.pivots)
        return Optimal(point=point, value=value, duals=self._row_multipliers(costs))

    # -- standard form -------------------------------------------------

    def _build_tableau(self) -> None:
        lp = self.lp
        columns: List[_Column] = []
        for j in range(lp.num_vars):
            columns.append(_Column("var", j, 1))
            if not lp.nonnegative[j]:
                columns.append(_Column("var", j, -1))
        for r, row in enumerate(lp.constraints):
            if row.relation is Relation.LE:
                columns.append(_Column("slack", r, 1))
            elif row.relation is Relation.GE:
                columns.append(_Column("slack", r, -1))
        self._structural = len(columns)
        m = len(lp.constraints)
        for r in range(m):
            columns.append(_Column("art", r))
        self._columns = columns
        self._art_start = self._structural

        # rows are flipped so every right-hand side is nonnegative
        self._row_flip: List[int] = []
        tableau: List[List[Fraction]] = []
        for r, row in enumerate(lp.constraints):
            flip = -1 if row.rhs < 0 else 1
            self._row_flip.append(flip)
            entries = []
            for col in columns:
                if col.kind == "var":
                    value = col.sign * row.coefficients[col.index]
                elif col.kind == "slack":
                    value = Fraction(col.sign) if col.index == r else Fraction(0)
                else:
                    value = Fraction(1) if col.index == r else Fraction(0)
                    entries.append(value)
                    continue
                entries.append(flip * value)
            entries.append(flip * row.rhs)
            tableau.append(entries)
        self._tableau = tableau
        self._basis = [self._art_start + r for r in range(m)]

    def _phase_one_costs(self) -> List[Fraction]:
        return [
            Fraction(1) if col.kind == "art" else Fraction(0) for col in self._columns
        ]

    def _phase_two_costs(self) -> List[Fraction]:
        c = self.lp.minimization_costs()
        return [
            col.sign * c[col.index] if col.kind == "var" else Fraction(0) for col in self._columns
        ]

    # -- simplex mechanics ---------------------------------------------

    def _reduced_costs(self, costs: Sequence[Fraction]) -> List[Fraction]:
        reduced = list(costs[: self._structural])
        for i, b in enumerate(self._basis):
            cb = costs[b]
            if cb == 0:
                continue
            row = self._tableau[i]
            for j in range(self._structural):
                if row[j] != 0:
                    reduced[j] -= cb * row[j]
        return reduced

    def _choose_entering(self, reduced: Sequence[Fraction], bland: bool) -> Optional[int]:
        basic = set(self._basis)
        best: Optional[int] = None
        for j, rc in enumerate(reduced):
            if rc >= 0 or j in basic:
                continue
            if bland:
                return j
            if best is None or rc < reduced[best]:
                best = j
        return best

    def _choose_leaving(self, entering: int) -> Optional[int]:
        best: Optional[Tuple[Fraction, int, int]] = None
        for i, row in enumerate(self._tableau):
            a = row[entering]
            if a <= 0:
                continue
            # ties on the ratio go to the smallest basic column index
            key = (row[-1] / a, self._basis[i], i)
            if best is None or key < best:
                best = key
        return None if best is None else best[2]

    def _pivot(self, row_index: int, col: int) -> None:
        pivot_row = self._tableau[row_index]
        inv = 1 / pivot_row[col]
        pivot_row = [a * inv for a in pivot_row]
        self._tableau[row_index] = pivot_row
        for i, row in enumerate(self._tableau):
            if i == row_index:
                continue
            f = row[col]
            if f == 0:
                continue
            self._tableau[i] = [a - f * b if b != 0 else a for a, b in zip(row, pivot_row)]
        self._basis[row_index] = col
        self.pivots += 1

    def _run_phase(self, costs: Sequence[Fraction]) -> Optional[int]:
        """Pivot to optimality; return the entering column if unbounded."""
        bland = self.pivot_rule == "bland"
        while True:
            reduced = self._reduced_costs(costs)
            entering = self._choose_entering(reduced, bland)
            if entering is None:
                return None
            leaving = self._choose_leaving(entering)
            if leaving is None:
                return entering
            if not bland and self._tableau[leaving][-1] == 0:
                # degenerate step: stay on Bland's rule for the rest of the phase
                bland = True
            self._pivot(leaving, entering)

    def _drive_out_artificials(self) -> None:
        for i, b in enumerate(self._basis):
            if self._columns[b].kind != "art":
                continue
            row = self._tableau[i]
            col = next((j for j in range(self._structural) if row[j] != 0), None)
            if col is not None:
                self._pivot(i, col)
            # otherwise the row is redundant and its artificial stays basic at zero

    def _objective_value(self, costs: Sequence[Fraction]) -> Fraction:
        return sum(
            (costs[b] * self._tableau[i][-1] for i, b in enumerate(self._basis)), Fraction(0)
        )

    def _column_values(self) -> List[Fraction]:
        values = [Fraction(0)] * len(self._columns)
        for i, b in enumerate(self._basis):
            values[b] = self._tableau[i][-1]
        return values

    def _to_original(self, values: Sequence[Fraction]) -> QVector:
        x = [Fraction(0)] * self.lp.num_vars
        for col, v in zip(self._columns, values):
            if col.kind == "var" and v != 0:
                x[col.index] += col.sign * v
        return tuple(x)

    def _point(self) -> QVector:
        return self._to_original(self._column_values())

    def _ray(self, entering: int) -> QVector:
        direction = [Fraction(0)] * len(self._columns)
        direction[entering] = Fraction(1)
        for i, b in enumerate(self._basis):
            direction[b] = -self._tableau[i][entering]
        return self._to_original(direction)

    def _row_multipliers(self, costs: Sequence[Fraction]) -> QVector:
        """Simplex multipliers c_B B^-1, mapped to the ``<=``-row convention.

        The artificial columns started as the identity, so in the current
        tableau they hold B^-1.
        """
        m = len(self.lp.constraints)
        y = [Fraction(0)] * m
        for i, b in enumerate(self._basis):
            cb = costs[b]
            if cb == 0:
                continue
            row = self._tableau[i]
            for r in range(m):
                y[r] += cb * row[self._art_start + r]
        return tuple(
            -self._row_flip[r] * y[r] * row.sign for r, row in enumerate(self.lp.constraints)
        )


def solve_lp(lp: LinearProgram, pivot_rule: str = "bland") -> LPResult:
    """Solve ``lp`` exactly and return a self-certifying result."""
    return SimplexSolver(lp, pivot_rule=pivot_rule).solve()
