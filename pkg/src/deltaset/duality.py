"""Norm existence for a prescribed delta-additive configuration.

A norm with ||x_i|| = 1 and ||x_i + x_j|| <= delta exists exactly when there
are dual vectors y_1..y_m with

    <x_i, y_i> = 1
    -1 <= <x_j, y_i> <= delta - 1           for j != i
    <x_j + x_k, y_i> >= -delta              for j != k

``find_witness`` decides this system one index at a time (each y_i only
meets the fixed x's), and ``build_norm`` turns a witness back into the
norm: the symmetric hull of the x_i and of (x_i + x_j)/delta, thickened by
an orthogonal complement basis when that hull is flat.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from deltaset.errors import DuplicateInputError, InstanceError, InvalidWitnessError
from deltaset.exact import (
    QVector,
    add,
    dimension_of,
    dot,
    is_zero,
    kernel_basis,
    neg,
    orthogonal_complement_basis,
    rank,
    remove_components,
    scale,
)
from deltaset.lp import (
    Constraint,
    Feasible,
    Infeasible,
    LinearProgram,
    Relation,
    solve_lp,
)
from deltaset.norms import PolytopeNorm, check_delta, support_check

logger = logging.getLogger(__name__)

THRESHOLD = Fraction(2, 3)


@dataclass(frozen=True)
class Instance:
    """Candidate delta-additive configuration x_1..x_m in Q^d.

    Raises:
        InstanceError: If xs is empty, has mixed dimensions or a zero vector
        DuplicateInputError: If two vectors coincide
        DeltaRangeError: If delta is not in (0, 2]
    """

    delta: Fraction
    xs: Tuple[QVector, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "delta", check_delta(self.delta, allow_two=True))
        xs = tuple(tuple(Fraction(a) for a in x) for x in self.xs)
        object.__setattr__(self, "xs", xs)
        if not xs:
            raise InstanceError("An instance needs at least one vector")
        try:
            dimension_of(xs)
        except ValueError as e:
            raise InstanceError(f"Invalid instance vectors: {e}") from e
        for i, x in enumerate(xs):
            if is_zero(x):
                raise InstanceError(f"Vector {i} is zero")
        if len(set(xs)) != len(xs):
            raise DuplicateInputError("Instance vectors must be pairwise distinct")

    @property
    def dimension(self) -> int:
        return len(self.xs[0])

    @property
    def size(self) -> int:
        return len(self.xs)


@dataclass(frozen=True)
class Witness:
    """Dual vectors y_1..y_m for an Instance."""

    ys: Tuple[QVector, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ys", tuple(tuple(Fraction(a) for a in y) for y in self.ys))


@dataclass(frozen=True)
class WitnessFound:
    witness: Witness


@dataclass(frozen=True)
class WitnessInfeasible:
    """The subsystem for ``index`` has no solution.

    Attributes:
        index: Lowest failing index i
        certificate: Farkas multipliers for ``program``
        program: The per-index linear program, for independent rechecking
    """

    index: int
    certificate: Infeasible
    program: LinearProgram


WitnessResult = Union[WitnessFound, WitnessInfeasible]


def witness_program(instance: Instance, i: int) -> LinearProgram:
    """The linear system in y_i alone, as a feasibility program."""
    xs = instance.xs
    delta = instance.delta
    one = Fraction(1)
    rows: List[Constraint] = [Constraint(xs[i], Relation.EQ, one)]
    for j, x in enumerate(xs):
        if j == i:
            continue
        rows.append(Constraint(x, Relation.GE, -one))
        rows.append(Constraint(x, Relation.LE, delta - 1))
    for j in range(len(xs)):
        for k in range(j + 1, len(xs)):
            rows.append(Constraint(add(xs[j], xs[k]), Relation.GE, -delta))
    return LinearProgram(num_vars=instance.dimension, constraints=tuple(rows))


def find_witness(instance: Instance, pivot_rule: str = "bland") -> WitnessResult:
    """Solve the dual system index by index; report the lowest failing index."""
    ys = []
    for i in range(instance.size):
        program = witness_program(instance, i)
        result = solve_lp(program, pivot_rule=pivot_rule)
        if isinstance(result, Infeasible):
            logger.debug("Witness subsystem %d infeasible", i)
            return WitnessInfeasible(index=i, certificate=result, program=program)
        if not isinstance(result, Feasible):
            raise InvalidWitnessError(
                f"Unexpected solver result {type(result).__name__} at index {i}"
            )
        ys.append(result.point)
    logger.debug("Found witness for %d vectors in dimension %d", instance.size, instance.dimension)
    return WitnessFound(Witness(tuple(ys)))


def dual_values(instance: Instance, witness: Witness) -> List[List[Fraction]]:
    """Table G with G[i][j] = <x_j, y_i>."""
    return [[dot(x, y) for x in instance.xs] for y in witness.ys]


def verify_witness(instance: Instance, witness: Witness) -> bool:
    """True iff the witness satisfies every row of the dual system exactly."""
    m = instance.size
    if len(witness.ys) != m or any(len(y) != instance.dimension for y in witness.ys):
        return False
    delta = instance.delta
    table = dual_values(instance, witness)
    for i in range(m):
        row = table[i]
        if row[i] != 1:
            return False
        for j in range(m):
            if j != i and not (-1 <= row[j] <= delta - 1):
                return False
        for j in range(m):
            for k in range(j + 1, m):
                if row[j] + row[k] < -delta:
                    return False
    return True


def hull_generators(instance: Instance) -> List[QVector]:
    """Nonzero, sign-deduplicated generators x_i and (x_i + x_j)/delta."""
    inv = 1 / instance.delta
    candidates = list(instance.xs)
    xs = instance.xs
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            candidates.append(scale(inv, add(xs[i], xs[j])))
    generators: List[QVector] = []
    seen = set()
    for g in candidates:
        if is_zero(g) or g in seen:
            continue
        seen.add(g)
        seen.add(neg(g))
        generators.append(g)
    return generators


def thickening_basis(generators: Sequence[QVector], d: int) -> List[QVector]:
    """Orthogonal complement of the hull's span, appended at scale 1."""
    return orthogonal_complement_basis(generators, d)


def build_norm(instance: Instance, witness: Witness) -> PolytopeNorm:
    """The polytope norm realizing the instance, thickened if flat.

    Every x_i is a generator, so gauge(x_i) <= 1; each (x_i + x_j)/delta is a
    generator, so gauge(x_i + x_j) <= delta. gauge(x_i) >= 1 is certified by
    the supporting functional y_i with its complement components removed.

    Raises:
        InvalidWitnessError: If the witness fails verification
    """
    if not verify_witness(instance, witness):
        raise InvalidWitnessError("Witness does not satisfy the dual system")
    d = instance.dimension
    generators = hull_generators(instance)
    extra = thickening_basis(generators, d)
    if extra:
        logger.debug(
            "Thickening a %d-dimensional hull by %d directions", d - len(extra), len(extra)
        )
    norm = PolytopeNorm(dimension=d, generators=tuple(generators + extra))
    for i, y in enumerate(witness.ys):
        functional = remove_components(y, extra)
        if not support_check(norm.generators, functional, Fraction(1)):
            raise InvalidWitnessError(f"Functional {i} does not support the hull at x_{i}")
    return norm


def forced_dual_values(instance: Instance, witness: Witness) -> Optional[bool]:
    """At delta = 2/3 with m >= 3: are all off-diagonal <x_j, y_i> equal to -1/3?

    Returns None when delta != 2/3 or m < 3, where nothing is forced.
    """
    if instance.delta != THRESHOLD or instance.size < 3:
        return None
    table = dual_values(instance, witness)
    target = Fraction(-1, 3)
    return all(
        table[i][j] == target
        for i in range(instance.size)
        for j in range(instance.size)
        if i != j
    )


def kernel_equal_coefficients(xs: Sequence[QVector]) -> bool:
    """True iff every linear dependence among xs has all coefficients equal."""
    return all(len(set(v)) == 1 for v in kernel_basis(xs))


def octahedron_frame(instance: Instance) -> List[QVector]:
    """z_i = (3/2)(x_i + x_4), i = 1..3, for a four-vector set at delta = 2/3.

    In the z-basis the unit ball is conv{+-z_1, +-z_2, +-z_3} and
    x_1 = (z_1 - z_2 - z_3)/3, x_2 = (-z_1 + z_2 - z_3)/3,
    x_3 = (-z_1 - z_2 + z_3)/3, x_4 = (z_1 + z_2 + z_3)/3.

    Raises:
        InstanceError: If the instance is not a four-vector set at delta = 2/3
            summing to zero, or the z_i are dependent
    """
    if instance.delta != THRESHOLD or instance.size != 4:
        raise InstanceError("The octahedron frame needs four vectors at delta = 2/3")
    total = instance.xs[0]
    for x in instance.xs[1:]:
        total = add(total, x)
    if not is_zero(total):
        raise InstanceError("The four vectors do not sum to zero")
    x4 = instance.xs[3]
    frame = [scale(Fraction(3, 2), add(x, x4)) for x in instance.xs[:3]]
    if rank(frame) != 3:
        raise InstanceError("The vectors (3/2)(x_i + x_4) are linearly dependent")
    return frame
