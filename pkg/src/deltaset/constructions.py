"""Explicit delta-additive families.

* ``cube_family`` - d vectors of l_inf^d, tight at delta = 2/3.
* ``octahedron_instance`` - four vectors of l_1^3, tight at delta = 2/3.
* ``wyner_lift`` - a spherical code lifted one dimension up, with an
  explicit dual witness, for any delta in (2/3, 2).
"""

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from deltaset.duality import Instance, Witness, verify_witness
from deltaset.errors import InvalidWitnessError, ParameterError
from deltaset.exact import QVector, add, dot, scale, unit_vector
from deltaset.norms import L1Norm, LInfNorm

logger = logging.getLogger(__name__)

THRESHOLD = Fraction(2, 3)
MARGIN_DIVISOR = 10
GRID_DENOMINATOR = 2**16


def cube_family(d: int) -> Tuple[LInfNorm, List[QVector]]:
    """The i-th vector has 1 in coordinate i and -1/3 elsewhere."""
    if d < 1:
        raise ParameterError(f"Dimension must be at least 1, got: {d}")
    third = Fraction(-1, 3)
    xs = [tuple(Fraction(1) if k == i else third for k in range(d)) for i in range(d)]
    return LInfNorm(d), xs


def cube_witness(d: int) -> Witness:
    """y_i = e_i, the coordinate where the i-th cube vector equals 1."""
    return Witness(tuple(unit_vector(d, i) for i in range(d)))


def octahedron_instance() -> Tuple[L1Norm, List[QVector]]:
    """Centroids of four alternate faces of the l_1^3 unit ball.

    x_1, x_2, x_3 have a single +1/3 coordinate and x_4 = (1/3)(1, 1, 1).
    """
    t = Fraction(1, 3)
    xs = [
        (t, -t, -t),
        (-t, t, -t),
        (-t, -t, t),
        (t, t, t),
    ]
    return L1Norm(3), xs


def octahedron_witness() -> Witness:
    """y_i = 3 x_i."""
    _, xs = octahedron_instance()
    return Witness(tuple(scale(Fraction(3), x) for x in xs))


def cube_section_frame() -> List[QVector]:
    """z_i = (3/2)(x_i + x_4) for the four-dimensional cube family.

    The z_i span the hyperplane sum(x) = 0 that holds all four cube vectors,
    and on it the l_inf norm of sum(c_i z_i) is the l_1 norm of c.
    """
    _, xs = cube_family(4)
    return [scale(Fraction(3, 2), add(x, xs[3])) for x in xs[:3]]


def rational_unit_vector(p: Sequence[Fraction]) -> QVector:
    """Inverse stereographic image (2p, 1 - |p|^2) / (1 + |p|^2).

    The result has Euclidean length exactly 1 for every rational p.
    """
    p = tuple(Fraction(a) for a in p)
    norm_sq = dot(p, p)
    denom = 1 + norm_sq
    return tuple(2 * a / denom for a in p) + ((1 - norm_sq) / denom,)


def inner_product_threshold(delta: Fraction) -> Fraction:
    """(3 delta - 2)/(6 - delta): the code's largest allowed |<v_i, v_j>|."""
    delta = Fraction(delta)
    return (3 * delta - 2) / (6 - delta)


def lift_weight(delta: Fraction) -> Fraction:
    """Weight lambda = (6 - delta)/4 in y_i = lambda v_i + (1 - lambda) e."""
    return (6 - Fraction(delta)) / 4


def printed_lift_weight(delta: Fraction) -> Fraction:
    """The misprinted weight 2/3 - delta/4, kept for the erratum table."""
    return THRESHOLD - Fraction(delta) / 4


def _check_lift_delta(delta: Fraction) -> Fraction:
    delta = Fraction(delta)
    if not THRESHOLD < delta < 2:
        raise ParameterError(f"Lifted codes need delta in (2/3, 2), got: {delta}")
    return delta


def lift_spherical_code(vs: Sequence[QVector], delta: Fraction) -> Tuple[Instance, Witness]:
    """Lift unit vectors v_i to x_i = (v_i, 1) with y_i = (lambda v_i, 1 - lambda).

    Raises:
        ParameterError: If delta is outside (2/3, 2), some v_i is not a
            Euclidean unit vector, or two of them have |<v_i, v_j>| above
            the threshold
    """
    delta = _check_lift_delta(delta)
    vs = [tuple(Fraction(a) for a in v) for v in vs]
    if not vs:
        raise ParameterError("Cannot lift an empty code")
    bound = inner_product_threshold(delta)
    for i, v in enumerate(vs):
        if dot(v, v) != 1:
            raise ParameterError(f"Code vector {i} is not a Euclidean unit vector")
        for j in range(i):
            if abs(dot(v, vs[j])) > bound:
                raise ParameterError(
                    f"|<v_{j}, v_{i}>| = {abs(dot(v, vs[j]))} exceeds {bound}"
                )
    lam = lift_weight(delta)
    xs = tuple(v + (Fraction(1),) for v in vs)
    ys = tuple(scale(lam, v) + (1 - lam,) for v in vs)
    return Instance(delta=delta, xs=xs), Witness(ys)


def default_grid_radius(d: int, denominator: int = GRID_DENOMINATOR) -> Fraction:
    """Half-width of the sampling grid that puts |p|^2 near 1 on average."""
    if d <= 1:
        return Fraction(2)
    return Fraction(math.isqrt(3 * denominator * denominator // (d - 1)), denominator)


@dataclass
class WynerParams:
    """Sampling parameters for ``wyner_lift``.

    Attributes:
        d: Dimension of the code vectors v_i (the lift lives in d + 1)
        delta: Target delta in (2/3, 2)
        target_m: Stop after this many code vectors
        seed: Seed of the random grid sampler
        max_tries: Number of sampled points before giving up
        margin: Slack below the threshold; defaults to threshold/margin_divisor
        margin_divisor: Divisor for the default margin
        grid_radius: Half-width of the sampling grid; dimension-scaled by default
        grid_denominator: Grid spacing is 1/grid_denominator
    """

    d: int
    delta: Fraction
    target_m: int
    seed: int = 0
    max_tries: int = 2000
    margin: Optional[Fraction] = None
    margin_divisor: int = MARGIN_DIVISOR
    grid_radius: Optional[Fraction] = None
    grid_denominator: int = GRID_DENOMINATOR
    threshold: Fraction = field(init=False)

    def __post_init__(self) -> None:
        if not isinstance(self.d, int) or self.d < 1:
            raise ParameterError(f"d must be a positive integer, got: {self.d}")
        self.delta = _check_lift_delta(self.delta)
        self.threshold = inner_product_threshold(self.delta)
        if not isinstance(self.target_m, int) or self.target_m < 1:
            raise ParameterError(f"target_m must be a positive integer, got: {self.target_m}")
        if not isinstance(self.max_tries, int) or self.max_tries < 1:
            raise ParameterError(f"max_tries must be a positive integer, got: {self.max_tries}")
        if not isinstance(self.grid_denominator, int) or self.grid_denominator < 1:
            raise ParameterError(
                f"grid_denominator must be a positive integer, got: {self.grid_denominator}"
            )
        if self.margin is None:
            if not isinstance(self.margin_divisor, int) or self.margin_divisor < 1:
                raise ParameterError(
                    f"margin_divisor must be a positive integer, got: {self.margin_divisor}"
                )
            self.margin = self.threshold / self.margin_divisor
        self.margin = Fraction(self.margin)
        if not 0 < self.margin < self.threshold:
            raise ParameterError(
                f"margin must lie in (0, {self.threshold}), got: {self.margin}"
            )
        if self.grid_radius is None:
            self.grid_radius = default_grid_radius(self.d, self.grid_denominator)
        self.grid_radius = Fraction(self.grid_radius)
        if self.grid_radius <= 0:
            raise ParameterError(f"grid_radius must be positive, got: {self.grid_radius}")


@dataclass(frozen=True)
class LiftResult:
    """Outcome of ``wyner_lift``.

    Attributes:
        instance: Lifted vectors x_i in dimension d + 1
        witness: Dual vectors y_i
        shortfall: True when max_tries ran out before target_m
        tries: Number of sampled points
    """

    instance: Instance
    witness: Witness
    shortfall: bool
    tries: int


def _sample_code(params: WynerParams) -> Tuple[List[QVector], int]:
    """Greedy seeded sampling; comparisons run on integer numerators."""
    rng = random.Random(params.seed)
    den = params.grid_denominator
    den_sq = den * den
    assert params.grid_radius is not None and params.margin is not None
    reach = math.floor(params.grid_radius * den)
    cutoff = params.threshold - params.margin
    # each kept vector is numerator / scale with integer entries
    kept: List[Tuple[Tuple[int, ...], int]] = []
    tries = 0
    while len(kept) < params.target_m and tries < params.max_tries:
        tries += 1
        p = [rng.randint(-reach, reach) for _ in range(params.d - 1)]
        p_sq = sum(a * a for a in p)
        numerator = tuple(2 * a * den for a in p) + (den_sq - p_sq,)
        denom = den_sq + p_sq
        ok = True
        for other, other_denom in kept:
            inner = abs(sum(a * b for a, b in zip(numerator, other)))
            if inner * cutoff.denominator > cutoff.numerator * denom * other_denom:
                ok = False
                break
        if ok:
            kept.append((numerator, denom))
    logger.debug("Kept %d of %d sampled code vectors", len(kept), tries)
    return [tuple(Fraction(a, denom) for a in num) for num, denom in kept], tries


def wyner_lift(params: WynerParams) -> LiftResult:
    """Sample a spherical code greedily and lift it to an instance with witness.

    Raises:
        InvalidWitnessError: If the lifted witness fails exact verification
    """
    vs, tries = _sample_code(params)
    instance, witness = lift_spherical_code(vs, params.delta)
    if not verify_witness(instance, witness):
        raise InvalidWitnessError("Lifted witness failed exact verification")
    shortfall = len(vs) < params.target_m
    if shortfall:
        logger.info("Found %d of %d code vectors in %d tries", len(vs), params.target_m, tries)
    return LiftResult(instance=instance, witness=witness, shortfall=shortfall, tries=tries)


@dataclass(frozen=True)
class ErratumRow:
    """Both lift weights checked against the two identities the witness needs.

    Attributes:
        delta: delta in (2/3, 2)
        threshold: (3 delta - 2)/(6 - delta)
        corrected: (6 - delta)/4
        printed: 2/3 - delta/4
        required_upper: delta - 1, the target of lambda t + 1 - lambda
        required_lower: -delta/2, the target of 1 - lambda (1 + t)
        corrected_upper, corrected_lower, printed_upper, printed_lower: The
            two expressions evaluated at each weight, with t the threshold
    """

    delta: Fraction
    threshold: Fraction
    corrected: Fraction
    printed: Fraction
    required_upper: Fraction
    required_lower: Fraction
    corrected_upper: Fraction
    corrected_lower: Fraction
    printed_upper: Fraction
    printed_lower: Fraction

    @property
    def corrected_holds(self) -> bool:
        return (
            self.corrected_upper == self.required_upper
            and self.corrected_lower == self.required_lower
        )

    @property
    def printed_holds(self) -> bool:
        return (
            self.printed_upper == self.required_upper and self.printed_lower == self.required_lower
        )


DEFAULT_ERRATUM_DELTAS = (
    Fraction(3, 4),
    Fraction(1),
    Fraction(5, 4),
    Fraction(3, 2),
    Fraction(7, 4),
)


def erratum_table(deltas: Sequence[Fraction] = DEFAULT_ERRATUM_DELTAS) -> List[ErratumRow]:
    """Evaluate the corrected and printed lift weights at each delta."""
    rows = []
    for delta in deltas:
        delta = _check_lift_delta(delta)
        t = inner_product_threshold(delta)
        lam = lift_weight(delta)
        old = printed_lift_weight(delta)
        rows.append(
            ErratumRow(
                delta=delta,
                threshold=t,
                corrected=lam,
                printed=old,
                required_upper=delta - 1,
                required_lower=-delta / 2,
                corrected_upper=lam * t + 1 - lam,
                corrected_lower=1 - lam * (1 + t),
                printed_upper=old * t + 1 - old,
                printed_lower=1 - old * (1 + t),
            )
        )
    return rows
