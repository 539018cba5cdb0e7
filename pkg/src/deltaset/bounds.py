"""Upper bounds on the size of delta-additive sets in dimension d."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from sympy import integer_nthroot

from deltaset.errors import ParameterError
from deltaset.norms import check_delta

logger = logging.getLogger(__name__)

THRESHOLD = Fraction(2, 3)
DEFAULT_RADIUS = Fraction(2)
REGIMES = ("bounded", "linear", "exponential")


def _check_dimension(d: int) -> int:
    if not isinstance(d, int) or d < 1:
        raise ParameterError(f"Dimension must be a positive integer, got: {d}")
    return d


def bm_closed_form(d: int, delta: Fraction) -> int:
    """floor(2 (2/(2 - delta))^d).

    Raises:
        DeltaRangeError: If delta is not in (0, 2)
    """
    _check_dimension(d)
    delta = check_delta(delta)
    return math.floor(2 * (2 / (2 - delta)) ** d)


def _root_bracket(a: int, d: int, k: int) -> Tuple[int, int]:
    """Integers lo <= a^(1/d) 2^k <= hi, with lo == hi when the root is exact."""
    root, exact = integer_nthroot(a, d)
    if exact:
        value = int(root) << k
        return value, value
    lo, _ = integer_nthroot(a << (k * d), d)
    return int(lo), int(lo) + 1


def root_sum_at_most(a: int, b: int, d: int, bound: Fraction) -> bool:
    """Decide a^(1/d) + b^(1/d) <= bound exactly.

    Both roots are bracketed in dyadic intervals of width 2^-k; k doubles
    until the interval sum lies on one side of ``bound``. When either root is
    irrational the sum is irrational, so the refinement always separates.
    """
    k = 8
    while True:
        lo_a, hi_a = _root_bracket(a, d, k)
        lo_b, hi_b = _root_bracket(b, d, k)
        if Fraction(hi_a + hi_b, 1 << k) <= bound:
            return True
        if Fraction(lo_a + lo_b, 1 << k) > bound:
            return False
        k *= 2


def _sharp_holds(n: int, d: int, bound: Fraction) -> bool:
    return root_sum_at_most(n // 2, (n + 1) // 2, d, bound)


def bm_sharp(d: int, delta: Fraction, radius: Fraction = DEFAULT_RADIUS) -> Optional[int]:
    """Largest N >= 2 with (floor(N/2)^(1/d) + ceil(N/2)^(1/d))(1 - delta/2) <= radius.

    Returns None when even N = 2 fails (radius below 2 - delta).

    Raises:
        DeltaRangeError: If delta is not in (0, 2)
    """
    _check_dimension(d)
    delta = check_delta(delta)
    radius = Fraction(radius)
    if radius <= 0:
        return None
    bound = radius / (1 - delta / 2)
    if not _sharp_holds(2, d, bound):
        return None
    # the left side grows strictly with N
    lo, hi = 2, 4
    while _sharp_holds(hi, d, bound):
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _sharp_holds(mid, d, bound):
            lo = mid
        else:
            hi = mid
    return lo


def trivial_bound(delta: Fraction) -> Optional[int]:
    """2 when delta < 2/3, where no three unit vectors can be delta-additive."""
    delta = check_delta(delta)
    return 2 if delta < THRESHOLD else None


def ellipsoid_inner_product_bound(d: int, delta: Fraction) -> Fraction:
    """Upper bound (d delta^2 - 2)/2 on <x, y> from ||x + y||_2^2 <= d delta^2."""
    _check_dimension(d)
    delta = Fraction(delta)
    return (d * delta * delta - 2) / 2


def gram_bound(c: Fraction) -> Optional[int]:
    """Largest m with m + m(m - 1)c >= 0, i.e. floor(1 - 1/c), for c < 0."""
    c = Fraction(c)
    if c >= 0:
        return None
    return math.floor(1 - 1 / c)


def threshold_bound(d: int) -> int:
    """Largest delta-additive set at delta = 2/3 in any d-dimensional space."""
    _check_dimension(d)
    if d == 1:
        return 2
    if d == 3:
        return 4
    return d


def regime(delta: Fraction) -> str:
    """Growth of the maximum set size in d: bounded, linear or exponential."""
    delta = check_delta(delta)
    if delta < THRESHOLD:
        return "bounded"
    if delta == THRESHOLD:
        return "linear"
    return "exponential"


@dataclass(frozen=True)
class BoundReport:
    """All computable bounds for one (d, delta).

    Attributes:
        d: Dimension
        delta: Threshold
        closed_form: bm_closed_form(d, delta)
        sharp: bm_sharp(d, delta, radius_used), None below two vectors
        radius_used: Radius for the sharp inequality
        agreement: sharp is defined and at most closed_form + 1
        trivial: trivial_bound(delta)
        ellipsoid: ellipsoid_inner_product_bound(d, delta)
        gram: gram_bound(ellipsoid)
        threshold: threshold_bound(d) when delta == 2/3, else None
        regime: regime(delta)
    """

    d: int
    delta: Fraction
    closed_form: int
    sharp: Optional[int]
    radius_used: Fraction
    agreement: bool
    trivial: Optional[int]
    ellipsoid: Fraction
    gram: Optional[int]
    threshold: Optional[int]
    regime: str


def bound_report(d: int, delta: Fraction, radius: Fraction = DEFAULT_RADIUS) -> BoundReport:
    delta = check_delta(delta)
    radius = Fraction(radius)
    closed = bm_closed_form(d, delta)
    sharp = bm_sharp(d, delta, radius)
    ellipsoid = ellipsoid_inner_product_bound(d, delta)
    logger.debug("Bounds for d=%d delta=%s: closed %d, sharp %s", d, delta, closed, sharp)
    return BoundReport(
        d=d,
        delta=delta,
        closed_form=closed,
        sharp=sharp,
        radius_used=radius,
        agreement=sharp is not None and sharp <= closed + 1,
        trivial=trivial_bound(delta),
        ellipsoid=ellipsoid,
        gram=gram_bound(ellipsoid),
        threshold=threshold_bound(d) if delta == THRESHOLD else None,
        regime=regime(delta),
    )
