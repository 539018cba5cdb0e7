"""Exact rational vectors and linear algebra.

Scalars are ``fractions.Fraction`` values, vectors are tuples of them and
matrices are tuples of equal-length vectors. Nothing here ever touches a
float, so equalities such as ``<x_j, y_i> == -1/3`` can be tested exactly.
"""

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Sequence, Tuple, Union

from deltaset.errors import DimensionMismatchError

Rational = Fraction
QVector = Tuple[Fraction, ...]
QMatrix = Tuple[QVector, ...]

Scalar = Union[int, Fraction, str]


def as_rational(value: Scalar) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: a float has already lost the exact value.
    """
    if isinstance(value, float):
        raise TypeError(f"Refusing float {value!r}; use an int, Fraction or 'p/q' string")
    return Fraction(value)


def as_vector(values: Iterable[Scalar]) -> QVector:
    """Build a QVector from any iterable of exact scalars."""
    return tuple(as_rational(v) for v in values)


def zero_vector(d: int) -> QVector:
    return (Fraction(0),) * d


def unit_vector(d: int, i: int) -> QVector:
    """Standard basis vector e_i (0-based) in dimension d."""
    if not 0 <= i < d:
        raise IndexError(f"Basis index {i} out of range for dimension {d}")
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(d))


def _check_same_length(x: Sequence[Fraction], y: Sequence[Fraction]) -> None:
    if len(x) != len(y):
        raise DimensionMismatchError(f"Vectors have dimensions {len(x)} and {len(y)}")


def add(x: QVector, y: QVector) -> QVector:
    _check_same_length(x, y)
    return tuple(a + b for a, b in zip(x, y))


def sub(x: QVector, y: QVector) -> QVector:
    _check_same_length(x, y)
    return tuple(a - b for a, b in zip(x, y))


def scale(t: Fraction, x: QVector) -> QVector:
    return tuple(t * a for a in x)


def neg(x: QVector) -> QVector:
    return tuple(-a for a in x)


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    """Exact inner product."""
    _check_same_length(x, y)
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def is_zero(x: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in x)


def dimension_of(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Common dimension of a nonempty list of vectors.

    Raises:
        DimensionMismatchError: If the vectors do not share one length
        ValueError: If the list is empty
    """
    if not vectors:
        raise ValueError("Cannot determine the dimension of an empty vector list")
    lengths = {len(v) for v in vectors}
    if len(lengths) != 1:
        raise DimensionMismatchError(f"Mixed vector dimensions: {sorted(lengths)}")
    return lengths.pop()


def primitive(x: QVector) -> QVector:
    """Rescale x to coprime integer coordinates with a positive leading entry.

    The zero vector is returned unchanged.
    """
    if is_zero(x):
        return x
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in x), 1)
    ints = [int(c * lcm) for c in x]
    g = reduce(math.gcd, (abs(i) for i in ints if i != 0))
    lead = next(i for i in ints if i != 0)
    sign = 1 if lead > 0 else -1
    return tuple(Fraction(sign * i // g) for i in ints)


def _integer_rows(vectors: Sequence[QVector]) -> List[List[int]]:
    """Clear denominators row by row; row spaces are unchanged."""
    rows = []
    for v in vectors:
        lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in v), 1)
        rows.append([int(c * lcm) for c in v])
    return rows


def rank(vectors: Sequence[QVector]) -> int:
    """Exact rank of the span of ``vectors``.

    Uses fraction-free (Bareiss) elimination on the integer-scaled rows, so
    every intermediate entry is an integer minor and all divisions are exact.

    Raises:
        DimensionMismatchError: If the vectors have mixed dimensions
    """
    if not vectors:
        return 0
    ncols = dimension_of(vectors)
    m = _integer_rows(vectors)
    nrows = len(m)
    r = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][col]
        for i in range(r + 1, nrows):
            factor = m[i][col]
            row = m[i]
            for j in range(col + 1, ncols):
                row[j] = (p * row[j] - factor * m[r][j]) // prev
            row[col] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def _rref(rows: List[List[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over the rationals; returns (rows, pivot columns)."""
    m = [list(row) for row in rows]
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def kernel_basis(vectors: Sequence[QVector]) -> List[QVector]:
    """Basis of the dependence space {lambda : sum_i lambda_i x_i = 0}.

    Each basis vector is returned in primitive integer form. The list is
    empty exactly when the input vectors are linearly independent.

    Raises:
        ValueError: If ``vectors`` is empty
        DimensionMismatchError: If the vectors have mixed dimensions
    """
    d = dimension_of(vectors)
    m = len(vectors)
    # columns are the input vectors
    rows = [[vectors[j][k] for j in range(m)] for k in range(d)]
    reduced, pivots = _rref(rows, m)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for f in free:
        coeffs = [Fraction(0)] * m
        coeffs[f] = Fraction(1)
        for row_index, p in enumerate(pivots):
            coeffs[p] = -reduced[row_index][f]
        basis.append(primitive(tuple(coeffs)))
    return basis


def _orthogonalize(candidate: QVector, basis: Sequence[QVector]) -> QVector:
    """Subtract the projections of ``candidate`` onto an orthogonal basis."""
    v = candidate
    for u in basis:
        coeff = dot(v, u) / dot(u, u)
        if coeff != 0:
            v = sub(v, scale(coeff, u))
    return v


def orthogonal_complement_basis(vectors: Sequence[QVector], d: int) -> List[QVector]:
    """Orthogonal rational basis of the orthogonal complement of span(vectors).

    Unnormalized Gram-Schmidt: the input span is orthogonalized first, then
    the standard basis vectors are run through the same process and every
    nonzero remainder is kept. Returned vectors are pairwise orthogonal and
    scaled to primitive integer form.

    Raises:
        DimensionMismatchError: If some input vector does not have length d
    """
    for v in vectors:
        if len(v) != d:
            raise DimensionMismatchError(f"Vector of dimension {len(v)} in a {d}-dimensional space")
    span: List[QVector] = []
    for v in vectors:
        w = _orthogonalize(v, span)
        if not is_zero(w):
            span.append(w)
    complement: List[QVector] = []
    for i in range(d):
        if len(span) + len(complement) == d:
            break
        w = _orthogonalize(unit_vector(d, i), span + complement)
        if not is_zero(w):
            complement.append(primitive(w))
    return complement


def remove_components(x: QVector, family: Sequence[QVector]) -> QVector:
    """Remove from x its components along an orthogonal family of vectors."""
    return _orthogonalize(x, family)


def solve_coordinates(basis: Sequence[QVector], x: QVector) -> QVector:
    """Coordinates c with sum_i c_i basis_i = x.

    Raises:
        ValueError: If the basis is dependent or x lies outside its span
        DimensionMismatchError: If dimensions disagree
    """
    d = dimension_of(list(basis) + [x])
    n = len(basis)
    rows = [[basis[j][k] for j in range(n)] + [x[k]] for k in range(d)]
    reduced, pivots = _rref(rows, n + 1)
    if n in pivots:
        raise ValueError("Vector is not in the span of the basis")
    if len(pivots) != n:
        raise ValueError("Basis vectors are linearly dependent")
    return tuple(reduced[i][n] for i in range(n))
