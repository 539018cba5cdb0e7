"""Maximum delta-additive subsets of a finite candidate set.

Candidates are grid points normalized onto the unit sphere of a norm; two
candidates are adjacent when their sum has norm at most delta, so cliques
are exactly the delta-additive subsets. Adjacency rows are Python integers
used as bitsets.
"""

import heapq
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from deltaset.errors import DuplicateInputError, InvalidCandidateError, ParameterError
from deltaset.exact import QVector, add, is_zero, scale
from deltaset.norms import LInfNorm, Norm, check_delta

logger = logging.getLogger(__name__)


def enumerate_candidates(norm: Norm, resolution: int) -> List[QVector]:
    """Unit vectors x/||x|| for nonzero x in ({-r..r}/r)^d, in enumeration order.

    Raises:
        ParameterError: If resolution is not a positive integer
    """
    if not isinstance(resolution, int) or resolution < 1:
        raise ParameterError(f"resolution must be a positive integer, got: {resolution}")
    steps = [Fraction(k, resolution) for k in range(-resolution, resolution + 1)]
    seen = set()
    candidates = []
    for point in itertools.product(steps, repeat=norm.dimension):
        if is_zero(point):
            continue
        unit = scale(1 / norm.gauge(point), point)
        if unit not in seen:
            seen.add(unit)
            candidates.append(unit)
    logger.debug(
        "Enumerated %d %s candidates in dimension %d", len(candidates), norm.kind, norm.dimension
    )
    return candidates


_DIGIT_FLAGS = bytes.maketrans(b"01", b"\x00\x01")


def _bits(mask: int) -> List[int]:
    """Indices of the set bits of ``mask``, ascending."""
    # least significant digit first, as 0/1 bytes
    flags = bin(mask)[:1:-1].encode("ascii").translate(_DIGIT_FLAGS)
    return list(itertools.compress(range(len(flags)), flags))


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass
class AdditivityGraph:
    """Candidates joined when their sum has norm at most delta.

    Attributes:
        norm: Norm the vertices have unit gauge in
        delta: Edge threshold
        vertices: Distinct unit vectors
        adjacency: Row i is a bitset of the neighbours of vertex i
    """

    norm: Norm
    delta: Fraction
    vertices: Tuple[QVector, ...]
    adjacency: List[int] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def neighbors(self, i: int) -> List[int]:
        return _bits(self.adjacency[i])

    def degree(self, i: int) -> int:
        return _popcount(self.adjacency[i])

    def edge_count(self) -> int:
        return sum(_popcount(row) for row in self.adjacency) // 2

    def adjacency_matrix(self) -> List[List[bool]]:
        return [[self.has_edge(i, j) for j in range(self.size)] for i in range(self.size)]


def _linf_adjacency(vertices: Sequence[QVector], delta: Fraction) -> List[int]:
    """l_inf sums are coordinatewise, so adjacency is an AND of per-coordinate masks."""
    n = len(vertices)
    d = len(vertices[0]) if vertices else 0
    rows = [(1 << n) - 1] * n
    for k in range(d):
        by_value: Dict[Fraction, int] = {}
        for j, v in enumerate(vertices):
            by_value[v[k]] = by_value.get(v[k], 0) | (1 << j)
        allowed: Dict[Fraction, int] = {}
        for a in by_value:
            mask = 0
            for b, members in by_value.items():
                if abs(a + b) <= delta:
                    mask |= members
            allowed[a] = mask
        for i, v in enumerate(vertices):
            rows[i] &= allowed[v[k]]
    return [row & ~(1 << i) for i, row in enumerate(rows)]


def _pairwise_adjacency(norm: Norm, vertices: Sequence[QVector], delta: Fraction) -> List[int]:
    n = len(vertices)
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if norm.gauge(add(vertices[i], vertices[j])) <= delta:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return rows


def build_graph(norm: Norm, candidates: Sequence[QVector], delta: Fraction) -> AdditivityGraph:
    """Exact additivity graph on the candidates.

    Raises:
        InvalidCandidateError: If a candidate does not have gauge exactly 1
        DuplicateInputError: If a candidate repeats
        DeltaRangeError: If delta is not in (0, 2)
    """
    delta = check_delta(delta)
    vertices = tuple(tuple(Fraction(a) for a in v) for v in candidates)
    for i, v in enumerate(vertices):
        value = norm.gauge(v)
        if value != 1:
            raise InvalidCandidateError(f"Candidate {i} has gauge {value}, expected 1")
    if len(set(vertices)) != len(vertices):
        raise DuplicateInputError("Candidates must be pairwise distinct")
    if isinstance(norm, LInfNorm):
        adjacency = _linf_adjacency(vertices, delta)
    else:
        adjacency = _pairwise_adjacency(norm, vertices, delta)
    graph = AdditivityGraph(norm=norm, delta=delta, vertices=vertices, adjacency=adjacency)
    logger.debug("Built graph with %d vertices and %d edges", graph.size, graph.edge_count())
    return graph


def degeneracy_order(graph: AdditivityGraph) -> List[int]:
    """Vertices in the order they are peeled off by repeated minimum-degree removal.

    Ties go to the smaller index.
    """
    degree = [graph.degree(i) for i in range(graph.size)]
    heap = [(deg, i) for i, deg in enumerate(degree)]
    heapq.heapify(heap)
    removed = [False] * graph.size
    alive = (1 << graph.size) - 1
    order = []
    while heap:
        deg, v = heapq.heappop(heap)
        if removed[v] or deg != degree[v]:
            continue
        removed[v] = True
        alive ^= 1 << v
        order.append(v)
        for u in _bits(graph.adjacency[v] & alive):
            degree[u] -= 1
            heapq.heappush(heap, (degree[u], u))
    return order


@dataclass(frozen=True)
class CliqueResult:
    """A clique of the additivity graph.

    Attributes:
        size: Number of members
        members: Sorted vertex indices
        exhaustive: True when no larger clique exists
        nodes: Branch-and-bound nodes visited
    """

    size: int
    members: Tuple[int, ...]
    exhaustive: bool
    nodes: int


def _relabel(adjacency: Sequence[int], order: Sequence[int]) -> List[int]:
    """Adjacency rows with vertex order[k] renamed to k."""
    n = len(order)
    # bit k of a row is digit n - 1 - k of its binary string
    slot = [0] * n
    for k, v in enumerate(order):
        slot[v] = n - 1 - k
    rows = []
    for v in order:
        digits = bytearray(b"0") * n
        for u in _bits(adjacency[v]):
            digits[slot[u]] = 0x31
        rows.append(int(digits, 2))
    return rows


class _BudgetExhausted(Exception):
    pass


def _color_classes(adjacency: Sequence[int], candidates: int) -> List[Tuple[int, int]]:
    """Greedy sequential coloring in bit order; returns (vertex, color) by color."""
    colored = []
    color = 0
    uncolored = candidates
    while uncolored:
        color += 1
        available = uncolored
        while available:
            low = available & -available
            v = low.bit_length() - 1
            available &= ~adjacency[v] & ~low
            uncolored ^= low
            colored.append((v, color))
    return colored


class _CliqueSearch:
    """Branch and bound with coloring bounds over bitset adjacency rows."""

    def __init__(self, adjacency: List[int], node_budget: Optional[int]) -> None:
        self.adjacency = adjacency
        self.node_budget = node_budget
        self.nodes = 0
        self.best: List[int] = []

    def _visit(self) -> None:
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise _BudgetExhausted()

    def maximize(self, current: List[int], candidates: int) -> None:
        """Find a maximum clique, largest colors first."""
        self._visit()
        for v, color in reversed(_color_classes(self.adjacency, candidates)):
            if len(current) + color <= len(self.best):
                return
            current.append(v)
            rest = candidates & self.adjacency[v]
            if rest:
                self.maximize(current, rest)
            elif len(current) > len(self.best):
                self.best = list(current)
            current.pop()
            candidates &= ~(1 << v)

    def first_of_size(
        self, current: List[int], candidates: int, target: int
    ) -> Optional[List[int]]:
        """Lexicographically first clique of ``target`` members extending ``current``."""
        self.nodes += 1
        if len(current) == target:
            return list(current)
        for v in _bits(candidates):
            rest = candidates & self.adjacency[v] & ~((1 << (v + 1)) - 1)
            bound = _color_classes(self.adjacency, rest)[-1][1] if rest else 0
            if len(current) + 1 + bound < target:
                continue
            current.append(v)
            found = self.first_of_size(current, rest, target)
            current.pop()
            if found is not None:
                return found
        return None


def max_clique(graph: AdditivityGraph, node_budget: Optional[int] = None) -> CliqueResult:
    """Maximum clique, lexicographically smallest among those of maximum size.

    A first branch and bound over the reversed degeneracy order finds the
    clique number; a second ordered search then returns the smallest member
    list of that size. If ``node_budget`` runs out during the first search,
    the best clique so far is returned with ``exhaustive`` set to False.
    """
    if node_budget is not None and node_budget < 1:
        raise ParameterError(f"node_budget must be positive, got: {node_budget}")
    n = graph.size
    if n == 0:
        return CliqueResult(size=0, members=(), exhaustive=True, nodes=0)

    order = list(reversed(degeneracy_order(graph)))
    relabeled = _relabel(graph.adjacency, order)

    search = _CliqueSearch(relabeled, node_budget)
    try:
        search.maximize([], (1 << n) - 1)
    except _BudgetExhausted:
        members = tuple(sorted(order[k] for k in search.best))
        logger.info("Node budget %d exhausted at clique size %d", node_budget, len(members))
        return CliqueResult(
            size=len(members), members=members, exhaustive=False, nodes=search.nodes - 1
        )
    omega = len(search.best)

    ordered = _CliqueSearch(graph.adjacency, None)
    found = ordered.first_of_size([], (1 << n) - 1, omega)
    if found is None:
        # the first search exhibited a clique of this size
        raise RuntimeError(f"No clique of size {omega} found on the ordered pass")
    nodes = search.nodes + ordered.nodes
    logger.debug("Clique number %d after %d nodes", omega, nodes)
    return CliqueResult(size=omega, members=tuple(found), exhaustive=True, nodes=nodes)
