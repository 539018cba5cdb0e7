"""Timing benchmarks for the exact pipelines."""

import random
import time
from fractions import Fraction

import pytest

from deltaset.bounds import bm_closed_form, bm_sharp, ellipsoid_inner_product_bound, gram_bound
from deltaset.constructions import (
    WynerParams,
    cube_family,
    erratum_table,
    octahedron_instance,
    octahedron_witness,
    wyner_lift,
)
from deltaset.duality import Instance, WitnessFound, build_norm, find_witness
from deltaset.norms import L1Norm, LInfNorm, verify_additive_set
from deltaset.search import build_graph, enumerate_candidates, max_clique

F = Fraction
TWO_THIRDS = F(2, 3)


class TestPerformanceBenchmarks:
    """Benchmarks to ensure the exact pipelines stay at desk scale."""

    def test_cube_families_under_1s(self) -> None:
        """Benchmark: cube families for d in {2, 4, 5, 8} verify in < 1s."""
        start = time.perf_counter()
        for d in (2, 4, 5, 8):
            norm, xs = cube_family(d)
            assert verify_additive_set(norm, xs, TWO_THIRDS).passed
        duration = time.perf_counter() - start

        assert duration < 1, f"Cube verification took {duration:.2f}s (target: < 1s)"

    def test_round_trips_under_30s(self) -> None:
        """Benchmark: witness, norm and verification for the known families in < 30s."""
        instances = []
        for d in range(1, 7):
            _, xs = cube_family(d)
            instances.append(Instance(delta=TWO_THIRDS, xs=tuple(xs)))
        _, xs = octahedron_instance()
        instances.append(Instance(delta=TWO_THIRDS, xs=tuple(xs)))
        for seed in range(10):
            lift = wyner_lift(WynerParams(d=3, delta=F(1), target_m=3, seed=seed))
            instances.append(lift.instance)

        start = time.perf_counter()
        for instance in instances:
            result = find_witness(instance)
            assert isinstance(result, WitnessFound)
            norm = build_norm(instance, result.witness)
            assert verify_additive_set(norm, instance.xs, instance.delta).passed
        duration = time.perf_counter() - start

        assert duration < 30, f"Round trips took {duration:.1f}s (target: < 30s)"

    def test_octahedron_norm_under_5s(self) -> None:
        """Benchmark: 100 gauges of the synthesized octahedron norm in < 5s."""
        _, xs = octahedron_instance()
        norm = build_norm(Instance(delta=TWO_THIRDS, xs=tuple(xs)), octahedron_witness())
        rng = random.Random(0)
        points = [
            tuple(F(rng.randint(-20, 20), rng.randint(1, 20)) for _ in range(3))
            for _ in range(100)
        ]

        start = time.perf_counter()
        values = [norm.gauge(p) for p in points]
        duration = time.perf_counter() - start

        assert values == [L1Norm(3).gauge(p) for p in points]
        assert duration < 5, f"Gauges took {duration:.2f}s (target: < 5s)"

    def test_bounds_under_1s(self) -> None:
        """Benchmark: the d = 3 threshold bounds in < 1s."""
        start = time.perf_counter()
        assert bm_closed_form(3, TWO_THIRDS) == 6
        assert bm_sharp(3, TWO_THIRDS) == 6
        assert gram_bound(ellipsoid_inner_product_bound(3, TWO_THIRDS)) == 4
        duration = time.perf_counter() - start

        assert duration < 1, f"Bounds took {duration:.2f}s (target: < 1s)"

    def test_erratum_under_1s(self) -> None:
        """Benchmark: 20 erratum rows in < 1s."""
        start = time.perf_counter()
        rows = erratum_table([F(k, 30) for k in range(21, 60, 2)])
        duration = time.perf_counter() - start

        assert all(row.corrected_holds for row in rows)
        assert duration < 1, f"Erratum table took {duration:.2f}s (target: < 1s)"

    def test_l1_search_under_60s(self) -> None:
        """Benchmark: the resolution-3 l_1 oracle in < 60s."""
        norm = L1Norm(3)
        start = time.perf_counter()
        graph = build_graph(norm, enumerate_candidates(norm, 3), TWO_THIRDS)
        result = max_clique(graph)
        duration = time.perf_counter() - start

        assert result.size == 4
        assert duration < 60, f"Search took {duration:.1f}s (target: < 60s)"

    def test_linf_five_search_under_60s(self) -> None:
        """Benchmark: the resolution-3 l_inf oracle in dimension 5 in < 60s."""
        norm = LInfNorm(5)
        start = time.perf_counter()
        graph = build_graph(norm, enumerate_candidates(norm, 3), TWO_THIRDS)
        result = max_clique(graph)
        duration = time.perf_counter() - start

        assert result.size == 5
        assert duration < 60, f"Search took {duration:.1f}s (target: < 60s)"

    def test_wyner_sixteen_under_60s(self) -> None:
        """Benchmark: five seeded lifts in dimension 16 in < 60s."""
        start = time.perf_counter()
        for seed in range(1, 6):
            result = wyner_lift(WynerParams(d=16, delta=F(1), target_m=8, seed=seed))
            assert result.instance.size >= 3
        duration = time.perf_counter() - start

        assert duration < 60, f"Lifts took {duration:.1f}s (target: < 60s)"
