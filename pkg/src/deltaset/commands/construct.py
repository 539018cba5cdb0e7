"""Construct command implementations."""

from fractions import Fraction
from typing import Optional

from deltaset.commands.common import run_guarded
from deltaset.constructions import (
    THRESHOLD,
    WynerParams,
    cube_family,
    cube_witness,
    octahedron_instance,
    octahedron_witness,
    wyner_lift,
)
from deltaset.duality import Instance
from deltaset.reporter import Reporter
from deltaset.serialization import instance_to_dict, lift_result_to_dict


def construct_cube(d: int, reporter: Reporter) -> int:
    """Emit the d-dimensional cube family at delta = 2/3 with its witness."""

    def action() -> int:
        norm, xs = cube_family(d)
        instance = Instance(delta=THRESHOLD, xs=tuple(xs))
        document = instance_to_dict(instance, norm=norm, witness=cube_witness(d))
        return reporter.report(document, True, f"cube family with {d} vectors")

    return run_guarded(reporter, action)


def construct_octahedron(reporter: Reporter) -> int:
    """Emit the four l_1^3 face centroids at delta = 2/3 with their witness."""

    def action() -> int:
        norm, xs = octahedron_instance()
        instance = Instance(delta=THRESHOLD, xs=tuple(xs))
        document = instance_to_dict(instance, norm=norm, witness=octahedron_witness())
        return reporter.report(document, True, "octahedron configuration with 4 vectors")

    return run_guarded(reporter, action)


def construct_wyner(
    d: int,
    delta: Fraction,
    reporter: Reporter,
    seed: int = 0,
    target: int = 8,
    max_tries: int = 2000,
    margin: Optional[Fraction] = None,
    margin_divisor: int = 10,
    grid_radius: Optional[Fraction] = None,
    grid_denominator: int = 2**16,
) -> int:
    """Emit a lifted spherical code with its witness.

    Returns:
        Exit code: 0 when target vectors were found, 1 on a shortfall,
        2 for malformed parameters
    """

    def action() -> int:
        params = WynerParams(
            d=d,
            delta=delta,
            target_m=target,
            seed=seed,
            max_tries=max_tries,
            margin=margin,
            margin_divisor=margin_divisor,
            grid_radius=grid_radius,
            grid_denominator=grid_denominator,
        )
        result = wyner_lift(params)
        summary = (
            f"{result.instance.size} of {target} code vectors in {result.tries} tries "
            f"(dimension {result.instance.dimension})"
        )
        return reporter.report(lift_result_to_dict(result), not result.shortfall, summary)

    return run_guarded(reporter, action)
