"""Witness and synth command implementations."""

from fractions import Fraction
from typing import Any, Dict, Optional, TextIO

from deltaset.commands.common import read_instance_file, run_guarded, with_delta
from deltaset.duality import (
    WitnessFound,
    build_norm,
    dual_values,
    find_witness,
    forced_dual_values,
    hull_generators,
    thickening_basis,
)
from deltaset.lp import check_certificate
from deltaset.reporter import Reporter
from deltaset.serialization import (
    format_rational,
    norm_to_dict,
    vector_to_list,
    witness_result_to_dict,
    witness_to_dict,
)


def find_instance_witness(
    source: TextIO,
    reporter: Reporter,
    delta: Optional[Fraction] = None,
    pivot_rule: str = "bland",
) -> int:
    """Solve the dual system for an InstanceFile.

    Returns:
        Exit code: 0 if a witness exists, 1 if some index is infeasible,
        2 for malformed input
    """

    def action() -> int:
        instance = with_delta(read_instance_file(source).instance, delta)
        result = find_witness(instance, pivot_rule=pivot_rule)
        document = witness_result_to_dict(result)
        if isinstance(result, WitnessFound):
            table = dual_values(instance, result.witness)
            forced = forced_dual_values(instance, result.witness)
            document["dual_values"] = [[format_rational(g) for g in row] for row in table]
            document["forced"] = forced
            summary = f"witness found for {instance.size} vectors"
            return reporter.report(document, True, summary)
        document["certificate_valid"] = check_certificate(result.program, result.certificate)
        summary = f"subsystem {result.index} infeasible"
        return reporter.report(document, False, summary)

    return run_guarded(reporter, action)


def synthesize_norm(
    source: TextIO,
    reporter: Reporter,
    delta: Optional[Fraction] = None,
    pivot_rule: str = "bland",
) -> int:
    """Find a witness for an InstanceFile and emit the norm it realizes.

    Returns:
        Exit code: 0 with the norm, 1 with the infeasibility certificate,
        2 for malformed input
    """

    def action() -> int:
        instance = with_delta(read_instance_file(source).instance, delta)
        result = find_witness(instance, pivot_rule=pivot_rule)
        if not isinstance(result, WitnessFound):
            failure = witness_result_to_dict(result)
            return reporter.report(failure, False, f"subsystem {result.index} infeasible")
        norm = build_norm(instance, result.witness)
        extra = thickening_basis(hull_generators(instance), instance.dimension)
        document: Dict[str, Any] = {
            "norm": norm_to_dict(norm),
            "thickening": [vector_to_list(v) for v in extra],
            "thickening_scale": "1",
            "witness": witness_to_dict(result.witness),
        }
        summary = f"norm with {len(norm.generators)} generators ({len(extra)} thickening)"
        return reporter.report(document, True, summary)

    return run_guarded(reporter, action)
