"""Verify command implementation."""

from fractions import Fraction
from typing import Optional, TextIO

from deltaset.commands.common import read_instance_file, run_guarded
from deltaset.errors import SerializationError
from deltaset.norms import Norm, verify_additive_set
from deltaset.reporter import Reporter
from deltaset.serialization import additivity_report_to_dict


def verify_instance(
    source: TextIO,
    reporter: Reporter,
    delta: Optional[Fraction] = None,
    norm_kind: Optional[str] = None,
) -> int:
    """Check that an InstanceFile's vectors form a delta-additive set.

    Args:
        source: Stream holding the InstanceFile JSON
        reporter: Reporter for the AdditivityReport
        delta: Overrides the file's delta
        norm_kind: "linf" or "l1"; overrides the file's norm

    Returns:
        Exit code: 0 if the set passes, 1 if not, 2 for malformed input
    """

    def action() -> int:
        document = read_instance_file(source)
        instance = document.instance
        norm: Optional[Norm] = document.norm
        if norm_kind is not None:
            norm = Norm.from_kind(norm_kind, instance.dimension)
        if norm is None:
            raise SerializationError("No norm given: pass --norm or include 'norm' in the input")
        threshold = instance.delta if delta is None else delta
        report = verify_additive_set(norm, instance.xs, threshold)
        summary = (
            f"{instance.size} vectors, {report.violation_count} violations, "
            f"{len(report.tight_pairs)} tight pairs at delta={threshold}"
        )
        return reporter.report(additivity_report_to_dict(report), report.passed, summary)

    return run_guarded(reporter, action)
