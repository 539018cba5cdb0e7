"""Bound command implementation."""

from fractions import Fraction

from deltaset.bounds import bound_report
from deltaset.commands.common import run_guarded
from deltaset.reporter import Reporter
from deltaset.serialization import bound_report_to_dict


def report_bounds(d: int, delta: Fraction, radius: Fraction, reporter: Reporter) -> int:
    """Emit every bound for (d, delta). Always exit 0 unless input is malformed."""

    def action() -> int:
        report = bound_report(d, delta, radius)
        summary = f"closed form {report.closed_form}, sharp {report.sharp}, gram {report.gram}"
        return reporter.report(bound_report_to_dict(report), True, summary)

    return run_guarded(reporter, action)
