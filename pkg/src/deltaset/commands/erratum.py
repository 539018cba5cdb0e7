"""Erratum command implementation."""

from fractions import Fraction
from typing import Sequence

from deltaset.commands.common import run_guarded
from deltaset.constructions import DEFAULT_ERRATUM_DELTAS, erratum_table
from deltaset.reporter import Reporter
from deltaset.serialization import erratum_row_to_dict


def report_erratum(deltas: Sequence[Fraction], reporter: Reporter) -> int:
    """Tabulate the corrected and printed lift weights; exit 0 iff the corrected one holds."""

    def action() -> int:
        rows = erratum_table(list(deltas) or DEFAULT_ERRATUM_DELTAS)
        ok = all(row.corrected_holds for row in rows)
        broken = sum(not row.printed_holds for row in rows)
        summary = f"corrected weight holds at {len(rows)} deltas, printed fails at {broken}"
        return reporter.report({"rows": [erratum_row_to_dict(r) for r in rows]}, ok, summary)

    return run_guarded(reporter, action)
