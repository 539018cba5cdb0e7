"""Output of command results: JSON on stdout, status lines on stderr."""

import json
import sys
from typing import Any, Dict, Optional, TextIO


class Reporter:
    """Writes a command's JSON document and, when verbose, a status line.

    Attributes:
        output: Stream for the JSON document (defaults to stdout)
        status: Stream for human-readable status lines (defaults to stderr)
        verbose: Whether to write status lines at all
        use_color: Whether to use ANSI colors in status lines
    """

    RED = "\033[91m"
    GREEN = "\033[92m"
    BOLD = "\033[1m"
    RESET = "\033[0m"

    def __init__(
        self,
        output: Optional[TextIO] = None,
        status: Optional[TextIO] = None,
        verbose: bool = False,
        use_color: bool = True,
    ) -> None:
        self.output = output or sys.stdout
        self.status = status or sys.stderr
        self.verbose = verbose
        if use_color:
            self.use_color = self.status.isatty()
        else:
            self.use_color = False

    def _colorize(self, text: str, color: str) -> str:
        if self.use_color:
            return f"{color}{text}{self.RESET}"
        return text

    def emit(self, document: Dict[str, Any]) -> None:
        """Write ``document`` as indented JSON followed by a newline."""
        self.output.write(json.dumps(document, indent=2))
        self.output.write("\n")

    def report(self, document: Dict[str, Any], ok: bool, summary: str) -> int:
        """Emit the document, optionally a status line, and return the exit code."""
        self.emit(document)
        if self.verbose:
            self.status.write(self.format_summary_line(ok, summary) + "\n")
        return self.get_exit_code(ok)

    def format_summary_line(self, ok: bool, summary: str) -> str:
        if ok:
            mark = self._colorize("✓", self.GREEN)
        else:
            mark = self._colorize("✗", self.RED)
        return f"{mark} {summary}"

    def error(self, message: str) -> None:
        self.status.write(f"{self._colorize('Error:', self.BOLD)} {message}\n")

    def get_exit_code(self, ok: bool) -> int:
        """0 when the command's check succeeded, 1 otherwise."""
        return 0 if ok else 1
