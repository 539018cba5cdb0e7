"""Search command implementation."""

from fractions import Fraction
from pathlib import Path
from typing import Optional

from deltaset.commands.common import read_json, run_guarded
from deltaset.errors import ParameterError
from deltaset.norms import NORM_KINDS, Norm
from deltaset.reporter import Reporter
from deltaset.search import build_graph, enumerate_candidates, max_clique
from deltaset.serialization import clique_result_to_dict, norm_from_dict


def load_norm(norm_arg: str, dimension: Optional[int]) -> Norm:
    """A norm from a kind name plus dimension, or from a norm JSON file."""
    if norm_arg in NORM_KINDS and norm_arg != "polytope":
        if dimension is None:
            raise ParameterError(f"--dimension is required with --norm {norm_arg}")
        return Norm.from_kind(norm_arg, dimension)
    path = Path(norm_arg)
    if not path.is_file():
        raise ParameterError(f"--norm must be linf, l1 or a norm JSON file, got: {norm_arg}")
    with path.open("r", encoding="utf-8") as f:
        return norm_from_dict(read_json(f))


def search_clique(
    norm_spec: str,
    dimension: Optional[int],
    resolution: int,
    delta: Fraction,
    reporter: Reporter,
    node_budget: Optional[int] = None,
) -> int:
    """Emit a maximum clique of the additivity graph on grid candidates.

    Returns:
        Exit code: 0 when the search was exhaustive, 1 when the node budget
        ran out first, 2 for malformed input
    """

    def action() -> int:
        norm = load_norm(norm_spec, dimension)
        candidates = enumerate_candidates(norm, resolution)
        graph = build_graph(norm, candidates, delta)
        result = max_clique(graph, node_budget=node_budget)
        document = clique_result_to_dict(result, graph.vertices)
        document["candidates"] = graph.size
        summary = f"clique of size {result.size} among {graph.size} candidates"
        return reporter.report(document, result.exhaustive, summary)

    return run_guarded(reporter, action)
