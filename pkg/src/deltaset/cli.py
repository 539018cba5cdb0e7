"""Command-line interface for deltaset."""

import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, TextIO, Tuple

import click

from deltaset.__version__ import __version__
from deltaset.config import CONFIG_FILE_NAME, LOG_LEVELS, Config, ConfigError
from deltaset.errors import SerializationError
from deltaset.reporter import Reporter
from deltaset.serialization import parse_rational


def _rational(ctx: click.Context, param: click.Parameter, value: Any) -> Any:
    """Click callback turning "p/q" option values into Fractions."""
    if value is None:
        return None
    try:
        if isinstance(value, tuple):
            return tuple(parse_rational(v) for v in value)
        return parse_rational(value)
    except SerializationError as e:
        raise click.BadParameter(str(e)) from e


def _config(ctx: click.Context) -> Config:
    return ctx.obj["config"]  # type: ignore[no-any-return]


def _reporter(ctx: click.Context) -> Reporter:
    return ctx.obj["reporter"]  # type: ignore[no-any-return]


@click.group(invoke_without_command=True)
@click.option("--version", is_flag=True, help="Show version and exit")
@click.option("--config", default=CONFIG_FILE_NAME, help="Path to configuration file")
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default=None,
    help="Logging level for stderr (overrides the config file)",
)
@click.option("--verbose", "-v", is_flag=True, help="Write a status line to stderr")
@click.pass_context
def main(
    ctx: click.Context, version: bool, config: str, log_level: Optional[str], verbose: bool
) -> None:
    """
    deltaset - exact delta-additive sets of unit vectors

    Construct, certify and bound sets of unit vectors whose pairwise sums
    have norm at most delta. Every number is an exact rational; JSON
    documents carry rationals as "p/q" strings.
    """
    if version:
        click.echo(f"deltaset version {__version__}")
        ctx.exit(0)

    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())
        ctx.exit(0)

    try:
        settings = Config.from_file(Path(config) if config else None)
    except ConfigError as e:
        click.echo(f"Configuration error: {e}", err=True)
        ctx.exit(2)

    level = getattr(logging, log_level.upper()) if log_level else settings.logging_level
    logging.basicConfig(
        stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s"
    )
    ctx.obj = {"config": settings, "reporter": Reporter(verbose=verbose)}


_input_option = click.option(
    "--input",
    "source",
    type=click.File("r"),
    default="-",
    help="InstanceFile JSON (default: standard input)",
)
_delta_option = click.option(
    "--delta", default=None, callback=_rational, help="Override the instance's delta"
)


@main.command()
@_input_option
@_delta_option
@click.option(
    "--norm",
    "norm_kind",
    type=click.Choice(["linf", "l1"]),
    default=None,
    help="Norm to check under (default: the instance's norm)",
)
@click.pass_context
def verify(
    ctx: click.Context, source: TextIO, delta: Optional[Fraction], norm_kind: Optional[str]
) -> None:
    """Check that the instance's vectors form a delta-additive set."""
    from deltaset.commands.verify import verify_instance

    sys.exit(verify_instance(source, _reporter(ctx), delta=delta, norm_kind=norm_kind))


@main.command()
@_input_option
@_delta_option
@click.pass_context
def witness(ctx: click.Context, source: TextIO, delta: Optional[Fraction]) -> None:
    """Decide whether a norm realizing the instance exists."""
    from deltaset.commands.witness import find_instance_witness

    exit_code = find_instance_witness(
        source, _reporter(ctx), delta=delta, pivot_rule=_config(ctx).pivot_rule
    )
    sys.exit(exit_code)


@main.command()
@_input_option
@_delta_option
@click.pass_context
def synth(ctx: click.Context, source: TextIO, delta: Optional[Fraction]) -> None:
    """Build the polytope norm realizing the instance."""
    from deltaset.commands.witness import synthesize_norm

    exit_code = synthesize_norm(
        source, _reporter(ctx), delta=delta, pivot_rule=_config(ctx).pivot_rule
    )
    sys.exit(exit_code)


@main.group()
def construct() -> None:
    """Emit one of the explicit constructions as an InstanceFile."""


@construct.command()
@click.option("--d", "d", type=click.IntRange(min=1), required=True, help="Dimension")
@click.pass_context
def cube(ctx: click.Context, d: int) -> None:
    """d vectors of l_inf^d with pairwise sums of norm 2/3."""
    from deltaset.commands.construct import construct_cube

    sys.exit(construct_cube(d, _reporter(ctx)))


@construct.command()
@click.pass_context
def octahedron(ctx: click.Context) -> None:
    """Four vectors of l_1^3 with pairwise sums of norm 2/3."""
    from deltaset.commands.construct import construct_octahedron

    sys.exit(construct_octahedron(_reporter(ctx)))


@construct.command()
@click.option("--d", "d", type=click.IntRange(min=1), required=True, help="Code dimension")
@click.option("--delta", required=True, callback=_rational, help="delta in (2/3, 2)")
@click.option("--seed", type=int, default=0, help="Sampler seed")
@click.option("--target", type=click.IntRange(min=1), default=8, help="Wanted code size")
@click.option("--max-tries", type=click.IntRange(min=1), default=None, help="Sampling budget")
@click.option("--margin", default=None, callback=_rational, help="Slack below the threshold")
@click.option("--grid-radius", default=None, callback=_rational, help="Sampling grid half-width")
@click.pass_context
def wyner(
    ctx: click.Context,
    d: int,
    delta: Fraction,
    seed: int,
    target: int,
    max_tries: Optional[int],
    margin: Optional[Fraction],
    grid_radius: Optional[Fraction],
) -> None:
    """A lifted random spherical code in dimension d + 1, with witness."""
    from deltaset.commands.construct import construct_wyner

    settings = _config(ctx)
    exit_code = construct_wyner(
        d,
        delta,
        _reporter(ctx),
        seed=seed,
        target=target,
        max_tries=max_tries if max_tries is not None else settings.max_tries,
        margin=margin,
        margin_divisor=settings.margin_divisor,
        grid_radius=grid_radius,
        grid_denominator=settings.grid_denominator,
    )
    sys.exit(exit_code)


@main.command()
@click.option("--d", "d", type=click.IntRange(min=1), required=True, help="Dimension")
@click.option("--delta", required=True, callback=_rational, help="delta in (0, 2)")
@click.option("--radius", default=None, callback=_rational, help="Radius of the sharp bound")
@click.pass_context
def bound(ctx: click.Context, d: int, delta: Fraction, radius: Optional[Fraction]) -> None:
    """Upper bounds on delta-additive sets in dimension d."""
    from deltaset.commands.bound import report_bounds

    chosen = radius if radius is not None else _config(ctx).radius_value
    sys.exit(report_bounds(d, delta, chosen, _reporter(ctx)))


@main.command()
@click.option("--norm", "norm_spec", required=True, help="linf, l1 or a norm JSON file")
@click.option("--dimension", type=click.IntRange(min=1), default=None, help="Dimension for linf/l1")
@click.option("--resolution", type=click.IntRange(min=1), required=True, help="Grid resolution")
@click.option("--delta", required=True, callback=_rational, help="delta in (0, 2)")
@click.option("--budget", type=click.IntRange(min=1), default=None, help="Node budget")
@click.pass_context
def search(
    ctx: click.Context,
    norm_spec: str,
    dimension: Optional[int],
    resolution: int,
    delta: Fraction,
    budget: Optional[int],
) -> None:
    """Maximum delta-additive subset of normalized grid points."""
    from deltaset.commands.search import search_clique

    node_budget = budget if budget is not None else _config(ctx).node_budget
    exit_code = search_clique(
        norm_spec, dimension, resolution, delta, _reporter(ctx), node_budget=node_budget
    )
    sys.exit(exit_code)


@main.command()
@click.option(
    "--delta", "deltas", multiple=True, callback=_rational, help="delta in (2/3, 2); repeatable"
)
@click.pass_context
def erratum(ctx: click.Context, deltas: Tuple[Fraction, ...]) -> None:
    """Compare the corrected and printed lift weights."""
    from deltaset.commands.erratum import report_erratum

    sys.exit(report_erratum(deltas, _reporter(ctx)))


if __name__ == "__main__":
    sys.exit(main())
