"""Command-line entry point: ``syntomic-bpn <command> [options]``."""

from __future__ import annotations

import logging
import sys
from dataclasses import dataclass
from typing import Any, Callable, Optional, Tuple

import click

from .calculator import SyntomicCalculator
from .chart import ChartSpec, render_json, render_svg, render_table, render_text
from .config import EngineSettings, OutputFormat, RunConfig, Window
from .engine.definitions import load_definition
from .exceptions import ErrorCode, SyntomicError
from .models import BigradedBasis, DimensionTable
from .verification import run_acceptance

__all__ = ['cli', 'main']

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Artifact:
    """What a command produced, before it is rendered."""

    payload: Any
    basis: Optional[BigradedBasis] = None
    tables: Tuple[DimensionTable, ...] = ()


def _render(config: RunConfig, artifact: _Artifact) -> str:
    if config.output_format is OutputFormat.JSON:
        return render_json(artifact.payload)
    if config.output_format is OutputFormat.SVG:
        if artifact.basis is None:
            raise SyntomicError(
                f"'{config.command}' has no chart; use --format text or json",
                ErrorCode.CONFIG,
                {"field": "format"},
            )
        return render_svg(artifact.basis, ChartSpec.for_basis(artifact.basis))
    if artifact.tables:
        return render_table(*artifact.tables)
    return render_text(artifact.basis, ChartSpec.for_basis(artifact.basis))


def _emit(config: RunConfig, text: str) -> None:
    if config.output_path is None:
        click.echo(text, nl=False)
        return
    config.output_path.write_text(text, encoding="utf-8")
    logger.info("wrote %s output to %s", config.output_format.value, config.output_path)


def _execute(
    command: str,
    options: dict,
    produce: Callable[[SyntomicCalculator, RunConfig], _Artifact],
) -> None:
    """Validate options, run ``produce`` and write the rendering; errors exit with their status."""
    try:
        window = Window.parse(options["window"]) if options.get("window") else None
        config = RunConfig(
            command=command,
            p=options.get("p", 2),
            n=options.get("n", 0),
            window=window,
            output_format=options.get("output_format", "text"),
            output_path=options.get("out"),
            definitions_path=options.get("defs"),
        )
        calculator = SyntomicCalculator(EngineSettings.from_env())
        _emit(config, _render(config, produce(calculator, config)))
    except SyntomicError as exc:
        click.echo(exc.diagnostic(), err=True)
        sys.exit(exc.code.exit_status)


def _height_options(func):
    func = click.option("-n", "n", type=int, default=0, show_default=True, help="Height n >= -1.")(func)
    func = click.option("-p", "p", type=int, default=2, show_default=True, help="Prime p.")(func)
    return func


def _output_options(func):
    func = click.option("--out", type=click.Path(dir_okay=False), help="Write to this file instead of stdout.")(func)
    func = click.option(
        "--format",
        "output_format",
        type=click.Choice([f.value for f in OutputFormat]),
        default="text",
        show_default=True,
    )(func)
    func = click.option("--window", help="Degree window a..b.")(func)
    return func


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log engine progress to stderr.")
def cli(verbose: bool):
    """Exact spectral sequence computations for syntomic cohomology of BP⟨n⟩."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _power(config: RunConfig) -> int:
    return config.p ** (config.n + 1)


@cli.command()
@_height_options
@_output_options
def syntomic(**options):
    """Syntomic cohomology of BP⟨n⟩ mod (p, v_1, ..., v_n)."""

    def produce(calculator, config):
        basis = calculator.syntomic.syntomic(config.p, config.n, config.window)
        return _Artifact(payload=basis, basis=basis)

    _execute("syntomic", options, produce)


@cli.command()
@_height_options
@_output_options
def tp(**options):
    """The t-Bockstein spectral sequence for TP with its differentials."""

    def produce(calculator, config):
        window = config.window or Window((-4 * _power(config), 4 * _power(config)))
        run = calculator.prismatic.tp_run(config.p, config.n, window)
        return _Artifact(payload=run.to_dict(config.n), basis=run.basis(config.n))

    _execute("tp", options, produce)


@cli.command("tc-minus")
@_height_options
@_output_options
def tc_minus(**options):
    """TC⁻ E∞ classes split into Nygaard pieces."""

    def produce(calculator, config):
        window = config.window or Window((-4 * _power(config), 4 * _power(config)))
        basis, decomposition = calculator.prismatic.tc_minus_page(config.p, config.n, window)
        payload = basis.to_dict()
        payload["decomposition"] = decomposition.to_dict()
        return _Artifact(payload=payload, basis=basis)

    _execute("tc-minus", options, produce)


@cli.command()
@_height_options
@_output_options
def thh(**options):
    """The E2 page of THH(BP⟨n⟩) mod (p, v_1, ..., v_n)."""

    def produce(calculator, config):
        window = config.window or Window((0, 4 * _power(config)))
        basis = calculator.thh.thh_bpn_page(config.p, config.n, window)
        return _Artifact(payload=basis, basis=basis)

    _execute("thh", options, produce)


@cli.command("hochschild-may")
@_height_options
@_output_options
def hochschild_may(**options):
    """Hochschild-May spectral sequence converging to THH(BP⟨n⟩)."""

    def produce(calculator, config):
        window = config.window or Window((0, 4 * _power(config)))
        result = calculator.thh.hochschild_may(config.p, config.n, window)
        return _Artifact(payload=result, basis=result.basis)

    _execute("hochschild-may", options, produce)


@cli.command("tc-bp2")
@click.option("-p", "p", type=int, default=5, show_default=True, help="Prime p >= 5.")
@_output_options
def tc_bp2(**options):
    """Dimensions of TC(BP⟨2⟩)/(p, v_1, v_2)."""
    options["n"] = 2

    def produce(calculator, config):
        table = calculator.bp2.tc_bp2(config.p, config.window)
        return _Artifact(payload=table, basis=table.basis, tables=(table,))

    _execute("tc-bp2", options, produce)


@cli.command("k-bp2")
@click.option("-p", "p", type=int, default=5, show_default=True, help="Prime p >= 5.")
@_output_options
def k_bp2(**options):
    """Dimensions of K(BP⟨2⟩)/(p, v_1, v_2), next to TC and the v_3-inverted module."""
    options["n"] = 2

    def produce(calculator, config):
        tables = calculator.bp2.k_bp2(config.p, config.window)
        return _Artifact(payload=tables, tables=(tables.tc, tables.k, tables.v_inverted))

    _execute("k-bp2", options, produce)


@cli.command("run-custom")
@click.option("--defs", required=True, type=click.Path(exists=True, dir_okay=False), help="Definition file (JSON).")
@_output_options
def run_custom(**options):
    """Run a spectral sequence described by a definition file."""

    def produce(calculator, config):
        definition = load_definition(config.definitions_path)
        window = config.window or definition.window
        if window is None:
            raise SyntomicError(
                "no window: pass --window or set 'window' in the definition file",
                ErrorCode.CONFIG,
                {"field": "window"},
            )
        run = calculator.run(definition.sequence, window)
        return _Artifact(payload=run.to_dict(), basis=run.basis())

    _execute("run-custom", options, produce)


@cli.command()
@click.option("--seed", type=int, default=None, help="Seed for the randomized engine checks.")
def verify(seed: Optional[int]):
    """Run every acceptance check and print PASS or FAIL for each."""
    try:
        calculator = SyntomicCalculator(EngineSettings.from_env())
        results = run_acceptance(calculator) if seed is None else run_acceptance(calculator, seed)
    except SyntomicError as exc:
        click.echo(exc.diagnostic(), err=True)
        sys.exit(exc.code.exit_status)
    failed = 0
    for result in results:
        click.echo(f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}")
        failed += not result.passed
    click.echo(f"{len(results) - failed}/{len(results)} checks passed")
    if failed:
        sys.exit(ErrorCode.VERIFICATION_FAILED.exit_status)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
