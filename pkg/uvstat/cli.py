import logging
from typing import List

import click
from click import Context

from uvstat import __version__
from uvstat.enums import ExitCode
from uvstat.exceptions import UVStatError
from uvstat.factory import init
from uvstat.settings import Settings

logger = logging.getLogger("uvstat.cli")

DEFAULT_CONFIG = "./uvstat.yaml"


def _fail(ctx: Context, message: str):
    click.echo(f"error: {message}", err=True)
    ctx.exit(int(ExitCode.error))


def _load(ctx: Context, config: str):
    try:
        init(config, required=True)
    except UVStatError as e:
        _fail(ctx, str(e))


config_option = click.option(
    "--config", "config", help="Config file, takes the place of the one given to the group."
)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, "-V", "--version")
@click.option(
    "-c", "--config", default=DEFAULT_CONFIG, show_default=True, help="Config file.",
)
@click.pass_context
def cli(ctx: Context, config: str):
    """
    Simulate degenerate U- and V-statistics of dependent sequences against their limit laws.
    """
    ctx.ensure_object(dict)
    try:
        init(config, required=config != DEFAULT_CONFIG)
    except UVStatError as e:
        _fail(ctx, str(e))


@cli.command(help="Run scenarios and write samples, distances, summary and ECDF plot.")
@click.option(
    "-s",
    "--scenario",
    multiple=True,
    help="Scenario to run, repeatable; defaults to the scenarios of the config file.",
)
@click.option("--seed", type=int, help="Override the master seed.")
@click.option("-o", "--out", help="Output directory, one subdirectory per scenario.")
@click.option("-w", "--workers", type=click.IntRange(min=1), help="Worker processes.")
@config_option
@click.pass_context
def run(ctx: Context, scenario: List[str], seed: int, out: str, workers: int, config: str):
    from uvstat.experiment.runner import run_scenario

    if config:
        _load(ctx, config)
    names = list(scenario) or Settings.file_scenarios()
    if not names:
        _fail(ctx, "no --scenario given and the config file defines none")
    out = out or Settings.out()
    workers = workers or Settings.workers()
    code = ExitCode.passed
    for name in names:
        try:
            config = Settings.get_scenario(name).with_overrides(seed=seed, out=out)
            result = run_scenario(config, workers, out)
        except UVStatError as e:
            logger.error(f"scenario {name} failed: {e}")
            _fail(ctx, str(e))
        except Exception as e:
            logger.exception(f"scenario {name} crashed: {e}")
            _fail(ctx, f"{type(e).__name__}: {e}")
        click.echo(f"{name}: {'pass' if result.passed else 'FAIL'} (config_hash={result.config_hash})")
        if not result.passed:
            code = ExitCode.acceptance_failed
    ctx.exit(int(code))


@cli.command(name="list", help="List the available scenarios.")
def list_scenarios():
    for name, scenario in Settings.scenarios().items():
        summary = scenario.description.split(";")[0].strip()
        click.echo(f"{name:<24} {scenario.kind.value:<15} {summary}")


@cli.command(help="Run the orthonormality, covariance and partition-oracle checks.")
@config_option
@click.pass_context
def check(ctx: Context, config: str):
    from uvstat.experiment.checks import run_checks

    if config:
        _load(ctx, config)
    results = run_checks()
    for result in results:
        click.echo(f"{'ok  ' if result.passed else 'FAIL'} {result.name}: {result.detail}")
    passed = all(r.passed for r in results)
    ctx.exit(int(ExitCode.passed if passed else ExitCode.acceptance_failed))


if __name__ == "__main__":
    cli()
