import logging
from .setup_logging import setup_logging
setup_logging(
    logging.INFO,
    loggers=[
        "planner",
    ]
)
import functools
from pathlib import Path
from typing import Any

import click
import numpy as np
import pandas as pd

from .exceptions import BgsaError, ConfigError, InputError


log = logging.getLogger(__name__)

SCENARIO_CHOICES = [
    'illustrative', 'all-shifted', 'efron-shifted', 'sim1', 'sim2', 'sim3', 'sim4', 'sim5', 'sim6',
]
METHOD_CHOICES = ['maxmean', 'mean-z', 'mean-abs-z', 'ks']


def _bgsa_cause(e: BaseException) -> BgsaError | None:
    seen = set()
    while e is not None and id(e) not in seen:
        if isinstance(e, BgsaError):
            return e
        seen.add(id(e))
        e = e.__cause__ or e.__context__
    return None


def handle_errors(fn):
    """Maps input and config errors to exit code 2 and other package errors to exit code 1."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except Exception as e:
            cause = _bgsa_cause(e)
            if isinstance(cause, (ConfigError, InputError)):
                raise click.UsageError(str(cause)) from e
            if cause is not None:
                log.debug("Run failed", exc_info=e)
                raise click.ClickException(str(cause)) from e
            raise
    return wrapper


def load_config(config_path: Path | None, overrides: dict[str, dict[str, Any]]):
    from .config import Config

    if config_path is not None:
        return Config.load(config_path, overrides).data
    return Config.from_overrides(overrides).data


def _split(values: tuple[str, ...]) -> list[str] | None:
    items = [v.strip() for value in values for v in value.split(',') if v.strip()]
    return items or None


config_option = click.option(
    "-c", "--config", "config_path",
    type=click.Path(path_type=Path, dir_okay=False, exists=True),
    help="TOML or JSON config file; a previous run.json reproduces that run. Flags override it.",
)
out_option = click.option(
    "-o", "--out",
    type=click.Path(path_type=Path, file_okay=False),
    help="Output directory.",
)
seed_option = click.option("--seed", type=click.IntRange(0, 2**63 - 1), help="Random seed.  [default: fresh, recorded in run.json]")
threads_option = click.option(
    "--threads",
    type=click.IntRange(min=1),
    envvar="BGSA_THREADS",
    show_envvar=True,
    help="Worker threads for permutations and benchmark cells.  [default: 1]",
)


@click.group(context_settings={
    "help_option_names": ["-h", "--help"],
    "max_content_width": 120
})
@click.option("-v", "--verbose", is_flag=True, help="Log debug messages.")
@click.option("-q", "--quiet", is_flag=True, help="Log warnings and errors only.")
@click.option("--log-file", type=click.Path(path_type=Path, dir_okay=False), help="Also append log records to this file.")
def cli(verbose: bool, quiet: bool, log_file: Path | None):
    """Bayesian gene set analysis command line interface."""
    if verbose and quiet:
        raise click.UsageError("--verbose and --quiet are mutually exclusive")
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    setup_logging(level, loggers=["planner"], log_file=log_file)


@cli.command()
@config_option
@click.option("--matrix", type=click.Path(path_type=Path, dir_okay=False), help="Expression matrix TSV (genes x samples).")
@click.option("--labels", type=click.Path(path_type=Path, dir_okay=False), help="Class label TSV (sample_id, 0|1).")
@click.option("--gmt", type=click.Path(path_type=Path, dir_okay=False), help="Gene sets in GMT format.")
@out_option
@click.option("--variant", type=click.Choice(['simple', 'mixture']), help="Model variant.  [default: mixture]")
@click.option("--iters", type=int, help="MCMC iterations.  [default: 2000]")
@click.option("--burnin", type=int, help="Burn-in iterations, discarded.  [default: 500]")
@seed_option
@click.option("--cutoff", type=float, help="Flag sets with P(v=0|D) at or below this value.  [default: 0.1]")
@click.option("--only-flagged", is_flag=True, default=None, help="Write only the flagged sets.")
@click.option("--rao-blackwell", is_flag=True, default=None, help="Estimate P(v=0|D) from the per-sweep probabilities.")
@handle_errors
def fit(config_path, matrix, labels, gmt, out, variant, iters, burnin, seed, cutoff, only_flagged, rao_blackwell):
    """Fit the hierarchical model and write set and gene tables."""
    config = load_config(config_path, dict(
        paths=dict(matrix=matrix, labels=labels, gmt=gmt, out=out),
        mcmc=dict(variant=variant, iterations=iters, burn_in=burnin, seed=seed, rao_blackwell=rao_blackwell),
        report=dict(cutoff=cutoff, only_flagged=only_flagged),
    ))
    config.paths.require('matrix', 'labels', 'gmt', 'out')
    config.parse("mcmc", "report")

    from .pipeline import run_fit
    output = run_fit(config)
    click.echo(f"Wrote {len(output.files)} files to {config.paths.out}")


@cli.command()
@config_option
@click.option("--matrix", type=click.Path(path_type=Path, dir_okay=False), help="Expression matrix TSV (genes x samples).")
@click.option("--labels", type=click.Path(path_type=Path, dir_okay=False), help="Class label TSV (sample_id, 0|1).")
@click.option("--gmt", type=click.Path(path_type=Path, dir_okay=False), help="Gene sets in GMT format.")
@out_option
@click.option("-m", "--method", multiple=True, help=f"Set statistic, repeatable or comma separated: {', '.join(METHOD_CHOICES)}.  [default: maxmean]")
@click.option("--perms", type=int, help="Label permutations (at least 100).  [default: 1000]")
@click.option("--randomizations", type=int, help="Random sets per size for restandardization.  [default: 200]")
@click.option("--restandardize/--no-restandardize", default=None, help="Restandardize the statistic.  [default: maxmean only]")
@click.option("--exhaustive", is_flag=True, default=None, help="Enumerate every labelling (at most 12 samples).")
@seed_option
@threads_option
@handle_errors
def baseline(config_path, matrix, labels, gmt, out, method, perms, randomizations, restandardize, exhaustive, seed, threads):
    """Permutation p-values of classical set statistics."""
    config = load_config(config_path, dict(
        paths=dict(matrix=matrix, labels=labels, gmt=gmt, out=out),
        baseline=dict(
            methods=_split(method), n_permutations=perms, n_randomizations=randomizations,
            restandardize=restandardize, exhaustive=exhaustive, seed=seed,
        ),
        computation=dict(threads=threads),
    ))
    config.paths.require('matrix', 'labels', 'gmt', 'out')
    config.parse("baseline", "computation")

    from .pipeline import run_baseline
    output = run_baseline(config)
    click.echo(f"Wrote {len(output.files)} files to {config.paths.out}")


@cli.command()
@config_option
@click.option("--scenario", type=click.Choice(SCENARIO_CHOICES), help="Data-generating design.  [default: illustrative]")
@seed_option
@out_option
@click.option("--shift", type=float, help="Treatment shift of the illustrative design.  [default: 1.0]")
@click.option("--n-samples", type=int, help="Samples of sim1-sim6, split evenly between classes.  [default: 10]")
@handle_errors
def simulate(config_path, scenario, seed, out, shift, n_samples):
    """Generate a dataset with known truth: matrix, labels, GMT and truth JSON."""
    from .io import METADATA, write_metadata, write_simulated
    from .pipeline.meta import run_meta
    from . import simgen

    config = load_config(config_path, dict(
        paths=dict(out=out),
        simulate=dict(scenario=scenario, seed=seed, shift=shift, n_samples=n_samples),
    ))
    config.paths.require('out')
    section = config.simulate

    simulated = simgen.generate(section.scenario, section.seed, **section.generator_options())
    files = write_simulated(simulated, config.paths.out)
    files.append(write_metadata(config.paths.out / METADATA, config.raw, run_meta('simulate', seed=section.seed)))
    log.info(
        f"{section.scenario}: {simulated.dataset.n_genes} genes, {simulated.dataset.n_samples} samples, "
        f"{len(simulated.sets)} sets, {len(simulated.truth.positive_sets)} positive"
    )
    click.echo(f"Wrote {len(files)} files to {config.paths.out}")


@cli.command()
@config_option
@click.option("--scenarios", multiple=True, help="Scenarios, repeatable or comma separated.  [default: sim1,sim2]")
@click.option("--methods", multiple=True, help="Methods: bgsa, bgsa-simple, maxmean, mean-z, mean-abs-z, ks (suffix -restd or -raw).")
@click.option("--replicates", type=int, help="Datasets per scenario (at least 2).  [default: 20]")
@click.option("--iters", type=int, help="MCMC iterations.  [default: 2000, full scale 4000]")
@click.option("--burnin", type=int, help="Burn-in iterations.  [default: 500]")
@click.option("--perms", type=int, help="Label permutations per baseline run.  [default: 200]")
@click.option("--full-scale", is_flag=True, default=None, help="100 replicates of all six simulations at 4000 iterations.")
@seed_option
@out_option
@threads_option
@handle_errors
def benchmark(config_path, scenarios, methods, replicates, iters, burnin, perms, full_scale, seed, out, threads):
    """Compare methods by ROC AUC over replicated simulations."""
    from .evaluation import paired_tests, run_benchmark
    from .io import METADATA, write_metadata, write_results
    from .pipeline.meta import run_meta

    config = load_config(config_path, dict(
        paths=dict(out=out),
        benchmark=dict(
            scenarios=_split(scenarios), methods=_split(methods), replicates=replicates,
            n_permutations=perms, full_scale=full_scale, seed=seed,
        ),
        mcmc=dict(iterations=iters, burn_in=burnin),
        computation=dict(threads=threads),
    ))
    config.paths.require('out')
    section = config.benchmark

    report = run_benchmark(
        scenarios=section.scenarios,
        methods=section.methods,
        n_replicates=section.n_replicates,
        mcmc=section.mcmc.config,
        n_permutations=section.n_permutations,
        seed=section.seed,
        n_randomizations=section.n_randomizations,
        threads=config.computation.n_threads,
    )
    files = write_results(report, config.paths.out)
    files.append(write_metadata(
        config.paths.out / METADATA, config.raw,
        run_meta('benchmark', seed=section.seed, orientations=report.orientations),
    ))

    click.echo(report.auc_table().round(1).to_string())
    tests = paired_tests(report)
    if len(tests):
        click.echo(tests.round(4).to_string(index=False))
    click.echo(f"Wrote {len(files)} files to {config.paths.out}")


@cli.command(name='demo-prior')
@config_option
@click.option("--reps", type=int, help="Repetitions, each with its own eta.  [default: 1000]")
@click.option("--draws", type=int, help="Draws per repetition.  [default: 100]")
@seed_option
@out_option
@handle_errors
def demo_prior(config_path, reps, draws, seed, out):
    """Correlation of |beta| within and between sets under the prior."""
    from .io import METADATA, write_metadata, write_table
    from .pipeline.meta import run_meta
    from .simgen import gen_prior_correlation_demo

    config = load_config(config_path, dict(paths=dict(out=out), demo=dict(reps=reps, draws=draws, seed=seed)))
    config.paths.require('out')
    section = config.demo

    demo = gen_prior_correlation_demo(np.random.default_rng(section.seed), section.n_reps, section.n_draws)
    frame = pd.DataFrame(dict(rep=np.arange(section.n_reps), r_within=demo.r_within, r_between=demo.r_between))
    write_table(frame, config.paths.out / 'prior_correlation.tsv', float_format='%.6g')
    means = dict(r_within=float(demo.r_within.mean()), r_between=float(demo.r_between.mean()))
    write_metadata(config.paths.out / METADATA, config.raw, run_meta('demo-prior', seed=section.seed, means=means))
    click.echo(f"mean r_within = {means['r_within']:.3f}, mean r_between = {means['r_between']:.3f}")


@cli.command(name='demo-density')
@config_option
@click.option("--dof", type=float, help="Shared degrees of freedom.  [default: 4]")
@click.option("--scales", multiple=True, type=float, help="Scale s^2, repeatable.  [default: 0.5 1 2]")
@click.option("--grid-max", type=float, help="Upper end of the x grid.  [default: 5]")
@click.option("--grid-points", type=int, help="Number of grid points.  [default: 200]")
@out_option
@handle_errors
def demo_density(config_path, dof, scales, grid_max, grid_points, out):
    """Scaled inverse chi-squared densities with a shared dof and growing scale."""
    from .io import write_table
    from .stats import density_curves

    config = load_config(config_path, dict(
        paths=dict(out=out),
        demo=dict(dof=dof, scales_sq=list(scales) or None, grid_max=grid_max, grid_points=grid_points),
    ))
    config.paths.require('out')
    section = config.demo

    grid = np.linspace(section.grid_max / section.grid_points, section.grid_max, section.grid_points)
    curves = density_curves(section.dof, section.scales_sq, grid)
    frame = pd.DataFrame(curves, columns=[f"s2={s:g}" for s in section.scales_sq]).assign(x=grid)
    frame = frame[['x', *frame.columns[:-1]]]
    path = write_table(frame, config.paths.out / 'density.tsv', float_format='%.6g')
    click.echo(f"Wrote {path}")
