"""Command-line front end.

Usage:
    falsepos bound --alpha 0.05 --r 0.2
    falsepos table --format csv
    falsepos johnson --alpha 0.05 --n 100
    falsepos simulate --k 1000000 --eta 0.5 --mu 0.5 --n 100 --alpha 0.05 --seed 42 --format json
    falsepos scenario extreme-bf --gamma 3.87 --n 100 --xbar 100

Exit codes: 0 success, 2 bad arguments, 3 numeric failure (for instance
conditioning on an event of probability zero).
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click

from . import bayes, montecarlo, positivity, render, scenarios, ztest
from .errors import DegenerateError

__all__ = ["cli", "run", "main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _float_list(ctx, param, value):
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        items = value
    else:
        items = [v for v in str(value).split(",") if v.strip()]
    if not items:
        raise click.BadParameter("expected a non-empty comma-separated list of numbers")
    try:
        return [float(v) for v in items]
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


def _load_config(ctx, param, value):
    if value is None:
        return None
    try:
        data = json.loads(Path(value).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise click.BadParameter(f"cannot read config {value}: {exc}") from exc
    if not isinstance(data, dict):
        raise click.BadParameter("config must be a JSON object keyed by subcommand name")
    ctx.default_map = data
    return value


def output_options(func):
    func = click.option("--out", "out", type=click.Path(dir_okay=False, writable=True), default=None,
                        help="Write to this file instead of stdout.")(func)
    return click.option("--format", "fmt", type=click.Choice(render.FORMATS), default="text",
                        show_default=True)(func)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--config", type=click.Path(exists=True, dir_okay=False), callback=_load_config,
              is_eager=True, expose_value=False,
              help="JSON file of per-subcommand defaults; flags override it.")
def cli():
    """False positives among positive results: bounds, Bayes-factor tables, simulations."""


# ------------------------------------------------------------------ positivity

@cli.command()
@click.option("--alpha", type=float, required=True, help="Significance level.")
@click.option("--r", "r", type=float, required=True, help="Positivity ratio (> 0).")
@output_options
def bound(alpha, r, fmt, out):
    """Maximal share of false positives among positive results."""
    value = positivity.fp_bound(alpha, r)
    _emit(render.render_record({
        "alpha": alpha,
        "r": r,
        "bound": value,
        "capped": min(1.0, value),
        "display": positivity.format_percent(value),
    }, fmt), out)


@cli.command()
@click.option("--alphas", callback=_float_list, default="0.1,0.05,0.01,0.005", show_default=True)
@click.option("--ratios", callback=_float_list, default="0.5,0.2,0.1", show_default=True)
@output_options
def table(alphas, ratios, fmt, out):
    """Grid of bounds over significance levels and positivity ratios."""
    _emit(render.render_bound_table(positivity.bound_table(alphas, ratios), fmt), out)


@cli.command("min-ratio")
@click.option("--alpha", type=float, required=True)
@click.option("--target", type=float, required=True, help="Tolerated share of false positives.")
@output_options
def min_ratio(alpha, target, fmt, out):
    """Smallest positivity ratio keeping the bound at or below TARGET."""
    _emit(render.render_record({
        "alpha": alpha,
        "target": target,
        "min_ratio": positivity.min_ratio_for_target(alpha, target),
    }, fmt), out)


@cli.command()
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--targets", callback=_float_list, default="0.05,0.1,0.21", show_default=True)
@output_options
def guide(alpha, targets, fmt, out):
    """Decision guide: positivity ratio needed for each tolerated false-positive share."""
    pairs = positivity.guidance(alpha, targets)
    if fmt == "text":
        lines = [f"significance level alpha = {alpha:g}"]
        for t, r in pairs:
            lines.append(
                f"  positivity ratio r >= {r:.4g}: at most {positivity.format_percent(t)}"
                " of positive results are false positives"
            )
        lines.append(f"  below r = {pairs[-1][1]:.4g}: consider a smaller alpha")
        _emit("\n".join(lines) + "\n", out)
    else:
        _emit(render.render_rows(("target", "min_ratio"), pairs, fmt), out)


# ----------------------------------------------------------------------- ztest

@cli.command()
@click.option("--alpha", type=float, required=True)
@click.option("--n", type=int, required=True)
@output_options
def threshold(alpha, n, fmt, out):
    """Smallest empirical mean that rejects the null at level ALPHA."""
    test = ztest.GaussianZTest(alpha, n)
    _emit(render.render_record({"alpha": alpha, "n": n, "threshold": ztest.rejection_threshold(test)}, fmt), out)


@cli.command()
@click.option("--xbar", type=float, required=True)
@click.option("--n", type=int, required=True)
@click.option("--alpha", type=float, default=None, help="Also report the test decision at this level.")
@output_options
def pvalue(xbar, n, alpha, fmt, out):
    """One-sided p-value of an empirical mean."""
    s = ztest.SampleSummary(n, xbar)
    record = {"xbar": xbar, "n": n, "p_value": ztest.p_value(s)}
    if alpha is not None:
        record["alpha"] = alpha
        record["outcome"] = ztest.decide(ztest.GaussianZTest(alpha, n), s).value
    _emit(render.render_record(record, fmt), out)


@cli.command()
@click.option("--xbar", type=float, required=True)
@click.option("--n", type=int, required=True)
@click.option("--level", type=float, default=0.95, show_default=True)
@output_options
def ci(xbar, n, level, fmt, out):
    """Confidence interval for the mean (unit standard deviation)."""
    lo, hi = ztest.confidence_interval(ztest.SampleSummary(n, xbar), level)
    _emit(render.render_record({"xbar": xbar, "n": n, "level": level, "lower": lo, "upper": hi}, fmt), out)


# ----------------------------------------------------------------------- bayes

@cli.command()
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--n", type=int, default=100, show_default=True)
@click.option("--edges", callback=_float_list, default=",".join(map(str, bayes.DEFAULT_BF_EDGES)),
              show_default=True, help="Bayes-factor bin edges; the last bin is open.")
@click.option("--method", type=click.Choice(["ratio", "quadrature"]), default="ratio", show_default=True)
@output_options
def johnson(alpha, n, edges, method, fmt, out):
    """Bayes-factor bins above the cut matching ALPHA, under the UMPBT prior."""
    rows = bayes.johnson_table(alpha, n, edges, method)
    prior = bayes.umpbt_prior(alpha, n)
    meta = {
        "alpha": alpha,
        "n": n,
        "gamma_star": bayes.gamma_star(alpha),
        "mu": prior.mu,
        "positive_prob": bayes.positive_prob(prior, rows[0].interval.lo),
        "weighted_false_positive": bayes.weighted_false_positive(rows),
    }
    _emit(render.render_johnson(rows, fmt, meta), out)


# ------------------------------------------------------------------ montecarlo

def _bound_summary(report, alpha):
    try:
        holds, slack = montecarlo.verify_bound(report, alpha)
    except DegenerateError:
        return {"value": None, "holds": None, "slack": None}
    return {
        "value": positivity.fp_bound_capped(alpha, report.empirical_r),
        "holds": holds,
        "slack": slack,
    }


@cli.command()
@click.option("--k", type=int, default=1_000_000, show_default=True, help="Number of experiments.")
@click.option("--eta", type=float, required=True, help="Fraction of true nulls.")
@click.option("--mu", type=float, required=True, help="True mean when the null is false.")
@click.option("--n", type=int, required=True)
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--workers", type=click.IntRange(1), default=1, show_default=True,
              help="Worker threads; results do not depend on it.")
@output_options
def simulate(k, eta, mu, n, alpha, seed, workers, fmt, out):
    """Simulate K one-sided z-tests and check the positivity bound."""
    cfg = montecarlo.WorldConfig(k=k, eta=eta, mu_alt=mu, n=n, alpha=alpha, seed=seed)
    report = montecarlo.simulate_world(cfg, workers=workers)
    payload = {"config": cfg.to_dict(), **report.to_dict(), "bound": _bound_summary(report, alpha)}
    _emit(render.render_record(payload, fmt), out)


@cli.command("simulate-bh")
@click.option("--k", type=int, default=1_000_000, show_default=True)
@click.option("--gamma", type=float, default=3.87, show_default=True,
              help="Bayes-factor cut; a value within 0.005 of gamma*(ALPHA) is replaced by it.")
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--n", type=int, default=100, show_default=True)
@click.option("--edges", callback=_float_list, default=",".join(map(str, bayes.DEFAULT_BF_EDGES)),
              show_default=True)
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--workers", type=click.IntRange(1), default=1, show_default=True)
@output_options
def simulate_bh(k, gamma, alpha, n, edges, seed, workers, fmt, out):
    """Simulate K experiments from the UMPBT two-point prior and bin them by Bayes factor."""
    gamma = bayes.resolve_gamma(gamma, alpha)
    prior = bayes.BhPrior(bayes.umpbt_mu(gamma, n), n)
    cfg = montecarlo.BhWorldConfig(k=k, prior=prior, gamma=gamma, bf_edges=tuple(edges), seed=seed)
    report, hist = montecarlo.simulate_bh(cfg, workers=workers)
    bins = []
    his = list(hist.edges[1:]) + [math.inf]
    for lo, hi, count, fp_count in zip(hist.edges, his, hist.counts, hist.fp_counts):
        interval = bayes.BfInterval(lo, hi)
        bins.append({
            "bf_lo": lo,
            "bf_hi": hi,
            "count": count,
            "fraction": count / k,
            "fp_count": fp_count,
            "fp_share": fp_count / count if count else None,
            "expected_fraction": bayes.bin_prob(prior, interval),
            "expected_fp_share": bayes.h0_given_bf_in(prior, interval),
        })
    payload = {
        "config": cfg.to_dict(),
        **report.to_dict(),
        "expected": {
            "positive_prob": bayes.positive_prob(prior, gamma),
            "false_positive_prob": bayes.false_positive_prob(prior, gamma),
        },
        "bins": bins,
    }
    _emit(render.render_record(payload, fmt), out)


# ------------------------------------------------------------------- scenarios

@cli.group()
def scenario():
    """Demonstrations of inconsistent automatic alternatives."""


@scenario.command("extreme-bf")
@click.option("--gamma", type=float, default=3.87, show_default=True)
@click.option("--n", type=int, default=100, show_default=True)
@click.option("--xbar", type=float, default=100.0, show_default=True)
@output_options
def scenario_extreme_bf(gamma, n, xbar, fmt, out):
    """Huge Bayes factor for an alternative far from the data."""
    _emit(_render_scenario(scenarios.extreme_bf(gamma, n, xbar), fmt), out)


@scenario.command("gamma-dependence")
@click.option("--gamma1", type=float, default=3.87, show_default=True)
@click.option("--gamma2", type=float, default=20.0, show_default=True)
@click.option("--n", type=int, default=100, show_default=True)
@output_options
def scenario_gamma_dependence(gamma1, gamma2, n, fmt, out):
    """Two cuts, two different 'supported' alternatives."""
    _emit(_render_scenario(scenarios.gamma_dependence(gamma1, gamma2, n), fmt), out)


@scenario.command("pooling")
@click.option("--gamma", type=float, default=3.87, show_default=True)
@click.option("--n", type=int, default=100, show_default=True)
@output_options
def scenario_pooling(gamma, n, fmt, out):
    """Pooling two identical experiments shifts the alternative by sqrt(2)."""
    _emit(_render_scenario(scenarios.pooling_inconsistency(gamma, n), fmt), out)


def _render_scenario(report: scenarios.ScenarioReport, fmt: str) -> str:
    if fmt == "text":
        body = render.render_record({"scenario": report.scenario_id, **report.to_dict()["findings"]}, fmt)
        return body + report.narrative + "\n"
    return render.render_record(report.to_dict(), fmt)


# ------------------------------------------------------------------ entrypoint

def run(argv=None) -> int:
    """Execute one command line and return its exit code."""
    try:
        rv = cli.main(args=argv, prog_name="falsepos", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except ArithmeticError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_NUMERIC
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    return rv if isinstance(rv, int) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
