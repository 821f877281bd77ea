"""Command-line interface: batch weighting, ranking, TCO summaries,
sensitivity scans, and the HTTP service launcher.

Exit codes: 0 success, 1 invalid input, 2 internal/usage error. All output
is deterministic for fixed inputs.
"""

from __future__ import annotations

import functools
import os
import sys
from pathlib import Path

import click

from . import io as pio
from .bwm import solve_bwm, with_consistency
from .errors import DomainError
from .matrix import Stage
from .pipeline import (
    RunStore,
    export_run,
    ranking_to_obj,
    run_pipeline,
    sensitivity_scan,
    sensitivity_to_obj,
)
from .survey import validate_survey
from .tco import segment_average_tco, tco
from .weights import aggregate_weights

FORMATS = click.Choice(["table", "json", "csv"])


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DomainError as exc:
            click.echo(f"error [{exc.code}]: {exc}", err=True)
            raise SystemExit(1)
        except click.ClickException:
            raise
        except BrokenPipeError:
            raise SystemExit(0)  # downstream consumer closed the pipe
        except Exception as exc:  # numerical failure or a plain bug
            click.echo(f"internal error: {exc}", err=True)
            raise SystemExit(2)
    return wrapper


def emit_json(obj) -> None:
    click.echo(pio.canonical_json(obj))


def _fmt(value: float) -> str:
    return f"{value:.6f}"


@click.group()
def main():
    """Survey-driven criterion weighting and ideal-point ranking."""


@main.command()
@click.argument("surveys_dir", type=click.Path(exists=True, file_okay=False,
                                               path_type=Path))
@click.option("--criteria", "criteria_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--format", "fmt", type=FORMATS, default="table")
@handle_errors
def weights(surveys_dir: Path, criteria_path: Path, fmt: str):
    """Solve every survey in SURVEYS_DIR and print aggregated weights."""
    criteria = pio.parse_criteria(criteria_path)
    surveys = pio.load_surveys_dir(surveys_dir)
    solutions = []
    for s in surveys:
        validate_survey(s, criteria.n)
        solutions.append((s, with_consistency(solve_bwm(s), s)))
    aggregated = aggregate_weights([sol.weights for _, sol in solutions])

    if fmt == "json":
        emit_json({
            "aggregated": pio.weights_to_obj(aggregated),
            "per_respondent": [
                {"respondent": s.respondent,
                 **pio.weights_to_obj(sol.weights)}
                for s, sol in solutions
            ],
        })
    elif fmt == "csv":
        click.echo("criterion,weight")
        for c, w in zip(criteria, aggregated.weights):
            click.echo(f"{c.id},{w!r}")
    else:
        click.echo(f"{'respondent':16s} {'xi_star':>10s} {'consistency':>12s}")
        for s, sol in solutions:
            cr = sol.weights.consistency_ratio
            cr_text = "inconsistent" if sol.weights.is_inconsistent else _fmt(cr)
            click.echo(f"{s.respondent:16s} {_fmt(sol.xi_star):>10s} "
                       f"{cr_text:>12s}")
        click.echo()
        click.echo(f"{'criterion':28s} {'weight':>10s}")
        for c, w in zip(criteria, aggregated.weights):
            click.echo(f"{c.id:28s} {_fmt(w):>10s}")


def _load_weights_for_rank(weights_src: str, surveys_dir: Path | None,
                           criteria):
    if weights_src == "from-surveys":
        if surveys_dir is None:
            raise click.UsageError(
                "--weights from-surveys requires --surveys DIR")
        surveys = pio.load_surveys_dir(surveys_dir)
        vectors = []
        for s in surveys:
            validate_survey(s, criteria.n)
            vectors.append(with_consistency(solve_bwm(s), s).weights)
        return aggregate_weights(vectors), surveys
    path = Path(weights_src)
    if not path.exists():
        raise pio.ParseError("file not found", source=str(path))
    return pio.parse_weights(path), None


def _print_ranking(ranking, fmt: str):
    if fmt == "json":
        emit_json({"ranking": ranking_to_obj(ranking)})
    elif fmt == "csv":
        click.echo("alternative,s_plus,s_minus,score,rank")
        for e in ranking.by_rank():
            click.echo(f"{e.alternative},{e.s_plus!r},{e.s_minus!r},"
                       f"{e.score!r},{e.rank}")
    else:
        click.echo(f"{'alternative':22s} {'s_plus':>10s} {'s_minus':>10s} "
                   f"{'score':>10s} {'rank':>5s}")
        for e in ranking.by_rank():
            tie = " (tie)" if e.tied else ""
            click.echo(f"{e.alternative:22s} {_fmt(e.s_plus):>10s} "
                       f"{_fmt(e.s_minus):>10s} {_fmt(e.score):>10s} "
                       f"{e.rank:>5d}{tie}")


@main.command()
@click.option("--matrix", "matrix_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--weights", "weights_src", required=True,
              help="weights file, or the literal 'from-surveys'")
@click.option("--surveys", "surveys_dir", default=None,
              type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--stage", type=click.Choice([s.value for s in Stage]),
              required=True)
@click.option("--criteria", "criteria_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--store", "store_dir", default=None,
              type=click.Path(file_okay=False, path_type=Path))
@click.option("--format", "fmt", type=FORMATS, default="table")
@handle_errors
def rank(matrix_path, weights_src, surveys_dir, stage, criteria_path,
         store_dir, fmt):
    """Rank the alternatives of a decision matrix."""
    criteria = pio.parse_criteria(criteria_path)
    matrix = pio.parse_matrix(matrix_path, criteria, Stage(stage))
    weight_vector, surveys = _load_weights_for_rank(weights_src, surveys_dir,
                                                    criteria)
    store = RunStore(store_dir) if store_dir else None
    run = run_pipeline(
        criteria, matrix,
        surveys=surveys, weights=None if surveys else weight_vector,
        store=store,
        input_names={"criteria": str(criteria_path),
                     "matrix": str(matrix_path),
                     "surveys": str(surveys_dir) if surveys_dir else "",
                     "weights": weights_src})
    _print_ranking(run.ranking, fmt)
    if store is not None:
        click.echo(f"run {run.run_id} stored in {store.directory}", err=True)


@main.command()
@click.option("--config", "config_path", required=True,
              type=click.Path(path_type=Path))
@click.option("--format", "fmt", type=FORMATS, default="table")
@handle_errors
def pipeline(config_path: Path, fmt: str):
    """Full run from a JSON config; persists into the run store.

    Config keys: criteria, matrix, stage (for CSV matrices), and either
    surveys_dir or weights; optional store (default ./runs). Paths are
    resolved relative to the config file.
    """
    raw, _ = pio.load_json(config_path)
    known = {"criteria", "matrix", "stage", "surveys_dir", "weights", "store"}
    unknown = set(raw) - known
    if unknown:
        raise pio.SchemaError(f"unknown config key(s) {sorted(unknown)}",
                              source=str(config_path))
    base = config_path.parent

    def resolve(key):
        return (base / raw[key]).resolve() if key in raw else None

    criteria = pio.parse_criteria(resolve("criteria"))
    stage = Stage(raw["stage"]) if "stage" in raw else None
    matrix = pio.parse_matrix(resolve("matrix"), criteria, stage)
    surveys = (pio.load_surveys_dir(resolve("surveys_dir"))
               if "surveys_dir" in raw else None)
    weight_vector = (pio.parse_weights(resolve("weights"))
                     if "weights" in raw else None)
    store = RunStore(resolve("store") if "store" in raw else base / "runs")

    run = run_pipeline(criteria, matrix, surveys=surveys,
                       weights=weight_vector, store=store,
                       input_names={k: str(raw.get(k, "")) for k in
                                    ("criteria", "matrix", "surveys_dir",
                                     "weights")})
    if fmt == "json":
        click.echo(export_run(run, "json").decode("utf-8"), nl=False)
    elif fmt == "csv":
        click.echo(export_run(run, "csv").decode("utf-8"), nl=False)
    else:
        click.echo(f"run {run.run_id} (stored in {store.directory})")
        click.echo(f"{'criterion':28s} {'weight':>10s}")
        for c, w in zip(criteria, run.weights.weights):
            click.echo(f"{c.id:28s} {_fmt(w):>10s}")
        click.echo()
        _print_ranking(run.ranking, "table")


@main.command("tco")
@click.option("--fleet", "fleet_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--format", "fmt", type=FORMATS, default="table")
@handle_errors
def tco_command(fleet_path: Path, fmt: str):
    """Per-segment average total cost of ownership of a vehicle fleet."""
    fleet = pio.parse_fleet(fleet_path)
    groups = sorted({(v.segment, v.powertrain.value) for v in fleet})
    rows = [
        {"segment": segment, "powertrain": powertrain,
         "vehicles": sum(1 for v in fleet if v.segment == segment
                         and v.powertrain.value == powertrain),
         "average_tco": segment_average_tco(fleet, segment, powertrain)}
        for segment, powertrain in groups
    ]
    if fmt == "json":
        emit_json({"segments": rows,
                   "vehicles": [{"label": v.label, "tco": tco(v)}
                                for v in fleet]})
    elif fmt == "csv":
        click.echo("segment,powertrain,vehicles,average_tco")
        for r in rows:
            click.echo(f"{r['segment']},{r['powertrain']},{r['vehicles']},"
                       f"{r['average_tco']!r}")
    else:
        click.echo(f"{'segment':14s} {'powertrain':10s} {'n':>3s} "
                   f"{'average TCO':>16s}")
        for r in rows:
            click.echo(f"{r['segment']:14s} {r['powertrain']:10s} "
                       f"{r['vehicles']:>3d} {r['average_tco']:>16.2f}")


@main.command()
@click.option("--run", "run_id", required=True)
@click.option("--criterion", "criterion_id", required=True)
@click.option("--deltas", required=True,
              help="comma-separated signed weight perturbations")
@click.option("--store", "store_dir", required=True,
              type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--format", "fmt", type=FORMATS, default="table")
@handle_errors
def sensitivity(run_id, criterion_id, deltas, store_dir, fmt):
    """What-if scan of one criterion's weight over a stored run."""
    try:
        delta_values = [float(d) for d in deltas.split(",") if d.strip() != ""]
    except ValueError:
        raise click.UsageError(f"--deltas must be numbers, got {deltas!r}")
    store = RunStore(store_dir)
    run = store.rerun(run_id)
    report = sensitivity_scan(run, criterion_id, delta_values)
    if fmt == "json":
        emit_json(sensitivity_to_obj(report))
    elif fmt == "csv":
        click.echo("delta,top_alternative,flipped")
        for e in report.entries:
            click.echo(f"{e.delta!r},{e.reranking.top.alternative},"
                       f"{str(e.flipped).lower()}")
    else:
        click.echo(f"base top: {report.base_ranking.top.alternative}")
        click.echo(f"{'delta':>10s}  {'top alternative':22s} {'flipped':>8s}")
        for e in report.entries:
            click.echo(f"{e.delta:>10.4f}  "
                       f"{e.reranking.top.alternative:22s} "
                       f"{'yes' if e.flipped else 'no':>8s}")


@main.command()
@click.option("--port", type=int,
              default=lambda: int(os.environ.get("BWMTOPSIS_PORT", "8642")),
              help="defaults to $BWMTOPSIS_PORT or 8642")
@click.option("--bind", default="127.0.0.1", show_default=True)
@click.option("--ui", "ui_dir", default=None,
              type=click.Path(file_okay=False, path_type=Path),
              help="directory of static UI assets to serve at /")
@handle_errors
def serve(port: int, bind: str, ui_dir: Path | None):
    """Start the HTTP decision service."""
    import uvicorn

    from .service import create_app

    if ui_dir is None:
        bundled = Path(__file__).parent.parent.parent / "frontend" / "dist"
        ui_dir = bundled if bundled.is_dir() else None
    app = create_app(ui_dir=ui_dir)
    uvicorn.run(app, host=bind, port=port, log_level="warning")


if __name__ == "__main__":
    sys.exit(main())
