"""
Command-line surface: ``wtm train | eval | predict | rules | boundary | bench | perceptron | truth-table``.

Results go to stdout, logs to stderr. Exit codes: 0 ok, 2 input error, 3 model error.
"""

from __future__ import annotations

import functools
import json
from pathlib import Path
from typing import Any, Callable, List, Optional, Tuple, TypeVar

import pandas as pd
import pydantic
import typer
from loguru import logger

from src.models.constants import (
    BENCH_EPOCH_CAP,
    BENCH_TARGET_ACCURACY,
    DEFAULT_RESOLUTION,
    EXIT_INPUT_ERROR,
    EXIT_MODEL_ERROR,
    PERCEPTRON_MAX_EPOCHS,
)
from src.models.service_error import ConfigError, InputError, ModelError
from src.models.tm_config import TMConfig
from src.services import (
    bench_service,
    binarizer_service,
    boundary_service,
    experiment_service,
    perceptron_service,
    rules_service,
)
from src.services.persistence_service import load_model, save_model
from src.settings.tsetlin_settings import TsetlinSettings
from src.utility.logging_config import configure_logging
from src.utility.parsing_pydantic_models import load_yaml_file

app = typer.Typer(name="wtm", help="Interpretable weighted Tsetlin Machine.", no_args_is_help=True)

F = TypeVar("F", bound=Callable[..., Any])

DataOpt = typer.Option(..., "--data", help="CSV file with a header row")
LabelOpt = typer.Option("label", "--label-column", help="Name of the label column")
ModelOpt = typer.Option(Path("model.json"), "--model", help="Model file")
ConfigOpt = typer.Option(None, "--config", help="YAML run configuration; explicit flags win")
SeedOpt = typer.Option(None, "--seed")
ClausesOpt = typer.Option(None, "--clauses", help="Clauses per class machine (even)")
TOpt = typer.Option(None, "--T", help="Voting margin T")
SOpt = typer.Option(None, "--s", help="Specificity s")
StatesOpt = typer.Option(None, "--states", help="Total automaton states 2N (even)")
EpochsOpt = typer.Option(None, "--epochs")
BoostOpt = typer.Option(None, "--boost/--no-boost", help="Boost true positive feedback")
LearnableTOpt = typer.Option(None, "--learnable-T/--fixed-T", help="Adapt T during training")
BitsOpt = typer.Option(None, "--bits", help="Thermometer thresholds per raw feature")
TestFractionOpt = typer.Option(0.2, "--test-fraction", help="Stratified held-out share")


@app.callback()
def main() -> None:
    configure_logging(TsetlinSettings().log)


def handle_errors(command: F) -> F:
    """Map service errors onto the documented exit codes."""

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return command(*args, **kwargs)
        except InputError as ie:
            logger.error(ie.error_msg)
            typer.echo(f"error: {ie.error_msg}", err=True)
            raise typer.Exit(code=EXIT_INPUT_ERROR)
        except ModelError as me:
            logger.error(me.error_msg)
            typer.echo(f"error: {me.error_msg}", err=True)
            raise typer.Exit(code=EXIT_MODEL_ERROR)

    return wrapper  # type: ignore[return-value]


def build_config(config: Optional[Path] = None, **flags: Any) -> TMConfig:
    """Explicit flags override the YAML config, which overrides the defaults."""
    base = load_yaml_file(config, TMConfig).model_dump() if config is not None else {}
    states = flags.pop("states", None)
    if states is not None:
        if states < 2 or states % 2 != 0:
            raise ConfigError(f"--states is the total 2N and must be an even number >= 2, got {states}")
        flags["big_n"] = states // 2
    base.update({k: v for k, v in flags.items() if v is not None})
    try:
        return TMConfig(**base)
    except pydantic.ValidationError as ve:
        raise ConfigError(
            "Invalid configuration: "
            + "; ".join(
                f"{'.'.join(map(str, e['loc']))}: {e['msg']}"
                for e in ve.errors(include_url=False, include_context=False)
            )
        )


def _given(pair: Optional[Tuple[float, float]]) -> Optional[Tuple[float, float]]:
    if pair is None or any(v is None for v in pair):
        return None
    return pair


@app.command()
@handle_errors
def train(
    data: Path = DataOpt,
    label_column: str = LabelOpt,
    model: Path = ModelOpt,
    history: Optional[Path] = typer.Option(None, "--history", help="Per-epoch CSV, default <model>.history.csv"),
    test_fraction: float = TestFractionOpt,
    config: Optional[Path] = ConfigOpt,
    seed: Optional[int] = SeedOpt,
    clauses: Optional[int] = ClausesOpt,
    t_margin: Optional[int] = TOpt,
    s: Optional[float] = SOpt,
    states: Optional[int] = StatesOpt,
    epochs: Optional[int] = EpochsOpt,
    boost: Optional[bool] = BoostOpt,
    learnable_t: Optional[bool] = LearnableTOpt,
    bits: Optional[int] = BitsOpt,
) -> None:
    """Train a model (one-vs-rest when there are more than two labels) and save it with its history."""
    cfg = build_config(
        config,
        seed=seed,
        n_clauses=clauses,
        t_margin=t_margin,
        s=s,
        states=states,
        epochs=epochs,
        boost_true_positive=boost,
        learnable_t=learnable_t,
        bits_per_feature=bits,
    )
    table = binarizer_service.load_csv(data, label_column)
    trained, report = experiment_service.train_model(table, cfg, test_fraction)
    save_model(trained, model)
    history_path = history if history is not None else model.with_suffix(".history.csv")
    report.history.to_csv(history_path)
    typer.echo(f"train accuracy: {report.train_accuracy:.4f}")
    if report.test_accuracy is not None:
        typer.echo(f"test accuracy: {report.test_accuracy:.4f}")


@app.command("eval")
@handle_errors
def evaluate(
    data: Path = DataOpt,
    label_column: str = LabelOpt,
    model: Path = ModelOpt,
) -> None:
    """Accuracy and confusion matrix (rows true class, columns predicted) on a labeled CSV."""
    trained = load_model(model)
    table = binarizer_service.load_csv(data, label_column, trained.binarizer.feature_names)
    report = experiment_service.evaluate(trained, table)
    confusion = pd.DataFrame(report.confusion, index=report.class_names, columns=report.class_names)
    typer.echo(f"accuracy: {report.accuracy:.4f}")
    typer.echo(confusion.to_string())


@app.command()
@handle_errors
def predict(
    data: Path = DataOpt,
    model: Path = ModelOpt,
    output: Optional[Path] = typer.Option(None, "--output", help="Write labels here instead of stdout"),
) -> None:
    """One predicted label per input row. A label column, if present, is ignored."""
    trained = load_model(model)
    table = binarizer_service.load_csv(data, None, trained.binarizer.feature_names)
    labels = experiment_service.predict(trained, table)
    text = "\n".join(labels) + "\n"
    if output is not None:
        output.write_text(text, encoding="utf-8")
        logger.info("Wrote {} labels to {}", len(labels), output)
    else:
        typer.echo(text, nl=False)


@app.command()
@handle_errors
def rules(
    model: Path = ModelOpt,
    top_k: Optional[int] = typer.Option(None, "--top-k", help="Positive clauses per class, default TM_DEFAULT_TOP_K"),
    output: Optional[Path] = typer.Option(None, "--output", help="Directory for rules.txt and rules.json"),
) -> None:
    """Per-class DNF from the highest weighted positive clauses."""
    trained = load_model(model)
    extracted = rules_service.class_rules(trained, top_k if top_k is not None else TsetlinSettings().default_top_k)
    if output is not None:
        rules_service.write_rules(extracted, output)
    else:
        typer.echo(rules_service.render_rules(extracted), nl=False)


@app.command()
@handle_errors
def boundary(
    model: Path = ModelOpt,
    fx: int = typer.Option(0, "--fx", help="Raw feature on the x axis"),
    fy: int = typer.Option(1, "--fy", help="Raw feature on the y axis"),
    resolution: int = typer.Option(DEFAULT_RESOLUTION, "--resolution", help="Cells per axis"),
    x_range: Optional[Tuple[float, float]] = typer.Option(None, "--x-range", help="MIN MAX"),
    y_range: Optional[Tuple[float, float]] = typer.Option(None, "--y-range", help="MIN MAX"),
    output: Path = typer.Option(Path("boundary.csv"), "--output", help="Grid CSV (x,y,label,margin)"),
    pgm: Optional[Path] = typer.Option(None, "--pgm", help="Also write the margins as an 8-bit PGM raster"),
) -> None:
    """Labels and vote margins over a grid spanned by two raw features."""
    trained = load_model(model)
    spec = boundary_service.default_grid_spec(trained, fx, fy, resolution, _given(x_range), _given(y_range))
    frame = boundary_service.grid_eval(trained, spec)
    boundary_service.write_grid_csv(frame, output)
    if pgm is not None:
        boundary_service.write_pgm(frame, spec.resolution, pgm)
    typer.echo(f"{len(frame)} cells written to {output}")


@app.command()
@handle_errors
def bench(
    data: Path = DataOpt,
    label_column: str = LabelOpt,
    s_grid: List[float] = typer.Option([2.0, 10.0], "--s-grid", help="Specificity values to compare"),
    seeds: Optional[List[int]] = typer.Option(None, "--seeds", help="Seeds per value, default the run seed"),
    cap: int = typer.Option(BENCH_EPOCH_CAP, "--cap", help="Epoch cap"),
    target: float = typer.Option(BENCH_TARGET_ACCURACY, "--target", help="Target test accuracy"),
    output: Optional[Path] = typer.Option(None, "--output", help="Also write the table as CSV"),
    test_fraction: float = TestFractionOpt,
    config: Optional[Path] = ConfigOpt,
    seed: Optional[int] = SeedOpt,
    clauses: Optional[int] = ClausesOpt,
    t_margin: Optional[int] = TOpt,
    states: Optional[int] = StatesOpt,
    boost: Optional[bool] = BoostOpt,
    learnable_t: Optional[bool] = LearnableTOpt,
    bits: Optional[int] = BitsOpt,
) -> None:
    """Epochs to the target accuracy, seconds per epoch and model bytes for each s."""
    if cap < 1:
        raise ConfigError(f"--cap must be >= 1, got {cap}")
    cfg = build_config(
        config,
        seed=seed,
        n_clauses=clauses,
        t_margin=t_margin,
        states=states,
        boost_true_positive=boost,
        learnable_t=learnable_t,
        bits_per_feature=bits,
    )
    table = binarizer_service.load_csv(data, label_column)
    report = bench_service.bench(table, cfg, list(s_grid), list(seeds or [cfg.seed]), test_fraction, target, cap)
    frame = report.to_frame()
    if output is not None:
        frame.to_csv(output, index=False)
    typer.echo(frame.to_string(index=False) if len(frame) else "no runs")
    for s in dict.fromkeys(s_grid):
        median = report.median_epochs(s)
        if median is not None:
            typer.echo(f"s={s:g}: median epochs to {target:.0%}: {median:g}")


@app.command()
@handle_errors
def perceptron(
    data: Path = DataOpt,
    label_column: str = LabelOpt,
    max_epochs: int = typer.Option(PERCEPTRON_MAX_EPOCHS, "--max-epochs"),
    binary: bool = typer.Option(False, "--binary", help="Require 0/1 features and report the D/gamma^2 bound"),
) -> None:
    """Reference perceptron: update count k against the mistake bound, as JSON."""
    table = binarizer_service.load_csv(data, label_column)
    report = perceptron_service.perceptron_report(table, max_epochs, binary)
    typer.echo(json.dumps(report.model_dump(), indent=2))


@app.command("truth-table")
@handle_errors
def truth_table(
    name: str = typer.Argument(..., help="xor, and or or"),
    output: Path = typer.Argument(..., help="CSV file to write"),
    repeats: int = typer.Option(1, "--repeats", help="Copies of the four rows"),
) -> None:
    """Write a two-input truth table as a labeled CSV."""
    if repeats < 1:
        raise ConfigError(f"--repeats must be >= 1, got {repeats}")
    binarizer_service.write_truth_table(name, output, repeats)
    typer.echo(f"{name} truth table written to {output}")


if __name__ == "__main__":
    app()
