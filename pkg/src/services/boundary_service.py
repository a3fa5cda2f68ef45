"""Decision boundaries over a 2-D slice of raw feature space."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pandas as pd
import pydantic
from loguru import logger

from src.models.constants import BOUNDARY_PADDING, DEFAULT_RESOLUTION, GRID_COLUMNS
from src.models.grid_spec import GridSpec
from src.models.service_error import GridSpecError
from src.services.persistence_service import TrainedModel


def _padded(minimum: float, maximum: float) -> tuple[float, float]:
    pad = (maximum - minimum) * BOUNDARY_PADDING
    if pad == 0.0:
        pad = max(abs(minimum) * BOUNDARY_PADDING, 0.5)
    return minimum - pad, maximum + pad


def default_grid_spec(
    model: TrainedModel,
    fx: int,
    fy: int,
    resolution: int = DEFAULT_RESOLUTION,
    x_range: tuple[float, float] | None = None,
    y_range: tuple[float, float] | None = None,
) -> GridSpec:
    """Ranges default to the training min/max padded by 5%, other features are held at their training median."""
    n_raw = model.n_raw_features
    for index in (fx, fy):
        if not 0 <= index < n_raw:
            raise GridSpecError(f"Feature index {index} out of range; the model has {n_raw} raw features")
    summaries = model.binarizer.summaries
    try:
        return GridSpec(
            fx=fx,
            fy=fy,
            x_range=x_range or _padded(summaries[fx].minimum, summaries[fx].maximum),
            y_range=y_range or _padded(summaries[fy].minimum, summaries[fy].maximum),
            resolution=resolution,
            fixed=[s.median for s in summaries],
        )
    except pydantic.ValidationError as ve:
        raise GridSpecError(
            "Invalid grid: " + "; ".join(str(e["msg"]) for e in ve.errors(include_url=False, include_context=False))
        )


def grid_points(spec: GridSpec) -> np.ndarray:
    """Raw input rows for every cell, x varying fastest."""
    xs = np.linspace(spec.x_range[0], spec.x_range[1], spec.resolution)
    ys = np.linspace(spec.y_range[0], spec.y_range[1], spec.resolution)
    gx, gy = np.meshgrid(xs, ys)
    raw = np.tile(np.asarray(spec.fixed, dtype=float), (spec.resolution * spec.resolution, 1))
    raw[:, spec.fx] = gx.ravel()
    raw[:, spec.fy] = gy.ravel()
    return raw


def grid_eval(model: TrainedModel, spec: GridSpec) -> pd.DataFrame:
    """
    Label and vote margin for each cell. The margin is the vote sum for a
    two-class model, otherwise the top vote sum minus the runner-up.
    """
    if len(spec.fixed) != model.n_raw_features:
        raise GridSpecError(f"Grid has {len(spec.fixed)} raw features, the model expects {model.n_raw_features}")
    raw = grid_points(spec)
    x = model.encode(raw)
    frame = pd.DataFrame(
        {
            "x": raw[:, spec.fx],
            "y": raw[:, spec.fy],
            "label": model.classifier.predict(x),
            "margin": model.classifier.margins(x),
        },
        columns=GRID_COLUMNS,
    )
    logger.info("Evaluated a {0}x{0} grid over features {1} and {2}", spec.resolution, spec.fx, spec.fy)
    return frame


def write_grid_csv(frame: pd.DataFrame, path: Path) -> Path:
    frame.to_csv(path, index=False, columns=GRID_COLUMNS)
    return path


def margin_raster(frame: pd.DataFrame, resolution: int) -> np.ndarray:
    """8-bit image of the margins, linearly scaled to 0..255, highest y on the top row."""
    margins = frame["margin"].to_numpy(dtype=float).reshape(resolution, resolution)[::-1]
    lo, hi = margins.min(), margins.max()
    if hi == lo:
        return np.zeros_like(margins, dtype=np.uint8)
    return np.round((margins - lo) / (hi - lo) * 255).astype(np.uint8)


def write_pgm(frame: pd.DataFrame, resolution: int, path: Path) -> Path:
    pixels = margin_raster(frame, resolution)
    header = f"P5\n{resolution} {resolution}\n255\n".encode("ascii")
    Path(path).write_bytes(header + pixels.tobytes())
    logger.info("Margin raster written to {}", path)
    return Path(path)
