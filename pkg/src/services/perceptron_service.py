from __future__ import annotations

from loguru import logger

from src.models.constants import PERCEPTRON_MAX_EPOCHS
from src.models.dataset import RawTable
from src.models.reports import BoundReport
from src.models.service_error import BoundPreconditionError, MissingColumnError
from src.tsetlin.perceptron import is_binary_input, learned_separator_report


def perceptron_report(table: RawTable, max_epochs: int = PERCEPTRON_MAX_EPOCHS, binary: bool = False) -> BoundReport:
    """Fit the reference perceptron on a two-class table and evaluate the mistake bound on the learned separator."""
    if table.labels is None or table.class_names is None:
        raise MissingColumnError("Perceptron data needs a label column")
    if len(table.class_names) != 2:
        raise BoundPreconditionError(f"The perceptron needs exactly two classes, got {table.class_names}")
    if max_epochs < 1:
        raise BoundPreconditionError(f"--max-epochs must be >= 1, got {max_epochs}")
    if binary and not is_binary_input(table.values):
        raise BoundPreconditionError("--binary was given but the features are not all 0/1")
    report = learned_separator_report(table.values, table.labels, max_epochs=max_epochs, binary_input=binary)
    if report.converged:
        logger.info("Perceptron converged after {} updates; bound {:.2f}", report.k, report.bound)
    else:
        logger.warning("Perceptron did not converge within {} epochs; the data may not be separable", max_epochs)
    return report
