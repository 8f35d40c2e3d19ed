"""
Metrics CSV export.
"""
import csv
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Union

from apps.experiments.exceptions import ExperimentError
from apps.experiments.services.config import METRIC_COLUMNS

logger = logging.getLogger(__name__)


def row_key(row: Dict[str, Any]):
    return (str(row['config_hash']), int(row['seed']), int(row['eval_n']))


def sorted_rows(rows: Iterable[Dict[str, Any]]) -> List[Dict[str, Any]]:
    """Rows ordered by (config hash, seed, eval size), independent of arrival order."""
    rows = list(rows)
    for row in rows:
        missing = [column for column in METRIC_COLUMNS if column not in row]
        if missing:
            raise ExperimentError(f"metrics row lacks columns {missing}")
    return sorted(rows, key=row_key)


def format_accuracy(value: float) -> str:
    return f"{value:.1f}"


def export_metrics_csv(rows: Iterable[Dict[str, Any]], path: Union[str, Path]) -> Path:
    """
    Write one CSV row per evaluation, columns in METRIC_COLUMNS order.

    Accuracy is printed with one decimal, wall-clock with three.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    ordered = sorted_rows(rows)
    with path.open('w', newline='', encoding='utf-8') as handle:
        writer = csv.DictWriter(handle, fieldnames=METRIC_COLUMNS, extrasaction='ignore')
        writer.writeheader()
        for row in ordered:
            writer.writerow({
                **row,
                'accuracy': format_accuracy(row['accuracy']),
                'wallclock_s': f"{row['wallclock_s']:.3f}",
            })
    logger.info(f"Wrote {len(ordered)} metrics rows to {path}")
    return path
