"""
Reading command inputs and writing text outputs.
"""
import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

from apps.cli.exceptions import InputFileError
from apps.hypergraph.services.representation import HypergraphRepr
from apps.hypergraph.serializers import graph_from_json

logger = logging.getLogger(__name__)


def read_graph(path: Union[str, Path]) -> HypergraphRepr:
    """
    Raises:
        InputFileError: If the file is missing or not JSON.
        InvalidGraphError: If the document is not a valid graph.
    """
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding='utf-8'))
    except FileNotFoundError as e:
        raise InputFileError(f"no graph file at {path}") from e
    except json.JSONDecodeError as e:
        raise InputFileError(f"graph file {path} is not JSON: {e}") from e
    return graph_from_json(document)


def write_json(path: Union[str, Path], document: Dict[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document, sort_keys=True, indent=2) + '\n', encoding='utf-8')
    return path


def write_text(path: Union[str, Path], text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text.rstrip('\n') + '\n', encoding='utf-8')
    return path


def write_table_csv(path: Union[str, Path], header: Sequence[str], rows: List[Sequence[str]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)
    logger.info(f"Wrote {len(rows)} table rows to {path}")
    return path
