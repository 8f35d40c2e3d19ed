"""
Dataset files.

A dataset directory holds one JSON-lines file per split (train.jsonl,
val.jsonl, test.jsonl) and a manifest.json. Each line is a graph JSON
document extended with

    {"target": {"arity": a, "labels": nested 0/1 lists},
     "mask": nested 0/1 lists or null,
     "provenance": {...}}

Keys are written sorted, so equal datasets produce identical bytes.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np

from apps.datasets.exceptions import DatasetFileError
from apps.datasets.serializers import SampleSerializer
from apps.datasets.services.dataset import SPLITS, DatasetSpec, Splits
from apps.datasets.services.sample import Sample
from apps.hypergraph.exceptions import HypergraphError
from apps.hypergraph.serializers import graph_from_json, graph_to_json
from apps.hypergraph.services.representation import TaskTarget
from apps.oracles.services import ORACLE_VERSION

logger = logging.getLogger(__name__)

MANIFEST = 'manifest.json'
DATASET_FORMAT_VERSION = 1


def sample_to_json(sample: Sample) -> Dict[str, Any]:
    document = graph_to_json(sample.input)
    target = sample.target
    document['target'] = {'arity': target.arity, 'labels': target.labels.tolist()}
    document['mask'] = target.mask.tolist() if target.mask is not None else None
    document['provenance'] = sample.provenance
    return document


def sample_from_json(document: Dict[str, Any]) -> Sample:
    """
    Raises:
        DatasetFileError: If the line is not a valid sample.
    """
    serializer = SampleSerializer(data=document)
    if not serializer.is_valid():
        raise DatasetFileError(f"invalid sample: {dict(serializer.errors)}")
    data = serializer.validated_data
    try:
        g = graph_from_json(document)
        mask = data.get('mask')
        target = TaskTarget(
            arity=data['target']['arity'],
            labels=np.array(data['target']['labels'], dtype=np.int64),
            mask=np.array(mask, dtype=np.int64) if mask is not None else None,
        )
    except HypergraphError as e:
        raise DatasetFileError(f"invalid sample: {e}") from e
    if target.labels.shape != (g.n,) * target.arity:
        raise DatasetFileError(
            f"labels shaped {target.labels.shape} do not fit a {g.n}-node graph"
        )
    return Sample(input=g, target=target, provenance=data['provenance'])


def _dump(document: Dict[str, Any]) -> str:
    return json.dumps(document, sort_keys=True, separators=(',', ':'))


def write_dataset(path: Union[str, Path], splits: Splits, spec: DatasetSpec) -> Path:
    """Write every split as JSON lines plus the manifest; returns the directory."""
    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)
    for split in SPLITS:
        samples = splits.get(split, [])
        lines = ''.join(_dump(sample_to_json(sample)) + '\n' for sample in samples)
        (directory / f'{split}.jsonl').write_text(lines, encoding='utf-8')
    manifest = {
        'format_version': DATASET_FORMAT_VERSION,
        'spec': spec.to_dict(),
        'seed': spec.seed,
        'oracle_version': ORACLE_VERSION,
        'counts': {split: len(splits.get(split, [])) for split in SPLITS},
    }
    (directory / MANIFEST).write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + '\n', encoding='utf-8'
    )
    logger.info(f"Wrote {spec.task} dataset to {directory}")
    return directory


def read_manifest(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Raises:
        DatasetFileError: If the manifest is missing or not JSON.
    """
    manifest_path = Path(path) / MANIFEST
    try:
        return json.loads(manifest_path.read_text(encoding='utf-8'))
    except FileNotFoundError as e:
        raise DatasetFileError(f"no manifest at {manifest_path}") from e
    except json.JSONDecodeError as e:
        raise DatasetFileError(f"manifest {manifest_path} is not JSON: {e}") from e


def read_spec(path: Union[str, Path]) -> DatasetSpec:
    return DatasetSpec.from_dict(read_manifest(path)['spec'])


def read_split(path: Union[str, Path], split: str = 'test') -> List[Sample]:
    """
    Load one split.

    Raises:
        DatasetFileError: If the split file is missing or a line is invalid;
            the message names the line number.
    """
    split_path = Path(path) / f'{split}.jsonl'
    if not split_path.exists():
        raise DatasetFileError(f"no split file at {split_path}")
    samples = []
    with split_path.open(encoding='utf-8') as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                samples.append(sample_from_json(json.loads(line)))
            except json.JSONDecodeError as e:
                raise DatasetFileError(f"{split_path}:{number}: not JSON: {e}") from e
            except DatasetFileError as e:
                raise DatasetFileError(f"{split_path}:{number}: {e}") from e
    return samples
