"""
Saving and loading models as JSON.

Weights are stored bit-exactly, so a loaded model reproduces the saved
model's forward passes bitwise.
"""
import base64
import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from apps.relnn.exceptions import ConfigMismatchError, ModelFileError
from apps.relnn.serializers import ModelFileSerializer
from apps.relnn.services.config import ModelConfig
from apps.relnn.services.params import ModelParams, params_from_arrays

logger = logging.getLogger(__name__)

MODEL_FILE_VERSION = 1
LITTLE_ENDIAN_FLOAT64 = '<f8'


def encode_array(array: np.ndarray) -> Dict[str, Any]:
    payload = np.ascontiguousarray(array, dtype=LITTLE_ENDIAN_FLOAT64).tobytes()
    return {
        'shape': list(array.shape),
        'data': base64.b64encode(payload).decode('ascii'),
    }


def decode_array(entry: Dict[str, Any], name: str) -> np.ndarray:
    try:
        raw = base64.b64decode(entry['data'], validate=True)
        values = np.frombuffer(raw, dtype=LITTLE_ENDIAN_FLOAT64)
        return values.reshape(tuple(entry['shape'])).astype(np.float64)
    except (ValueError, TypeError) as e:
        raise ModelFileError(f"weight '{name}' is corrupt: {e}") from e


def model_to_dict(params: ModelParams) -> Dict[str, Any]:
    return {
        'version': MODEL_FILE_VERSION,
        'config': params.config.to_dict(),
        'config_hash': params.config.config_hash(),
        'weights': {
            name: encode_array(array)
            for name, array in sorted(params.named_arrays().items())
        },
    }


def model_from_dict(document: Dict[str, Any]) -> ModelParams:
    """
    Rebuild ModelParams from a model document.

    Raises:
        ModelFileError: If the document is malformed, of an unknown version,
            or its weights do not fit its config.
    """
    serializer = ModelFileSerializer(data=document)
    if not serializer.is_valid():
        raise ModelFileError(f"invalid model file: {dict(serializer.errors)}")
    data = serializer.validated_data
    if data['version'] != MODEL_FILE_VERSION:
        raise ModelFileError(f"unsupported model file version {data['version']}")

    try:
        cfg = ModelConfig.from_dict(data['config'])
    except (ConfigMismatchError, TypeError, ValueError) as e:
        raise ModelFileError(f"invalid model config: {e}") from e
    if 'config_hash' in data and data['config_hash'] != cfg.config_hash():
        raise ModelFileError(
            f"config hash {data['config_hash']} does not match config ({cfg.config_hash()})"
        )

    arrays = {name: decode_array(entry, name) for name, entry in data['weights'].items()}
    try:
        return params_from_arrays(cfg, arrays)
    except ConfigMismatchError as e:
        raise ModelFileError(str(e)) from e


def save_model(params: ModelParams, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(model_to_dict(params), sort_keys=True, indent=1))
    logger.info(f"Saved model {params.config.config_hash()} to {path}")
    return path


def load_model(path: Union[str, Path]) -> ModelParams:
    """
    Raises:
        ModelFileError: If the file is missing, not JSON, or invalid.
    """
    path = Path(path)
    try:
        document = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ModelFileError(f"cannot read model file {path}: {e}") from e
    return model_from_dict(document)
