"""
Run manifests.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

from apps.cli.services.options import CommandConfig
from apps.oracles.services import ORACLE_VERSION

logger = logging.getLogger(__name__)

MANIFEST = 'manifest.json'


def write_manifest(
    directory: Union[str, Path],
    command: CommandConfig,
    extra: Optional[Dict[str, Any]] = None,
) -> Path:
    """
    Write manifest.json echoing the resolved command config.

    An existing manifest in the directory (a dataset's) keeps its fields and
    gains the command entry. No timestamps are written, so identical
    invocations produce identical files.
    """
    path = Path(directory) / MANIFEST
    path.parent.mkdir(parents=True, exist_ok=True)
    manifest: Dict[str, Any] = {}
    if path.exists():
        try:
            existing = json.loads(path.read_text(encoding='utf-8'))
        except json.JSONDecodeError:
            existing = None
        if isinstance(existing, dict):
            manifest.update(existing)
    manifest.setdefault('oracle_version', ORACLE_VERSION)
    manifest['command'] = command.to_dict()
    manifest.update(extra or {})
    path.write_text(json.dumps(manifest, sort_keys=True, indent=2) + '\n', encoding='utf-8')
    logger.debug(f"Wrote manifest for {command.command} to {path}")
    return path
