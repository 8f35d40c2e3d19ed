"""Tests for run manifests."""
import json
import shutil
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from apps.cli.services.manifest import write_manifest
from apps.cli.services.options import CommandConfig
from apps.oracles.services import ORACLE_VERSION


class TestWriteManifest(SimpleTestCase):
    """Test write_manifest."""

    def setUp(self):
        self.directory = Path(tempfile.mkdtemp())
        self.addCleanup(shutil.rmtree, self.directory)
        self.config = CommandConfig(command='train', options={'task': 'triangle'}, seed=3)

    def test_echoes_config(self):
        path = write_manifest(self.directory, self.config, extra={'config_hash': 'abc'})

        manifest = json.loads(path.read_text())
        self.assertEqual(manifest['command']['options'], {'task': 'triangle'})
        self.assertEqual(manifest['command']['seed'], 3)
        self.assertEqual(manifest['config_hash'], 'abc')
        self.assertEqual(manifest['oracle_version'], ORACLE_VERSION)

    def test_keeps_existing_fields(self):
        (self.directory / 'manifest.json').write_text(json.dumps({'spec': {'n': 10}}))

        manifest = json.loads(write_manifest(self.directory, self.config).read_text())

        self.assertEqual(manifest['spec'], {'n': 10})
        self.assertIn('command', manifest)

    def test_rewrite_is_byte_identical(self):
        first = write_manifest(self.directory, self.config).read_bytes()
        second = write_manifest(self.directory, self.config).read_bytes()

        self.assertEqual(first, second)
