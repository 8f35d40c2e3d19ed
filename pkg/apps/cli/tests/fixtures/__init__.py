"""Graph files and config snippets for the command tests."""
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent
TWO_TRIANGLES = FIXTURES / 'two_triangles.json'
HEXAGON = FIXTURES / 'hexagon.json'


def write_ini(directory, **values):
    """An INI config file with a [settings] section; returns its path."""
    path = Path(directory) / 'lab.ini'
    lines = ['[settings]'] + [f'{key} = {value}' for key, value in values.items()]
    path.write_text('\n'.join(lines) + '\n', encoding='utf-8')
    return path
