import hashlib
import json
import logging
import math
import os
import platform
import tempfile
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import numpy as np

from latscat.LatScatException import MissingArtifactError

logger = logging.getLogger(__name__)


class ArtifactWriter:
    '''
    Writes run artifacts into one output directory.

    Every file goes through a temporary file in the same directory and
    ``os.replace``, so readers never see partial content. Floats are written
    with 12 significant digits independent of the locale. CSV files start
    with a ``# latscat kind=...`` line followed by ``# key: value`` metadata
    lines and the column header.
    '''

    MANIFEST = 'manifest.json'
    PACKAGES = ('latscat', 'numpy', 'scipy', 'tenacity')

    def __init__(self, out_dir: str) -> None:
        self._out_dir = Path(out_dir)
        self._written = []

    @property
    def out_dir(self) -> Path:
        '''
        :type: :class:`pathlib.Path`
        '''
        return self._out_dir

    @property
    def written(self) -> list:
        '''
        Paths written so far, in order.

        :type: :class:`list`
        '''
        return list(self._written)

    @staticmethod
    def format_value(value) -> str:
        if value is None:
            return ''
        if isinstance(value, (bool, np.bool_)):
            return '1' if value else '0'
        if isinstance(value, (int, np.integer)):
            return str(int(value))
        if isinstance(value, (float, np.floating)):
            value = float(value)
            if math.isnan(value):
                return 'nan'
            if math.isinf(value):
                return 'inf' if value > 0 else '-inf'
            return format(value, '.12g')
        return str(value)

    def write_csv(
                self,
                name: str,
                kind: str,
                columns: tuple,
                rows,
                metadata: dict = None
            ) -> Path:
        '''Write a CSV artifact.

        :param str name: file name inside the output directory.
        :param str kind: artifact kind recorded in the first line.
        :param tuple columns: column names.
        :param rows: iterable of row tuples.
        :param dict metadata: (optional) extra header entries.
        :rtype: :class:`pathlib.Path`
        '''
        lines = [f'# latscat kind={kind}']
        for key, value in sorted((metadata or {}).items()):
            lines.append(f'# {key}: {self.format_value(value)}')
        lines.append(','.join(columns))
        for row in rows:
            lines.append(','.join(self.format_value(v) for v in row))
        return self._write(name, '\n'.join(lines) + '\n')

    def write_json(self, name: str, kind: str, data: dict) -> Path:
        payload = {'kind': kind}
        payload.update(data)
        text = json.dumps(payload, indent=2, sort_keys=True,
                          default=self._json_default)
        return self._write(name, text + '\n')

    def write_manifest(
                self,
                config,
                wall_time: float,
                caveat: str = None
            ) -> Path:
        '''List every file written by this writer with its sha256, the
        config digest, package versions and the wall time.'''
        files = []
        for path in self._written:
            content = path.read_bytes()
            files.append({'name': path.name,
                          'sha256': hashlib.sha256(content).hexdigest(),
                          'bytes': len(content)})
        manifest = {
            'module': config.module,
            'seed': config.seed,
            'config_sha256': config.digest,
            'config': config.raw_data,
            'versions': self.versions(),
            'wall_time_s': round(wall_time, 6),
            'files': files,
        }
        if caveat:
            manifest['caveat'] = caveat
        text = json.dumps(manifest, indent=2, sort_keys=True,
                          default=self._json_default)
        return self._write(self.MANIFEST, text + '\n', record=False)

    def discard(self) -> None:
        '''Remove everything written so far.'''
        for path in self._written:
            try:
                path.unlink()
            except FileNotFoundError:
                pass
        if self._written:
            logger.info('removed %d partial artifact(s)', len(self._written))
        self._written = []

    @classmethod
    def versions(cls) -> dict:
        found = {'python': platform.python_version()}
        for package in cls.PACKAGES:
            try:
                found[package] = version(package)
            except PackageNotFoundError:
                found[package] = 'unknown'
        return found

    @staticmethod
    def read_csv(path) -> tuple:
        '''Read an artifact written by :meth:`write_csv`.

        :returns: (metadata dict with 'kind', column names, list of rows of
            strings).
        :raises: MissingArtifactError: if the file is absent or not a
            latscat artifact.
        '''
        path = Path(path)
        if not path.is_file():
            raise MissingArtifactError(f'artifact {path} not found')
        lines = path.read_text(encoding='utf8').splitlines()
        if not lines or not lines[0].startswith('# latscat kind='):
            raise MissingArtifactError(f'{path} is not a latscat artifact')
        metadata = {'kind': lines[0].split('=', 1)[1].strip()}
        index = 1
        while index < len(lines) and lines[index].startswith('# '):
            key, _, value = lines[index][2:].partition(': ')
            metadata[key] = value
            index += 1
        columns = tuple(lines[index].split(',')) if index < len(lines) else ()
        rows = [line.split(',') for line in lines[index + 1:] if line]
        return metadata, columns, rows

    def _write(self, name: str, text: str, record: bool = True) -> Path:
        self._out_dir.mkdir(parents=True, exist_ok=True)
        target = self._out_dir / name
        handle, temporary = tempfile.mkstemp(dir=self._out_dir,
                                             prefix=f'.{name}.', suffix='.tmp')
        try:
            with os.fdopen(handle, 'w', encoding='utf8', newline='\n') as fh:
                fh.write(text)
            os.replace(temporary, target)
        except BaseException:
            if os.path.exists(temporary):
                os.unlink(temporary)
            raise
        if record and target not in self._written:
            self._written.append(target)
        logger.info('wrote %s', target)
        return target

    @staticmethod
    def _json_default(value):
        if isinstance(value, np.ndarray):
            return value.tolist()
        if isinstance(value, np.generic):
            return value.item()
        if isinstance(value, complex):
            return [value.real, value.imag]
        if isinstance(value, (tuple, set)):
            return list(value)
        raise TypeError(f'cannot serialise {type(value).__name__}')
