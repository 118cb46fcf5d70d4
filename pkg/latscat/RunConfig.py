import configparser
import hashlib
import json
import math
import re

from latscat.FockBasis import FockBasis
from latscat.LatScatException import (BasisDimensionError,
                                      ConstraintViolationError,
                                      UnknownKeyError)
from latscat.LatScatObject import LatScatObject

MODULES = ('wannier', 'coupling', 'mf', 'ed', 'scan', 'map3d',
           'phasediagram', 'rate', 'figure')
FIGURES = ('fig2', 'fig3', 'fig4', 'fig5', 'quads')


def _span(text: str) -> tuple:
    parts = text.split(':')
    if len(parts) != 2:
        raise ValueError(f'expected start:stop, got {text!r}')
    return (float(parts[0]), float(parts[1]))


def _axis(text: str) -> tuple:
    parts = text.split(':')
    if len(parts) != 3:
        raise ValueError(f'expected start:stop:count, got {text!r}')
    return (float(parts[0]), float(parts[1]), int(parts[2]))


def _grid(text: str) -> tuple:
    parts = text.lower().split('x')
    if len(parts) != 2:
        raise ValueError(f'expected ROWSxCOLUMNS, got {text!r}')
    return (int(parts[0]), int(parts[1]))


def _boolean(text: str) -> bool:
    value = text.strip().lower()
    if value in ('1', 'yes', 'true', 'on'):
        return True
    if value in ('0', 'no', 'false', 'off'):
        return False
    raise ValueError(f'expected a boolean, got {text!r}')


def _choice(*options):
    def check(value):
        return value in options
    check.rule = f'one of {options}'
    return check


def _rule(predicate, text):
    predicate.rule = text
    return predicate


# section -> key -> (parser, default, constraint or None)
SCHEMA = {
    'run': {
        'module': (str, 'mf', _choice(*MODULES)),
        'seed': (int, 0, _rule(lambda v: 0 <= v < 2 ** 64, '0 <= seed < 2^64')),
        'jobs': (int, 1, _rule(lambda v: v >= 1, 'jobs >= 1')),
        'source': (str, 'ed', _choice('ed', 'mf')),
    },
    'physics': {
        'depth': (float, 5.0, _rule(lambda v: v >= 0, 'depth >= 0')),
        'u': (float, 1.0, _rule(lambda v: v >= 0, 'u >= 0')),
        'mu': (float, 0.5, None),
        'density': (float, None, _rule(lambda v: v > 0, 'density > 0')),
        'v': (float, 0.0, _rule(lambda v: v >= 0, 'v >= 0')),
        'ratio': (float, 0.77, _rule(lambda v: v > 0, 'ratio > 0')),
        'offset': (float, 0.0, None),
        'coordination': (int, 2, _choice(2, 4, 6)),
        'n_max': (int, 12, _rule(lambda v: v >= 6, 'n_max >= 6')),
        'sites': (int, 8, _rule(lambda v: v >= 1, 'sites >= 1')),
        'bosons': (int, None, _rule(lambda v: v >= 0, 'bosons >= 0')),
        'boundary': (str, 'open', _choice('open', 'periodic')),
        'c_magnitude': (float, 1.0, _rule(lambda v: v > 0, 'c_magnitude > 0')),
        'omega0': (float, 1.9e8, _rule(lambda v: v > 0, 'omega0 > 0')),
        'delta_a': (float, 3.8e9, _rule(lambda v: v != 0, 'delta_a != 0')),
        'gamma': (float, 3.8e7, _rule(lambda v: v > 0, 'gamma > 0')),
    },
    'geometry': {
        'kind': (str, 'density', _choice('density', 'min', 'max', 'custom')),
        'theta0': (float, 0.0, _rule(lambda v: abs(v) <= math.pi / 2,
                                     '|theta0| <= pi/2')),
        'k0x': (float, 0.0, None),
        'k1x': (float, 1.0, None),
        'phi0': (float, 0.0, None),
        'phi1': (float, None, None),
        'travelling': (_boolean, False, None),
        'lo_phase': (float, 0.0, None),
        'site_count': (int, None, _rule(lambda v: v >= 2, 'site_count >= 2')),
        'points_per_pi': (int, 512, _rule(lambda v: v >= 8,
                                          'points_per_pi >= 8')),
        'map_sites': (int, 10, _rule(lambda v: v >= 1, 'map_sites >= 1')),
        'n_theta': (int, 91, _rule(lambda v: v >= 3, 'n_theta >= 3')),
        'n_phi': (int, 180, _rule(lambda v: v >= 4, 'n_phi >= 4')),
    },
    'sweep': {
        'mode': (str, 'mu-u', _choice('mu-u', 'disorder')),
        'grid': (_grid, (16, 16), _rule(lambda v: min(v) >= 1,
                                        'grid cells >= 1')),
        'u_range': (_span, (0.0, 10.0), _rule(lambda v: 0 <= v[0] <= v[1],
                                               '0 <= u start <= stop')),
        'mu_range': (_span, (-1.0, 5.0), _rule(lambda v: v[0] <= v[1],
                                                'mu start <= stop')),
        'v_range': (_span, (0.0, 10.0), _rule(lambda v: 0 <= v[0] <= v[1],
                                               '0 <= v start <= stop')),
        'scan_u': (_axis, None, _rule(lambda v: v[2] >= 1, 'count >= 1')),
        'scan_mu': (_axis, None, _rule(lambda v: v[2] >= 1, 'count >= 1')),
        'points_per_pi': (int, 256, _rule(lambda v: v >= 8,
                                          'points_per_pi >= 8')),
    },
    'output': {
        'out_dir': (str, '.', None),
        'source_dir': (str, None, None),
        'figure': (str, 'fig3', _choice(*FIGURES)),
    },
    'tolerances': {
        'gutzwiller_tol': (float, 1e-12, _rule(lambda v: 0 < v <= 1e-10,
                                               '0 < gutzwiller_tol <= 1e-10')),
        'ed_tol': (float, 1e-10, _rule(lambda v: v > 0, 'ed_tol > 0')),
        'wannier_periods': (int, 15, _rule(lambda v: v >= 11,
                                           'wannier_periods >= 11')),
        'plane_waves': (int, 21, _rule(lambda v: v >= 11 and v % 2,
                                             'odd plane_waves >= 11')),
        'quasimomenta': (int, 64, _rule(lambda v: v >= 32,
                                        'quasimomenta >= 32')),
    },
}

# modules that diagonalize chains of the configured size
ED_MODULES = ('ed', 'phasediagram')

_SECTION = re.compile(r'^\s*\[([^\]]+)\]')
_KEY = re.compile(r'^\s*([^=:#;\s\[][^=:]*?)\s*[=:]')


class RunConfig(LatScatObject):
    '''
    Validated run description: one dict per section with every declared key
    present (defaults filled in).
    '''

    def __init__(self, values: dict, lines: dict = None) -> None:
        super().__init__()
        self._lines = dict(lines or {})
        self._data = {section: dict(keys) for section, keys in values.items()}
        self._validate_sizes()

    @classmethod
    def defaults(cls) -> 'RunConfig':
        return cls({section: {key: spec[1] for key, spec in keys.items()}
                    for section, keys in SCHEMA.items()})

    def value(self, section: str, key: str):
        '''Value of ``key`` in ``section``.'''
        return self._data[section][key]

    @property
    def module(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self._data['run']['module']

    @property
    def seed(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._data['run']['seed']

    @property
    def jobs(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._data['run']['jobs']

    @property
    def out_dir(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self._data['output']['out_dir']

    @property
    def bosons(self) -> int:
        '''
        Particle number, N = M unless configured.

        :type: :class:`int`
        '''
        bosons = self._data['physics']['bosons']
        return self._data['physics']['sites'] if bosons is None else bosons

    @property
    def digest(self) -> str:
        '''
        sha256 of the canonical JSON form, worker count and output
        directory left out.

        :type: :class:`str`
        '''
        data = {section: dict(keys) for section, keys in self._data.items()}
        data['run'].pop('jobs')
        data['output'].pop('out_dir')
        text = json.dumps(data, sort_keys=True)
        return hashlib.sha256(text.encode('utf8')).hexdigest()

    def with_overrides(self, overrides: dict) -> 'RunConfig':
        '''Copy with (section, key) -> value replacements, each checked
        against the schema.'''
        values = {section: dict(keys) for section, keys in self._data.items()}
        for (section, key), value in overrides.items():
            if value is None:
                continue
            spec = _lookup(section, key, None)
            if isinstance(value, str) and spec[0] is not str:
                value = _convert(section, key, value, None)
            _check(section, key, value, None)
            values[section][key] = value
        return RunConfig(values, self._lines)

    def _validate_sizes(self) -> None:
        if self.module not in ED_MODULES and not (
                self.module == 'scan'
                and self._data['run']['source'] == 'ed'):
            return
        sites = self._data['physics']['sites']
        bosons = self.bosons
        if self.module == 'phasediagram' \
                and self._data['sweep']['mode'] == 'mu-u':
            bosons = int(1.5 * sites)
        try:
            FockBasis.check_dimension(sites, bosons)
        except BasisDimensionError as error:
            raise ConstraintViolationError(
                f'sites = {sites}: {error}',
                self._lines.get(('physics', 'sites'))) from error


def _lookup(section: str, key: str, line: int) -> tuple:
    if section not in SCHEMA:
        raise UnknownKeyError(f'unknown section [{section}]', line)
    if key not in SCHEMA[section]:
        raise UnknownKeyError(f'unknown key {key!r} in [{section}]', line)
    return SCHEMA[section][key]


def _convert(section: str, key: str, text: str, line: int):
    parser = _lookup(section, key, line)[0]
    try:
        return parser(text.strip())
    except ValueError as error:
        raise ConstraintViolationError(
            f'{section}.{key}: cannot read {text!r} ({error})', line) from error


def _check(section: str, key: str, value, line: int) -> None:
    constraint = _lookup(section, key, line)[2]
    if constraint is not None and value is not None and not constraint(value):
        raise ConstraintViolationError(
            f'{section}.{key} = {value!r} violates {constraint.rule}', line)


def _locate(text: str) -> dict:
    lines = {}
    section = None
    for number, line in enumerate(text.splitlines(), start=1):
        match = _SECTION.match(line)
        if match:
            section = match.group(1).strip()
            lines.setdefault((section, None), number)
            continue
        match = _KEY.match(line)
        if match and section is not None:
            lines.setdefault((section, match.group(1).strip().lower()), number)
    return lines


def parse_config(text: str) -> RunConfig:
    '''Read an INI-style run description.

    Sections and keys follow :data:`SCHEMA`; absent keys take their
    defaults. The first problem found is raised with its line number.

    :param str text: configuration text.
    :rtype: :class:`latscat.RunConfig.RunConfig`
    :raises: UnknownKeyError: for undeclared sections or keys.
    :raises: ConstraintViolationError: for unreadable values or violated
        constraints, including chains beyond exact-diagonalization reach.
    '''
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as error:
        raise ConstraintViolationError(
            f'malformed configuration: {error}',
            getattr(error, 'lineno', None)) from error

    lines = _locate(text)
    values = {section: {key: spec[1] for key, spec in keys.items()}
              for section, keys in SCHEMA.items()}
    for section in parser.sections():
        if section not in SCHEMA:
            raise UnknownKeyError(f'unknown section [{section}]',
                                  lines.get((section, None)))
        for key, raw in parser.items(section):
            line = lines.get((section, key), lines.get((section, None)))
            value = _convert(section, key, raw, line)
            _check(section, key, value, line)
            values[section][key] = value
    return RunConfig(values, lines)
