import argparse
import logging
import sys
from pathlib import Path

from latscat.LatScatException import (ConfigurationError,
                                      MissingArtifactError, NumericalError)
from latscat.RunConfig import FIGURES, parse_config
from latscat.Runner import Runner

logger = logging.getLogger('latscat')

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

# flag -> (section, key, help)
OPTIONS = {
    'depth': ('physics', 'depth', 'lattice depth V0 in E_R'),
    'u': ('physics', 'u', 'U/zJ (mf, map3d, rate) or U/2J (ed, scan)'),
    'mu': ('physics', 'mu', 'mu/zJ (mean field) or mu/2J (chains)'),
    'v': ('physics', 'v', 'quasiperiodic disorder V/2J'),
    'ratio': ('physics', 'ratio', 'superlattice period ratio r'),
    'density': ('physics', 'density', 'follow fixed density <n> (mf)'),
    'coordination': ('physics', 'coordination', 'coordination number z'),
    'n-max': ('physics', 'n_max', 'Fock cutoff per site'),
    'sites': ('physics', 'sites', 'chain length M'),
    'bosons': ('physics', 'bosons', 'particle number N (default M)'),
    'boundary': ('physics', 'boundary', 'open or periodic'),
    'c-magnitude': ('physics', 'c_magnitude', 'coupling prefactor |C|'),
    'omega0': ('physics', 'omega0', 'Rabi frequency Omega0'),
    'delta-a': ('physics', 'delta_a', 'atom-light detuning Delta_a'),
    'gamma': ('physics', 'gamma', 'atomic relaxation rate Gamma'),
    'geometry': ('geometry', 'kind', 'density, min, max or custom'),
    'theta0': ('geometry', 'theta0', 'probe angle in rad'),
    'k0x': ('geometry', 'k0x', 'probe k_x in units of pi/d'),
    'k1x': ('geometry', 'k1x', 'detected k_x in units of pi/d'),
    'phi0': ('geometry', 'phi0', 'probe phase'),
    'phi1': ('geometry', 'phi1', 'detected phase'),
    'lo-phase': ('geometry', 'lo_phase', 'local oscillator phase'),
    'site-count': ('geometry', 'site_count', 'illuminated sites K'),
    'points-per-pi': ('geometry', 'points_per_pi', 'scan resolution'),
    'map-sites': ('geometry', 'map_sites', 'sites per axis of 3D maps'),
    'n-theta': ('geometry', 'n_theta', 'polar samples of 3D maps'),
    'n-phi': ('geometry', 'n_phi', 'azimuthal samples of 3D maps'),
    'source': ('run', 'source', 'ed or mf'),
    'mode': ('sweep', 'mode', 'mu-u or disorder'),
    'grid': ('sweep', 'grid', 'ROWSxCOLUMNS, rows along U'),
    'u-range': ('sweep', 'u_range', 'U/2J start:stop'),
    'mu-range': ('sweep', 'mu_range', 'mu/2J start:stop'),
    'v-range': ('sweep', 'v_range', 'V/2J start:stop'),
    'scan-u': ('sweep', 'scan_u', 'U/zJ start:stop:count'),
    'scan-mu': ('sweep', 'scan_mu', 'mu/zJ start:stop:count'),
    'cell-points': ('sweep', 'points_per_pi', 'scan resolution per cell'),
    'source-dir': ('output', 'source_dir', 'directory of upstream artifacts'),
}

COMMANDS = {
    'wannier': ('Wannier orbital and overlap transforms', ['depth']),
    'coupling': ('light-matter coupling coefficients',
                 ['depth', 'geometry', 'k0x', 'k1x', 'phi0', 'phi1',
                  'site-count', 'lo-phase', 'c-magnitude']),
    'mf': ('Gutzwiller mean-field states and quadratures',
           ['u', 'mu', 'density', 'coordination', 'n-max', 'scan-u',
            'scan-mu']),
    'ed': ('exact ground state of a chain',
           ['sites', 'bosons', 'u', 'mu', 'v', 'ratio', 'boundary']),
    'scan': ('angular scan of scattered light',
             ['source', 'geometry', 'theta0', 'depth', 'sites', 'bosons',
              'u', 'mu', 'v', 'ratio', 'boundary', 'coordination',
              'site-count', 'points-per-pi', 'phi0', 'phi1', 'k0x', 'k1x']),
    'map3d': ('mean-field scattering over all directions',
              ['u', 'mu', 'coordination', 'theta0', 'phi1', 'lo-phase',
               'map-sites', 'n-theta', 'n-phi']),
    'phasediagram': ('exact phase maps of R_max and W_R',
                     ['mode', 'grid', 'sites', 'bosons', 'u-range',
                      'mu-range', 'v-range', 'ratio', 'boundary',
                      'cell-points']),
    'rate': ('scattered photon rate',
             ['u', 'mu', 'coordination', 'sites', 'site-count', 'omega0',
              'delta-a', 'gamma']),
    'figure': ('plot-ready figure data', ['source-dir']),
}


def _global_options(parser: argparse.ArgumentParser, default) -> None:
    parser.add_argument('--config', default=default,
                        help='INI run description')
    parser.add_argument('--seed', dest='run.seed', default=default,
                        help='seed recorded with the run')
    parser.add_argument('--jobs', dest='run.jobs', default=default,
                        help='worker processes for sweeps')
    parser.add_argument('--out-dir', dest='output.out_dir', default=default,
                        help='artifact directory')
    parser.add_argument('-v', '--verbose', action='count', default=default,
                        help='INFO with -v, DEBUG with -vv')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='latscat',
        description='Light scattering from ultracold bosons in optical '
                    'lattices.')
    _global_options(parser, None)
    commands = parser.add_subparsers(dest='command', required=True)
    for name, (description, flags) in COMMANDS.items():
        command = commands.add_parser(name, help=description,
                                      description=description)
        _global_options(command, argparse.SUPPRESS)
        if name == 'figure':
            command.add_argument('tag', choices=FIGURES)
        for flag in flags:
            section, key, text = OPTIONS[flag]
            command.add_argument(f'--{flag}', dest=f'{section}.{key}',
                                 help=text)
        if name in ('coupling', 'map3d', 'scan'):
            command.add_argument('--travelling', dest='geometry.travelling',
                                 action='store_const', const='true',
                                 help='travelling instead of standing waves')
    return parser


def main(argv: list = None) -> int:
    args = build_parser().parse_args(argv)
    verbosity = getattr(args, 'verbose', None) or 0
    levels = (logging.WARNING, logging.INFO, logging.DEBUG)
    logging.basicConfig(
        level=levels[min(verbosity, 2)],
        format='%(asctime)s %(levelname)s %(name)s: %(message)s')

    overrides = {('run', 'module'): args.command}
    for dest, value in vars(args).items():
        if '.' in dest:
            overrides[tuple(dest.split('.', 1))] = value
    if args.command == 'figure':
        overrides[('output', 'figure')] = args.tag

    text = ''
    if getattr(args, 'config', None):
        try:
            text = Path(args.config).read_text(encoding='utf8')
        except OSError as error:
            logger.error('cannot read configuration: %s', error)
            return EXIT_CONFIG
    try:
        config = parse_config(text).with_overrides(overrides)
        manifest = Runner(config).run()
    except (ConfigurationError, MissingArtifactError) as error:
        logger.error('%s', error)
        return EXIT_CONFIG
    except NumericalError as error:
        logger.error('numerical failure: %s', error)
        return EXIT_NUMERICAL
    print(manifest)
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
