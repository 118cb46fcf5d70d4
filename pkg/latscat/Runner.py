import logging
import time
from pathlib import Path

import numpy as np

from latscat.AngularMap import AngularMap
from latscat.AngularScan import AngularScan
from latscat.ArtifactWriter import ArtifactWriter
from latscat.ChainSpec import ChainSpec
from latscat.CouplingCoefficients import CouplingCoefficients
from latscat.CouplingPrefactor import CouplingPrefactor
from latscat.ExactDiagonalizer import ExactDiagonalizer
from latscat.GutzwillerSolver import GutzwillerSolver
from latscat.LatScatException import (ConstraintViolationError,
                                      MissingArtifactError, NoDipError)
from latscat.LatticePotential import LatticePotential
from latscat.LightMode import LightMode
from latscat.MeasurementGeometry import MeasurementGeometry
from latscat.PhaseGrid import GridAxis, PhaseGrid
from latscat.PhaseMapper import PhaseMapper
from latscat.RunConfig import FIGURES, RunConfig
from latscat.Scattering import Scattering

logger = logging.getLogger(__name__)


class Runner:
    '''
    Executes one configured module and writes its artifacts plus a
    manifest. On any failure the files written so far are removed.
    '''

    MF_COLUMNS = ('u', 'mu', 'phi', 'n', 'b2', 'var_x0', 'var_xpi2',
                  'intensity_min_over_Ctilde', 'var_n')
    SCAN_COLUMNS = ('theta1', 'R', 'is_bragg_generalized',
                    'is_bragg_classical')
    CROSS_SECTIONS = (2.0, 3.0, 4.0)

    def __init__(self, config: RunConfig, writer: ArtifactWriter = None):
        self._config = config
        self._writer = writer or ArtifactWriter(config.out_dir)
        self._basis = None
        self._caveat = None

    @property
    def writer(self) -> ArtifactWriter:
        '''
        :type: :class:`latscat.ArtifactWriter.ArtifactWriter`
        '''
        return self._writer

    def run(self) -> Path:
        '''Run the configured module.

        :returns: path of the manifest.
        :rtype: :class:`pathlib.Path`
        '''
        start = time.perf_counter()
        handler = getattr(self, f'_run_{self._config.module}')
        logger.info('running %s (config %s)', self._config.module,
                    self._config.digest[:12])
        try:
            handler()
            return self._writer.write_manifest(
                self._config, time.perf_counter() - start, self._caveat)
        except BaseException:
            self._writer.discard()
            raise

    def _section(self, name: str) -> dict:
        return self._config[name]

    @property
    def basis(self):
        '''
        Wannier orbital of the configured lattice depth, built on first use.

        :type: :class:`latscat.WannierBasis.WannierBasis`
        '''
        if self._basis is None:
            tolerances = self._section('tolerances')
            band = LatticePotential(self._section('physics')['depth']) \
                .solve_bloch_band(tolerances['plane_waves'],
                                  tolerances['quasimomenta'])
            self._basis = band.build_wannier(tolerances['wannier_periods'])
        return self._basis

    def _site_count(self) -> int:
        count = self._section('geometry')['site_count']
        return count or self._section('physics')['sites']

    def _geometry(self) -> MeasurementGeometry:
        geometry = self._section('geometry')
        prefactor = CouplingPrefactor.unit(
            self._section('physics')['c_magnitude'])
        kind = geometry['kind']
        phi1 = geometry['phi1']
        if kind == 'max':
            return MeasurementGeometry.diffraction_maximum(self.basis,
                                                           prefactor)
        if kind == 'min':
            return MeasurementGeometry.diffraction_minimum(
                np.pi / 2 if phi1 is None else phi1, geometry['phi0'],
                geometry['travelling'], prefactor, geometry['lo_phase'])
        if kind == 'density':
            return MeasurementGeometry.density(geometry['theta0'], 0.0,
                                               prefactor)
        mode = 'travelling' if geometry['travelling'] else 'standing'
        return MeasurementGeometry(
            LightMode(mode, geometry['k0x'], geometry['phi0'], 0),
            LightMode(mode, geometry['k1x'], phi1 or 0.0, 1),
            prefactor, geometry['lo_phase'])

    def _mf_state(self, solver: GutzwillerSolver = None):
        physics = self._section('physics')
        solver = solver or GutzwillerSolver(
            tol=self._section('tolerances')['gutzwiller_tol'])
        return solver.solve_ratios(physics['u'], physics['mu'],
                                   physics['coordination'], physics['n_max'])

    def _chain(self) -> ChainSpec:
        physics = self._section('physics')
        return ChainSpec.from_ratios(
            physics['sites'], self._config.bosons, physics['u'],
            physics['mu'], physics['v'], physics['ratio'], physics['offset'],
            physics['boundary'])

    def _ed_state(self):
        solver = ExactDiagonalizer(tol=self._section('tolerances')['ed_tol'])
        return solver.ground_state(self._chain())

    def _run_wannier(self) -> None:
        basis = self.basis
        metadata = dict(basis.raw_data)
        metadata['hopping_integral'] = basis.hopping_integral()
        self._writer.write_csv(
            'wannier.csv', 'wannier', ('x', 'w', 'W0', 'W1'),
            zip(basis.grid, basis.w, basis.W0, basis.W1), metadata)
        self._writer.write_csv(
            'wannier_ft.csv', 'wannier_ft', ('k', 'ftW0', 'ftW1'),
            zip(basis.k_grid, basis.ft_W0, basis.ft_W1),
            {'depth': basis.depth, 'units': 'k in 1/d'})

    def _run_coupling(self) -> None:
        basis = self.basis
        geometry = self._geometry()
        coeffs = geometry.coupling_coefficients(basis, self._site_count())
        data = dict(coeffs.raw_data)
        data['geometry'] = geometry.name
        data['depth'] = basis.depth
        self._writer.write_json('coeffs.json', 'coupling', data)

        # J coefficients of one site and its bond against the standing wave
        # shift, for the maximum (phi0 = phi, phi1 = pi - phi) and minimum
        # geometries
        k = np.pi / basis.period
        phases = np.linspace(0.0, np.pi, 181)
        rows = []
        for phase in phases:
            maximum = CouplingCoefficients.closed_form(
                basis, k, k, phase, np.pi - phase, 2)
            minimum = CouplingCoefficients.closed_form(
                basis, 0.0, k, 0.0, phase, 2)
            rows.append((phase, maximum.density[0].real,
                         maximum.bond[0].real, minimum.density[0].real,
                         minimum.bond[0].real))
        ratio = -basis.fourier_overlap('W0', 2 * k) \
            / basis.fourier_overlap('W0', 0.0)
        suppression = np.arccos(np.clip(ratio, -1.0, 1.0)) / 2.0
        self._writer.write_csv(
            'coupling_phase.csv', 'coupling_phase',
            ('phi', 'Jii_max', 'Jii1_max', 'Jii_min', 'Jii1_min'), rows,
            {'depth': basis.depth, 'suppression_max': suppression,
             'suppression_min': np.pi / 2})

    def _run_mf(self) -> None:
        physics = self._section('physics')
        sweep = self._section('sweep')
        solver = GutzwillerSolver(
            tol=self._section('tolerances')['gutzwiller_tol'])
        us = self._axis_values(sweep['scan_u'], physics['u'])
        mus = self._axis_values(sweep['scan_mu'], physics['mu'])
        z, n_max = physics['coordination'], physics['n_max']

        states = []
        if physics['density'] is not None:
            for u in us:
                states.append(solver.solve_at_density(u, physics['density'],
                                                      z, n_max))
        else:
            for u in us:
                for mu in mus:
                    states.append(solver.solve_ratios(u, mu, z, n_max))

        rows = []
        for state in states:
            rows.append((state['u'], state['mu'], state.phi, state.density,
                         state.b2, state.matter_quadrature_variance(0.0),
                         state.matter_quadrature_variance(np.pi / 2),
                         state.min_intensity(2, 1.0, 1.0) / 2.0,
                         state.density_variance))
        self._writer.write_csv(
            'mf.csv', 'mf', self.MF_COLUMNS, rows,
            {'coordination': z, 'n_max': n_max, 'units': 'zJ',
             'density': physics['density']})

    def _run_ed(self) -> None:
        state = self._ed_state()
        physics = self._section('physics')
        data = dict(state.raw_data)
        data.update({
            'u': physics['u'], 'mu': physics['mu'], 'v': physics['v'],
            'ratio': physics['ratio'], 'boundary': physics['boundary'],
            'units': '2J', 'gap': state.gap, 'residual': state.residual,
            'dd': state.dd.ravel().tolist(),
            'sp': np.real(state.sp).ravel().tolist(),
        })
        self._writer.write_json('state.json', 'ed', data)

    def _run_scan(self) -> None:
        run = self._section('run')
        geometry = self._section('geometry')
        points = geometry['points_per_pi']
        site_count = self._site_count()
        if run['source'] == 'ed':
            state = self._ed_state()
            total = state.spec.sites
        else:
            state = self._mf_state()
            total = None

        if geometry['kind'] == 'density':
            build = AngularScan.from_ed if run['source'] == 'ed' \
                else AngularScan.from_mf
            scan = build(state, site_count, geometry['theta0'],
                         points_per_pi=points)
        else:
            scan = AngularScan.from_operator(
                state.expectation_F, self._geometry(), self.basis,
                site_count, total, points)

        metadata = {'source': run['source'], 'geometry': scan.geometry,
                    'kind': scan.kind, 'normalization': scan.normalization,
                    'sites': site_count, 'theta0': scan.theta0}
        try:
            metadata.update(scan.extract_summary().raw_data)
        except NoDipError as error:
            logger.info('scan has no dip: %s', error)
        if run['source'] == 'ed' and state.spec.boundary == 'periodic':
            estimate = Scattering.luttinger_parameter(
                state.dd, np.arange(state.spec.sites))
            metadata['K_b'] = estimate.value
            metadata['K_b_reliable'] = estimate.reliable
        self._writer.write_csv(
            'scan.csv', 'scan', self.SCAN_COLUMNS,
            zip(scan.theta1, scan.values, scan.bragg_flags('generalized'),
                scan.bragg_flags('classical')), metadata)

    def _run_map3d(self) -> None:
        geometry = self._section('geometry')
        state = self._mf_state()
        probe = LightMode.from_angle('travelling', geometry['theta0'],
                                     label=0)
        phase = geometry['phi1'] or 0.0
        if geometry['travelling']:
            detected = LightMode('travelling', [0.0, 0.0, 1.0], 0.0, 1)
            quantity = 'quadrature'
            phase = geometry['lo_phase']
        else:
            detected = LightMode('standing', [0.0, 0.0, 1.0], phase, 1)
            quantity = 'R'
        dims = (geometry['map_sites'],) * 3

        for name, shift in (('map.csv', 0.0), ('map_shifted.csv', np.pi / 2)):
            if quantity == 'R':
                mode = detected.with_phase(phase + shift)
                beta = 0.0
            else:
                mode = detected
                beta = phase + shift
            result = AngularMap.compute(
                state.density_variance, state.density, probe, mode, dims,
                geometry['n_theta'], geometry['n_phi'], quantity, beta)
            self._writer.write_csv(
                name, 'map', ('theta', 'phi', 'R_over_NK'), result.rows(),
                {'quantity': quantity, 'phase': phase + shift,
                 'sites_per_axis': dims[0], 'median': result['median']})

    def _run_phasediagram(self) -> None:
        physics = self._section('physics')
        sweep = self._section('sweep')
        rows, columns = sweep['grid']
        template = ChainSpec.from_ratios(
            physics['sites'], self._config.bosons, 0.0,
            boundary=physics['boundary'])
        mapper = PhaseMapper(self._config.jobs,
                             self._section('tolerances')['ed_tol'],
                             sweep['points_per_pi'])
        if sweep['mode'] == 'mu-u':
            grid = mapper.sweep_mu_u(
                template, GridAxis('mu/2J', *sweep['mu_range'], columns),
                GridAxis('U/2J', *sweep['u_range'], rows))
        else:
            grid = mapper.sweep_disorder(
                template, GridAxis('U/2J', *sweep['u_range'], rows),
                GridAxis('V/2J', *sweep['v_range'], columns),
                physics['ratio'], physics['offset'])

        metadata = {'mode': grid.mode, 'axis1': grid.axis1.name,
                    'axis2': grid.axis2.name, 'sites': physics['sites'],
                    'caveat': PhaseGrid.CAVEAT,
                    'failed_cells': grid.failed_count}
        if grid.mode == 'disorder':
            metadata['bosons'] = self._config.bosons
            metadata['valid'] = grid.valid
            if grid.thresholds is not None:
                metadata['threshold_R_max'] = grid.thresholds.r_max
                metadata['threshold_W_R'] = grid.thresholds.w_r
            metadata['regions'] = ' '.join(
                f'{label}={count}' for label, count in grid.regions.items())
        self._writer.write_csv('grid.csv', 'grid', PhaseGrid.COLUMNS,
                               grid.rows(), metadata)
        self._caveat = PhaseGrid.CAVEAT

    def _run_rate(self) -> None:
        physics = self._section('physics')
        state = self._mf_state()
        site_count = self._site_count()
        rate = Scattering.photon_rate(physics['omega0'], physics['delta_a'],
                                      physics['gamma'], site_count,
                                      state.density_variance)
        self._writer.write_json('rate.json', 'rate', {
            'omega0': physics['omega0'], 'delta_a': physics['delta_a'],
            'gamma': physics['gamma'], 'sites': site_count,
            'var_n': state.density_variance, 'n_phi': rate})

    def _run_figure(self) -> None:
        output = self._section('output')
        source = output['source_dir'] or self._config.out_dir
        self.emit_figure_data(source, output['figure'])

    @staticmethod
    def _axis_values(axis, default: float) -> np.ndarray:
        if axis is None:
            return np.array([default])
        start, stop, count = axis
        return np.linspace(start, stop, count)

    @staticmethod
    def _upstream(path: Path, kind: str, mode: str = None) -> tuple:
        metadata, columns, rows = ArtifactWriter.read_csv(path)
        if metadata['kind'] != kind:
            raise MissingArtifactError(
                f'{path} holds {metadata["kind"]!r}, expected {kind!r}')
        if mode is not None and metadata.get('mode') != mode:
            raise MissingArtifactError(
                f'{path} is a {metadata.get("mode")!r} grid, expected {mode!r}')
        return metadata, columns, rows

    @staticmethod
    def _select(columns: tuple, rows: list, names: tuple) -> list:
        indices = [columns.index(name) for name in names]
        return [tuple(row[i] for i in indices) for row in rows]

    def emit_figure_data(self, source_dir, tag: str) -> list:
        '''Write the plot-ready panels of one figure from upstream artifacts.

        :param source_dir: directory holding the upstream artifacts.
        :param str tag: 'fig2', 'fig3', 'fig4', 'fig5' or 'quads'.
        :returns: written panel paths.
        :rtype: :class:`list`
        :raises: MissingArtifactError: if an upstream artifact is absent.
        '''
        if tag not in FIGURES:
            raise ConstraintViolationError(
                f'figure must be one of {FIGURES}, got {tag!r}')
        source = Path(source_dir)
        before = len(self._writer.written)
        getattr(self, f'_emit_{tag}')(source)
        return self._writer.written[before:]

    def _panel(self, tag: str, panel: str, columns: tuple, rows,
               metadata: dict) -> None:
        header = {'figure': tag, 'panel': panel}
        header.update(metadata)
        self._writer.write_csv(f'{tag}{panel}.csv', 'figure', columns, rows,
                               header)

    def _emit_fig2(self, source: Path) -> None:
        for panel, name in (('a', 'map.csv'), ('b', 'map_shifted.csv')):
            metadata, columns, rows = self._upstream(source / name, 'map')
            self._panel('fig2', panel, columns, rows,
                        {'axes': 'theta phi (rad)',
                         'normalization': 'R/N_K',
                         'phase': metadata.get('phase')})

    def _emit_fig3(self, source: Path) -> None:
        _, columns, rows = self._upstream(source / 'wannier.csv', 'wannier')
        self._panel('fig3', 'a', ('x', 'W0', 'W1'),
                    self._select(columns, rows, ('x', 'W0', 'W1')),
                    {'axes': 'x (d)', 'normalization': 'int W0 dx = 1'})
        _, columns, rows = self._upstream(source / 'wannier_ft.csv',
                                          'wannier_ft')
        self._panel('fig3', 'b', columns, rows,
                    {'axes': 'k (1/d)', 'normalization': 'F[W0](0) = 1'})
        metadata, columns, rows = self._upstream(
            source / 'coupling_phase.csv', 'coupling_phase')
        for panel, which in (('c', 'max'), ('d', 'min')):
            names = ('phi', f'Jii_{which}', f'Jii1_{which}')
            self._panel('fig3', panel, names,
                        self._select(columns, rows, names),
                        {'axes': 'phi (rad)', 'normalization': 'none',
                         'suppression': metadata.get(f'suppression_{which}')})

    def _grid(self, source: Path, mode: str) -> tuple:
        metadata, columns, rows = self._upstream(source / 'grid.csv', 'grid',
                                                 mode)
        return metadata, columns, rows

    def _emit_fig4(self, source: Path) -> None:
        metadata, columns, rows = self._grid(source, 'mu-u')
        header = {'caveat': PhaseGrid.CAVEAT, 'sites': metadata.get('sites'),
                  'units': '2J'}
        for panel, quantity in (('d', 'Rmax'), ('e', 'W_R')):
            self._panel('fig4', panel, ('U/2J', 'mu/2J', quantity),
                        self._select(columns, rows,
                                     ('axis1', 'axis2', quantity)), header)

        u_values = sorted({float(row[0]) for row in rows})
        chosen = [min(u_values, key=lambda u: abs(u - target))
                  for target in self.CROSS_SECTIONS]
        for panel, quantity in (('b', 'Rmax'), ('c', 'W_R')):
            index = columns.index(quantity)
            lines = [[row for row in rows if float(row[0]) == u]
                     for u in chosen]
            names = ('mu/2J',) + tuple(f'{quantity}_U{target:g}'
                                       for target in self.CROSS_SECTIONS)
            table = [(group[0][1],) + tuple(row[index] for row in group)
                     for group in zip(*lines)]
            cross = dict(header)
            cross['U_used'] = ' '.join(f'{u:.12g}' for u in chosen)
            self._panel('fig4', panel, names, table, cross)
        self._caveat = PhaseGrid.CAVEAT

    def _emit_fig5(self, source: Path) -> None:
        metadata, columns, rows = self._grid(source, 'disorder')
        header = {'caveat': PhaseGrid.CAVEAT, 'sites': metadata.get('sites'),
                  'units': '2J', 'valid': metadata.get('valid')}
        for panel, quantity in (('a', 'Rmax'), ('b', 'W_R'),
                                ('c', 'label')):
            self._panel('fig5', panel, ('U/2J', 'V/2J', quantity),
                        self._select(columns, rows,
                                     ('axis1', 'axis2', quantity)), header)
        self._caveat = PhaseGrid.CAVEAT

    def _emit_quads(self, source: Path) -> None:
        metadata, columns, rows = self._upstream(source / 'mf.csv', 'mf')
        names = ('u', 'intensity_min_over_Ctilde', 'var_x0', 'var_xpi2')
        self._writer.write_csv(
            'quads.csv', 'figure', names, self._select(columns, rows, names),
            {'figure': 'quads', 'axes': 'U/zJ',
             'normalization': 'intensity / C~, C~ = 2|C|^2 (K-1) F[W1](pi/d)^2',
             'density': metadata.get('density')})
