from pathlib import Path

from latscat.AngularMap import AngularMap
from latscat.AngularScan import AngularScan
from latscat.ArtifactWriter import ArtifactWriter
from latscat.ChainSpec import ChainSpec
from latscat.CouplingCoefficients import CouplingCoefficients
from latscat.EDState import EDState
from latscat.ExactDiagonalizer import ExactDiagonalizer
from latscat.GutzwillerSolver import GutzwillerSolver
from latscat.GutzwillerState import GutzwillerState
from latscat.LatScatException import ConstraintViolationError
from latscat.LatticePotential import LatticePotential
from latscat.LightMode import LightMode
from latscat.MeasurementGeometry import MeasurementGeometry
from latscat.PhaseGrid import GridAxis, PhaseGrid
from latscat.PhaseMapper import PhaseMapper
from latscat.RunConfig import RunConfig, parse_config
from latscat.Runner import Runner
from latscat.Scattering import Scattering
from latscat.WannierBasis import WannierBasis


class LatScat:
    '''
    Main class to compute light scattering from bosons in an optical lattice
    '''

    def __init__(
                self,
                depth: float = 5.0,
                period: float = 1.0,
                jobs: int = 1
            ) -> None:
        '''
        :param float depth: (optional) lattice depth V0 in recoil energies.
        :param float period: (optional) lattice period d.
        :param int jobs: (optional) worker processes for phase maps.
        '''
        self._potential = LatticePotential(depth, period)
        self._jobs = jobs
        self._basis = None
        self._mf_solver = GutzwillerSolver()
        self._ed_solver = ExactDiagonalizer()

    @property
    def depth(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._potential.depth

    @depth.setter
    def depth(self, depth: float) -> None:
        '''
        :param float depth:
        '''
        self._potential = LatticePotential(depth, self._potential.period)
        self._basis = None

    @property
    def jobs(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._jobs

    def wannier(self) -> WannierBasis:
        '''Lowest-band Wannier orbital of the lattice, cached per depth.

        :rtype: :class:`latscat.WannierBasis.WannierBasis`
        :raises: WannierGridError: if the orbital does not fit its grid.
        '''
        if self._basis is None:
            self._basis = self._potential.solve_bloch_band().build_wannier()
        return self._basis

    def coupling(
                self,
                geometry: MeasurementGeometry,
                site_count: int,
                total_sites: int = None
            ) -> CouplingCoefficients:
        '''Light-matter coefficients J_{i,i} and J_{i,i+1} of a geometry.

        :param geometry: probe and detected modes.
        :type geometry: :class:`latscat.MeasurementGeometry.MeasurementGeometry`
        :param int site_count: illuminated sites K.
        :param int total_sites: (optional) chain length M.
        :rtype: :class:`latscat.CouplingCoefficients.CouplingCoefficients`
        '''
        return geometry.coupling_coefficients(self.wannier(), site_count,
                                              total_sites)

    def mean_field(
                self,
                u: float,
                mu: float,
                coordination: int = 2,
                n_max: int = 12
            ) -> GutzwillerState:
        '''Gutzwiller ground state at U/zJ = u and mu/zJ = mu.

        :rtype: :class:`latscat.GutzwillerState.GutzwillerState`
        '''
        return self._mf_solver.solve_ratios(u, mu, coordination, n_max)

    def exact(
                self,
                sites: int,
                bosons: int,
                u: float,
                v: float = 0.0,
                ratio: float = 0.77,
                boundary: str = 'open'
            ) -> EDState:
        '''Exact ground state of a chain at U/2J = u and V/2J = v.

        :rtype: :class:`latscat.EDState.EDState`
        '''
        spec = ChainSpec.from_ratios(sites, bosons, u, v=v, ratio=ratio,
                                     boundary=boundary)
        return self._ed_solver.ground_state(spec)

    def scan(
                self,
                state,
                site_count: int = None,
                theta0: float = 0.0,
                geometry: MeasurementGeometry = None,
                **kwargs
            ) -> AngularScan:
        '''Angular scan of a mean-field or exact state.

        Without ``geometry`` the density-coupled travelling-wave scan is
        returned; otherwise the coefficients of ``geometry`` are integrated
        at every detection angle.

        :rtype: :class:`latscat.AngularScan.AngularScan`
        '''
        if geometry is not None:
            total = state.spec.sites if isinstance(state, EDState) else None
            count = site_count or (total or 2)
            return AngularScan.from_operator(
                state.expectation_F, geometry, self.wannier(), count, total,
                **kwargs)
        if isinstance(state, EDState):
            return AngularScan.from_ed(state, site_count, theta0, **kwargs)
        if site_count is None:
            raise ConstraintViolationError(
                'site_count required for mean-field scans')
        return AngularScan.from_mf(state, site_count, theta0, **kwargs)

    def map3d(
                self,
                state: GutzwillerState,
                phi1: float = 0.0,
                theta0: float = 0.0,
                **kwargs
            ) -> AngularMap:
        '''R/N_K over all detection directions for a standing detected wave
        of shift ``phi1``.

        :rtype: :class:`latscat.AngularMap.AngularMap`
        '''
        probe = LightMode.from_angle('travelling', theta0, label=0)
        detected = LightMode('standing', [0.0, 0.0, 1.0], phi1, 1)
        return AngularMap.compute(state.density_variance, state.density,
                                  probe, detected, **kwargs)

    def phase_diagram(
                self,
                mode: str,
                sites: int,
                axis1: tuple,
                axis2: tuple,
                bosons: int = None,
                boundary: str = 'open'
            ) -> PhaseGrid:
        '''(U/2J, mu/2J) or (U/2J, V/2J) map of exact scans.

        :param str mode: 'mu-u' or 'disorder'.
        :param int sites: chain length M.
        :param tuple axis1: (start, stop, count) of U/2J.
        :param tuple axis2: (start, stop, count) of mu/2J or V/2J.
        :param int bosons: (optional) N for disorder maps, default M.
        :rtype: :class:`latscat.PhaseGrid.PhaseGrid`
        '''
        bosons = sites if bosons is None else bosons
        template = ChainSpec.from_ratios(sites, bosons, 0.0,
                                         boundary=boundary)
        mapper = PhaseMapper(self._jobs)
        u_axis = GridAxis('U/2J', *axis1)
        if mode == 'mu-u':
            return mapper.sweep_mu_u(template, GridAxis('mu/2J', *axis2),
                                     u_axis)
        if mode == 'disorder':
            return mapper.sweep_disorder(template, u_axis,
                                         GridAxis('V/2J', *axis2))
        raise ConstraintViolationError(f'unknown mode {mode!r}')

    def photon_rate(
                self,
                state: GutzwillerState,
                omega0: float,
                delta_a: float,
                gamma: float,
                site_count: int
            ) -> float:
        '''Mean scattered photon number per unit time of a mean-field
        state.'''
        return Scattering.photon_rate(omega0, delta_a, gamma, site_count,
                                      state.density_variance)

    def run(self, config) -> Path:
        '''Run a configured module and write its artifacts.

        :param config: configuration text or a parsed config.
        :returns: path of the run manifest.
        :rtype: :class:`pathlib.Path`
        '''
        if isinstance(config, str):
            config = parse_config(config)
        return Runner(config).run()

    def emit_figure_data(self, source_dir, tag: str, out_dir=None) -> list:
        '''Plot-ready panels of one figure from earlier artifacts.

        :param source_dir: directory of the upstream artifacts.
        :param str tag: 'fig2', 'fig3', 'fig4', 'fig5' or 'quads'.
        :param out_dir: (optional) destination, default ``source_dir``.
        :rtype: :class:`list`
        :raises: MissingArtifactError: if an upstream artifact is absent.
        '''
        config = RunConfig.defaults()
        writer = ArtifactWriter(out_dir or source_dir)
        return Runner(config, writer).emit_figure_data(source_dir, tag)
