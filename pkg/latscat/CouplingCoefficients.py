import logging

import numpy as np
from scipy.integrate import trapezoid

from latscat.LatScatException import (ConstraintViolationError, GeometryError,
                                      WindowMismatchError)
from latscat.LatScatObject import LatScatObject

logger = logging.getLogger(__name__)


class CouplingCoefficients(LatScatObject):
    '''
    Site coefficients J_{i,i} and bond coefficients J_{i,i+1} of the
    light-matter operator F = D + B on K illuminated sites of an M-site
    chain, with

        D = sum_i J_{i,i} n_i,
        B = sum_i J_{i,i+1} (b_i^dag b_{i+1} + b_{i+1}^dag b_i).

    The illuminated window is contiguous; sites outside it do not couple.
    '''

    QUADRATURE_TOL = 1e-8

    def __init__(
                self,
                density: np.ndarray,
                bond: np.ndarray,
                total_sites: int = None,
                offset: int = None,
                period: float = 1.0,
                beyond_nearest: np.ndarray = None
            ) -> None:
        super().__init__()
        density = np.asarray(density, dtype=complex)
        bond = np.asarray(bond, dtype=complex)
        site_count = len(density)
        if site_count < 1 or len(bond) != site_count - 1:
            raise ConstraintViolationError(
                f'expected K site and K-1 bond coefficients, got '
                f'{len(density)} and {len(bond)}')
        if total_sites is None:
            total_sites = site_count
        if site_count > total_sites:
            raise WindowMismatchError(
                f'{site_count} illuminated sites exceed chain of {total_sites}')
        if offset is None:
            offset = (total_sites - site_count) // 2
        if offset < 0 or offset + site_count > total_sites:
            raise WindowMismatchError(
                f'window [{offset}, {offset + site_count}) outside chain of '
                f'{total_sites} sites')
        self._density = density
        self._bond = bond
        self._total_sites = int(total_sites)
        self._offset = int(offset)
        self._period = float(period)
        self._beyond_nearest = (np.zeros(0) if beyond_nearest is None
                                else np.asarray(beyond_nearest))
        self._data = {
            'sites': self.positions.tolist(),
            'density': [[z.real, z.imag] for z in density],
            'bond': [[z.real, z.imag] for z in bond],
        }

    @classmethod
    def uniform(
                cls,
                density: complex,
                bond: complex,
                site_count: int,
                total_sites: int = None
            ) -> 'CouplingCoefficients':
        '''Same coefficient on every illuminated site and bond.'''
        return cls(np.full(site_count, density, dtype=complex),
                   np.full(site_count - 1, bond, dtype=complex),
                   total_sites)

    @classmethod
    def compute(
                cls,
                basis,
                probe,
                detected,
                site_count: int,
                total_sites: int = None,
                offset: int = None
            ) -> 'CouplingCoefficients':
        '''Integrate J_{i,j} = int w(x - x_i) u1*(x) u0(x) w(x - x_j) dx.

        Only the x components of the wavevectors enter. Coefficients beyond
        nearest neighbours are computed and dropped; their largest magnitude
        is logged and kept in :attr:`beyond_nearest`.

        :param basis: Wannier orbital.
        :type basis: :class:`latscat.WannierBasis.WannierBasis`
        :param probe: mode u0.
        :type probe: :class:`latscat.LightMode.LightMode`
        :param detected: mode u1.
        :type detected: :class:`latscat.LightMode.LightMode`
        :param int site_count: number K of illuminated sites.
        :param int total_sites: (optional) chain length M, default K.
        :param int offset: (optional) first illuminated site, default centred.
        :raises: GeometryError: if the grid cannot hold a site block.
        '''
        if total_sites is None:
            total_sites = site_count
        if offset is None:
            offset = (total_sites - site_count) // 2
        d = basis.period
        if basis.half_width < 4 * d:
            raise GeometryError(
                f'Wannier grid half-width {basis.half_width:.3g} cannot hold '
                f'a next-nearest-neighbour block')

        y = basis.grid
        positions = (offset + np.arange(site_count)) * d

        def product(shift):
            points = y[None, :] + positions[:, None] + shift
            return np.conj(detected.value(points, d)) * probe.value(points, d)

        density = cls._integrate(basis.W0[None, :] * product(0.0), y)
        bond = cls._integrate(basis.W1[None, :] * product(d / 2.0), y)[:-1]
        second = basis.shifted(1) * basis.shifted(-1)
        beyond = cls._integrate(second[None, :] * product(d), y)[:-2]
        if beyond.size:
            logger.info('dropped J_{i,i+2} terms, max magnitude %.3e',
                        np.max(np.abs(beyond)))

        return cls(density, bond, total_sites, offset, d, np.abs(beyond))

    @classmethod
    def closed_form(
                cls,
                basis,
                k0x: float,
                k1x: float,
                phi0: float,
                phi1: float,
                site_count: int,
                total_sites: int = None,
                offset: int = None
            ) -> 'CouplingCoefficients':
        '''Standing-wave coefficients from the Fourier tables.

        u1* u0 = [cos(k_- x + phi_-) + cos(k_+ x + phi_+)] / 2 with
        k_pm = k0x pm k1x and phi_pm = phi0 pm phi1, so every site picks up
        F[W0](k_pm)/2 and every bond F[W1](k_pm)/2 shifted by k_pm d/2.
        '''
        if total_sites is None:
            total_sites = site_count
        if offset is None:
            offset = (total_sites - site_count) // 2
        d = basis.period
        x = (offset + np.arange(site_count)) * d
        density = np.zeros(site_count)
        bond = np.zeros(site_count - 1)
        for k, phi in ((k0x - k1x, phi0 - phi1), (k0x + k1x, phi0 + phi1)):
            density += basis.fourier_overlap('W0', k) \
                * np.cos(k * x + phi) / 2.0
            bond += basis.fourier_overlap('W1', k) \
                * np.cos(k * x[:-1] + k * d / 2.0 + phi) / 2.0
        return cls(density, bond, total_sites, offset, d)

    @staticmethod
    def _integrate(values: np.ndarray, grid: np.ndarray) -> np.ndarray:
        fine = trapezoid(values, grid, axis=-1)
        coarse = trapezoid(values[..., ::2], grid[::2], axis=-1)
        error = np.max(np.abs(fine - coarse)) if fine.size else 0.0
        if error > CouplingCoefficients.QUADRATURE_TOL:
            logger.warning('coupling quadrature changes by %.3e on halving '
                           'the grid', error)
        return fine

    @property
    def site_count(self) -> int:
        '''
        :type: :class:`int`
        '''
        return len(self._density)

    @property
    def total_sites(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._total_sites

    @property
    def offset(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._offset

    @property
    def period(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._period

    @property
    def density(self) -> np.ndarray:
        '''
        J_{i,i} over the illuminated window.

        :type: :class:`numpy.ndarray`
        '''
        return self._density

    @property
    def bond(self) -> np.ndarray:
        '''
        J_{i,i+1} over the illuminated window.

        :type: :class:`numpy.ndarray`
        '''
        return self._bond

    @property
    def beyond_nearest(self) -> np.ndarray:
        '''
        Magnitudes of the dropped J_{i,i+2}.

        :type: :class:`numpy.ndarray`
        '''
        return self._beyond_nearest

    @property
    def positions(self) -> np.ndarray:
        '''
        Illuminated site positions r_i = i d.

        :type: :class:`numpy.ndarray`
        '''
        return (self._offset + np.arange(self.site_count)) * self._period

    def full_density(self) -> np.ndarray:
        '''Site coefficients over the whole chain, zero outside the window.'''
        out = np.zeros(self._total_sites, dtype=complex)
        out[self._offset:self._offset + self.site_count] = self._density
        return out

    def full_bond(self) -> np.ndarray:
        '''Bond coefficients over the M - 1 open-chain bonds.'''
        out = np.zeros(max(self._total_sites - 1, 0), dtype=complex)
        out[self._offset:self._offset + self.site_count - 1] = self._bond
        return out

    def adjoint(self) -> 'CouplingCoefficients':
        '''Coefficients of F^dag: J_{j,i}* for every (i, j).'''
        return CouplingCoefficients(
            np.conj(self._density), np.conj(self._bond), self._total_sites,
            self._offset, self._period, self._beyond_nearest)

    def matrix(self) -> np.ndarray:
        '''K x K single-particle matrix J_{i,j} with nearest neighbours.'''
        out = np.diag(self._density)
        out += np.diag(self._bond, 1) + np.diag(self._bond, -1)
        return out
