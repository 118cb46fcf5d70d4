import numpy as np
from scipy.integrate import trapezoid
from scipy.interpolate import CubicSpline

from latscat.LatScatException import ConstraintViolationError, OutOfRangeError
from latscat.LatScatObject import LatScatObject


class WannierBasis(LatScatObject):
    '''
    Lowest-band Wannier orbital w(x) on a uniform grid, the overlap products
    W0(x) = w(x)^2 and W1(x) = w(x - d/2) w(x + d/2), and their Fourier
    transforms tabulated on [-4 pi/d, 4 pi/d].
    '''

    OVERLAPS = ('W0', 'W1')

    def __init__(
                self,
                band,
                grid: np.ndarray,
                w: np.ndarray,
                d2w: np.ndarray,
                points_per_period: int,
                n_k: int = 1024
            ) -> None:
        super().__init__()
        self._band = band
        self._grid = grid
        self._w = w
        self._d2w = d2w
        self._points_per_period = points_per_period

        half = points_per_period // 2
        self._W0 = w ** 2
        self._W1 = np.zeros_like(w)
        self._W1[half:-half] = w[:-2 * half] * w[2 * half:]

        period = band.potential.period
        self._k_max = 4.0 * np.pi / period
        self._k_grid = np.linspace(-self._k_max, self._k_max, n_k)
        phase = np.outer(self._k_grid, grid)
        cos, sin = np.cos(phase), np.sin(phase)
        self._ft = {}
        residue = 0.0
        for name, values in (('W0', self._W0), ('W1', self._W1)):
            self._ft[name] = trapezoid(values[None, :] * cos, grid, axis=1)
            imag = trapezoid(values[None, :] * sin, grid, axis=1)
            residue = max(residue, float(np.max(np.abs(imag))))
        self._ft_imag_residue = residue
        self._splines = {
            name: CubicSpline(self._k_grid, table)
            for name, table in self._ft.items()
        }

        self._data = {
            'depth': band.potential.depth,
            'period': period,
            'points': len(grid),
            'norm': self.norm(),
            'neighbor_overlap': self.overlap(1),
            'ft_W0_0': self.fourier_overlap('W0', 0.0),
            'ft_W1_0': self.fourier_overlap('W1', 0.0),
        }

    @property
    def band(self):
        '''
        :type: :class:`latscat.BlochBand.BlochBand`
        '''
        return self._band

    @property
    def period(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._band.potential.period

    @property
    def depth(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._band.potential.depth

    @property
    def grid(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._grid

    @property
    def spacing(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self.period / self._points_per_period

    @property
    def points_per_period(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._points_per_period

    @property
    def w(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._w

    @property
    def W0(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._W0

    @property
    def W1(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._W1

    @property
    def k_grid(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._k_grid

    @property
    def ft_W0(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._ft['W0']

    @property
    def ft_W1(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._ft['W1']

    @property
    def ft_imag_residue(self) -> float:
        '''
        Largest imaginary part met while tabulating the transforms.

        :type: :class:`float`
        '''
        return self._ft_imag_residue

    @property
    def half_width(self) -> float:
        '''
        Distance from the orbital centre to the grid boundary.

        :type: :class:`float`
        '''
        return float(self._grid[-1])

    def norm(self) -> float:
        '''Trapezoid integral of w^2 on the stored grid.'''
        return float(trapezoid(self._w ** 2, self._grid))

    def overlap(self, sites: int) -> float:
        '''Integral of w(x) w(x - sites*d) on the stored grid.'''
        shift = abs(sites) * self._points_per_period
        if shift == 0:
            return self.norm()
        if shift >= len(self._grid):
            return 0.0
        product = self._w[shift:] * self._w[:-shift]
        return float(trapezoid(product, self._grid[shift:]))

    def shifted(self, sites: int) -> np.ndarray:
        '''Samples of w(x - sites*d) on the stored grid, zero-padded.'''
        shift = sites * self._points_per_period
        out = np.zeros_like(self._w)
        if abs(shift) >= len(self._w):
            return out
        if shift >= 0:
            out[shift:] = self._w[:len(self._w) - shift]
        else:
            out[:shift] = self._w[-shift:]
        return out

    def hopping_integral(self) -> float:
        '''Tunnelling J = -int w(x) H w(x - d) dx in E_R.

        H = -d^2/dx^2 / k_L^2 + V(x) is the single-particle lattice
        Hamiltonian in recoil units.
        '''
        potential = self._band.potential
        hw = -self._d2w / potential.k_lattice ** 2 \
            + potential.value(self._grid) * self._w
        shift = self._points_per_period
        product = self._w[shift:] * hw[:-shift]
        return -float(trapezoid(product, self._grid[shift:]))

    def fourier_overlap(self, which: str, k):
        '''Real Fourier transform int W(x) exp(-i k x) dx.

        :param str which: 'W0' (density) or 'W1' (nearest-neighbour).
        :param k: wavenumber in 1/length units, scalar or array.
        :returns: interpolated transform value(s).
        :rtype: :class:`float` or :class:`numpy.ndarray`
        :raises: OutOfRangeError: if |k| exceeds the tabulated range.
        '''
        if which not in self.OVERLAPS:
            raise ConstraintViolationError(
                f'which must be one of {self.OVERLAPS}, got {which!r}')
        k = np.asarray(k, dtype=float)
        largest = float(np.max(np.abs(k))) if k.size else 0.0
        if largest > self._k_max * (1.0 + 1e-12):
            raise OutOfRangeError(
                f'|k| = {largest:.6g} outside tabulated range '
                f'{self._k_max:.6g}')
        value = self._splines[which](k)
        return float(value) if value.ndim == 0 else value
