import numpy as np

from latscat.LatScatException import ConstraintViolationError
from latscat.LatScatObject import LatScatObject


class GutzwillerState(LatScatObject):
    '''
    Site-uniform Gutzwiller product state prod_i sum_n f_n |n>_i.

    Amplitudes are real and nonnegative, which fixes Phi = <b> >= 0.
    '''

    SPECIAL_ANGLE_TOL = 1e-12

    def __init__(
                self,
                params,
                amplitudes: np.ndarray,
                energy: float,
                converged: bool = True,
                residual: float = 0.0,
                iterations: int = 0
            ) -> None:
        super().__init__()
        self._params = params
        self._f = np.asarray(amplitudes, dtype=float)
        self._energy = float(energy)
        self._converged = bool(converged)
        self._residual = float(residual)
        self._iterations = int(iterations)

        n = np.arange(len(self._f))
        self._phi = float(np.sum(np.sqrt(n[1:]) * self._f[:-1] * self._f[1:]))
        self._density = float(np.sum(n * self._f ** 2))
        self._nn = float(np.sum(n ** 2 * self._f ** 2))
        self._b2 = float(np.sum(np.sqrt(n[1:-1] * n[2:])
                                * self._f[:-2] * self._f[2:]))
        self._data = {
            'u': params.interaction / params.zj if params.zj else None,
            'mu': params.mu / params.zj if params.zj else None,
            'phi': self._phi,
            'n': self._density,
            'b2': self._b2,
            'nn': self._nn,
            'energy': self._energy,
            'converged': self._converged,
            'residual': self._residual,
        }

    @property
    def params(self):
        '''
        :type: :class:`latscat.BoseHubbardParams.BoseHubbardParams`
        '''
        return self._params

    @property
    def amplitudes(self) -> np.ndarray:
        '''
        Fock amplitudes f_n, n = 0..n_max.

        :type: :class:`numpy.ndarray`
        '''
        return self._f

    @property
    def energy(self) -> float:
        '''
        Energy per site.

        :type: :class:`float`
        '''
        return self._energy

    @property
    def converged(self) -> bool:
        '''
        :type: :class:`bool`
        '''
        return self._converged

    @property
    def residual(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._residual

    @property
    def iterations(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._iterations

    @property
    def phi(self) -> float:
        '''
        Order parameter <b>.

        :type: :class:`float`
        '''
        return self._phi

    @property
    def density(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._density

    @property
    def b2(self) -> float:
        '''
        <b^2>.

        :type: :class:`float`
        '''
        return self._b2

    @property
    def nn(self) -> float:
        '''
        <n^2>.

        :type: :class:`float`
        '''
        return self._nn

    @property
    def density_variance(self) -> float:
        '''
        <n^2> - <n>^2, the on-site number fluctuation.

        :type: :class:`float`
        '''
        return self._nn - self._density ** 2

    @property
    def cutoff_weight(self) -> float:
        '''
        :type: :class:`float`
        '''
        return float(self._f[-1] ** 2)

    def matter_quadrature_variance(self, alpha: float) -> float:
        '''Variance of X_alpha = (b e^{-i alpha} + b^dag e^{i alpha})/2.

        alpha = 0 and pi/2 use 1/4 + [(n - Phi^2) +- (<b^2> - Phi^2)]/2; any
        other angle is evaluated directly in the Fock basis.

        :param float alpha: quadrature angle in radians.
        :rtype: :class:`float`
        '''
        excess = self._density - self._phi ** 2
        anomalous = self._b2 - self._phi ** 2
        if abs(alpha) < self.SPECIAL_ANGLE_TOL:
            return 0.25 + (excess + anomalous) / 2.0
        if abs(alpha - np.pi / 2) < self.SPECIAL_ANGLE_TOL:
            return 0.25 + (excess - anomalous) / 2.0
        return self.quadrature_variance_direct(alpha)

    def quadrature_variance_direct(self, alpha: float) -> float:
        '''<X_alpha^2> - <X_alpha>^2 from explicit Fock matrices.

        The basis is padded by one level so b b^dag stays exact on the
        truncated state.
        '''
        f = np.append(self._f, 0.0)
        b = np.diag(np.sqrt(np.arange(1, len(f))), 1)
        x = (b * np.exp(-1j * alpha) + b.T * np.exp(1j * alpha)) / 2.0
        mean = f @ x @ f
        second = f @ (x @ x) @ f
        return float(np.real(second - mean ** 2))

    def min_intensity(
                self,
                site_count: int,
                c_magnitude: float,
                ft_w1_pi: float
            ) -> float:
        '''Photon number scattered in the diffraction minimum,
        2|C|^2 (K-1) F[W1](pi/d)^2 [(<b^2> - Phi^2)^2
        + (n - Phi^2)(1 + n - Phi^2)].
        '''
        excess = self._density - self._phi ** 2
        anomalous = self._b2 - self._phi ** 2
        scale = 2.0 * c_magnitude ** 2 * (site_count - 1) * ft_w1_pi ** 2
        return scale * (anomalous ** 2 + excess * (1.0 + excess))

    def max_quadrature_mean(self, site_count: int, ft_w1_2pi: float) -> float:
        '''<X^F_0> in the diffraction maximum, Phi^2 F[W1](2pi/d) (K-1).'''
        return self._phi ** 2 * ft_w1_2pi * (site_count - 1)

    def expectation_F(
                self,
                coeffs,
                beta: float = 0.0,
                ring: bool = False
            ) -> dict:
        '''<F>, <F^dag F>, <X^F_beta> and <(X^F_beta)^2> on the K-site
        product state, with F assembled from ``coeffs`` on an open chain.

        With ``ring`` the last site is identified with the first, so the K-1
        bonds close into a ring of K-1 sites with two neighbours per bond.

        Every term of F is a product of single-site operators, so each
        two-term correlator factorizes over sites.

        :param coeffs: coupling coefficients.
        :type coeffs: :class:`latscat.CouplingCoefficients.CouplingCoefficients`
        :param float beta: (optional) quadrature phase.
        :param bool ring: (optional) close the chain, needs K >= 4.
        :rtype: :class:`dict`
        :raises: ConstraintViolationError: if ``ring`` is set with K < 4.
        '''
        size = len(coeffs.density)
        if ring and size < 4:
            raise ConstraintViolationError(
                f'ring closure needs at least 4 sites, got {size}')
        wrap = size - 1 if ring else size + 1
        f = np.append(self._f, [0.0, 0.0])
        b = np.diag(np.sqrt(np.arange(1, len(f))), 1)
        local = [np.diag(np.arange(len(f), dtype=float)), b, b.T]
        adjoint = (0, 2, 1)
        single = np.array([f @ op @ f for op in local])
        pair = np.array([[f @ x @ y @ f for y in local] for x in local])

        terms = []
        for i, c in enumerate(coeffs.density):
            if c != 0:
                terms.append((c, {i % wrap: 0}))
        for i, c in enumerate(coeffs.bond):
            if c != 0:
                left, right = i % wrap, (i + 1) % wrap
                terms.append((c, {left: 2, right: 1}))
                terms.append((c, {left: 1, right: 2}))

        def mean(term):
            return np.prod([single[code] for code in term.values()])

        def correlator(left, right):
            value = 1.0
            for site in set(left) | set(right):
                if site in left and site in right:
                    value *= pair[left[site], right[site]]
                elif site in left:
                    value *= single[left[site]]
                else:
                    value *= single[right[site]]
            return value

        def dagger(term):
            return {site: adjoint[code] for site, code in term.items()}

        f_mean = sum(c * mean(t) for c, t in terms)
        fdf = ff = ffd = 0.0
        for ca, ta in terms:
            for cb, tb in terms:
                fdf += np.conj(ca) * cb * correlator(dagger(ta), tb)
                ff += ca * cb * correlator(ta, tb)
                ffd += ca * np.conj(cb) * correlator(ta, dagger(tb))
        phase = np.exp(-1j * beta)
        x_square = (2.0 * np.real(ff * phase ** 2) + np.real(ffd)
                    + np.real(fdf)) / 4.0
        return {
            'F': complex(f_mean),
            'FdagF': float(np.real(fdf)),
            'X': float(np.real(f_mean * phase)),
            'X2': float(x_square),
            'beta': beta,
        }
