import numpy as np

from latscat.LatScatException import WindowMismatchError
from latscat.LatScatObject import LatScatObject


class EDState(LatScatObject):
    '''
    Exact ground state of a fixed-N chain with its two-point correlations
    dd_ij = <dn_i dn_j> and sp_ij = <b_i^dag b_j>.
    '''

    def __init__(
                self,
                spec,
                basis,
                vector: np.ndarray,
                energy: float,
                residual: float = 0.0,
                gap: float = np.inf,
                degenerate: bool = False
            ) -> None:
        super().__init__()
        self._spec = spec
        self._basis = basis
        self._vector = vector
        self._energy = float(energy)
        self._residual = float(residual)
        self._gap = float(gap)
        self._degenerate = bool(degenerate)
        self._dd = None
        self._sp = None

        weights = np.abs(vector) ** 2
        self._densities = weights @ basis.states
        self._data = {
            'sites': spec.sites,
            'bosons': spec.bosons,
            'energy': self._energy,
            'density': self._densities.tolist(),
            'degenerate': self._degenerate,
        }

    @property
    def spec(self):
        '''
        :type: :class:`latscat.ChainSpec.ChainSpec`
        '''
        return self._spec

    @property
    def basis(self):
        '''
        :type: :class:`latscat.FockBasis.FockBasis`
        '''
        return self._basis

    @property
    def vector(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._vector

    @property
    def energy(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._energy

    @property
    def residual(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._residual

    @property
    def gap(self) -> float:
        '''
        Distance to the first excited level of the sector.

        :type: :class:`float`
        '''
        return self._gap

    @property
    def degenerate(self) -> bool:
        '''
        :type: :class:`bool`
        '''
        return self._degenerate

    @property
    def densities(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._densities

    @property
    def dd(self) -> np.ndarray:
        '''
        Density fluctuation correlations <dn_i dn_j>, shape (M, M).

        :type: :class:`numpy.ndarray`
        '''
        if self._dd is None:
            self.correlations()
        return self._dd

    @property
    def sp(self) -> np.ndarray:
        '''
        Single-particle correlations <b_i^dag b_j>, shape (M, M).

        :type: :class:`numpy.ndarray`
        '''
        if self._sp is None:
            self.correlations()
        return self._sp

    def correlations(self) -> dict:
        '''Full dd and sp tables; also stored in :attr:`raw_data`.'''
        if self._dd is None:
            n = self._basis.states.astype(float)
            weights = np.abs(self._vector) ** 2
            nn = n.T @ (weights[:, None] * n)
            self._dd = nn - np.outer(self._densities, self._densities)

            sites = self._spec.sites
            sp = np.diag(self._densities).astype(float)
            v = self._vector
            for i in range(sites):
                for j in range(sites):
                    if i == j:
                        continue
                    target, source, amplitude = self._basis.hop(i, j)
                    sp[i, j] = np.sum(np.conj(v[target]) * amplitude
                                      * v[source])
            self._sp = sp
            self._data['dd'] = self._dd.ravel().tolist()
            self._data['sp'] = self._sp.ravel().tolist()
        return {'dd': self._dd, 'sp': self._sp}

    def apply(self, coeffs, adjoint: bool = False) -> np.ndarray:
        '''F|psi> (or F^dag|psi>) for the operator built from ``coeffs``.'''
        if coeffs.total_sites != self._spec.sites:
            raise WindowMismatchError(
                f'coefficients span {coeffs.total_sites} sites, chain has '
                f'{self._spec.sites}')
        if adjoint:
            coeffs = coeffs.adjoint()
        bonds = [(i, i + 1) for i in range(self._spec.sites - 1)]
        operator = self._basis.one_body(coeffs.full_density(), bonds,
                                        coeffs.full_bond())
        return operator @ self._vector.astype(complex)

    def expectation_F(self, coeffs, beta: float = 0.0) -> dict:
        '''<F>, <F^dag F>, <X^F_beta> and <(X^F_beta)^2> with
        X^F_beta = (F e^{-i beta} + F^dag e^{i beta}) / 2.

        :param coeffs: coupling coefficients over the full chain.
        :type coeffs: :class:`latscat.CouplingCoefficients.CouplingCoefficients`
        :param float beta: (optional) quadrature phase.
        :rtype: :class:`dict`
        :raises: WindowMismatchError: if the coefficient chain differs.
        '''
        v = self._vector.astype(complex)
        fv = self.apply(coeffs)
        fdv = self.apply(coeffs, adjoint=True)
        mean = complex(np.vdot(v, fv))
        fdf = float(np.real(np.vdot(fv, fv)))
        ffd = float(np.real(np.vdot(fdv, fdv)))
        ff = complex(np.vdot(fdv, fv))
        phase = np.exp(-1j * beta)
        x_mean = float(np.real(mean * phase))
        x_square = (2.0 * np.real(ff * phase ** 2) + ffd + fdf) / 4.0
        return {
            'F': mean,
            'FdagF': fdf,
            'X': x_mean,
            'X2': float(x_square),
            'beta': beta,
        }
