import logging
from collections import OrderedDict

import numpy as np
from scipy import sparse
from scipy.linalg import eigh
from scipy.sparse.linalg import ArpackNoConvergence, eigsh
from tenacity import (RetryError, Retrying, before_sleep_log,
                      retry_if_exception_type, stop_after_attempt)

from latscat.EDState import EDState
from latscat.FockBasis import FockBasis
from latscat.GroundStateSolver import GroundStateSolver
from latscat.LatScatException import (ConstraintViolationError,
                                      EigensolverError)

logger = logging.getLogger(__name__)


class ExactDiagonalizer(GroundStateSolver):
    '''
    Sparse exact diagonalization of the Bose-Hubbard chain
    H = -J sum_<i,j> (b_i^dag b_j + h.c.) + U/2 sum_i n_i (n_i - 1)
        + sum_i eps_i n_i
    in one particle-number sector.

    Small sectors are diagonalized densely; larger ones with ARPACK
    (implicitly restarted Lanczos). The residual bound ||Hv - Ev|| is taken
    relative to max(1, max|H_ij|).
    '''

    DEGENERACY_GAP = 1e-12

    def __init__(
                self,
                tol: float = 1e-10,
                dense_threshold: int = 400,
                attempts: int = 3,
                cache_size: int = 32
            ) -> None:
        '''
        :param float tol: (optional) relative residual bound.
        :param int dense_threshold: (optional) largest dense dimension.
        :param int attempts: (optional) ARPACK tries, each with a doubled
            Krylov space and iteration budget.
        :param int cache_size: (optional) ground states kept, least recently
            used first out.
        '''
        self._tol = tol
        self._dense_threshold = dense_threshold
        if cache_size < 1:
            raise ConstraintViolationError(
                f'cache_size >= 1 required, got {cache_size}')
        self._attempts = attempts
        self._cache_size = cache_size
        self._cache = OrderedDict()

    @property
    def tol(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._tol

    @staticmethod
    def build_basis(sites: int, bosons: int, n_cap: int = None) -> FockBasis:
        return FockBasis(sites, bosons, n_cap)

    @staticmethod
    def hamiltonian(spec, basis: FockBasis = None) -> sparse.csr_matrix:
        '''Sparse Hamiltonian of ``spec`` in its Fock basis.'''
        basis = basis or spec.basis()
        onsite = np.zeros(spec.sites)
        if spec.disorder is not None:
            onsite = spec.disorder.energies(spec.sites)
        bonds = spec.bonds
        matrix = basis.one_body(onsite, bonds,
                                np.full(len(bonds), -spec.hopping))
        n = basis.states
        interaction = spec.interaction / 2.0 * np.sum(n * (n - 1), axis=1)
        return (matrix + sparse.diags(interaction)).tocsr()

    def ground_state(self, spec) -> EDState:
        '''Lowest eigenpair of the fixed-N chain.

        :param spec: chain description.
        :type spec: :class:`latscat.ChainSpec.ChainSpec`
        :returns: gauge-fixed ground state.
        :rtype: :class:`latscat.EDState.EDState`
        :raises: EigensolverError: on non-convergence or residual failure.
        '''
        key = spec.sector_key
        if key in self._cache:
            self._cache.move_to_end(key)
            return self._cache[key]

        basis = spec.basis()
        h = self.hamiltonian(spec, basis)
        values, vectors = self._lowest(h)
        vector = vectors[:, 0]
        vector = vector / np.linalg.norm(vector)
        # largest-magnitude amplitude real and positive
        if vector[np.argmax(np.abs(vector))] < 0:
            vector = -vector
        energy = float(values[0])

        scale = max(1.0, float(abs(h).max())) if h.nnz else 1.0
        residual = float(np.linalg.norm(h @ vector - energy * vector))
        if residual > self._tol * scale:
            raise EigensolverError(
                f'residual {residual:.3e} above {self._tol * scale:.3e} '
                f'for {spec!r}')

        gap = float(values[1] - values[0]) if len(values) > 1 else np.inf
        degenerate = gap < self.DEGENERACY_GAP
        if degenerate:
            logger.warning('degenerate ground space (gap %.3e) for %r',
                           gap, spec)
        logger.debug('ground state dim=%d E=%.12g residual=%.3e',
                     basis.dimension, energy, residual)

        state = EDState(spec, basis, vector, energy, residual, gap,
                        degenerate)
        self._cache[key] = state
        if len(self._cache) > self._cache_size:
            self._cache.popitem(last=False)
        return state

    def _lowest(self, h: sparse.csr_matrix) -> tuple:
        dimension = h.shape[0]
        count = min(2, dimension)
        if dimension <= self._dense_threshold:
            return eigh(h.toarray(), subset_by_index=[0, count - 1])

        v0 = np.full(dimension, 1.0 / np.sqrt(dimension))
        retrying = Retrying(
            retry=retry_if_exception_type(ArpackNoConvergence),
            stop=stop_after_attempt(self._attempts),
            before_sleep=before_sleep_log(logger, logging.INFO))
        try:
            for attempt in retrying:
                with attempt:
                    scale = 2 ** (attempt.retry_state.attempt_number - 1)
                    values, vectors = eigsh(
                        h, k=count, which='SA', v0=v0, tol=0,
                        ncv=min(dimension, 20 * scale),
                        maxiter=dimension * 10 * scale)
        except RetryError as error:
            raise EigensolverError(
                f'ARPACK did not converge after {self._attempts} attempts'
            ) from error
        order = np.argsort(values)
        return values[order], vectors[:, order]
