import numpy as np
from scipy import sparse
from scipy.special import comb

from latscat.LatScatException import (BasisDimensionError,
                                      ConstraintViolationError)


class FockBasis:
    '''
    Occupation-number basis of N bosons on M sites with at most n_cap
    bosons per site, in descending lexicographic order.

    Each state is keyed by its occupations read as digits in base n_cap + 1,
    site 0 most significant; keys decrease along the basis.
    '''

    MAX_SITES = 12
    MAX_DIMENSION = 5_000_000

    def __init__(self, sites: int, bosons: int, n_cap: int = None) -> None:
        '''
        :param int sites: M.
        :param int bosons: N.
        :param int n_cap: (optional) per-site cutoff, defaults to N.
        :raises: BasisDimensionError: if M > 12 or C(N+M-1, N) > 5e6.
        '''
        if sites < 1 or bosons < 0:
            raise ConstraintViolationError(
                f'sites >= 1 and bosons >= 0 required, got {sites}, {bosons}')
        if n_cap is None:
            n_cap = bosons
        if n_cap < 0 or n_cap > bosons:
            raise ConstraintViolationError(
                f'0 <= n_cap <= N required, got n_cap = {n_cap}, N = {bosons}')
        if bosons > sites * n_cap:
            raise ConstraintViolationError(
                f'{bosons} bosons do not fit {sites} sites with n_cap = {n_cap}')
        self.check_dimension(sites, bosons)

        self._sites = sites
        self._bosons = bosons
        self._n_cap = n_cap
        self._base = n_cap + 1
        self._weights = self._base ** np.arange(sites - 1, -1, -1, dtype=np.int64)

        self._states = np.array(
            list(self._enumerate(sites, bosons, n_cap)), dtype=np.int64
        ).reshape(-1, sites)
        self._keys = self._states @ self._weights
        # ascending view for searchsorted
        self._ascending = -self._keys

    def __len__(self) -> int:
        return len(self._states)

    def __repr__(self) -> str:
        return (f'FockBasis(sites={self._sites}, bosons={self._bosons}, '
                f'n_cap={self._n_cap}, dimension={len(self)})')

    @classmethod
    def check_dimension(cls, sites: int, bosons: int) -> int:
        '''Uncapped dimension C(N+M-1, N), raising when above the ED bound.'''
        if sites > cls.MAX_SITES:
            raise BasisDimensionError(
                f'M = {sites} exceeds the exact-diagonalization bound '
                f'M <= {cls.MAX_SITES}')
        dimension = int(comb(bosons + sites - 1, bosons, exact=True))
        if dimension > cls.MAX_DIMENSION:
            raise BasisDimensionError(
                f'basis dimension C({bosons + sites - 1}, {bosons}) = '
                f'{dimension} exceeds {cls.MAX_DIMENSION}')
        return dimension

    @staticmethod
    def _enumerate(sites: int, bosons: int, cap: int):
        if sites == 1:
            if bosons <= cap:
                yield (bosons,)
            return
        for first in range(min(bosons, cap), -1, -1):
            rest = bosons - first
            if rest > cap * (sites - 1):
                break
            for tail in FockBasis._enumerate(sites - 1, rest, cap):
                yield (first,) + tail

    @property
    def sites(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._sites

    @property
    def bosons(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._bosons

    @property
    def n_cap(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._n_cap

    @property
    def dimension(self) -> int:
        '''
        :type: :class:`int`
        '''
        return len(self._states)

    @property
    def states(self) -> np.ndarray:
        '''
        Occupations, shape (dimension, M).

        :type: :class:`numpy.ndarray`
        '''
        return self._states

    @property
    def keys(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._keys

    def state(self, index: int) -> tuple:
        return tuple(int(n) for n in self._states[index])

    def index(self, occupations) -> np.ndarray:
        '''Basis indices of occupation rows, -1 where absent.'''
        occupations = np.atleast_2d(np.asarray(occupations, dtype=np.int64))
        inside = np.all((occupations >= 0) & (occupations <= self._n_cap),
                        axis=1)
        keys = occupations @ self._weights
        return self._lookup(keys, inside)

    def _lookup(self, keys: np.ndarray, valid: np.ndarray) -> np.ndarray:
        position = np.searchsorted(self._ascending, -keys)
        position = np.clip(position, 0, len(self._keys) - 1)
        found = valid & (self._keys[position] == keys)
        return np.where(found, position, -1)

    def hop(self, i: int, j: int) -> tuple:
        '''Matrix elements of b_i^dag b_j.

        :returns: (target indices, source indices, amplitudes) over the
            source states the operator does not annihilate.
        :rtype: :class:`tuple`
        '''
        n = self._states
        source = np.nonzero((n[:, j] > 0) & (n[:, i] < self._n_cap))[0]
        keys = self._keys[source] + self._weights[i] - self._weights[j]
        target = self._lookup(keys, np.ones(len(source), dtype=bool))
        amplitude = np.sqrt((n[source, i] + 1.0) * n[source, j])
        return target, source, amplitude

    def one_body(self, site_terms, bonds, bond_terms) -> sparse.csr_matrix:
        '''Sparse sum_i a_i n_i + sum_b c_b (b_i^dag b_j + b_j^dag b_i).

        :param site_terms: M coefficients a_i.
        :param bonds: (i, j) site pairs.
        :param bond_terms: one coefficient c_b per bond.
        :rtype: :class:`scipy.sparse.csr_matrix`
        '''
        site_terms = np.asarray(site_terms)
        bond_terms = np.asarray(bond_terms)
        dtype = np.result_type(site_terms.dtype, bond_terms.dtype, float)
        rows = [np.arange(self.dimension)]
        cols = [np.arange(self.dimension)]
        values = [self._states @ site_terms]
        for (i, j), c in zip(bonds, bond_terms):
            if c == 0:
                continue
            for a, b in ((i, j), (j, i)):
                target, source, amplitude = self.hop(a, b)
                rows.append(target)
                cols.append(source)
                values.append(c * amplitude)
        matrix = sparse.coo_matrix(
            (np.concatenate(values).astype(dtype),
             (np.concatenate(rows), np.concatenate(cols))),
            shape=(self.dimension, self.dimension))
        return matrix.tocsr()
