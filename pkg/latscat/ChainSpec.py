from latscat.DisorderSpec import DisorderSpec
from latscat.FockBasis import FockBasis
from latscat.LatScatException import ConstraintViolationError


class ChainSpec:
    '''
    One-dimensional Bose-Hubbard chain for exact diagonalization.

    Couplings are absolute energies; :meth:`from_ratios` builds a chain in
    units of 2J from U/2J, mu/2J and V/2J.
    '''

    BOUNDARIES = ('open', 'periodic')
    SOFT_CAP = 6

    def __init__(
                self,
                sites: int,
                bosons: int,
                interaction: float,
                hopping: float = 1.0,
                mu: float = 0.0,
                boundary: str = 'open',
                disorder: DisorderSpec = None,
                n_cap: int = None
            ) -> None:
        '''
        :param int sites: M, at most 12.
        :param int bosons: N.
        :param float interaction: U >= 0.
        :param float hopping: (optional) J.
        :param float mu: (optional) chemical potential, only used by
            grand-canonical sweeps.
        :param str boundary: (optional) 'open' or 'periodic'.
        :param disorder: (optional) quasiperiodic on-site energies.
        :type disorder: :class:`latscat.DisorderSpec.DisorderSpec`
        :param int n_cap: (optional) per-site cutoff; min(N, 6) when
            U/2J >= 1, N otherwise.
        :raises: ConstraintViolationError: if a field is invalid.
        :raises: BasisDimensionError: if the basis is beyond ED reach.
        '''
        if interaction < 0:
            raise ConstraintViolationError(
                f'interaction >= 0 required, got {interaction}')
        if hopping < 0:
            raise ConstraintViolationError(
                f'hopping >= 0 required, got {hopping}')
        if boundary not in self.BOUNDARIES:
            raise ConstraintViolationError(
                f'boundary must be one of {self.BOUNDARIES}, got {boundary!r}')
        if bosons < 0:
            raise ConstraintViolationError(f'bosons >= 0 required, got {bosons}')
        FockBasis.check_dimension(sites, bosons)
        if n_cap is None:
            strong = hopping == 0 or interaction / (2.0 * hopping) >= 1.0
            n_cap = min(bosons, self.SOFT_CAP) if strong else bosons
        if n_cap > bosons:
            raise ConstraintViolationError(
                f'n_cap <= N required, got n_cap = {n_cap}, N = {bosons}')

        self._sites = int(sites)
        self._bosons = int(bosons)
        self._interaction = float(interaction)
        self._hopping = float(hopping)
        self._mu = float(mu)
        self._boundary = boundary
        self._disorder = disorder
        self._n_cap = int(n_cap)

    def __repr__(self) -> str:
        return (f'ChainSpec(sites={self._sites}, bosons={self._bosons}, '
                f'interaction={self._interaction:.6g}, '
                f'hopping={self._hopping:.6g}, mu={self._mu:.6g}, '
                f'boundary={self._boundary!r}, disorder={self._disorder!r}, '
                f'n_cap={self._n_cap})')

    @classmethod
    def from_ratios(
                cls,
                sites: int,
                bosons: int,
                u: float,
                mu: float = 0.0,
                v: float = 0.0,
                ratio: float = 0.77,
                offset: float = 0.0,
                boundary: str = 'open'
            ) -> 'ChainSpec':
        '''Chain with J = 1/2 so that couplings read in units of 2J.'''
        disorder = DisorderSpec(v, ratio, offset) if v else None
        return cls(sites, bosons, u, 0.5, mu, boundary, disorder)

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
    def interaction(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._interaction

    @property
    def hopping(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._hopping

    @property
    def mu(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._mu

    @property
    def boundary(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self._boundary

    @property
    def disorder(self) -> DisorderSpec:
        '''
        :type: :class:`latscat.DisorderSpec.DisorderSpec` or None
        '''
        return self._disorder

    @property
    def n_cap(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._n_cap

    @property
    def bonds(self) -> list:
        '''
        Nearest-neighbour pairs (i, j).

        :type: :class:`list`
        '''
        pairs = [(i, i + 1) for i in range(self._sites - 1)]
        if self._boundary == 'periodic' and self._sites > 2:
            pairs.append((self._sites - 1, 0))
        return pairs

    @property
    def sector_key(self) -> tuple:
        '''
        Everything that fixes the fixed-N spectrum (mu excluded).

        :type: :class:`tuple`
        '''
        return (self._sites, self._bosons, self._interaction, self._hopping,
                self._boundary, self._disorder, self._n_cap)

    def with_bosons(self, bosons: int) -> 'ChainSpec':
        '''Same chain in another particle-number sector.'''
        return ChainSpec(self._sites, bosons, self._interaction,
                         self._hopping, self._mu, self._boundary,
                         self._disorder)

    def with_mu(self, mu: float) -> 'ChainSpec':
        return ChainSpec(self._sites, self._bosons, self._interaction,
                         self._hopping, mu, self._boundary, self._disorder,
                         self._n_cap)

    def basis(self) -> FockBasis:
        '''Fock basis of this sector.'''
        return FockBasis(self._sites, self._bosons, self._n_cap)
