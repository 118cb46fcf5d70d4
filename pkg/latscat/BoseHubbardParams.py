from latscat.LatScatException import ConstraintViolationError


class BoseHubbardParams:
    '''
    Bose-Hubbard couplings for the mean-field solver:
    H = -J sum_<i,j> b_i^dag b_j + U/2 sum_i n_i (n_i - 1) - mu sum_i n_i.
    '''

    COORDINATIONS = (2, 4, 6)

    def __init__(
                self,
                hopping: float,
                interaction: float,
                mu: float,
                coordination: int = 2,
                n_max: int = 12
            ) -> None:
        '''
        :param float hopping: J, nearest-neighbour tunnelling.
        :param float interaction: on-site repulsion U.
        :param float mu: chemical potential.
        :param int coordination: (optional) z, 2, 4 or 6.
        :param int n_max: (optional) Fock cutoff per site (>= 6).
        :raises: ConstraintViolationError: if a precondition fails.
        '''
        if interaction < 0:
            raise ConstraintViolationError(
                f'interaction >= 0 required, got {interaction}')
        if hopping < 0:
            raise ConstraintViolationError(
                f'hopping >= 0 required, got {hopping}')
        if coordination not in self.COORDINATIONS:
            raise ConstraintViolationError(
                f'coordination must be one of {self.COORDINATIONS}, '
                f'got {coordination}')
        if n_max < 6:
            raise ConstraintViolationError(f'n_max >= 6 required, got {n_max}')
        self._hopping = float(hopping)
        self._interaction = float(interaction)
        self._mu = float(mu)
        self._coordination = int(coordination)
        self._n_max = int(n_max)

    def __repr__(self) -> str:
        return (f'BoseHubbardParams(hopping={self._hopping:.6g}, '
                f'interaction={self._interaction:.6g}, mu={self._mu:.6g}, '
                f'coordination={self._coordination}, n_max={self._n_max})')

    @classmethod
    def from_ratios(
                cls,
                u: float,
                mu: float,
                coordination: int = 2,
                n_max: int = 12
            ) -> 'BoseHubbardParams':
        '''Couplings in units of zJ: U/zJ = u and mu/zJ = mu.'''
        return cls(1.0 / coordination, u, mu, coordination, n_max)

    @property
    def hopping(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._hopping

    @property
    def interaction(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._interaction

    @property
    def mu(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._mu

    @property
    def coordination(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._coordination

    @property
    def n_max(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._n_max

    @property
    def zj(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._coordination * self._hopping

    def with_cutoff(self, n_max: int) -> 'BoseHubbardParams':
        return BoseHubbardParams(self._hopping, self._interaction, self._mu,
                                 self._coordination, n_max)

    def with_mu(self, mu: float) -> 'BoseHubbardParams':
        return BoseHubbardParams(self._hopping, self._interaction, mu,
                                 self._coordination, self._n_max)
