from latscat.LatScatObject import LatScatObject


class ScanSummary(LatScatObject):
    '''
    Dip statistics of an angular scan: the maximum R_max, the dip floor,
    the full width W_R at half depth (in units of delta k d) and the dip
    centre angle.
    '''

    def __init__(
                self,
                r_max: float,
                r_min: float,
                w_r: float,
                centre: float,
                k_b: float = None
            ) -> None:
        super().__init__()
        self._r_max = float(r_max)
        self._r_min = float(r_min)
        self._w_r = float(w_r)
        self._centre = float(centre)
        self._k_b = k_b
        self._data = {
            'R_max': self._r_max,
            'R_min': self._r_min,
            'W_R': self._w_r,
            'centre': self._centre,
            'K_b': k_b,
        }

    @property
    def r_max(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._r_max

    @property
    def r_min(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._r_min

    @property
    def w_r(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._w_r

    @property
    def centre(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._centre

    @property
    def k_b(self) -> float:
        '''
        :type: :class:`float` or None
        '''
        return self._k_b

    def with_luttinger(self, k_b: float) -> 'ScanSummary':
        return ScanSummary(self._r_max, self._r_min, self._w_r, self._centre,
                           k_b)
