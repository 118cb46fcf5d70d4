from typing import Union

import numpy as np

from latscat.LatScatException import ConstraintViolationError


class LightMode:
    '''
    This class represents a probe (label 0) or detected (label 1) light mode:
    a travelling wave exp(i k.r + i phi) or a standing wave cos(k.r + phi).

    Wavevector components are given in units of pi/d.
    '''

    KINDS = ('travelling', 'standing')

    def __init__(
                self,
                kind: str,
                wavevector: Union[float, list],
                phase: float = 0.0,
                label: int = 0
            ) -> None:
        '''
        :param str kind: 'travelling' or 'standing'.
        :param wavevector: k in units of pi/d, scalar (1D) or 3-vector.
        :param float phase: (optional) mode phase phi in radians.
        :param int label: (optional) 0 for the probe, 1 for the detected mode.
        '''
        if kind not in self.KINDS:
            raise ConstraintViolationError(
                f'kind must be one of {self.KINDS}, got {kind!r}')
        if label not in (0, 1):
            raise ConstraintViolationError(f'label must be 0 or 1, got {label}')
        k = np.atleast_1d(np.asarray(wavevector, dtype=float))
        if kind == 'travelling' and not np.linalg.norm(k) > 0:
            raise ConstraintViolationError(
                'travelling modes need a nonzero wavevector')
        self._kind = kind
        self._wavevector = k
        self._phase = float(phase)
        self._label = label

    def __repr__(self) -> str:
        return (f'LightMode({self._kind!r}, {self._wavevector.tolist()}, '
                f'phase={self._phase:.6g}, label={self._label})')

    @classmethod
    def from_angle(
                cls,
                kind: str,
                theta: float,
                magnitude: float = 1.0,
                phase: float = 0.0,
                label: int = 0
            ) -> 'LightMode':
        '''Mode in the x-z plane with k_x = |k| sin(theta), lattice along x.

        The magnitude is in units of pi/d.
        '''
        direction = [np.sin(theta), 0.0, np.cos(theta)]
        return cls(kind, magnitude * np.asarray(direction), phase, label)

    @classmethod
    def from_direction(
                cls,
                kind: str,
                theta: float,
                phi: float,
                magnitude: float = 1.0,
                phase: float = 0.0,
                label: int = 0
            ) -> 'LightMode':
        '''3D mode along the polar angle theta and azimuth phi.'''
        direction = [np.sin(theta) * np.cos(phi),
                     np.sin(theta) * np.sin(phi),
                     np.cos(theta)]
        return cls(kind, magnitude * np.asarray(direction), phase, label)

    @property
    def kind(self) -> str:
        '''
        :type: :class:`str`
        '''
        return self._kind

    @property
    def wavevector(self) -> np.ndarray:
        '''
        :type: :class:`numpy.ndarray`
        '''
        return self._wavevector

    @property
    def phase(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._phase

    @property
    def label(self) -> int:
        '''
        :type: :class:`int`
        '''
        return self._label

    @property
    def is_standing(self) -> bool:
        '''
        :type: :class:`bool`
        '''
        return self._kind == 'standing'

    def k(self, period: float = 1.0) -> np.ndarray:
        '''Wavevector in 1/length units.'''
        return self._wavevector * np.pi / period

    def kx(self, period: float = 1.0) -> float:
        '''x component of the wavevector in 1/length units.'''
        return float(self.k(period)[0])

    def magnitude(self, period: float = 1.0) -> float:
        '''|k| in 1/length units.'''
        return float(np.linalg.norm(self.k(period)))

    def k3(self, period: float = 1.0) -> np.ndarray:
        '''Wavevector padded to three components, 1/length units.'''
        out = np.zeros(3)
        out[:self._wavevector.size] = self.k(period)[:3]
        return out

    def with_phase(self, phase: float) -> 'LightMode':
        return LightMode(self._kind, self._wavevector, phase, self._label)

    def value(self, r, period: float = 1.0, vector: bool = False) -> np.ndarray:
        '''Mode function u(r).

        :param r: positions along the lattice axis x, or 3-vectors with
            ``vector=True`` (last axis of length 3).
        :param float period: (optional) lattice period d.
        :param bool vector: (optional) treat r as 3D positions.
        :returns: exp(i k.r + i phi) or cos(k.r + phi).
        :rtype: :class:`numpy.ndarray` of complex
        '''
        r = np.asarray(r, dtype=float)
        if vector:
            argument = r @ self.k3(period) + self._phase
        else:
            argument = self.kx(period) * r + self._phase
        if self.is_standing:
            return np.cos(argument).astype(complex)
        return np.exp(1j * argument)
