import logging

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq
from tenacity import (Retrying, before_sleep_log, retry_if_exception_type,
                      stop_after_attempt)

from latscat.BoseHubbardParams import BoseHubbardParams
from latscat.GutzwillerState import GutzwillerState
from latscat.LatScatException import (ConstraintViolationError,
                                      FockCutoffError,
                                      GutzwillerConvergenceError)

logger = logging.getLogger(__name__)


class GutzwillerSolver:
    '''
    Self-consistent decoupling mean field of the Bose-Hubbard model.

    Each site sees h(Phi) = -zJ Phi (b + b^dag) + U/2 n(n-1) - mu n
    + zJ Phi^2, and Phi must equal <b> in the ground state of h(Phi).
    Phi = 0 is always a fixed point; a positive fixed point is searched by
    bracketing <b>(Phi) - Phi and refined with damped updates
    Phi <- (1 - damping) Phi + damping <b>. The branch of lower energy wins.
    '''

    CUTOFF_TOL = 1e-8
    TIE_TOL = 1e-12
    PHI_FLOOR = 1e-9

    def __init__(
                self,
                tol: float = 1e-12,
                max_iter: int = 10000,
                damping: float = 0.5,
                phi0: float = 0.5,
                max_doublings: int = 3
            ) -> None:
        '''
        :param float tol: (optional) bound on |Phi_{k+1} - Phi_k|, <= 1e-10.
        :param int max_iter: (optional) damped-update budget.
        :param float damping: (optional) weight of the new Phi per update.
        :param float phi0: (optional) initial guess of the ordered branch.
        :param int max_doublings: (optional) Fock cutoff doublings on
            cutoff errors.
        '''
        if not 0 < tol <= 1e-10:
            raise ConstraintViolationError(f'tol must be in (0, 1e-10], got {tol}')
        if not 0 < damping <= 1:
            raise ConstraintViolationError(
                f'damping must be in (0, 1], got {damping}')
        self._tol = tol
        self._max_iter = max_iter
        self._damping = damping
        self._phi0 = phi0
        self._max_doublings = max_doublings

    @property
    def tol(self) -> float:
        '''
        :type: :class:`float`
        '''
        return self._tol

    def solve(self, params: BoseHubbardParams) -> GutzwillerState:
        '''Lowest-energy fixed point, doubling n_max on cutoff errors.

        :param params: couplings and Fock cutoff.
        :type params: :class:`latscat.BoseHubbardParams.BoseHubbardParams`
        :returns: converged product state.
        :rtype: :class:`latscat.GutzwillerState.GutzwillerState`
        :raises: GutzwillerConvergenceError: if damped updates stall.
        :raises: FockCutoffError: if the cutoff stays too small.
        '''
        retrying = Retrying(
            retry=retry_if_exception_type(FockCutoffError),
            stop=stop_after_attempt(self._max_doublings + 1),
            before_sleep=before_sleep_log(logger, logging.INFO),
            reraise=True)
        for attempt in retrying:
            with attempt:
                doublings = attempt.retry_state.attempt_number - 1
                state = self._solve_once(
                    params.with_cutoff(params.n_max * 2 ** doublings))
        return state

    def solve_ratios(
                self,
                u: float,
                mu: float,
                coordination: int = 2,
                n_max: int = 12
            ) -> GutzwillerState:
        '''Solve at U/zJ = u and mu/zJ = mu.'''
        return self.solve(
            BoseHubbardParams.from_ratios(u, mu, coordination, n_max))

    def solve_at_density(
                self,
                u: float,
                density: float,
                coordination: int = 2,
                n_max: int = 12
            ) -> GutzwillerState:
        '''Tune mu/zJ so that <n> matches density at U/zJ = u.

        Inside a Mott lobe any mu on the plateau is returned.
        '''
        if density <= 0:
            raise ConstraintViolationError(
                f'density > 0 required, got {density}')

        def excess(mu):
            return self.solve_ratios(u, mu, coordination, n_max).density \
                - density

        low = u * (np.ceil(density) - 1.0) - 1.0 - 1e-3
        while excess(low) >= 0:
            low -= max(u, 0.5)
        delta = 0.25 * min(max(u, 1e-9), 1.0)
        high = u * density - 1.0 + delta
        while excess(high) <= 0:
            delta *= 2.0
            high = u * density - 1.0 + delta
        mu = brentq(excess, low, high, xtol=1e-13, rtol=1e-14)
        logger.debug('density %.6g reached at mu/zJ = %.12g', density, mu)
        return self.solve_ratios(u, mu, coordination, n_max)

    def _solve_once(self, params: BoseHubbardParams) -> GutzwillerState:
        zero_f, zero_energy = self._ground(params, 0.0)
        best = GutzwillerState(params, zero_f, zero_energy)

        if params.zj > 0:
            ordered = self._ordered_branch(params)
            if ordered is not None:
                threshold = zero_energy - self.TIE_TOL * max(1.0, abs(zero_energy))
                if ordered.energy < threshold:
                    best = ordered

        if best.cutoff_weight >= self.CUTOFF_TOL:
            raise FockCutoffError(params.n_max, best.cutoff_weight)
        logger.debug('gutzwiller %r: phi=%.12g n=%.12g', params, best.phi,
                     best.density)
        return best

    def _ordered_branch(self, params: BoseHubbardParams):
        def gap(phi):
            f, _ = self._ground(params, phi)
            return self._order_parameter(f) - phi

        high = np.sqrt(params.n_max)
        low = None
        phi = self._phi0
        while phi > self.PHI_FLOOR:
            if gap(phi) > 0:
                low = phi
                break
            phi /= 2.0
        if low is None:
            phi = 2.0 * self._phi0
            while phi < high:
                if gap(phi) > 0:
                    low = phi
                    break
                phi *= 2.0
        if low is None:
            return None
        if gap(high) >= 0:
            f, _ = self._ground(params, high)
            raise FockCutoffError(params.n_max, float(f[-1] ** 2))

        phi = brentq(gap, low, high, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        residual = np.inf
        for iteration in range(1, self._max_iter + 1):
            f, energy = self._ground(params, phi)
            updated = (1.0 - self._damping) * phi \
                + self._damping * self._order_parameter(f)
            residual = abs(updated - phi)
            phi = updated
            if residual <= self._tol:
                f, energy = self._ground(params, phi)
                logger.debug('ordered branch converged after %d updates, '
                             'residual %.3e', iteration, residual)
                return GutzwillerState(params, f, energy, True, residual,
                                       iteration)
        raise GutzwillerConvergenceError(
            f'no fixed point after {self._max_iter} updates', residual)

    @staticmethod
    def _order_parameter(f: np.ndarray) -> float:
        n = np.arange(1, len(f))
        return float(np.sum(np.sqrt(n) * f[:-1] * f[1:]))

    @staticmethod
    def _ground(params: BoseHubbardParams, phi: float) -> tuple:
        n = np.arange(params.n_max + 1)
        zj = params.zj
        diagonal = params.interaction / 2.0 * n * (n - 1) - params.mu * n \
            + zj * phi ** 2
        off_diagonal = -zj * phi * np.sqrt(n[1:])
        value, vector = eigh_tridiagonal(
            diagonal, off_diagonal, select='i', select_range=(0, 0))
        # nonpositive off-diagonals: the ground vector has one sign
        return np.abs(vector[:, 0]), float(value[0])
