from abc import ABC, abstractmethod


class GroundStateSolver(ABC):
    '''
    Interface of the one-dimensional ground-state solvers used by scans and
    phase maps. :class:`latscat.ExactDiagonalizer.ExactDiagonalizer` is the
    only implementation; a matrix-product-state solver would plug in here.
    '''

    @abstractmethod
    def ground_state(self, spec):
        '''Ground state of a fixed-N chain.

        :param spec: chain description.
        :type spec: :class:`latscat.ChainSpec.ChainSpec`
        :rtype: :class:`latscat.EDState.EDState`
        '''

    def grand_canonical(self, template, mu: float, max_filling: float = 1.5):
        '''Ground state minimizing E(N) - mu N over N = 0..max_filling M.

        :param template: chain whose particle number is ignored.
        :type template: :class:`latscat.ChainSpec.ChainSpec`
        :param float mu: chemical potential in the chain's energy unit.
        :param float max_filling: (optional) largest density tried.
        :rtype: :class:`latscat.EDState.EDState`
        '''
        best = None
        best_value = None
        for bosons in range(int(max_filling * template.sites) + 1):
            state = self.ground_state(template.with_bosons(bosons))
            value = state.energy - mu * bosons
            if best is None or value < best_value - 1e-12:
                best, best_value = state, value
        return best
