class LatScatException(Exception):
    '''A base class for exceptions.'''

    def __init__(self, *args: object) -> None:
        super().__init__(*args)


class ConfigurationError(LatScatException):
    '''Invalid run description.'''

    def __init__(self, message: str, line: int = None) -> None:
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message)
        self.line = line


class UnknownKeyError(ConfigurationError):
    '''Section or key not declared in the configuration schema.'''


class ConstraintViolationError(ConfigurationError):
    '''Value has the wrong type or violates a physical precondition.'''


class MissingArtifactError(LatScatException):
    '''Upstream artifact required for figure data is absent.'''


class NumericalError(LatScatException):
    '''A solver failed or its output violates an invariant.'''


class BandSolverError(NumericalError):
    '''Bloch eigenproblem failed at a quasimomentum.'''

    def __init__(self, message: str, q: float) -> None:
        super().__init__(f'{message} (q = {q:.12g})')
        self.q = q


class WannierGridError(NumericalError):
    '''Real-space grid too short to hold the Wannier tails.'''


class OutOfRangeError(NumericalError):
    '''Wavenumber outside the tabulated range.'''


class GeometryError(NumericalError):
    '''Light-mode geometry unsupported by the requested operation.'''


class GutzwillerConvergenceError(NumericalError):
    '''Mean-field self-consistency did not converge.'''

    def __init__(self, message: str, residual: float) -> None:
        super().__init__(f'{message} (last residual {residual:.3e})')
        self.residual = residual


class FockCutoffError(NumericalError):
    '''Occupation of the highest Fock level exceeds the cutoff bound.'''

    def __init__(self, n_max: int, weight: float) -> None:
        super().__init__(
            f'Fock cutoff n_max = {n_max} too small: '
            f'|f_n_max|^2 = {weight:.3e}')
        self.n_max = n_max
        self.weight = weight


class EigensolverError(NumericalError):
    '''Iterative eigensolver did not reach the residual bound.'''


class BasisDimensionError(NumericalError):
    '''Many-body basis exceeds the exact-diagonalization bound.'''


class WindowMismatchError(NumericalError):
    '''Coupling-coefficient window does not fit the chain.'''


class NoDipError(NumericalError):
    '''Angular scan has no dip to measure.'''
