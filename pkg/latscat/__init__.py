from .AngularMap import AngularMap
from .AngularScan import AngularScan
from .ChainSpec import ChainSpec
from .CouplingCoefficients import CouplingCoefficients
from .CouplingPrefactor import CouplingPrefactor
from .DisorderSpec import DisorderSpec
from .ExactDiagonalizer import ExactDiagonalizer
from .GutzwillerSolver import GutzwillerSolver
from .LatScat import LatScat
from .LatticePotential import LatticePotential
from .LightMode import LightMode
from .MeasurementGeometry import MeasurementGeometry
from .PhaseMapper import PhaseMapper
from .RunConfig import parse_config
from .Scattering import Scattering

__version__ = '0.1.0'
