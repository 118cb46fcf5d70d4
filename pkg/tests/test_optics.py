import unittest

import numpy as np

from latscat.CouplingCoefficients import CouplingCoefficients
from latscat.CouplingPrefactor import CouplingPrefactor
from latscat.LatScatException import (ConstraintViolationError,
                                      GeometryError, WindowMismatchError)
from latscat.LatticePotential import LatticePotential
from latscat.LightMode import LightMode
from latscat.MeasurementGeometry import MeasurementGeometry


class LightModeTest(unittest.TestCase):

    def test_preconditions(self) -> None:
        self.assertRaises(ConstraintViolationError, LightMode, 'spherical',
                          1.0)
        self.assertRaises(ConstraintViolationError, LightMode, 'standing',
                          1.0, 0.0, 2)
        self.assertRaises(ConstraintViolationError, LightMode, 'travelling',
                          0.0)

    def test_value(self) -> None:
        x = np.array([0.0, 0.5, 1.0])
        standing = LightMode('standing', 1.0, np.pi / 2)
        np.testing.assert_allclose(standing.value(x),
                                   np.cos(np.pi * x + np.pi / 2), atol=1e-15)
        travelling = LightMode('travelling', 1.0)
        np.testing.assert_allclose(np.abs(travelling.value(x)), 1.0)
        self.assertAlmostEqual(travelling.value(1.0).real, -1.0)

    def test_from_angle(self) -> None:
        mode = LightMode.from_angle('travelling', np.pi / 6, label=1)
        self.assertAlmostEqual(mode.kx(), np.pi / 2)
        self.assertAlmostEqual(mode.magnitude(), np.pi)
        self.assertEqual(mode.label, 1)
        np.testing.assert_allclose(mode.k3(2.0), mode.k(2.0))


class CouplingPrefactorTest(unittest.TestCase):

    def test_cavity(self) -> None:
        prefactor = CouplingPrefactor.cavity(1.0, 1.0, 2.0, 0.0, 1.0, 1.0)
        self.assertAlmostEqual(prefactor.value, -0.5j)
        self.assertAlmostEqual(prefactor.magnitude, 0.5)
        self.assertAlmostEqual(prefactor.phase, -np.pi / 2)
        self.assertAlmostEqual(prefactor.quadrature_phase(0.0), np.pi / 2)
        self.assertEqual(prefactor.variant, 'cavity')

    def test_cavity_preconditions(self) -> None:
        self.assertRaises(ConstraintViolationError, CouplingPrefactor.cavity,
                          1.0, 1.0, 0.0, 1.0, 1.0, 1.0)
        self.assertRaises(ConstraintViolationError, CouplingPrefactor.cavity,
                          1.0, 1.0, 1.0, 0.0, 0.0, 1.0)

    def test_free_space(self) -> None:
        prefactor = CouplingPrefactor.free_space(
            2.5e-29, 100.0, 2.4e15, 3.8e9, 1.0)
        self.assertGreater(prefactor.magnitude, 0.0)
        self.assertEqual(prefactor.phase, 0.0)
        self.assertRaises(ConstraintViolationError,
                          CouplingPrefactor.free_space,
                          2.5e-29, 100.0, 2.4e15, 3.8e9, 0.0)

    def test_unit(self) -> None:
        prefactor = CouplingPrefactor.unit(2.0)
        self.assertEqual(prefactor.value, 2.0)
        self.assertRaises(ConstraintViolationError, CouplingPrefactor,
                          'laser', 1.0, {})


class CouplingCoefficientsTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls) -> None:
        cls.basis = LatticePotential(5.0).solve_bloch_band().build_wannier()

    def test_shapes(self) -> None:
        self.assertRaises(ConstraintViolationError, CouplingCoefficients,
                          [1.0, 1.0], [0.5, 0.5])
        self.assertRaises(WindowMismatchError, CouplingCoefficients,
                          [1.0, 1.0, 1.0], [0.5, 0.5], 2)
        self.assertRaises(WindowMismatchError, CouplingCoefficients,
                          [1.0, 1.0], [0.5], 4, 3)

    def test_window(self) -> None:
        coeffs = CouplingCoefficients.uniform(1.0, 0.5, 2, total_sites=4)
        self.assertEqual(coeffs.offset, 1)
        np.testing.assert_allclose(coeffs.full_density(), [0, 1, 1, 0])
        np.testing.assert_allclose(coeffs.full_bond(), [0, 0.5, 0])
        np.testing.assert_allclose(coeffs.positions, [1.0, 2.0])
        matrix = coeffs.matrix()
        np.testing.assert_allclose(matrix, matrix.T)

    def test_adjoint(self) -> None:
        coeffs = CouplingCoefficients([1j, 2.0], [1.0 + 1j])
        adjoint = coeffs.adjoint()
        np.testing.assert_allclose(adjoint.density, [-1j, 2.0])
        np.testing.assert_allclose(adjoint.bond, [1.0 - 1j])

    def test_diffraction_maximum(self) -> None:
        geometry = MeasurementGeometry.diffraction_maximum(self.basis)
        self.assertEqual(geometry.name, 'max')
        closed = geometry.closed_form_db(self.basis, 6)
        np.testing.assert_allclose(closed.density, 0.0, atol=1e-12)
        np.testing.assert_allclose(closed.bond, closed.bond[0], atol=1e-12)
        ft_w1 = self.basis.fourier_overlap('W1', 2 * np.pi / self.basis.period)
        self.assertAlmostEqual(closed.bond[0].real / ft_w1, 0.5, places=6)
        self.assertAlmostEqual(closed.bond[0].imag, 0.0, places=12)
        ratio = -self.basis.fourier_overlap('W0', 2 * np.pi / self.basis.period) \
            / self.basis.fourier_overlap('W0', 0.0)
        self.assertAlmostEqual(geometry.detected.phase,
                               np.pi - np.arccos(ratio) / 2.0)

        numeric = geometry.coupling_coefficients(self.basis, 6)
        np.testing.assert_allclose(numeric.density, closed.density,
                                   atol=1e-5)
        np.testing.assert_allclose(numeric.bond, closed.bond, atol=1e-5)

    def test_diffraction_minimum(self) -> None:
        geometry = MeasurementGeometry.diffraction_minimum()
        closed = geometry.closed_form_db(self.basis, 5)
        np.testing.assert_allclose(closed.density, 0.0, atol=1e-12)
        ft = self.basis.fourier_overlap('W1', np.pi)
        expected = [(-1) ** (i + 1) * ft for i in range(4)]
        np.testing.assert_allclose(closed.bond.real, expected, atol=1e-12)

    def test_closed_form_needs_standing_waves(self) -> None:
        geometry = MeasurementGeometry.diffraction_minimum(travelling=True)
        self.assertRaises(GeometryError, geometry.closed_form_db,
                          self.basis, 4)

    def test_density_geometry(self) -> None:
        geometry = MeasurementGeometry.density(0.0, 0.0)
        coeffs = geometry.coupling_coefficients(self.basis, 3)
        np.testing.assert_allclose(coeffs.density, 1.0, atol=1e-6)
        self.assertEqual(len(coeffs.beyond_nearest), 1)

    def test_bragg_peaks(self) -> None:
        peaks = MeasurementGeometry.density(0.0).bragg_peaks()
        np.testing.assert_allclose(peaks['generalized'],
                                   [-np.pi / 2, np.pi / 2])
        self.assertEqual(peaks['classical'], [])

        standing = MeasurementGeometry(
            LightMode.from_angle('travelling', 0.0, label=0),
            LightMode.from_angle('standing', 0.0, label=1))
        peaks = standing.bragg_peaks()
        np.testing.assert_allclose(peaks['generalized'],
                                   [-np.pi / 2, 0.0, np.pi / 2], atol=1e-12)

    def test_beta(self) -> None:
        prefactor = CouplingPrefactor.cavity(1.0, 1.0, 2.0, 0.0, 1.0, 1.0)
        geometry = MeasurementGeometry.diffraction_minimum(
            prefactor=prefactor, lo_phase=0.25)
        self.assertAlmostEqual(geometry.beta, 0.25 + np.pi / 2)


if __name__ == '__main__':
    unittest.main()
