import unittest

import numpy as np

from latscat.AngularMap import AngularMap
from latscat.AngularScan import AngularScan
from latscat.ChainSpec import ChainSpec
from latscat.CouplingCoefficients import CouplingCoefficients
from latscat.ExactDiagonalizer import ExactDiagonalizer
from latscat.GutzwillerSolver import GutzwillerSolver
from latscat.LatScatException import ConstraintViolationError, NoDipError
from latscat.LatticePotential import LatticePotential
from latscat.LightMode import LightMode
from latscat.MeasurementGeometry import MeasurementGeometry
from latscat.Scattering import Scattering


class ScatteringTest(unittest.TestCase):

    def test_quantum_addition(self) -> None:
        dd = 0.5 * np.eye(4)
        positions = np.arange(4.0)
        for k1 in (0.0, 1.0, np.pi):
            with self.subTest(k1=k1):
                self.assertAlmostEqual(
                    Scattering.quantum_addition(dd, 0.0, k1, positions), 2.0)
        self.assertAlmostEqual(
            Scattering.structure_factor(dd, np.pi, positions), 0.5)

    def test_quantum_addition_3d(self) -> None:
        dd = np.array([[1.0, -1.0], [-1.0, 1.0]])
        positions = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
        k0 = np.zeros(3)
        self.assertAlmostEqual(
            Scattering.quantum_addition(dd, k0, [0.0, 0.0, np.pi],
                                        positions), 4.0)
        self.assertAlmostEqual(
            Scattering.quantum_addition(dd, k0, [np.pi, 0.0, 0.0],
                                        positions), 0.0)

    def test_asymmetric_correlations(self) -> None:
        dd = np.array([[1.0, 0.5], [0.0, 1.0]])
        self.assertRaises(ConstraintViolationError,
                          Scattering.quantum_addition, dd, 0.0, 1.0,
                          np.arange(2.0))

    def test_photon_rate(self) -> None:
        rate = Scattering.photon_rate(1.9e8, 3.8e9, 3.8e7, 8, 1.0)
        self.assertAlmostEqual(rate / 95000.0, 1.0, places=12)
        self.assertEqual(Scattering.photon_rate(1.9e8, 3.8e9, 3.8e7, 8, 0.0),
                         0.0)
        with self.assertWarns(RuntimeWarning):
            Scattering.photon_rate(1.9e8, 1e8, 3.8e7, 8, 1.0)
        self.assertRaises(ConstraintViolationError, Scattering.photon_rate,
                          1.9e8, 0.0, 3.8e7, 8, 1.0)

    def test_light_quadrature_variance(self) -> None:
        mott = GutzwillerSolver().solve_ratios(10.0, 5.0)
        coeffs = CouplingCoefficients(np.zeros(4), [0.3, -0.3, 0.3])
        geometry = MeasurementGeometry.diffraction_minimum()

        def evaluator(beta):
            return mott.expectation_F(coeffs, beta)

        variance = Scattering.light_quadrature_variance(evaluator, geometry)
        self.assertAlmostEqual(variance,
                               0.25 + mott.min_intensity(4, 1.0, 0.3))
        self.assertEqual(
            Scattering.light_quadrature_variance(None, geometry), 0.25)

    def test_infer_matter_quadratures(self) -> None:
        state = GutzwillerSolver().solve_ratios(2.0, 1.0)
        ft_pi, ft_2pi = 0.2, -0.05
        inferred = Scattering.infer_matter_quadratures(
            state.max_quadrature_mean(6, ft_2pi),
            state.min_intensity(6, 1.0, ft_pi), state.density, 6, 1.0,
            ft_pi, ft_2pi, int(np.sign(state.b2 - state.phi ** 2)))
        self.assertAlmostEqual(inferred['phi2'], state.phi ** 2, places=8)
        self.assertAlmostEqual(inferred['b2'], state.b2, places=6)
        self.assertAlmostEqual(inferred['var_x0'],
                               state.matter_quadrature_variance(0.0),
                               places=6)
        self.assertAlmostEqual(inferred['var_xpi2'],
                               state.matter_quadrature_variance(np.pi / 2),
                               places=6)

    def test_luttinger_parameter(self) -> None:
        solver = ExactDiagonalizer()
        positions = np.arange(6)
        superfluid = Scattering.luttinger_parameter(
            solver.ground_state(ChainSpec.from_ratios(
                6, 6, 0.5, boundary='periodic')).dd, positions)
        mott = Scattering.luttinger_parameter(
            solver.ground_state(ChainSpec.from_ratios(
                6, 6, 10.0, boundary='periodic')).dd, positions)
        self.assertGreater(superfluid.value, mott.value)
        self.assertFalse(mott.reliable)
        self.assertIn('insulating', mott.reason)
        self.assertAlmostEqual(superfluid.k_min, np.pi / 3)


class AngularScanTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls) -> None:
        solver = ExactDiagonalizer()
        cls.superfluid = solver.ground_state(ChainSpec.from_ratios(6, 6, 1.0))
        cls.mott = solver.ground_state(ChainSpec.from_ratios(6, 6, 10.0))

    def test_angle_grid(self) -> None:
        theta = AngularScan.angle_grid(512)
        self.assertEqual(len(theta), 513)
        self.assertAlmostEqual(theta[0], -np.pi / 2)
        self.assertAlmostEqual(theta[256], 0.0)

    def test_forward_direction(self) -> None:
        scan = AngularScan.from_ed(self.superfluid)
        self.assertAlmostEqual(scan.values[256], 0.0, places=10)
        np.testing.assert_allclose(scan.values, scan.values[::-1],
                                   atol=1e-10)
        self.assertEqual(scan.kind, 'R')
        self.assertEqual(int(np.sum(scan.bragg_flags('generalized'))), 2)
        self.assertFalse(np.any(scan.bragg_flags('classical')))

    def test_superfluid_versus_mott(self) -> None:
        superfluid = AngularScan.from_ed(self.superfluid).extract_summary()
        mott = AngularScan.from_ed(self.mott).extract_summary()
        self.assertGreater(superfluid.r_max, mott.r_max)
        self.assertLess(superfluid.w_r, mott.w_r)
        self.assertAlmostEqual(superfluid.centre, 0.0)
        self.assertGreater(mott.w_r, 2.0)
        self.assertEqual(superfluid['R_max'], superfluid.r_max)

    def test_window(self) -> None:
        full = AngularScan.from_ed(self.superfluid)
        window = AngularScan.from_ed(self.superfluid, site_count=4)
        self.assertEqual(window.site_count, 4)
        self.assertLess(np.max(window.values), np.max(full.values))

    def test_classical_terms(self) -> None:
        scan = AngularScan.from_ed(self.superfluid, include_classical=True,
                                   normalization='N_K')
        self.assertEqual(scan.kind, 'intensity')
        self.assertAlmostEqual(scan.values[256], 6.0)
        self.assertRaises(ConstraintViolationError,
                          AngularScan.from_correlations, np.eye(2),
                          np.arange(2.0), include_classical=True)

    def test_mean_field_scan_is_flat(self) -> None:
        state = GutzwillerSolver().solve_ratios(2.0, 1.0)
        scan = AngularScan.from_mf(state, 8)
        np.testing.assert_allclose(scan.values,
                                   8 * state.density_variance)
        self.assertRaises(NoDipError, scan.extract_summary)

    def test_probe_angle(self) -> None:
        scan = AngularScan.from_ed(self.superfluid, theta0=np.pi / 4)
        index = int(np.argmin(np.abs(scan.theta1 - np.pi / 4)))
        self.assertAlmostEqual(scan.values[index], 0.0, places=8)
        self.assertAlmostEqual(scan.theta0, np.pi / 4)

    def test_from_operator(self) -> None:
        basis = LatticePotential(5.0).solve_bloch_band().build_wannier()
        scan = AngularScan.from_operator(
            self.mott.expectation_F, MeasurementGeometry.density(0.0),
            basis, 4, 6, points_per_pi=8)
        self.assertEqual(len(scan.values), 9)
        self.assertTrue(np.all(scan.values > -1e-12))
        self.assertEqual(scan.geometry, 'density')


class AngularMapTest(unittest.TestCase):

    def setUp(self) -> None:
        self.probe = LightMode.from_angle('travelling', 0.0, label=0)

    def test_standing_detection(self) -> None:
        for phase, expected in ((0.0, 1.0), (np.pi / 2, 0.0)):
            with self.subTest(phase=phase):
                detected = LightMode('standing', [0.0, 0.0, 1.0], phase, 1)
                result = AngularMap.compute(1.0, 1.0, self.probe, detected,
                                            (2, 2, 2), 5, 8)
                self.assertEqual(result.values.shape, (5, 8))
                np.testing.assert_allclose(result.values[0], expected,
                                           atol=1e-12)
                self.assertEqual(len(list(result.rows())), 40)

    def test_travelling_detection(self) -> None:
        detected = LightMode('travelling', [0.0, 0.0, 1.0], 0.0, 1)
        result = AngularMap.compute(0.5, 1.0, self.probe, detected,
                                    (2, 2, 2), 5, 8)
        np.testing.assert_allclose(result.values, 0.5)
        quadrature = AngularMap.compute(0.5, 1.0, self.probe, detected,
                                        (2, 2, 2), 5, 8, 'quadrature')
        self.assertAlmostEqual(quadrature.values[0, 0], 0.5)
        self.assertTrue(quadrature.bragg['classical'].shape == (5, 8))

    def test_preconditions(self) -> None:
        standing = LightMode('standing', [0.0, 0.0, 1.0], 0.0, 1)
        self.assertRaises(ConstraintViolationError, AngularMap.compute, 1.0,
                          0.0, self.probe, standing)
        self.assertRaises(ConstraintViolationError, AngularMap.compute, 1.0,
                          1.0, self.probe, standing, (2, 2, 2), 5, 8,
                          'quadrature')
        self.assertRaises(ConstraintViolationError, AngularMap.compute, 1.0,
                          1.0, self.probe, standing, (2, 2, 2), 5, 8, 'X')


if __name__ == '__main__':
    unittest.main()
