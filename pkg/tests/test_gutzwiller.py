import unittest

import numpy as np

from latscat.BoseHubbardParams import BoseHubbardParams
from latscat.CouplingCoefficients import CouplingCoefficients
from latscat.GutzwillerSolver import GutzwillerSolver
from latscat.GutzwillerState import GutzwillerState
from latscat.LatScatException import (ConstraintViolationError,
                                      FockCutoffError)
from latscat.LatticePotential import LatticePotential
from latscat.MeasurementGeometry import MeasurementGeometry


class BoseHubbardParamsTest(unittest.TestCase):

    def test_preconditions(self) -> None:
        self.assertRaises(ConstraintViolationError, BoseHubbardParams,
                          1.0, -1.0, 0.0)
        self.assertRaises(ConstraintViolationError, BoseHubbardParams,
                          1.0, 1.0, 0.0, 3)
        self.assertRaises(ConstraintViolationError, BoseHubbardParams,
                          1.0, 1.0, 0.0, 2, 5)

    def test_from_ratios(self) -> None:
        params = BoseHubbardParams.from_ratios(10.0, 5.0, 4)
        self.assertAlmostEqual(params.hopping, 0.25)
        self.assertAlmostEqual(params.zj, 1.0)
        self.assertEqual(params.with_cutoff(24).n_max, 24)
        self.assertEqual(params.with_mu(1.0).mu, 1.0)


class GutzwillerSolverTest(unittest.TestCase):

    def setUp(self) -> None:
        self.solver = GutzwillerSolver()

    def test_tolerance_bound(self) -> None:
        self.assertRaises(ConstraintViolationError, GutzwillerSolver, 1e-8)
        self.assertRaises(ConstraintViolationError, GutzwillerSolver,
                          1e-12, 100, 0.0)

    def test_mott_insulator(self) -> None:
        state = self.solver.solve_ratios(10.0, 5.0)
        self.assertAlmostEqual(state.phi, 0.0, places=12)
        self.assertAlmostEqual(state.density, 1.0, places=12)
        self.assertAlmostEqual(state.density_variance, 0.0, places=12)
        self.assertAlmostEqual(state.b2, 0.0, places=12)
        self.assertTrue(state.converged)

    def test_vacuum(self) -> None:
        state = self.solver.solve_ratios(10.0, -2.0)
        self.assertAlmostEqual(state.phi, 0.0, places=12)
        self.assertAlmostEqual(state.density, 0.0, places=12)

    def test_superfluid(self) -> None:
        state = self.solver.solve_ratios(2.0, 1.0)
        self.assertGreater(state.phi, 0.1)
        self.assertGreater(state.density_variance, 0.0)
        self.assertLess(state.cutoff_weight, GutzwillerSolver.CUTOFF_TOL)
        self.assertAlmostEqual(np.sum(state.amplitudes ** 2), 1.0, places=12)
        self.assertTrue(np.all(state.amplitudes >= 0))

    def test_lobe_tip(self) -> None:
        mu = 1.0 + np.sqrt(2.0)
        with self.subTest(side='superfluid'):
            self.assertGreater(self.solver.solve_ratios(5.0, mu).phi, 1e-3)
        with self.subTest(side='insulator'):
            self.assertLess(self.solver.solve_ratios(7.0, mu).phi, 1e-10)

    def test_coherent_limit(self) -> None:
        state = self.solver.solve_ratios(1e-7, -1.0 + 1e-7)
        self.assertAlmostEqual(state.density, state.phi ** 2, places=3)
        self.assertAlmostEqual(state.matter_quadrature_variance(0.0), 0.25,
                               places=3)
        self.assertAlmostEqual(
            state.matter_quadrature_variance(np.pi / 2), 0.25, places=3)

    def test_solve_at_density(self) -> None:
        for u in (2.0, 10.0):
            with self.subTest(u=u):
                state = self.solver.solve_at_density(u, 1.0)
                self.assertAlmostEqual(state.density, 1.0, places=8)
        self.assertRaises(ConstraintViolationError,
                          self.solver.solve_at_density, 2.0, 0.0)

    def test_fock_cutoff(self) -> None:
        solver = GutzwillerSolver(max_doublings=0)
        params = BoseHubbardParams.from_ratios(0.1, 3.0, n_max=6)
        self.assertRaises(FockCutoffError, solver.solve, params)

    def test_cutoff_doubling(self) -> None:
        params = BoseHubbardParams.from_ratios(0.5, 2.0, n_max=6)
        state = self.solver.solve(params)
        self.assertGreater(state.params.n_max, 6)
        self.assertLess(state.cutoff_weight, GutzwillerSolver.CUTOFF_TOL)


    def test_fixed_point_stability(self) -> None:
        rng = np.random.default_rng(20240611)
        for u, mu in ((2.0, 1.0), (5.0, 2.5), (10.0, 5.0)):
            reference = self.solver.solve_ratios(u, mu)
            for phi0 in rng.uniform(0.01, 3.0, size=10):
                with self.subTest(u=u, mu=mu, phi0=phi0):
                    state = GutzwillerSolver(phi0=phi0).solve_ratios(u, mu)
                    self.assertTrue(state.converged)
                    self.assertAlmostEqual(state.phi, reference.phi,
                                           places=9)
                    self.assertAlmostEqual(state.energy, reference.energy,
                                           places=10)

class GutzwillerStateTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls) -> None:
        solver = GutzwillerSolver()
        cls.mott = solver.solve_ratios(10.0, 5.0)
        cls.superfluid = solver.solve_ratios(2.0, 1.0)

    def test_mott_quadratures(self) -> None:
        for alpha in (0.0, np.pi / 4, np.pi / 2):
            with self.subTest(alpha=alpha):
                self.assertAlmostEqual(
                    self.mott.matter_quadrature_variance(alpha), 0.75)

    def test_direct_quadratures(self) -> None:
        state = self.superfluid
        for alpha in (0.0, np.pi / 2):
            with self.subTest(alpha=alpha):
                self.assertAlmostEqual(
                    state.quadrature_variance_direct(alpha),
                    state.matter_quadrature_variance(alpha), places=8)

    def test_min_intensity(self) -> None:
        self.assertAlmostEqual(self.mott.min_intensity(2, 1.0, 1.0) / 2.0,
                               2.0)
        self.assertAlmostEqual(self.mott.min_intensity(5, 2.0, 0.5), 16.0)

    def test_max_quadrature_mean(self) -> None:
        state = self.superfluid
        self.assertAlmostEqual(state.max_quadrature_mean(5, -0.1),
                               -0.4 * state.phi ** 2)
        self.assertAlmostEqual(self.mott.max_quadrature_mean(5, -0.1), 0.0)

    def test_expectation_bond_operator(self) -> None:
        coeffs = CouplingCoefficients(np.zeros(4), [0.3, -0.3, 0.3])
        moments = self.mott.expectation_F(coeffs)
        self.assertAlmostEqual(abs(moments['F']), 0.0)
        self.assertAlmostEqual(moments['FdagF'],
                               self.mott.min_intensity(4, 1.0, 0.3))
        self.assertAlmostEqual(moments['X2'], moments['FdagF'])

    def test_expectation_density_operator(self) -> None:
        state = self.superfluid
        coeffs = CouplingCoefficients(np.ones(3), np.zeros(2))
        moments = state.expectation_F(coeffs)
        self.assertAlmostEqual(moments['F'].real, 3 * state.density)
        self.assertAlmostEqual(moments['FdagF'] - abs(moments['F']) ** 2,
                               3 * state.density_variance)

    def test_heisenberg_bound(self) -> None:
        solver = GutzwillerSolver()
        for u in np.linspace(0.5, 12.0, 12):
            for mu in (0.0, 0.5, 1.5, 3.0):
                state = solver.solve_ratios(u, mu)
                with self.subTest(u=u, mu=mu):
                    spread = np.sqrt(state.matter_quadrature_variance(0.0)
                                     * state.matter_quadrature_variance(
                                         np.pi / 2))
                    self.assertGreaterEqual(spread, 0.25 - 1e-9)

    def test_amplitude_squeezing(self) -> None:
        solver = GutzwillerSolver()
        for u in (0.5, 1.0, 2.0):
            state = solver.solve_at_density(u, 1.0)
            with self.subTest(u=u):
                self.assertGreater(state.phi, 1e-3)
                self.assertLess(state.matter_quadrature_variance(0.0), 0.25)
                self.assertGreater(
                    state.matter_quadrature_variance(np.pi / 2), 0.25)

    def test_mott_scatters_more_than_superfluid(self) -> None:
        for sites in (2, 5, 10):
            with self.subTest(sites=sites):
                self.assertGreater(self.mott.min_intensity(sites, 1.0, 0.3),
                                   self.superfluid.min_intensity(sites, 1.0,
                                                                 0.3))

    def test_ring_operator_matches_min_intensity(self) -> None:
        rng = np.random.default_rng(7)
        params = BoseHubbardParams.from_ratios(2.0, 1.0, n_max=8)
        for sites in (5, 7):
            signs = (-1.0) ** np.arange(sites - 1)
            coeffs = CouplingCoefficients(np.zeros(sites), 0.4 * signs)
            for draw in range(20):
                amplitudes = rng.uniform(0.0, 1.0, size=9)
                amplitudes /= np.linalg.norm(amplitudes)
                state = GutzwillerState(params, amplitudes, 0.0)
                with self.subTest(sites=sites, draw=draw):
                    moments = state.expectation_F(coeffs, ring=True)
                    expected = state.min_intensity(sites, 1.0, 0.4)
                    self.assertAlmostEqual(abs(moments['F']), 0.0, places=12)
                    self.assertAlmostEqual(
                        (moments['FdagF'] - abs(moments['F']) ** 2)
                        / expected, 1.0, places=10)

    def test_uniform_bonds_match_max_quadrature_mean(self) -> None:
        rng = np.random.default_rng(11)
        params = BoseHubbardParams.from_ratios(2.0, 1.0, n_max=8)
        coeffs = CouplingCoefficients(np.zeros(6), np.full(5, -0.05))
        for draw in range(20):
            amplitudes = rng.uniform(0.0, 1.0, size=9)
            amplitudes /= np.linalg.norm(amplitudes)
            state = GutzwillerState(params, amplitudes, 0.0)
            with self.subTest(draw=draw):
                self.assertAlmostEqual(state.expectation_F(coeffs)['X'],
                                       state.max_quadrature_mean(6, -0.1))

    def test_ring_needs_four_sites(self) -> None:
        coeffs = CouplingCoefficients(np.zeros(3), [0.3, -0.3])
        self.assertRaises(ConstraintViolationError,
                          self.mott.expectation_F, coeffs, 0.0, True)

    def test_raw_data(self) -> None:
        data = self.mott.raw_data
        self.assertEqual(data['u'], 10.0)
        self.assertEqual(data['mu'], 5.0)
        self.assertAlmostEqual(self.mott['phi'], 0.0)
        self.assertIn('mu', self.mott)
        self.assertIsNone(self.mott.get('K_b'))


class DiffractionMaximumTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls) -> None:
        cls.basis = LatticePotential(5.0).solve_bloch_band().build_wannier()
        cls.geometry = MeasurementGeometry.diffraction_maximum(cls.basis)
        cls.superfluid = GutzwillerSolver().solve_ratios(2.0, 1.0)

    def test_quadrature_mean(self) -> None:
        ft_w1 = self.basis.fourier_overlap('W1', 2 * np.pi / self.basis.period)
        for sites in (2, 6, 11):
            closed = self.geometry.closed_form_db(self.basis, sites)
            moments = self.superfluid.expectation_F(closed)
            with self.subTest(sites=sites):
                self.assertAlmostEqual(
                    moments['X']
                    / self.superfluid.max_quadrature_mean(sites, ft_w1),
                    1.0, places=6)
                self.assertGreater(moments['X'] * ft_w1, 0.0)


if __name__ == '__main__':
    unittest.main()
