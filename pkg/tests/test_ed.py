import itertools
import unittest

import numpy as np

from latscat.AngularScan import AngularScan
from latscat.ChainSpec import ChainSpec
from latscat.CouplingCoefficients import CouplingCoefficients
from latscat.DisorderSpec import DisorderSpec
from latscat.ExactDiagonalizer import ExactDiagonalizer
from latscat.FockBasis import FockBasis
from latscat.GroundStateSolver import GroundStateSolver
from latscat.LatScatException import (BasisDimensionError,
                                      ConstraintViolationError,
                                      WindowMismatchError)


class FockBasisTest(unittest.TestCase):

    def test_dimension(self) -> None:
        self.assertEqual(FockBasis(4, 4).dimension, 35)
        self.assertEqual(len(FockBasis(3, 2)), 6)
        self.assertEqual(FockBasis(3, 3, 1).dimension, 1)
        self.assertEqual(FockBasis(4, 0).dimension, 1)
        self.assertEqual(FockBasis.check_dimension(12, 12), 1352078)

    def test_bounds(self) -> None:
        self.assertRaises(BasisDimensionError, FockBasis, 13, 1)
        self.assertRaises(BasisDimensionError, FockBasis.check_dimension,
                          12, 16)
        self.assertEqual(FockBasis.check_dimension(12, 14), 4457400)
        self.assertRaises(BasisDimensionError, FockBasis.check_dimension,
                          12, 15)
        self.assertRaises(ConstraintViolationError, FockBasis, 2, 3, 1)
        self.assertRaises(ConstraintViolationError, FockBasis, 0, 1)

    def test_order(self) -> None:
        basis = FockBasis(3, 2)
        self.assertEqual(basis.state(0), (2, 0, 0))
        self.assertEqual(basis.state(len(basis) - 1), (0, 0, 2))
        self.assertTrue(np.all(np.diff(basis.keys) < 0))
        np.testing.assert_array_equal(basis.states.sum(axis=1), 2)

    def test_index(self) -> None:
        basis = FockBasis(3, 2)
        for position in range(len(basis)):
            with self.subTest(state=basis.state(position)):
                self.assertEqual(basis.index(basis.state(position))[0],
                                 position)
        self.assertEqual(basis.index((1, 1, 1))[0], -1)
        self.assertEqual(basis.index((3, -1, 0))[0], -1)

    def test_hop(self) -> None:
        basis = FockBasis(2, 2)
        target, source, amplitude = basis.hop(0, 1)
        moves = {(basis.state(s), basis.state(t)): a
                 for t, s, a in zip(target, source, amplitude)}
        self.assertAlmostEqual(moves[((1, 1), (2, 0))], np.sqrt(2.0))
        self.assertAlmostEqual(moves[((0, 2), (1, 1))], np.sqrt(2.0))
        self.assertEqual(len(moves), 2)


class ChainSpecTest(unittest.TestCase):

    def test_preconditions(self) -> None:
        self.assertRaises(ConstraintViolationError, ChainSpec, 4, 4, -1.0)
        self.assertRaises(ConstraintViolationError, ChainSpec, 4, 4, 1.0,
                          1.0, 0.0, 'twisted')
        self.assertRaises(BasisDimensionError, ChainSpec, 13, 13, 1.0)

    def test_soft_cap(self) -> None:
        self.assertEqual(ChainSpec.from_ratios(8, 8, 2.0).n_cap, 6)
        self.assertEqual(ChainSpec.from_ratios(8, 8, 0.5).n_cap, 8)
        self.assertEqual(ChainSpec.from_ratios(4, 3, 10.0).n_cap, 3)

    def test_bonds(self) -> None:
        self.assertEqual(ChainSpec(3, 1, 0.0).bonds, [(0, 1), (1, 2)])
        self.assertEqual(ChainSpec(3, 1, 0.0, boundary='periodic').bonds,
                         [(0, 1), (1, 2), (2, 0)])
        self.assertEqual(ChainSpec(2, 1, 0.0, boundary='periodic').bonds,
                         [(0, 1)])

    def test_from_ratios(self) -> None:
        spec = ChainSpec.from_ratios(6, 6, 4.0, v=2.0, ratio=0.5)
        self.assertEqual(spec.hopping, 0.5)
        self.assertEqual(spec.interaction, 4.0)
        self.assertEqual(spec.disorder, DisorderSpec(2.0, 0.5))
        self.assertIsNone(ChainSpec.from_ratios(6, 6, 4.0).disorder)
        self.assertEqual(spec.with_mu(1.0).sector_key, spec.sector_key)


class DisorderSpecTest(unittest.TestCase):

    def test_energies(self) -> None:
        np.testing.assert_allclose(DisorderSpec(2.0, 0.5).energies(4),
                                   [2.0, -2.0, 2.0, -2.0], atol=1e-12)
        np.testing.assert_allclose(
            DisorderSpec(1.0, 0.77, np.pi / 2).energies(2),
            [0.0, np.cos(2 * np.pi * 0.77 + np.pi / 2)], atol=1e-12)
        self.assertRaises(ConstraintViolationError, DisorderSpec, -1.0)


class ExactDiagonalizerTest(unittest.TestCase):

    def setUp(self) -> None:
        self.solver = ExactDiagonalizer()

    def test_two_sites(self) -> None:
        state = self.solver.ground_state(ChainSpec(2, 1, 0.0))
        self.assertAlmostEqual(state.energy, -1.0)
        np.testing.assert_allclose(np.abs(state.vector), np.sqrt(0.5))
        self.assertGreater(state.vector[np.argmax(np.abs(state.vector))], 0)

    def test_free_particle(self) -> None:
        state = self.solver.ground_state(ChainSpec(4, 1, 0.0))
        self.assertAlmostEqual(state.energy, -2.0 * np.cos(np.pi / 5))

    def test_free_ring(self) -> None:
        spec = ChainSpec(4, 4, 0.0, boundary='periodic')
        self.assertAlmostEqual(self.solver.ground_state(spec).energy, -8.0)

    def test_hamiltonian(self) -> None:
        spec = ChainSpec.from_ratios(4, 4, 3.0, v=1.0)
        h = ExactDiagonalizer.hamiltonian(spec).toarray()
        np.testing.assert_allclose(h, h.T.conj())
        basis = spec.basis()
        doublon = basis.index((2, 2, 0, 0))[0]
        onsite = spec.disorder.energies(4)
        self.assertAlmostEqual(h[doublon, doublon],
                               2 * 3.0 + 2 * onsite[0] + 2 * onsite[1])

    def test_mott_insulator(self) -> None:
        state = self.solver.ground_state(ChainSpec.from_ratios(6, 6, 10.0))
        np.testing.assert_allclose(state.densities, 1.0, atol=0.05)
        self.assertLess(np.trace(state.dd), 0.2)
        self.assertFalse(state.degenerate)

    def test_correlations(self) -> None:
        state = self.solver.ground_state(ChainSpec.from_ratios(5, 5, 2.0))
        self.assertAlmostEqual(state.densities.sum(), 5.0)
        np.testing.assert_allclose(state.dd, state.dd.T, atol=1e-12)
        np.testing.assert_allclose(state.dd.sum(axis=1), 0.0, atol=1e-10)
        np.testing.assert_allclose(np.diag(state.sp), state.densities)
        np.testing.assert_allclose(state.sp, state.sp.T.conj(), atol=1e-12)
        np.testing.assert_allclose(state.densities, state.densities[::-1],
                                   atol=1e-8)
        self.assertIn('dd', state.correlations())
        self.assertEqual(len(state.raw_data['dd']), 25)

    def test_cache(self) -> None:
        spec = ChainSpec.from_ratios(4, 4, 2.0)
        first = self.solver.ground_state(spec)
        self.assertIs(self.solver.ground_state(spec.with_mu(3.0)), first)

    def test_cache_bound(self) -> None:
        self.assertRaises(ConstraintViolationError, ExactDiagonalizer,
                          cache_size=0)
        solver = ExactDiagonalizer(cache_size=2)
        specs = [ChainSpec.from_ratios(3, 3, u) for u in (1.0, 2.0, 3.0)]
        first = solver.ground_state(specs[0])
        second = solver.ground_state(specs[1])
        self.assertIs(solver.ground_state(specs[0]), first)
        solver.ground_state(specs[2])
        self.assertIs(solver.ground_state(specs[0]), first)
        self.assertIsNot(solver.ground_state(specs[1]), second)

    def test_number_conservation(self) -> None:
        sites, cap = 3, 3
        states = list(itertools.product(range(cap + 1), repeat=sites))
        lookup = {state: index for index, state in enumerate(states)}
        spec = ChainSpec.from_ratios(sites, cap, 2.0, v=1.0)
        onsite = spec.disorder.energies(sites)
        full = np.zeros((len(states), len(states)))
        for index, state in enumerate(states):
            n = np.array(state)
            full[index, index] = spec.interaction / 2.0 * np.sum(n * (n - 1)) \
                + onsite @ n
            for i, j in spec.bonds:
                for a, b in ((i, j), (j, i)):
                    if n[b] == 0 or n[a] == cap:
                        continue
                    moved = n.copy()
                    moved[a] += 1
                    moved[b] -= 1
                    full[lookup[tuple(moved)], index] -= \
                        spec.hopping * np.sqrt((n[a] + 1.0) * n[b])
        number = np.diag([float(sum(state)) for state in states])

        rng = np.random.default_rng(3)
        for draw in range(50):
            vector = rng.normal(size=len(states))
            with self.subTest(draw=draw):
                self.assertLess(
                    np.linalg.norm(full @ number @ vector
                                   - number @ full @ vector), 1e-10)

        for bosons in range(cap + 1):
            sector = ChainSpec.from_ratios(sites, bosons, 2.0, v=1.0)
            rows = [lookup[tuple(state)] for state in sector.basis().states]
            with self.subTest(bosons=bosons):
                np.testing.assert_allclose(
                    ExactDiagonalizer.hamiltonian(sector).toarray(),
                    full[np.ix_(rows, rows)], atol=1e-12)

    def test_free_ring_fluctuations(self) -> None:
        for sites in (4, 5):
            state = self.solver.ground_state(
                ChainSpec.from_ratios(sites, sites, 0.0, boundary='periodic'))
            with self.subTest(sites=sites):
                self.assertFalse(state.degenerate)
                np.testing.assert_allclose(np.diag(state.dd),
                                           1.0 - 1.0 / sites, atol=1e-8)

    def test_scan_matches_double_sum(self) -> None:
        state = self.solver.ground_state(ChainSpec.from_ratios(8, 8, 4.0))
        probabilities = np.abs(state.vector) ** 2
        occupations = state.basis.states.astype(float)
        densities = probabilities @ occupations
        dd = occupations.T @ (probabilities[:, None] * occupations) \
            - np.outer(densities, densities)
        np.testing.assert_allclose(state.dd, dd, atol=1e-10)

        scan = AngularScan.from_ed(state, points_per_pi=32)
        for theta1, value in zip(scan.theta1, scan.values):
            q = np.pi * np.sin(theta1)
            expected = 0.0
            for i in range(8):
                for j in range(8):
                    expected += dd[i, j] * np.cos(q * (i - j))
            with self.subTest(theta1=theta1):
                self.assertAlmostEqual(value, expected, places=8)

    def test_sparse_solver(self) -> None:
        spec = ChainSpec.from_ratios(6, 6, 2.0)
        dense = ExactDiagonalizer(dense_threshold=1000).ground_state(spec)
        sparse = ExactDiagonalizer(dense_threshold=10).ground_state(spec)
        self.assertGreater(len(spec.basis()), 10)
        self.assertAlmostEqual(sparse.energy, dense.energy, places=9)
        np.testing.assert_allclose(sparse.dd, dense.dd, atol=1e-8)

    def test_grand_canonical(self) -> None:
        template = ChainSpec.from_ratios(4, 0, 10.0)
        with self.subTest(phase='vacuum'):
            state = self.solver.grand_canonical(template, -5.0)
            self.assertEqual(state.spec.bosons, 0)
            self.assertEqual(state.energy, 0.0)
        with self.subTest(phase='mott'):
            state = self.solver.grand_canonical(template, 4.5)
            self.assertEqual(state.spec.bosons, 4)

    def test_solver_interface(self) -> None:
        self.assertRaises(TypeError, GroundStateSolver)
        self.assertIsInstance(self.solver, GroundStateSolver)


class EDStateTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls) -> None:
        cls.state = ExactDiagonalizer().ground_state(
            ChainSpec.from_ratios(4, 4, 2.0))

    def test_density_operator(self) -> None:
        coeffs = CouplingCoefficients.uniform(1.0, 0.0, 4)
        moments = self.state.expectation_F(coeffs)
        self.assertAlmostEqual(moments['F'].real, 4.0)
        self.assertAlmostEqual(moments['FdagF'], 16.0)
        self.assertAlmostEqual(moments['X2'] - moments['X'] ** 2, 0.0)

    def test_window_density(self) -> None:
        coeffs = CouplingCoefficients.uniform(1.0, 0.0, 2, total_sites=4)
        moments = self.state.expectation_F(coeffs)
        dd = self.state.dd
        self.assertAlmostEqual(moments['F'].real,
                               self.state.densities[1:3].sum())
        self.assertAlmostEqual(moments['FdagF'] - abs(moments['F']) ** 2,
                               dd[1:3, 1:3].sum())

    def test_bond_operator(self) -> None:
        coeffs = CouplingCoefficients(np.zeros(4), np.ones(3))
        moments = self.state.expectation_F(coeffs)
        sp = np.real(self.state.sp)
        expected = sum(sp[i, i + 1] + sp[i + 1, i] for i in range(3))
        self.assertAlmostEqual(moments['F'].real, expected)
        kinetic = -self.state.spec.hopping * expected \
            + self.state.spec.interaction / 2.0 \
            * np.sum(np.diag(self.state.dd) + self.state.densities ** 2
                     - self.state.densities)
        self.assertAlmostEqual(kinetic, self.state.energy)

    def test_dense_operator(self) -> None:
        basis = self.state.basis
        lookup = {tuple(state): index
                  for index, state in enumerate(basis.states)}
        rng = np.random.default_rng(5)
        density = rng.normal(size=4) + 1j * rng.normal(size=4)
        bond = rng.normal(size=3) + 1j * rng.normal(size=3)
        operator = np.diag(basis.states @ density)
        for i, c in enumerate(bond):
            for a, b in ((i, i + 1), (i + 1, i)):
                for index, state in enumerate(basis.states):
                    if state[b] == 0 or state[a] == basis.n_cap:
                        continue
                    moved = state.copy()
                    moved[a] += 1
                    moved[b] -= 1
                    operator[lookup[tuple(moved)], index] += \
                        c * np.sqrt((state[a] + 1.0) * state[b])

        v = self.state.vector.astype(complex)
        beta = 0.3
        quadrature = (operator * np.exp(-1j * beta)
                      + operator.conj().T * np.exp(1j * beta)) / 2.0
        moments = self.state.expectation_F(
            CouplingCoefficients(density, bond), beta)
        self.assertAlmostEqual(abs(moments['F'] - np.vdot(v, operator @ v)),
                               0.0, places=10)
        self.assertAlmostEqual(
            moments['FdagF'],
            np.real(np.vdot(operator @ v, operator @ v)), places=10)
        self.assertAlmostEqual(moments['X'],
                               np.real(np.vdot(v, quadrature @ v)),
                               places=10)
        self.assertAlmostEqual(
            moments['X2'],
            np.real(np.vdot(v, quadrature @ quadrature @ v)), places=10)

    def test_window_mismatch(self) -> None:
        coeffs = CouplingCoefficients.uniform(1.0, 0.0, 3)
        self.assertRaises(WindowMismatchError, self.state.expectation_F,
                          coeffs)


if __name__ == '__main__':
    unittest.main()
