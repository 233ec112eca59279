import unittest

import numpy as np
from scipy.special import expit
from scipy.stats import binom

from idtnet import analytic, oracle
from idtnet.exceptions import NumericException, ValidationException
from idtnet.objects.curves import CavityBranch
from idtnet.objects.distribution import DegreeDistribution
from idtnet.objects.dynamics import DynamicsParams
from idtnet.objects.graph import Graph


def regular_cavity_map(k, rho, params):
    j = np.arange(k)
    return float(binom.pmf(j, k - 1, rho) @ expit(2.0 * params.coupling * (2 * j - k + 1) / params.temperature))


class CavityTests(unittest.TestCase):
    def setUp(self):
        self.params = DynamicsParams(1.0, 2.0)
        self.regular = DegreeDistribution.regular(4)

    def test_symmetric_root(self):
        solution = analytic.cavity_fixed_point(DegreeDistribution.power_law(1.6, 1, 30), self.params, init=0.5)

        self.assertTrue(solution.converged)
        self.assertAlmostEqual(solution.rho, 0.5, places=12)
        self.assertEqual(solution.branch, CavityBranch.SYMMETRIC)

    def test_broken_root(self):
        solution = analytic.cavity_fixed_point(self.regular, self.params)

        self.assertTrue(solution.converged)
        self.assertEqual(solution.branch, CavityBranch.BROKEN)
        self.assertTrue(0.70 < solution.rho < 0.78)
        self.assertAlmostEqual(regular_cavity_map(4, solution.rho, self.params), solution.rho, places=10)

    def test_high_temperature(self):
        solution = analytic.cavity_fixed_point(self.regular, DynamicsParams(1.0, 10.0))

        self.assertEqual(solution.branch, CavityBranch.SYMMETRIC)
        self.assertAlmostEqual(solution.rho, 0.5, places=10)

    def test_invalid_tolerance(self):
        self.assertRaises(ValidationException, analytic.cavity_fixed_point, self.regular, self.params, None, 0.0)

    def test_iteration_cap(self):
        solution = analytic.cavity_fixed_point(self.regular, self.params, init=0.99, max_iter=2)
        self.assertFalse(solution.converged)


class UnitStateTests(unittest.TestCase):
    def setUp(self):
        self.params = DynamicsParams(1.0, 2.0)

    def test_symmetric_phase(self):
        for k in (1, 5, 40):
            self.assertTrue(np.allclose(analytic.unit_marginal(k, 0.5, self.params).probs, 0.5))
            self.assertAlmostEqual(analytic.unit_entropy(k, 0.5, self.params), 1.0, places=12)

    def test_ordered_limit(self):
        cold = DynamicsParams(1.0, 0.01)
        self.assertGreater(analytic.unit_marginal(3, 1.0, cold)[1], 1.0 - 1e-12)
        self.assertLess(analytic.unit_entropy(3, 1.0, cold), 1e-10)

    def test_entropy_decays_with_degree(self):
        self.assertLess(analytic.unit_entropy(40, 0.730, self.params), analytic.unit_entropy(10, 0.730, self.params))

    def test_majority_state_grows_with_degree(self):
        up = [analytic.unit_marginal(k, 0.730, self.params)[1] for k in range(1, 61)]
        self.assertTrue(np.all(np.diff(up) >= -1e-14))

    def test_invalid_degree(self):
        self.assertRaises(ValidationException, analytic.unit_marginal, 0, 0.5, self.params)

    def test_mean_field(self):
        self.assertTrue(np.allclose(analytic.mean_field_marginal(10, 0.0, self.params).probs, 0.5))
        self.assertLess(analytic.mean_field_marginal(2, 0.4, self.params)[1],
                        analytic.mean_field_marginal(8, 0.4, self.params)[1])


class TransmissionTests(unittest.TestCase):
    def setUp(self):
        self.params = DynamicsParams(1.0, 2.0)
        self.dist = DegreeDistribution.power_law(1.6, 1, 77)

    def test_frozen_units_transmit_nothing(self):
        cold = DynamicsParams(1.0, 0.01)
        dist = DegreeDistribution.power_law(2.5, 1, 10)
        for k in (1, 4, 10):
            self.assertLess(analytic.transmission_T(k, dist, 1.0, cold), 1e-30)

    def test_matches_exact_edge(self):
        edge = Graph.path(2)
        kernel = oracle.build_kernel(edge, self.params)
        pi = oracle.boltzmann_distribution(edge, self.params)
        dist = DegreeDistribution.regular(1)
        rho = analytic.cavity_fixed_point(dist, self.params).rho

        self.assertAlmostEqual(analytic.transmission_T(1, dist, rho, self.params),
                               oracle.pair_lagged_mi(kernel, pi, 0, 1, 1), delta=1e-9)

    def test_ratios_converge_downward(self):
        for temperature in (2.0, 2.5, 9.0):
            params = DynamicsParams(1.0, temperature)
            ratios = analytic.transmission_ratios(self.dist, params, range(20, 100))

            self.assertTrue(np.all(ratios <= 1.0 + 1e-9), "T={0}".format(temperature))

    def test_entropy_decays_exponentially(self):
        rho = analytic.cavity_fixed_point(self.dist, self.params).rho
        fit = analytic.entropy_decay_fit(rho, self.params, 40, 80)

        self.assertLess(fit.slope, 0.0)
        self.assertGreaterEqual(fit.r_squared, 0.99)
        self.assertEqual(fit.n_points, 41)


class DissipationTests(unittest.TestCase):
    def setUp(self):
        self.params = DynamicsParams(1.0, 2.0)
        self.dist = DegreeDistribution.power_law(1.6, 1, 77)

    def test_idt_value(self):
        self.assertAlmostEqual(analytic.idt_value(5, 0.001, 1.0, 0.8, 0.5), 27.850, places=3)
        self.assertEqual(analytic.idt_value(5, 0.001, 1.0, 0.8, 0.001), 0.0)
        self.assertEqual(analytic.idt_value(5, 0.001, 1.0, 0.8, 0.0), 0.0)
        self.assertAlmostEqual(analytic.idt_value(1, 0.25, 1.0, 0.5, 1.0), 2.0, places=12)

    def test_no_dissipation(self):
        with self.assertRaises(NumericException) as error:
            analytic.idt_value(5, 0.001, 2.0, 0.6, 0.5)

        self.assertEqual(error.exception.error_code, 403)

    def test_invalid_eps(self):
        self.assertRaises(ValidationException, analytic.idt_value, 5, 1.5, 1.0, 0.8, 0.5)

    def test_ratio_in_unit_interval(self):
        rho = analytic.cavity_fixed_point(self.dist, self.params).rho
        i_hat = analytic.avg_dissipation_ratio(self.dist, rho, self.params)

        self.assertGreater(i_hat, 0.0)
        self.assertLess(i_hat, 1.0)

    def test_weak_coupling_chain(self):
        dist = DegreeDistribution.regular(2)
        hot = DynamicsParams(1.0, 100.0)
        rho = analytic.cavity_fixed_point(dist, hot).rho

        self.assertLess(analytic.avg_dissipation_ratio(dist, rho, hot), 0.01)


class AnalyticCurveTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.params = DynamicsParams(1.0, 2.0)
        cls.dist = DegreeDistribution.power_law(1.6, 1, 77)
        cls.curve = analytic.analytic_curve(cls.dist, cls.params)

    def test_rows(self):
        self.assertEqual(self.curve.ks.tolist(), list(range(1, 78)))
        self.assertEqual(self.curve.branch, CavityBranch.BROKEN)
        self.assertEqual(self.curve.temperature, 2.0)
        for row in self.curve.rows:
            self.assertTrue(0.0 <= row.i0 <= 1.0)
            self.assertGreaterEqual(row.t_k, 0.0)
            self.assertAlmostEqual(row.i1_upper, min(row.k * row.t_k, row.i0), places=15)

    def test_interior_maximum(self):
        self.assertTrue(1 < self.curve.argmax_k < 77)
        self.assertLess(self.curve.row(77).d, self.curve.d_values.max())

    def test_eps_shift(self):
        curves = dict((eps, analytic.analytic_curve(self.dist, self.params, eps=eps)) for eps in (1e-2, 1e-4))
        active = [row.k for row in self.curve.rows if row.i1_upper > 1e-2]
        self.assertTrue(active)

        for eps in (1e-2, 1e-4):
            self.assertEqual(curves[eps].argmax_k, self.curve.argmax_k)
            shifts = [curves[eps].row(k).d - self.curve.row(k).d for k in active]
            self.assertLess(max(shifts) - min(shifts), 1e-9)

    def test_k_range(self):
        curve = analytic.analytic_curve(self.dist, self.params, k_range=[10, 5, 10])
        self.assertEqual(curve.ks.tolist(), [5, 10])
        self.assertAlmostEqual(curve.row(10).d, self.curve.row(10).d, places=12)

    def test_symmetric_branch_is_flagged(self):
        with self.assertWarns(RuntimeWarning):
            curve = analytic.analytic_curve(DegreeDistribution.power_law(2.5, 1, 20), self.params,
                                            branch=CavityBranch.SYMMETRIC)

        self.assertIn("symmetric", curve.flags)
        self.assertEqual(curve.rho, 0.5)
        for row in curve.rows:
            self.assertAlmostEqual(row.i0, 1.0, places=12)

    def test_unknown_branch(self):
        self.assertRaises(ValidationException, analytic.analytic_curve, self.dist, self.params, branch="broken")
