import math
import unittest

import numpy as np

from idtnet import empirical, netgen
from idtnet.exceptions import ValidationException
from idtnet.objects.distribution import DegreeDistribution
from idtnet.objects.dynamics import DynamicsParams, SpinConfig, StepUnit
from idtnet.objects.ensemble import EnsembleConfig, FitConfig, LagHistograms, UnitFit
from idtnet.objects.graph import Graph


class EnsembleTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.params = DynamicsParams(1.0, 2.0)
        cls.graph = netgen.generate_graph(DegreeDistribution.regular(3), 50, np.random.default_rng(9))
        cls.cfg = EnsembleConfig(trajectories=100, max_lag=10, seed=4, equilibration_sweeps=50, batch_size=32)
        cls.histograms = empirical.run_ensemble(cls.graph, cls.params, cls.cfg)

    def test_tallies(self):
        histograms = self.histograms

        self.assertEqual(histograms.plus_counts.shape, (11, 50))
        self.assertEqual(histograms.trajectories, 100)
        self.assertTrue(histograms.validate())
        for unit in range(50):
            for lag in range(11):
                self.assertEqual(histograms.counts(unit, lag, 1) + histograms.counts(unit, lag, -1), 100)

    def test_lag_zero_is_reference(self):
        reference = self.histograms.reference.states
        self.assertEqual(self.histograms.plus_counts[0].tolist(), (100 * (reference > 0)).tolist())

    def test_scheduling_does_not_change_tallies(self):
        for batch_size, workers in ((7, 1), (16, 2)):
            cfg = EnsembleConfig(trajectories=100, max_lag=10, seed=4, equilibration_sweeps=50,
                                 batch_size=batch_size, workers=workers)
            other = empirical.run_ensemble(self.graph, self.params, cfg)

            self.assertTrue(np.array_equal(other.plus_counts, self.histograms.plus_counts))

    def test_traces_add_up_to_tallies(self):
        reference = self.histograms.reference
        plus = np.zeros((11, 50), dtype=np.int64)
        for index in range(100):
            plus += empirical.trajectory_trace(self.graph, self.params, reference, self.cfg, index) > 0

        self.assertTrue(np.array_equal(plus, self.histograms.plus_counts))

    def test_site_steps(self):
        cfg = EnsembleConfig(trajectories=100, max_lag=120, seed=4, equilibration_sweeps=50, step=StepUnit.SITE)
        histograms = empirical.run_ensemble(self.graph, self.params, cfg, self.histograms.reference)

        self.assertEqual(histograms.max_lag, 120)
        self.assertEqual(empirical.sweeps_for(120, 50, StepUnit.SITE), 3)
        # one site update changes at most one unit per trajectory
        changes = np.abs(np.diff(histograms.plus_counts, axis=0)).sum(axis=1)
        self.assertTrue(np.all(changes <= 100))

    def test_wrong_reference_length(self):
        self.assertRaises(ValidationException, empirical.run_ensemble, self.graph, self.params, self.cfg,
                          SpinConfig([1, 1]))


class MarginalTests(unittest.TestCase):
    def test_isolated_units(self):
        graph = Graph(20)
        marginals = empirical.estimate_marginals(graph, DynamicsParams(), SpinConfig([1] * 20), 2000, 10,
                                                 np.random.default_rng(3))

        self.assertTrue(np.all(np.abs(marginals - 0.5) < 0.07))

    def test_strictly_inside(self):
        cold = DynamicsParams(1.0, 0.05)
        marginals = empirical.estimate_marginals(Graph.path(3), cold, SpinConfig([1, 1, 1]), 50, 0,
                                                 np.random.default_rng(3))

        self.assertTrue(np.all(marginals > 0))
        self.assertTrue(np.all(marginals < 1))

    def test_needs_a_sweep(self):
        self.assertRaises(ValidationException, empirical.estimate_marginals, Graph.path(2), DynamicsParams(),
                          SpinConfig([1, 1]), 0, 0, np.random.default_rng(3))


class DecayCurveTests(unittest.TestCase):
    def test_point_mass(self):
        histograms = LagHistograms(np.array([[100, 0]]), SpinConfig([1, -1]), 100)
        series = empirical.decay_curve(histograms, [0.25, 0.6])

        self.assertAlmostEqual(series[0, 0], 2.0, places=12)
        self.assertAlmostEqual(series[0, 1], -math.log2(0.4), places=12)

    def test_matching_marginal(self):
        histograms = LagHistograms(np.array([[25, 60]]), None, 100)
        self.assertTrue(np.allclose(empirical.decay_curve(histograms, [0.25, 0.6]), 0.0, atol=1e-15))


class FitTests(unittest.TestCase):
    def test_exact_exponential(self):
        series = 2.0 ** (-0.5 * np.arange(41))
        fit = empirical.fit_idt(series, FitConfig(eps=2.0 ** -10))

        self.assertFalse(fit.censored)
        self.assertAlmostEqual(fit.idt, 20.0, places=9)
        self.assertAlmostEqual(fit.slope, -0.5, places=12)
        self.assertEqual(fit.points, 40)

    def test_constant(self):
        fit = empirical.fit_idt(np.full(30, 0.3), FitConfig())

        self.assertTrue(fit.censored)
        self.assertIsNone(fit.idt)
        self.assertEqual(fit.reason, "no decay")

    def test_noise_floor_ends_window(self):
        series = np.array([1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.001, 0.5, 0.5])
        fit = empirical.fit_idt(series, FitConfig(noise_floor=0.01))

        self.assertEqual(fit.points, 5)
        self.assertAlmostEqual(fit.slope, -1.0, places=12)

    def test_too_few_lags(self):
        fit = empirical.fit_idt(np.array([1.0, 0.5, 0.25, 0.0, 0.0, 0.0]), FitConfig(noise_floor=0.01))

        self.assertTrue(fit.censored)
        self.assertEqual(fit.points, 2)

    def test_short_window_reads_crossing(self):
        series = np.array([1.0, 0.1, 0.01, 1e-4, 0.0, 0.0])
        fit = empirical.fit_idt(series, FitConfig(eps=1e-3, noise_floor=1e-4))

        self.assertFalse(fit.censored)
        self.assertEqual(fit.points, 2)
        self.assertEqual(fit.reason, "direct crossing")
        self.assertAlmostEqual(fit.idt, 2.5, places=12)

    def test_short_window_below_eps_at_lag_zero(self):
        series = np.array([5e-4, 2e-4, 0.0, 0.0, 0.0, 0.0])
        fit = empirical.fit_idt(series, FitConfig(eps=1e-3, noise_floor=1e-4))

        self.assertFalse(fit.censored)
        self.assertEqual(fit.idt, 0.0)

    def test_short_window_censored_when_eps_inside_noise(self):
        series = np.array([1.0, 0.1, 0.01, 1e-4, 0.0, 0.0])
        fit = empirical.fit_idt(series, FitConfig(eps=1e-3, noise_floor=1e-2))

        self.assertTrue(fit.censored)
        self.assertEqual(fit.reason, "1 usable lags")

    def test_starts_below_eps(self):
        series = 0.0009 * 2.0 ** (-0.05 * np.arange(61))
        fit = empirical.fit_idt(series, FitConfig(eps=1e-3, noise_floor=1e-5))

        self.assertFalse(fit.censored)
        self.assertLess(fit.slope, 0)
        self.assertEqual(fit.idt, 0.0)

    def test_negative_series(self):
        self.assertRaises(ValidationException, empirical.fit_idt, np.array([1.0, -0.1]), FitConfig())

    def test_noisy_exponential(self):
        lags = np.arange(51)
        truth = (math.log2(1e-3) - math.log2(0.5)) / -0.1
        errors = []
        for seed in range(100):
            noise = np.exp(np.random.default_rng(seed).normal(0.0, 0.1, len(lags)))
            fit = empirical.fit_idt(0.5 * 2.0 ** (-0.1 * lags) * noise, FitConfig(eps=1e-3))
            errors.append(abs(fit.idt - truth) / truth)

        self.assertLess(np.median(errors), 0.05)

    def test_floor(self):
        self.assertAlmostEqual(FitConfig.for_ensemble(5000).noise_floor, 5.0 / (10000 * math.log(2.0)), places=15)


class AggregateTests(unittest.TestCase):
    def test_means(self):
        curve = empirical.aggregate_by_degree([10.0, 12.0, 5.0, None, None], [2, 2, 3, 3, 4])

        self.assertEqual(curve.ks.tolist(), [2, 3])
        self.assertEqual(curve.means.tolist(), [11.0, 5.0])
        self.assertAlmostEqual(curve.row(2).sem, 1.0, places=12)
        self.assertEqual(curve.row(3).sem, 0.0)
        self.assertEqual(curve.row(3).censored, 1)
        self.assertEqual(curve.censored_count, 2)
        self.assertEqual(curve.low_n, [3])

    def test_identical_values(self):
        curve = empirical.aggregate_by_degree([7.0, 7.0, 7.0], [1, 1, 1])
        self.assertEqual(curve.row(1).sem, 0.0)

    def test_recovers_synthetic_means(self):
        degrees = np.repeat(np.arange(1, 11), 200)
        truth = 10.0 + degrees
        hits = 0
        for seed in range(100):
            values = truth + np.random.default_rng(seed).normal(0.0, 2.0, len(degrees))
            curve = empirical.aggregate_by_degree(values.tolist(), degrees)
            hits += sum(abs(row.mean - (10.0 + row.k)) <= 2 * row.sem for row in curve.rows)

        self.assertGreaterEqual(hits / 1000.0, 0.93)


class MeasureTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.params = DynamicsParams(1.0, 2.0)
        cls.graph = netgen.generate_graph(DegreeDistribution.power_law(2.0, 1, 6), 30, np.random.default_rng(2))
        cls.runs = []
        for realization in range(2):
            cfg = EnsembleConfig(trajectories=200, max_lag=20, seed=6, marginal_sweeps=2000,
                                 equilibration_sweeps=100, realization=realization)
            cls.runs.append(empirical.measure_idt(cls.graph, cls.params, cfg))

    def test_run(self):
        run = self.runs[0]

        self.assertEqual(run.series.shape, (21, 30))
        self.assertTrue(np.all(run.series >= 0))
        self.assertEqual(len(run.fits), 30)
        self.assertEqual(run.curve.label, "realization-0")
        self.assertEqual(run.curve.temperature, 2.0)
        self.assertEqual(sum(row.n_units for row in run.curve.rows) + run.curve.censored_count, 30)

    def test_realizations_use_their_own_streams(self):
        self.assertFalse(np.array_equal(self.runs[0].histograms.plus_counts, self.runs[1].histograms.plus_counts))

    def test_pool(self):
        pooled = empirical.pool_results(self.runs)

        self.assertEqual(pooled.label, "pooled")
        self.assertEqual(pooled.censored_count, sum(run.curve.censored_count for run in self.runs))
        self.assertEqual(sum(row.n_units for row in pooled.rows) + pooled.censored_count, 60)


class SiteStepMeasureTests(unittest.TestCase):
    def test_fits_are_in_sweeps(self):
        graph = netgen.generate_graph(DegreeDistribution.regular(2), 12, np.random.default_rng(5))
        cfg = EnsembleConfig(trajectories=200, max_lag=240, seed=6, marginal_sweeps=2000,
                             equilibration_sweeps=100, step=StepUnit.SITE)
        run = empirical.measure_idt(graph, DynamicsParams(1.0, 2.0), cfg)
        fit_cfg = FitConfig.for_ensemble(cfg.trajectories, cfg.eps)

        self.assertEqual(run.series.shape, (241, 12))
        fitted = 0
        for fit in run.fits:
            lagged = empirical.fit_idt(run.series[:, fit.unit], fit_cfg, fit.unit, fit.degree)
            self.assertEqual(fit.censored, lagged.censored)
            if not fit.censored:
                fitted += 1
                self.assertAlmostEqual(fit.idt, lagged.idt / 12.0, places=12)
        self.assertGreater(fitted, 0)

    def test_rescale(self):
        fit = UnitFit(3, 2, 60.0, False, -0.25, 1.5, 40).rescale(20)

        self.assertEqual((fit.idt, fit.slope, fit.intercept), (3.0, -5.0, 1.5))
        self.assertIsNone(UnitFit().rescale(20).idt)
