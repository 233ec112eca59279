import math
import unittest

import numpy as np

from idtnet import infotheory
from idtnet.exceptions import NumericException, ValidationException
from idtnet.objects.distribution import Dist, Joint2


class EntropyTests(unittest.TestCase):
    def test_values(self):
        self.assertEqual(infotheory.entropy(Dist([0.5, 0.5])), 1.0)
        self.assertEqual(infotheory.entropy(Dist([1.0, 0.0])), 0.0)
        self.assertAlmostEqual(infotheory.entropy(Dist([0.25, 0.75])), 0.811278, places=6)

    def test_concave(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            p, q = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))
            mix = rng.random()
            lower = mix * infotheory.entropy(p) + (1 - mix) * infotheory.entropy(q)
            self.assertGreaterEqual(infotheory.entropy(mix * p + (1 - mix) * q), lower - 1e-12)

    def test_binary_entropy(self):
        self.assertAlmostEqual(infotheory.binary_entropy(0.25), 0.811278, places=6)
        self.assertEqual(infotheory.binary_entropy(0.0), 0.0)
        self.assertEqual(infotheory.binary_entropy(1.0), 0.0)

    def test_binary_entropy_tiny(self):
        p = 1e-20
        expected = p * (math.log2(1.0 / p) + 1.0 / math.log(2.0))
        self.assertAlmostEqual(infotheory.binary_entropy(p) / expected, 1.0, places=9)

    def test_plug_in_error_shrinks(self):
        p = 0.3
        truth = infotheory.binary_entropy(p)
        medians = []
        for samples in (1000, 10000, 100000):
            errors = []
            for seed in range(100):
                ups = np.random.default_rng(seed).binomial(samples, p)
                estimate = infotheory.empirical_distribution([samples - ups, ups])
                errors.append(abs(infotheory.entropy(estimate) - truth))
            medians.append(np.median(errors))

        self.assertTrue(medians[0] > medians[1] > medians[2])


class MutualInformationTests(unittest.TestCase):
    def test_values(self):
        self.assertAlmostEqual(infotheory.mutual_information(Joint2.product([0.3, 0.7], [0.6, 0.4])), 0.0, places=12)
        self.assertAlmostEqual(infotheory.mutual_information(Joint2([[0.5, 0.0], [0.0, 0.5]])), 1.0, places=12)
        self.assertAlmostEqual(infotheory.mutual_information(Joint2([[0.4, 0.1], [0.1, 0.4]])), 0.278072, places=6)

    def test_bounds(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            joint = Joint2(rng.dirichlet(np.ones(6)).reshape(2, 3))
            mi = infotheory.mutual_information(joint)
            upper = min(infotheory.entropy(joint.marginal_x), infotheory.entropy(joint.marginal_y))

            self.assertGreaterEqual(mi, 0.0)
            self.assertLessEqual(mi, upper + 1e-12)

    def test_channel_information_matches(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            px = rng.dirichlet(np.ones(3))
            channel = rng.dirichlet(np.ones(2), size=3)
            joint = px[:, None] * channel

            self.assertAlmostEqual(infotheory.channel_information(px, channel),
                                   infotheory.mutual_information(joint), places=12)

    def test_channel_information_precision(self):
        up = 0.5 + 1e-9
        d = up - 0.5
        channel = np.array([[0.5, 0.5], [up, 1.0 - up]])
        expected = 0.5 * d * d / math.log(2.0)

        value = infotheory.channel_information([0.5, 0.5], channel)
        self.assertAlmostEqual(value / expected, 1.0, places=6)

    def test_conditional(self):
        copies = np.zeros((2, 2, 2))
        copies[0, 0, :] = copies[1, 1, :] = 0.25
        self.assertAlmostEqual(infotheory.conditional_mutual_information(copies), 1.0, places=12)

        driven = np.zeros((2, 2, 2))
        driven[0, 0, 0] = driven[1, 1, 1] = 0.5
        self.assertAlmostEqual(infotheory.conditional_mutual_information(driven), 0.0, places=12)


class DivergenceTests(unittest.TestCase):
    def test_values(self):
        self.assertEqual(infotheory.kl_divergence(Dist([0.3, 0.7]), Dist([0.3, 0.7])), 0.0)
        self.assertAlmostEqual(infotheory.kl_divergence(Dist([1.0, 0.0]), Dist([0.5, 0.5])), 1.0, places=12)

    def test_support_violation(self):
        with self.assertRaises(NumericException) as error:
            infotheory.kl_divergence(Dist([0.5, 0.5]), Dist([1.0, 0.0]))

        self.assertEqual(error.exception.error_code, 404)

    def test_alphabet_mismatch(self):
        self.assertRaises(ValidationException, infotheory.kl_divergence, [0.5, 0.5], [0.2, 0.3, 0.5])

    def test_gibbs(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            p, q = rng.dirichlet(np.ones(3)), rng.dirichlet(np.ones(3))
            self.assertGreaterEqual(infotheory.kl_divergence(p, q), 0.0)

    def test_binary(self):
        values = infotheory.binary_kl_divergence([1.0, 0.3], [0.5, 0.3])

        self.assertAlmostEqual(values[0], 1.0, places=12)
        self.assertAlmostEqual(values[1], 0.0, places=12)
        self.assertRaises(NumericException, infotheory.binary_kl_divergence, 0.5, 1.0)


class EmpiricalDistributionTests(unittest.TestCase):
    def test_frequencies(self):
        self.assertEqual(infotheory.empirical_distribution([3, 1]).probs.tolist(), [0.75, 0.25])
        self.assertEqual(infotheory.empirical_distribution([0, 5]).probs.tolist(), [0.0, 1.0])

    def test_zero_total(self):
        with self.assertRaises(NumericException) as error:
            infotheory.empirical_distribution([0, 0])

        self.assertEqual(error.exception.error_code, 405)

    def test_negative(self):
        self.assertRaises(ValidationException, infotheory.empirical_distribution, [-1, 3])

    def test_bernoulli(self):
        samples = 100000
        ups = np.random.default_rng(5).binomial(samples, 0.7)
        dist = infotheory.empirical_distribution([samples - ups, ups])

        self.assertLess(abs(dist[1] - 0.7), 3 * math.sqrt(0.21 / samples))
