import math

import numpy as np

from ..exceptions import ValidationException
from .base import IdtnetBaseObject

NORMALIZATION_TOLERANCE = 1e-12


class Dist(IdtnetBaseObject):
    """
    Probability mass over a finite alphabet. For spin states the order is (-1, +1).
    """

    def __init__(self, probs=None):
        super(Dist, self).__init__()
        self.probs = np.asarray(probs if probs is not None else [], dtype=float)

    def __str__(self):
        return "Dist({0})".format(", ".join("{0:.6g}".format(p) for p in self.probs))

    def __len__(self):
        return len(self.probs)

    def __getitem__(self, index):
        return self.probs[index]

    def validate(self):
        if self.probs.ndim != 1 or len(self.probs) == 0:
            raise ValidationException("Distribution needs a non-empty alphabet")
        if np.any(self.probs < 0) or not np.all(np.isfinite(self.probs)):
            raise ValidationException("Distribution has negative or non-finite mass")
        if abs(self.probs.sum() - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValidationException("Distribution is not normalized", 201, "sum={0!r}".format(self.probs.sum()))
        return True

    @classmethod
    def binary(cls, p_up):
        """Spin-state distribution (-1, +1) from the probability of +1"""
        return cls([1.0 - p_up, p_up])


class Joint2(IdtnetBaseObject):
    """
    Joint probability matrix p(x, y) of two finite variables.
    """

    def __init__(self, matrix=None):
        super(Joint2, self).__init__()
        self.matrix = np.asarray(matrix if matrix is not None else [[1.0]], dtype=float)

    def validate(self):
        if self.matrix.ndim != 2:
            raise ValidationException("Joint distribution must be a matrix")
        if np.any(self.matrix < 0):
            raise ValidationException("Joint distribution has negative mass")
        if abs(self.matrix.sum() - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValidationException("Joint distribution is not normalized")
        return True

    @property
    def marginal_x(self):
        return Dist(self.matrix.sum(axis=1))

    @property
    def marginal_y(self):
        return Dist(self.matrix.sum(axis=0))

    @classmethod
    def product(cls, px, py):
        return cls(np.outer(np.asarray(px, dtype=float), np.asarray(py, dtype=float)))


class DegreeDistribution(IdtnetBaseObject):
    """
    Probability mass p(k) on a finite degree support. Excess-degree laws q(m) set
    allow_zero, since m = 0 is a valid excess degree.
    """

    def __init__(self, degrees=None, probs=None, allow_zero=False):
        super(DegreeDistribution, self).__init__()
        self.degrees = np.asarray(degrees if degrees is not None else [], dtype=np.int64)
        self.probs = np.asarray(probs if probs is not None else [], dtype=float)
        self.allow_zero = allow_zero

    def __str__(self):
        return "DegreeDistribution(k={0}..{1}, mean={2:.4f})".format(self.k_min, self.k_max, self.mean)

    @property
    def support(self):
        return [(int(k), float(p)) for k, p in zip(self.degrees, self.probs)]

    @property
    def mean(self):
        return float(np.dot(self.degrees, self.probs))

    @property
    def k_min(self):
        return int(self.degrees.min())

    @property
    def k_max(self):
        return int(self.degrees.max())

    def probability(self, k):
        hits = np.nonzero(self.degrees == k)[0]
        return float(self.probs[hits[0]]) if len(hits) else 0.0

    def validate(self):
        if len(self.degrees) == 0:
            raise ValidationException("Degree distribution has an empty support")
        if len(self.degrees) != len(self.probs):
            raise ValidationException("Degree and probability arrays differ in length")
        if np.any(self.probs < 0):
            raise ValidationException("Degree distribution has negative mass")
        if self.degrees.min() < (0 if self.allow_zero else 1):
            raise ValidationException("Degree support must start at 1", 201, "k_min={0}".format(self.k_min))
        if abs(self.probs.sum() - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValidationException("Degree distribution is not normalized")
        return True

    @classmethod
    def from_mapping(cls, mapping, allow_zero=False):
        """
        Builds a normalized distribution from {k: weight}. Zero weights are dropped.
        """
        items = sorted((int(k), float(w)) for k, w in mapping.items() if w > 0)
        if not items:
            raise ValidationException("Degree distribution has an empty support")

        degrees = np.array([k for k, _ in items], dtype=np.int64)
        weights = np.array([w for _, w in items], dtype=float)
        dist = cls(degrees, weights / weights.sum(), allow_zero=allow_zero)
        dist.validate()
        return dist

    @classmethod
    def power_law(cls, gamma, k_min=1, k_max=None, n=None):
        """
        p(k) proportional to k^-gamma on [k_min, k_max]. k_max defaults to ceil(sqrt(n)).
        """
        if k_max is None:
            if n is None:
                raise ValidationException("power_law needs k_max or n")
            k_max = int(math.ceil(math.sqrt(n)))

        if k_min < 1 or k_max < k_min:
            raise ValidationException("Invalid degree range", 201, "[{0}, {1}]".format(k_min, k_max))

        degrees = np.arange(k_min, k_max + 1, dtype=np.int64)
        weights = degrees.astype(float) ** (-float(gamma))
        dist = cls(degrees, weights / weights.sum())
        dist.validate()
        return dist

    @classmethod
    def regular(cls, k):
        return cls.from_mapping({k: 1.0})
