import numpy as np

from ..exceptions import ValidationException
from .base import IdtnetBaseObject


class Kernel(IdtnetBaseObject):
    """
    Row-stochastic transition matrix of one random-scan step over the 2^n configurations,
    stored sparse (scipy CSR). Configuration index x has bit i set when unit i is +1.
    """

    def __init__(self, matrix=None, n=0, rule=None):
        super(Kernel, self).__init__()
        self.matrix = matrix
        self.n = n
        self.rule = rule
        self._transposed = None

    def __str__(self):
        return "Kernel(n={0}, states={1}, {2})".format(self.n, self.size, self.rule)

    @property
    def size(self):
        return 1 << self.n

    def validate(self, tolerance=1e-12):
        if self.matrix.shape != (self.size, self.size):
            raise ValidationException("Kernel dimension differs from 2^n")
        if self.matrix.nnz and self.matrix.data.min() < 0:
            raise ValidationException("Kernel has negative entries")
        rows = np.asarray(self.matrix.sum(axis=1)).ravel()
        if np.max(np.abs(rows - 1.0)) > tolerance:
            raise ValidationException("Kernel rows do not sum to one")
        return True

    def propagate(self, vectors, steps=1):
        """
        Row vector(s) times P^steps. vectors has shape (2^n,) or (2^n, m).
        """
        if self._transposed is None:
            self._transposed = self.matrix.T.tocsr()

        for _ in range(steps):
            vectors = self._transposed @ vectors
        return vectors

    def dense(self):
        return self.matrix.toarray()
