import math

import numpy as np

from ..exceptions import ValidationException
from .base import IdtnetBaseObject, IdtnetTable
from .dynamics import StepUnit


class EnsembleConfig(IdtnetBaseObject):
    """
    Trajectory ensemble settings of the empirical pipeline.

    max_lag counts sweeps, or single-site updates when step is "site".
    """

    def __init__(self, trajectories=5000, max_lag=100, eps=1e-3, seed=0, marginal_sweeps=10000,
                 equilibration_sweeps=1000, step=StepUnit.SWEEP, batch_size=512, workers=1, realization=0):
        super(EnsembleConfig, self).__init__()
        self.trajectories = trajectories
        self.max_lag = max_lag
        self.eps = eps
        self.seed = seed
        self.marginal_sweeps = marginal_sweeps
        self.equilibration_sweeps = equilibration_sweeps
        self.step = step
        self.batch_size = batch_size
        self.workers = workers
        self.realization = realization

    def __str__(self):
        return "M={0} L={1} eps={2} seed={3} realization={4}".format(
            self.trajectories, self.max_lag, self.eps, self.seed, self.realization)

    def validate(self):
        if self.trajectories < 100:
            raise ValidationException("Ensemble needs at least 100 trajectories", 201,
                                      "M={0}".format(self.trajectories))
        if self.max_lag < 10:
            raise ValidationException("Maximum lag must be at least 10", 201, "L={0}".format(self.max_lag))
        if not 0 < self.eps < 1:
            raise ValidationException("eps must lie in (0, 1)", 201, "eps={0}".format(self.eps))
        if self.step not in StepUnit.ALL:
            raise ValidationException("Unknown step unit", 201, str(self.step))
        if self.marginal_sweeps < 1 or self.equilibration_sweeps < 1:
            raise ValidationException("Auxiliary runs need at least one sweep")
        if self.batch_size < 1 or self.workers < 1:
            raise ValidationException("batch_size and workers must be positive")
        if self.seed is None or self.seed < 0:
            raise ValidationException("Seed must be a non-negative integer", 201, "seed={0}".format(self.seed))
        return True


class LagHistograms(IdtnetBaseObject):
    """
    Per-unit, per-lag state tallies over an ensemble of trajectories started at one
    reference state. Only the +1 counts are stored; the -1 count is M minus it.
    """

    def __init__(self, plus_counts=None, reference=None, trajectories=0):
        super(LagHistograms, self).__init__()
        self.plus_counts = plus_counts
        self.reference = reference
        self.trajectories = trajectories

    def __str__(self):
        return "LagHistograms(M={0}, lags=0..{1}, n={2})".format(self.trajectories, self.max_lag, self.n)

    @property
    def max_lag(self):
        return self.plus_counts.shape[0] - 1

    @property
    def n(self):
        return self.plus_counts.shape[1]

    def counts(self, unit, lag, state):
        plus = int(self.plus_counts[lag, unit])
        return plus if state > 0 else self.trajectories - plus

    def up_frequencies(self):
        """Plug-in p(s_u = +1 at lag d | reference), shape (L + 1, n)"""
        return self.plus_counts / float(self.trajectories)

    def merge(self, other):
        """
        Adds the tallies of another ensemble started from the same reference.
        """
        if self.plus_counts is None:
            return LagHistograms(other.plus_counts.copy(), other.reference, other.trajectories)

        if self.plus_counts.shape != other.plus_counts.shape:
            raise ValidationException("Histogram shapes differ", 201,
                                      "{0} != {1}".format(self.plus_counts.shape, other.plus_counts.shape))

        return LagHistograms(self.plus_counts + other.plus_counts, self.reference,
                             self.trajectories + other.trajectories)

    def validate(self):
        if np.any(self.plus_counts < 0) or np.any(self.plus_counts > self.trajectories):
            raise ValidationException("Tallies outside [0, M]")
        return True


class FitConfig(IdtnetBaseObject):
    """
    Regression settings for one decay curve. Lags whose value lies at or below the
    noise floor end the fit window.
    """

    def __init__(self, eps=1e-3, noise_floor=0.0, min_points=5, first_lag=1):
        super(FitConfig, self).__init__()
        self.eps = eps
        self.noise_floor = noise_floor
        self.min_points = min_points
        self.first_lag = first_lag

    def __str__(self):
        return "eps={0} floor={1:.3g} min_points={2}".format(self.eps, self.noise_floor, self.min_points)

    @classmethod
    def for_ensemble(cls, trajectories, eps=1e-3, alphabet=2):
        """
        Floor at the plug-in divergence bias scale 5 (|alphabet| - 1) / (2 M ln 2).
        """
        floor = 5.0 * (alphabet - 1) / (2.0 * trajectories * math.log(2.0))
        return cls(eps=eps, noise_floor=floor)


class UnitFit(IdtnetBaseObject):
    def __init__(self, unit=0, degree=0, idt=None, censored=True, slope=float("nan"),
                 intercept=float("nan"), points=0, reason=""):
        super(UnitFit, self).__init__()
        self.unit = unit
        self.degree = degree
        self.idt = idt
        self.censored = censored
        self.slope = slope
        self.intercept = intercept
        self.points = points
        self.reason = reason

    def __str__(self):
        if self.censored:
            return "unit {0} (k={1}): censored, {2}".format(self.unit, self.degree, self.reason)
        return "unit {0} (k={1}): D={2:.4g}".format(self.unit, self.degree, self.idt)

    def rescale(self, steps_per_sweep):
        """
        Converts a fit made on single-site lags to sweeps. The intercept is unchanged.
        """
        if self.idt is not None:
            self.idt /= float(steps_per_sweep)
        self.slope *= steps_per_sweep
        return self


class UnitFitTable(IdtnetTable):
    csv_header = ("unit", "degree", "idt_sweeps", "censored", "fit_slope", "fit_intercept", "fit_points")

    list_dict = {
        "fits": UnitFit
    }

    def __init__(self, fits=None):
        super(UnitFitTable, self).__init__()
        self.fits = fits or []

    def csv_rows(self):
        return [(f.unit, f.degree, f.idt, int(f.censored), f.slope, f.intercept, f.points) for f in self.fits]

    @classmethod
    def from_csv_rows(cls, rows, meta):
        fits = []
        for r in rows:
            fits.append(UnitFit(int(r["unit"]), int(r["degree"]),
                                float(r["idt_sweeps"]) if r["idt_sweeps"] else None,
                                r["censored"] == "1", float(r["fit_slope"]), float(r["fit_intercept"]),
                                int(r["fit_points"])))
        return cls(fits)


class EmpiricalRun(IdtnetBaseObject):
    """
    Everything one realization of the empirical pipeline produced.
    """

    def __init__(self, realization=0, graph=None, histograms=None, marginals=None, series=None, fits=None,
                 curve=None):
        super(EmpiricalRun, self).__init__()
        self.realization = realization
        self.graph = graph
        self.histograms = histograms
        self.marginals = marginals
        self.series = series
        self.fits = fits or []
        self.curve = curve

    def __str__(self):
        return "EmpiricalRun(realization={0}, {1})".format(self.realization, self.curve)


class TrajectoryDump(IdtnetTable):
    """
    States of one trajectory at lags 0..L, written as one row per (t, unit).
    """
    csv_header = ("t", "unit", "state")

    def __init__(self, states=None):
        super(TrajectoryDump, self).__init__()
        self.states = states

    def csv_rows(self):
        lags, n = self.states.shape
        return [(t, u, int(self.states[t, u])) for t in range(lags) for u in range(n)]

    @classmethod
    def from_csv_rows(cls, rows, meta):
        cells = [(int(r["t"]), int(r["unit"]), int(r["state"])) for r in rows]
        lags = 1 + max(t for t, _, _ in cells)
        n = 1 + max(u for _, u, _ in cells)

        states = np.zeros((lags, n), dtype=np.int8)
        for t, u, state in cells:
            states[t, u] = state
        return cls(states)
