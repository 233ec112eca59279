"""
Empirical IDT from an ensemble of trajectories conditioned on one equilibrated
reference state.

Forward trajectories from the reference stand in for trajectories leading up to it:
the dynamics satisfy detailed balance, so the two are time reversals of each other
in distribution.
"""
import logging
import math

import numpy as np
from scipy import stats

from .batch import BatchManager
from .dynamics import SpinKernel, equilibrate
from .exceptions import ValidationException
from .infotheory import binary_kl_divergence
from .objects.curves import EmpiricalCurve, EmpiricalRow
from .objects.dynamics import StepUnit
from .objects.ensemble import EmpiricalRun, FitConfig, LagHistograms, UnitFit
from .utils import derive_stream

logger = logging.getLogger(__name__)


def sweeps_for(max_lag, n, step):
    """Sweeps needed to observe lags 0..max_lag"""
    if step == StepUnit.SITE:
        return int(math.ceil(max_lag / float(n)))
    return max_lag


def trajectory_stream(seed, realization, index):
    return derive_stream(seed, "trajectory", realization, index)


class _LagTally(object):
    """
    Recorder adding the +1 count of every unit at each recorded lag.
    """

    def __init__(self, plus_counts, n):
        self.plus_counts = plus_counts
        self.n = n
        self.lag = 0

    def __call__(self, states):
        self.lag += 1
        if self.lag < len(self.plus_counts):
            self.plus_counts[self.lag] += (states[:, :self.n] > 0).sum(axis=0)


def run_trajectory_batch(context, indices):
    """
    Runs the trajectories in `indices` from the reference state and tallies their states.
    Top level so process pools can pickle it.
    """
    graph, params, reference, seed, realization, max_lag, step = context
    n = graph.n
    kernel = SpinKernel(graph, params)

    states = np.zeros((len(indices), n + 1), dtype=np.int8)
    states[:, :n] = reference
    generators = [trajectory_stream(seed, realization, index) for index in indices]

    plus_counts = np.zeros((max_lag + 1, n), dtype=np.int64)
    plus_counts[0] = len(indices) * (np.asarray(reference) > 0)

    tally = _LagTally(plus_counts, n)
    kernel.run_batch(states, generators, sweeps_for(max_lag, n, step), step, tally)

    logger.debug("Trajectory batch %d..%d done", indices[0], indices[-1])
    return LagHistograms(plus_counts, None, len(indices))


def _merge_histograms(first, second):
    return first.merge(second)


def reference_state(graph, params, cfg):
    rng = derive_stream(cfg.seed, "equilibrate", cfg.realization)
    return equilibrate(graph, params, cfg.equilibration_sweeps, rng)


def run_ensemble(graph, params, cfg, reference=None):
    """
    M trajectories of L lags each, all started at one reference state.

    The reference is equilibrated from the run's own stream unless given. Trajectory t
    draws only from the stream (seed, "trajectory", realization, t).
    :return: LagHistograms
    """
    graph.validate()
    params.validate()
    cfg.validate()

    if reference is None:
        reference = reference_state(graph, params, cfg)
    reference.validate(graph.n)

    context = (graph, params, reference.states.copy(), cfg.seed, cfg.realization, cfg.max_lag, cfg.step)
    manager = BatchManager(run_trajectory_batch, _merge_histograms, cfg.batch_size, cfg.workers)

    histograms = manager.run(range(cfg.trajectories), context)
    histograms.reference = reference
    histograms.validate()

    logger.info("Ensemble of %d trajectories over %d lags on %s", cfg.trajectories, cfg.max_lag, graph)
    return histograms


def trajectory_trace(graph, params, reference, cfg, index=0):
    """
    States of trajectory `index` at lags 0..L, shape (L + 1, n), drawn from the same
    stream the ensemble gives that trajectory.
    """
    kernel = SpinKernel(graph, params)
    states = [int(s) for s in reference.states]
    trace = [list(states)]

    def record(current):
        if len(trace) <= cfg.max_lag:
            trace.append(list(current))

    kernel.run(states, trajectory_stream(cfg.seed, cfg.realization, index),
               sweeps_for(cfg.max_lag, graph.n, cfg.step), cfg.step, record)

    return np.array(trace, dtype=np.int8)


def estimate_marginals(graph, params, reference, sweeps, discard, rng):
    """
    Stationary p(s_u = +1) for every unit from one auxiliary chain started at the
    reference: `discard` sweeps are dropped, then the state is tallied after each of
    `sweeps` sweeps. Counts are smoothed as (c + 1/2) / (S + 1), so every estimate
    lies strictly inside (0, 1).
    """
    if sweeps < 1:
        raise ValidationException("Marginal run needs at least one sweep", 201, "sweeps={0}".format(sweeps))

    kernel = SpinKernel(graph, params)
    states = [int(s) for s in reference.states]
    kernel.run(states, rng, discard)

    plus = np.zeros(graph.n, dtype=np.int64)

    def record(current):
        plus[:] += np.asarray(current) > 0

    kernel.run(states, rng, sweeps, StepUnit.SWEEP, record)
    return (plus + 0.5) / (sweeps + 1.0)


def decay_curve(histograms, marginals):
    """
    i_u(d) = KL(p(s_u at lag d | reference) || p_u) in bits, shape (L + 1, n).
    """
    return binary_kl_divergence(histograms.up_frequencies(), np.asarray(marginals, dtype=float)[None, :])


def _direct_crossing(series, eps, end):
    """
    First lag in 0..end at or below eps, interpolated on log2 against the lag before it.
    """
    hits = np.nonzero(series[:end + 1] <= eps)[0]
    if not len(hits):
        return None

    lag = int(hits[0])
    if lag == 0:
        return 0.0

    with np.errstate(divide="ignore"):
        above, below = np.log2(series[lag - 1]), np.log2(series[lag])
    return lag - 1 + float((above - math.log2(eps)) / (above - below))


def fit_idt(series, fit_cfg, unit=0, degree=0):
    """
    Fits log2 i(d) = a d + b over lags first_lag.. up to the first value at or below the
    noise floor, and solves for the eps crossing D = (log2 eps - b) / a, clamped at 0.

    A window shorter than min_points is still measured when the series reaches eps above
    the noise floor: the crossing is then read off the series. Otherwise the fit is
    censored, as is a fit with a non-negative slope.
    """
    series = np.asarray(series, dtype=float)
    if np.any(series < 0):
        raise ValidationException("Decay series must be non-negative", 201, "unit {0}".format(unit))

    lags = np.arange(fit_cfg.first_lag, len(series))
    values = series[fit_cfg.first_lag:]
    end = len(series) - 1
    below = np.nonzero(values <= fit_cfg.noise_floor)[0]
    if len(below):
        end = int(lags[below[0]])
        lags = lags[:below[0]]
        values = values[:below[0]]

    if len(lags) < fit_cfg.min_points:
        crossing = None
        if fit_cfg.eps > fit_cfg.noise_floor:
            crossing = _direct_crossing(series, fit_cfg.eps, end)
        if crossing is None:
            return UnitFit(unit, degree, points=len(lags), reason="{0} usable lags".format(len(lags)))
        return UnitFit(unit, degree, crossing, False, points=len(lags), reason="direct crossing")

    log_values = np.log2(values)
    if np.ptp(log_values) == 0:
        return UnitFit(unit, degree, slope=0.0, intercept=float(log_values[0]), points=len(lags),
                       reason="no decay")

    result = stats.linregress(lags, log_values)
    slope, intercept = float(result.slope), float(result.intercept)

    if slope >= 0:
        return UnitFit(unit, degree, slope=slope, intercept=intercept, points=len(lags), reason="no decay")

    idt = max(0.0, (math.log2(fit_cfg.eps) - intercept) / slope)
    return UnitFit(unit, degree, idt, False, slope, intercept, len(lags))


def aggregate_by_degree(idt_values, degrees, label="pooled"):
    """
    Mean IDT per degree with SEM = sample std / sqrt(n). None marks a censored unit.
    A degree backed by one unit gets SEM 0 and is listed in low_n.
    """
    by_degree = {}
    for value, k in zip(idt_values, degrees):
        by_degree.setdefault(int(k), []).append(value)

    curve = EmpiricalCurve()
    curve.label = label

    for k in sorted(by_degree):
        measured = np.array([v for v in by_degree[k] if v is not None], dtype=float)
        censored = len(by_degree[k]) - len(measured)
        curve.censored_count += censored

        if not len(measured):
            continue

        if len(measured) == 1:
            sem = 0.0
            curve.low_n.append(k)
        else:
            sem = float(np.std(measured, ddof=1) / math.sqrt(len(measured)))

        curve.rows.append(EmpiricalRow(k, len(measured), float(measured.mean()), sem, censored))

    return curve


def _fit_values(fits):
    return [None if fit.censored else fit.idt for fit in fits]


def measure_idt(graph, params, cfg, reference=None):
    """
    Runs the whole pipeline on one graph realization. Fitted IDTs are in sweeps for either step unit.
    :return: EmpiricalRun
    """
    histograms = run_ensemble(graph, params, cfg, reference)

    marginals = estimate_marginals(graph, params, histograms.reference, cfg.marginal_sweeps,
                                   sweeps_for(cfg.max_lag, graph.n, cfg.step),
                                   derive_stream(cfg.seed, "marginals", cfg.realization))
    series = decay_curve(histograms, marginals)

    fit_cfg = FitConfig.for_ensemble(cfg.trajectories, cfg.eps)
    degrees = graph.degrees
    fits = [fit_idt(series[:, u], fit_cfg, u, degrees[u]) for u in range(graph.n)]
    if cfg.step == StepUnit.SITE:
        fits = [fit.rescale(graph.n) for fit in fits]

    curve = aggregate_by_degree(_fit_values(fits), degrees, "realization-{0}".format(cfg.realization))
    curve.temperature = params.temperature

    censored = sum(1 for fit in fits if fit.censored)
    if censored:
        logger.warning("%d of %d units censored in realization %d", censored, graph.n, cfg.realization)

    return EmpiricalRun(cfg.realization, graph, histograms, marginals, series, fits, curve)


def pool_results(runs):
    """
    Pools the unit fits of several realizations into one curve.
    """
    fits = [fit for run in runs for fit in run.fits]
    curve = aggregate_by_degree(_fit_values(fits), [fit.degree for fit in fits], "pooled")
    if runs:
        curve.temperature = runs[0].curve.temperature
    return curve
