"""
Analytic IDT on locally tree-like networks.

The neighbour-state statistics come from a cavity fixed point; unit entropies,
one-hop transmissions and the dissipation time follow from binomial sums over
neighbour states under heat-bath updates.
"""
import logging
import math
import warnings

import numpy as np
from scipy.special import expit
from scipy.stats import binom

from .exceptions import ConvergenceException, NumericException, ValidationException
from .infotheory import binary_entropy, channel_information
from .netgen import excess_degree_distribution
from .objects.curves import AnalyticCurve, AnalyticRow, CavityBranch, CavitySolution
from .objects.distribution import Dist
from .objects.series import XYSeries
from .trend import linear_fit

logger = logging.getLogger(__name__)

BROKEN_THRESHOLD = 1e-6


class _CavityMap(object):
    """
    rho -> sum_m q(m) E_{j ~ Binom(m, rho)} p_up(2j - m) over the excess-degree support.
    """

    def __init__(self, excess, params):
        m_values = excess.degrees
        width = int(m_values.max()) + 1

        self.weights = excess.probs
        self.j = np.tile(np.arange(width), (len(m_values), 1))
        self.m = np.repeat(m_values[:, None], width, axis=1)
        self.valid = self.j <= self.m
        field = 2 * self.j - self.m
        self.up = np.where(self.valid, expit(2.0 * params.coupling * field / params.temperature), 0.0)

    def __call__(self, rho):
        pmf = np.where(self.valid, binom.pmf(self.j, self.m, rho), 0.0)
        return float(self.weights @ (pmf * self.up).sum(axis=1))


def _iterate(cavity_map, init, tol, max_iter, damping):
    rho = init
    residual = float("inf")

    for iteration in range(1, max_iter + 1):
        updated = damping * rho + (1.0 - damping) * cavity_map(rho)
        residual = abs(updated - rho)
        rho = updated
        if residual < tol:
            return CavitySolution(rho, True, iteration, residual)

    return CavitySolution(rho, False, max_iter, residual)


def cavity_fixed_point(dist, params, init=None, tol=1e-12, max_iter=100000, damping=0.5):
    """
    Damped fixed-point iteration of the cavity map.

    With init=None the map is iterated from 0.5 and from 0.99, and the symmetry-broken
    root is reported when the second run finds one.
    :param dist: degree distribution p(k)
    :return: CavitySolution
    """
    if not tol > 0:
        raise ValidationException("Tolerance must be positive", 201, "tol={0}".format(tol))
    params.validate()

    cavity_map = _CavityMap(excess_degree_distribution(dist), params)

    if init is not None:
        solution = _iterate(cavity_map, init, tol, max_iter, damping)
        solution.branch = CavityBranch.BROKEN if abs(solution.rho - 0.5) > BROKEN_THRESHOLD \
            else CavityBranch.SYMMETRIC
        return solution

    symmetric = _iterate(cavity_map, 0.5, tol, max_iter, damping)
    symmetric.branch = CavityBranch.SYMMETRIC
    broken = _iterate(cavity_map, 0.99, tol, max_iter, damping)

    if broken.converged and abs(broken.rho - 0.5) > BROKEN_THRESHOLD:
        broken.branch = CavityBranch.BROKEN
        logger.info("Cavity fixed point (%s): %s", params, broken)
        return broken

    if not broken.converged:
        logger.warning("Cavity iteration from 0.99 did not converge: %s", broken)
    logger.info("Cavity fixed point (%s): %s", params, symmetric)
    return symmetric


def _neighbour_sums(m, rho, shift, params):
    """
    (p_down, p_up) of a unit whose other m neighbours are +1 with probability rho,
    plus a fixed contribution `shift` to its field.
    """
    j = np.arange(m + 1)
    pmf = binom.pmf(j, m, rho)
    scaled = 2.0 * params.coupling * (shift + 2 * j - m) / params.temperature
    return float(pmf @ expit(-scaled)), float(pmf @ expit(scaled))


def unit_marginal(k, rho, params):
    """
    Stationary state of a degree-k unit whose neighbours are independently +1 with
    probability rho. Returns Dist over (-1, +1).
    """
    if k < 1:
        raise ValidationException("Degree must be at least 1", 201, "k={0}".format(k))

    down, up = _neighbour_sums(k, rho, 0, params)
    return Dist([down, up])


def unit_entropy(k, rho, params):
    """I0 of a degree-k unit: H(s) in bits, accurate for strongly ordered units"""
    down, up = unit_marginal(k, rho, params).probs
    return binary_entropy(min(down, up))


def mean_field_marginal(k, magnetization, params):
    """
    Large-degree Gibbs approximation p(q) ~ exp(-k <e_q> / T) with <e_q> = -J q m.
    """
    return Dist.binary(float(expit(2.0 * k * params.coupling * magnetization / params.temperature)))


def neighbour_channels(excess, rho, params):
    """
    For every excess degree m with q(m) > 0: (q(m), channel) where channel[a, b] is
    p(s_j^{t+1} = b | s_i^t = a) for a neighbour j of degree m + 1, states ordered (-1, +1).
    """
    channels = []
    for m, weight in excess.support:
        rows = [_neighbour_sums(m, rho, a, params) for a in (-1, 1)]
        channels.append((weight, np.array(rows)))
    return channels


def transmission_T(k, dist, rho, params, channels=None):
    """
    T(k): information a degree-k unit passes to one neighbour in one step, averaged
    over the neighbour's degree k_j ~ q(k_j - 1).
    """
    if channels is None:
        channels = neighbour_channels(excess_degree_distribution(dist), rho, params)

    px = unit_marginal(k, rho, params).probs
    return float(sum(weight * channel_information(px, channel) for weight, channel in channels))


def _upper_bound(k, i0, t_k):
    return min(k * t_k, i0)


def _average_ratio(excess, rows):
    """
    Returns (I_hat, excess degrees whose I0 vanished).
    """
    total = 0.0
    degenerate = []

    for m, weight in excess.support:
        row = rows[m + 1]
        if row.i0 <= 0:
            degenerate.append(m)
            total += weight
        else:
            total += weight * min(1.0, row.i1_upper / row.i0)

    return total, degenerate


def _rows_for(k_values, dist, rho, params, channels):
    rows = {}
    for k in k_values:
        i0 = unit_entropy(k, rho, params)
        t_k = transmission_T(k, dist, rho, params, channels)
        rows[k] = AnalyticRow(int(k), i0, t_k, _upper_bound(k, i0, t_k))
    return rows


def avg_dissipation_ratio(dist, rho, params):
    """
    I_hat = sum_m q(m) min(1, I1(m + 1) / I0(m + 1)).

    Terms with I0 = 0 count as ratio 1 and raise a RuntimeWarning.
    """
    excess = excess_degree_distribution(dist)
    channels = neighbour_channels(excess, rho, params)
    rows = _rows_for([int(m) + 1 for m in excess.degrees], dist, rho, params, channels)

    i_hat, degenerate = _average_ratio(excess, rows)
    if degenerate:
        warnings.warn("I0 vanished for excess degrees {0}; ratio taken as 1".format(degenerate), RuntimeWarning)
    return i_hat


def idt_value(k, eps, c_eff, i_hat, i1_upper):
    """
    D = (log eps - log I1) / (log c_eff + log I_hat), in steps; 0 once I1 <= eps.
    """
    if not 0 < eps < 1:
        raise ValidationException("eps must lie in (0, 1)", 201, "eps={0}".format(eps))

    base = c_eff * i_hat
    if not base > 0:
        raise ValidationException("c_eff * I_hat must be positive", 201, "k={0}".format(k))
    if base >= 1:
        raise NumericException("Information does not dissipate", 403,
                               "c_eff * I_hat = {0!r} >= 1".format(base))

    if i1_upper <= eps:
        return 0.0

    return (math.log2(eps) - math.log2(i1_upper)) / math.log2(base)


def analytic_curve(dist, params, eps=1e-3, k_range=None, c_eff=1.0, branch=CavityBranch.AUTO):
    """
    Analytic D(k) over k_range (default: the support range of dist).
    :param branch: "auto" uses the broken root when one exists; "symmetric" forces rho = 1/2
    """
    params.validate()
    if branch not in CavityBranch.ALL:
        raise ValidationException("Unknown cavity branch", 201, str(branch))

    if branch == CavityBranch.SYMMETRIC:
        solution = CavitySolution(0.5, True, 0, 0.0, CavityBranch.SYMMETRIC)
    else:
        solution = cavity_fixed_point(dist, params)

    if not solution.converged:
        raise ConvergenceException("Cavity iteration did not converge", 401, str(solution))

    if k_range is None:
        k_range = range(dist.k_min, dist.k_max + 1)
    k_values = sorted(set(int(k) for k in k_range))

    excess = excess_degree_distribution(dist)
    channels = neighbour_channels(excess, solution.rho, params)
    needed = sorted(set(k_values) | set(int(m) + 1 for m in excess.degrees))
    rows = _rows_for(needed, dist, solution.rho, params, channels)

    curve = AnalyticCurve()
    curve.eps = eps
    curve.c_eff = c_eff
    curve.rho = solution.rho
    curve.branch = solution.branch
    curve.temperature = params.temperature

    curve.i_hat, degenerate = _average_ratio(excess, rows)
    if degenerate:
        curve.flags.append("i0_zero")
        warnings.warn("I0 vanished for excess degrees {0}; ratio taken as 1".format(degenerate), RuntimeWarning)
    if solution.branch == CavityBranch.SYMMETRIC:
        curve.flags.append("symmetric")
        warnings.warn("Analytic curve evaluated on the symmetric branch (rho = 1/2)", RuntimeWarning)

    for k in k_values:
        row = rows[k]
        row.d = idt_value(k, eps, c_eff, curve.i_hat, row.i1_upper)
        curve.rows.append(row)

    logger.info("Analytic curve at %s: I_hat=%.6g, argmax k=%d", params, curve.i_hat, curve.argmax_k)
    return curve


def transmission_ratios(dist, params, k_values, rho=None):
    """
    T(k + 1) / T(k) for each k in k_values.
    """
    if rho is None:
        rho = cavity_fixed_point(dist, params).rho

    channels = neighbour_channels(excess_degree_distribution(dist), rho, params)
    ratios = []
    for k in k_values:
        upper = transmission_T(k + 1, dist, rho, params, channels)
        ratios.append(upper / transmission_T(k, dist, rho, params, channels))
    return np.array(ratios)


def entropy_decay_fit(rho, params, k_from, k_to):
    """
    Least-squares line through log2 I0 versus k on [k_from, k_to].
    """
    k_values = np.arange(k_from, k_to + 1)
    log_i0 = [math.log2(unit_entropy(int(k), rho, params)) for k in k_values]
    return linear_fit(XYSeries.from_points(k_values, log_i0))
