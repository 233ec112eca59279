"""
Exact computations on small systems: the full random-scan kernel over all 2^n
configurations, its stationary law, and exact lagged information quantities.
"""
import logging

import numpy as np
from scipy import sparse
from scipy.special import expit

from .exceptions import ConvergenceException, ValidationException
from .infotheory import binary_kl_divergence, channel_information, conditional_mutual_information, entropy
from .objects.distribution import Dist
from .objects.dynamics import SpinConfig, UpdateRule
from .objects.kernel import Kernel

logger = logging.getLogger(__name__)

MAX_UNITS = 14
MAX_STAR_DEGREE = 10


def configuration_states(n):
    """All 2^n configurations as rows of +-1, row x has unit i up when bit i of x is set"""
    index = np.arange(1 << n, dtype=np.int64)
    return np.where((index[:, None] >> np.arange(n)) & 1, 1, -1).astype(np.int64)


def _unit_bits(n):
    index = np.arange(1 << n, dtype=np.int64)
    return ((index[:, None] >> np.arange(n)) & 1).astype(float)


def _check_size(graph):
    if graph.n > MAX_UNITS:
        raise ValidationException("Exact state space is capped", 202,
                                  "n={0} > {1} (2^n states)".format(graph.n, MAX_UNITS))


def build_kernel(graph, params):
    """
    P = (1/n) sum_i P_i where P_i updates unit i by the selected rule.
    """
    params.validate()
    graph.validate()
    _check_size(graph)

    n = graph.n
    size = 1 << n
    states = configuration_states(n)
    fields = states @ graph.adjacency_matrix()
    scaled = 2.0 * params.coupling * fields / params.temperature

    if params.rule == UpdateRule.GLAUBER:
        flip = np.where(states > 0, expit(-scaled), expit(scaled))
    else:
        flip = np.exp(np.minimum(0.0, -scaled * states))
    flip = flip / n

    index = np.arange(size, dtype=np.int64)
    rows = np.repeat(index, n)
    cols = (index[:, None] ^ (1 << np.arange(n, dtype=np.int64))).ravel()
    stay = 1.0 - flip.sum(axis=1)

    matrix = sparse.csr_matrix(
        (np.concatenate([flip.ravel(), stay]), (np.concatenate([rows, index]), np.concatenate([cols, index]))),
        shape=(size, size))

    kernel = Kernel(matrix, n, params.rule)
    kernel.validate()
    return kernel


def boltzmann_distribution(graph, params):
    """
    pi(x) proportional to exp(J sum_edges s_i s_j / T)
    """
    _check_size(graph)
    states = configuration_states(graph.n)
    bonds = np.zeros(len(states))
    for u, v in graph.edges():
        bonds += states[:, u] * states[:, v]

    log_weights = params.coupling * bonds / params.temperature
    weights = np.exp(log_weights - log_weights.max())
    return Dist(weights / weights.sum())


def detailed_balance_residual(kernel, pi):
    """
    max |pi(x) P(x, y) - pi(y) P(y, x)|
    """
    flow = sparse.diags(pi.probs) @ kernel.matrix
    residual = (flow - flow.T).tocsr()
    return float(np.abs(residual.data).max()) if residual.nnz else 0.0


def stationary_distribution(kernel, tol=1e-13, max_iter=1000000):
    """
    Fixed point of pi P = pi by lazy power iteration from the uniform law.
    """
    pi = np.full(kernel.size, 1.0 / kernel.size)

    for iteration in range(1, max_iter + 1):
        stepped = kernel.propagate(pi)
        residual = np.abs(stepped - pi).max()
        if residual < tol:
            logger.debug("Power iteration converged after %d iterations", iteration)
            return Dist(stepped / stepped.sum())
        pi = 0.5 * (pi + stepped)

    raise ConvergenceException("Power iteration did not converge", 401,
                               "residual={0!r} after {1} iterations".format(residual, max_iter))


def _source_columns(pi, n, unit):
    up = (np.arange(1 << n) >> unit) & 1
    probs = pi.probs
    return np.column_stack([probs * (up == 0), probs * (up == 1)])


def _information_from_columns(columns, outputs=None, minlength=None):
    """
    columns[y, a] = p(s_unit = a, Y = y); outputs optionally maps y onto coarser symbols.
    """
    if outputs is not None:
        columns = np.column_stack([np.bincount(outputs, weights=columns[:, a], minlength=minlength)
                                   for a in range(2)])
    px = columns.sum(axis=0)
    channel = np.zeros((2, columns.shape[0]))
    for a in range(2):
        if px[a] > 0:
            channel[a] = columns[:, a] / px[a]
    return channel_information(px, channel)


def lagged_unit_mi(kernel, pi, unit, lag):
    """
    Exact I(S^{t+lag}; s_unit^t) at stationarity, lag in random-scan steps.
    """
    if lag < 0:
        raise ValidationException("Lag must be non-negative", 201, "lag={0}".format(lag))

    columns = _source_columns(pi, kernel.n, unit)
    if lag == 0:
        return entropy(columns.sum(axis=0))

    return _information_from_columns(kernel.propagate(columns, lag))


def lagged_unit_mi_series(kernel, pi, unit, lags):
    """
    lagged_unit_mi at every lag in lags, propagating once through the sorted lags.
    """
    order = np.argsort(lags)
    values = np.zeros(len(lags))
    columns = _source_columns(pi, kernel.n, unit)
    current = 0

    for position in order:
        lag = int(lags[position])
        columns = kernel.propagate(columns, lag - current)
        current = lag
        values[position] = entropy(columns.sum(axis=0)) if lag == 0 else _information_from_columns(columns)

    return values


def decay_lag(kernel, pi, unit, threshold=1e-6, max_lag=1000000, stride=None):
    """
    First lag (checked every `stride` steps, default n) where the lagged MI drops below threshold.
    """
    stride = stride or kernel.n
    columns = _source_columns(pi, kernel.n, unit)

    for lag in range(stride, max_lag + 1, stride):
        columns = kernel.propagate(columns, stride)
        if _information_from_columns(columns) < threshold:
            return lag

    raise ConvergenceException("Lagged information did not decay", 401,
                               "unit {0} above {1} after {2} steps".format(unit, threshold, max_lag))


def pair_lagged_mi(kernel, pi, source, target, lag):
    """
    Exact I(s_target^{t+lag}; s_source^t).
    """
    columns = kernel.propagate(_source_columns(pi, kernel.n, source), lag)
    outputs = (np.arange(kernel.size) >> target) & 1
    return _information_from_columns(columns, outputs, 2)


def neighbourhood_information(kernel, pi, unit, neighbours, lag=1):
    """
    Exact I(h^{t+lag}; s^t) of the joint neighbour state, and the per-neighbour terms
    I(s_j^{t+lag}; s^t) whose sum bounds it when neighbours are conditionally independent.
    """
    columns = kernel.propagate(_source_columns(pi, kernel.n, unit), lag)
    index = np.arange(kernel.size)

    pattern = np.zeros(kernel.size, dtype=np.int64)
    for position, j in enumerate(neighbours):
        pattern |= ((index >> j) & 1) << position

    joint = _information_from_columns(columns, pattern, 1 << len(neighbours))
    single = [_information_from_columns(columns, (index >> j) & 1, 2) for j in neighbours]
    return joint, single


def unit_up_probabilities(pi, n):
    """Stationary p(s_u = +1) for every unit"""
    return pi.probs @ _unit_bits(n)


def conditional_unit_probabilities(kernel, sigma, lags):
    """
    p(s_u^{t+lag} = +1 | S^t = sigma) for every lag (random-scan steps) and unit,
    shape (len(lags), n).
    """
    bits = _unit_bits(kernel.n)
    vector = np.zeros(kernel.size)
    vector[sigma.index() if isinstance(sigma, SpinConfig) else int(sigma)] = 1.0

    result = np.zeros((len(lags), kernel.n))
    current = 0
    for position in np.argsort(lags):
        lag = int(lags[position])
        vector = kernel.propagate(vector, lag - current)
        current = lag
        result[position] = vector @ bits

    return result


def specific_divergence_series(kernel, pi, sigma, lags):
    """
    KL(p(s_u at lag | sigma) || p(s_u)) in bits, shape (len(lags), n).
    """
    conditional = conditional_unit_probabilities(kernel, sigma, lags)
    marginal = unit_up_probabilities(pi, kernel.n)
    return binary_kl_divergence(np.clip(conditional, 0.0, 1.0), marginal[None, :])


def backflow_conditional_mi(graph, params, lag=None, pi=None):
    """
    I(s_c^t; s_c^{t+lag} | leaves^{t+lag}) for the center c of a star.

    lag defaults to two sweeps, 2n random-scan steps.
    """
    center = graph.star_center()
    if center is None:
        raise ValidationException("Back-flow information needs a star graph", 201, str(graph))
    if graph.n - 1 > MAX_STAR_DEGREE:
        raise ValidationException("Star degree is capped", 202,
                                  "k={0} > {1}".format(graph.n - 1, MAX_STAR_DEGREE))

    kernel = build_kernel(graph, params)
    if pi is None:
        pi = boltzmann_distribution(graph, params)
    if lag is None:
        lag = 2 * graph.n

    columns = kernel.propagate(_source_columns(pi, graph.n, center), lag)

    index = np.arange(kernel.size)
    leaves = [u for u in range(graph.n) if u != center]
    pattern = np.zeros(kernel.size, dtype=np.int64)
    for position, leaf in enumerate(leaves):
        pattern |= ((index >> leaf) & 1) << position
    center_bit = (index >> center) & 1

    joint = np.zeros((2, 2, 1 << len(leaves)))
    for a in range(2):
        joint[a] = np.bincount(center_bit * (1 << len(leaves)) + pattern, weights=columns[:, a],
                               minlength=2 << len(leaves)).reshape(2, -1)

    return conditional_mutual_information(joint)
