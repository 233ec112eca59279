"""
Discrete entropy, mutual information and divergence in bits.

Plug-in (maximum-likelihood) estimates only; no bias correction is applied.
"""
import numpy as np
from scipy.special import entr, rel_entr

from .exceptions import NumericException, ValidationException
from .objects.distribution import Dist, Joint2

LN2 = np.log(2.0)


def _probs(d):
    return d.probs if isinstance(d, Dist) else np.asarray(d, dtype=float)


def _matrix(j):
    return j.matrix if isinstance(j, Joint2) else np.asarray(j, dtype=float)


def entropy(d):
    """
    -sum p log2 p with 0 log 0 = 0
    """
    return float(entr(_probs(d)).sum() / LN2)


def binary_entropy(p):
    """
    Entropy of {p, 1 - p}, accurate when p is far below machine epsilon.
    """
    p = float(p)
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return float((-p * np.log(p) - (1.0 - p) * np.log1p(-p)) / LN2)


def mutual_information(j):
    """
    H(X) + H(Y) - H(X, Y)
    """
    matrix = _matrix(j)
    value = entropy(matrix.sum(axis=1)) + entropy(matrix.sum(axis=0)) - entropy(matrix.ravel())
    return max(0.0, value)


def channel_information(px, channel):
    """
    I(X; Y) for a source px and a row-stochastic channel p(y | x).

    Written as sum_x p(x) KL(p(.|x) || p(.)) with the output law expressed relative to
    each row, so values many orders below the marginal entropies keep full precision.
    """
    px = np.asarray(px, dtype=float)
    channel = np.asarray(channel, dtype=float)
    binary = channel.shape[1] == 2
    total = 0.0

    for x in range(len(px)):
        if px[x] <= 0:
            continue

        row = channel[x]
        diff = channel - row
        if binary:
            # take each difference from the column where both entries are small
            small_first = np.maximum(channel[:, 0], row[0]) <= np.maximum(channel[:, 1], row[1])
            first = np.where(small_first, diff[:, 0], -diff[:, 1])
            diff = np.column_stack([first, -first])

        positive = row > 0
        delta = np.zeros_like(row)
        delta[positive] = (px @ diff)[positive] / row[positive]
        total += px[x] * float(-(row[positive] * np.log1p(delta[positive])).sum())

    return max(0.0, total / LN2)


def conditional_mutual_information(joint):
    """
    I(X; Y | Z) for a three-way array p(x, y, z).
    """
    joint = np.asarray(joint, dtype=float)
    h_xz = entropy(joint.sum(axis=1).ravel())
    h_yz = entropy(joint.sum(axis=0).ravel())
    h_z = entropy(joint.sum(axis=(0, 1)))
    h_xyz = entropy(joint.ravel())
    return max(0.0, h_xz + h_yz - h_xyz - h_z)


def kl_divergence(p, q):
    """
    sum p log2(p / q); q must be positive wherever p is.
    """
    p = _probs(p)
    q = _probs(q)
    if p.shape != q.shape:
        raise ValidationException("Distributions differ in alphabet size")

    violation = (p > 0) & (q <= 0)
    if np.any(violation):
        raise NumericException("Support violation in divergence", 404,
                               "q is zero at symbols {0}".format(np.nonzero(violation)[0].tolist()))

    return float(rel_entr(p, q).sum() / LN2)


def binary_kl_divergence(p_up, q_up):
    """
    Elementwise KL of two-state distributions given by their +1 probabilities.
    """
    p_up = np.asarray(p_up, dtype=float)
    q_up = np.asarray(q_up, dtype=float)

    violation = ((p_up > 0) & (q_up <= 0)) | ((p_up < 1) & (q_up >= 1))
    if np.any(violation):
        raise NumericException("Support violation in divergence", 404,
                               "{0} entries".format(int(violation.sum())))

    return (rel_entr(p_up, q_up) + rel_entr(1.0 - p_up, 1.0 - q_up)) / LN2


def empirical_distribution(counts):
    """
    Maximum-likelihood frequencies of per-symbol tallies.
    """
    counts = np.asarray(counts, dtype=float)
    total = counts.sum()
    if total < 1:
        raise NumericException("Empirical distribution needs at least one count", 405)
    if np.any(counts < 0):
        raise ValidationException("Counts must be non-negative")

    return Dist(counts / total)
