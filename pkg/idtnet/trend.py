"""
Degree-versus-outcome trend tooling: Gaussian smoothing over data-point index and
least-squares regression with standard errors.
"""
import logging

import numpy as np
from scipy import stats

from .exceptions import ValidationException
from .objects.series import LinearFit, TrendReport, XYSeries

logger = logging.getLogger(__name__)

DEFAULT_SIGMA_POINTS = 10.0


def gaussian_weights(sigma_points):
    """Kernel over index offsets -r..r, r = round(4 sigma)"""
    radius = int(4.0 * sigma_points + 0.5)
    offsets = np.arange(-radius, radius + 1)
    return np.exp(-0.5 * (offsets / float(sigma_points)) ** 2)


def gaussian_smooth(series, sigma_points=DEFAULT_SIGMA_POINTS):
    """
    y_i = sum_j w(j - i) y_j / sum_j w(j - i) over the points that exist; x unchanged.
    """
    if not sigma_points > 0:
        raise ValidationException("Smoothing width must be positive", 201, "sigma={0}".format(sigma_points))
    if len(series) < 2:
        raise ValidationException("Smoothing needs at least two points", 201, "{0} points".format(len(series)))

    weights = gaussian_weights(sigma_points)
    radius = (len(weights) - 1) // 2
    size = len(series)

    numerator = np.convolve(series.y, weights)[radius:radius + size]
    denominator = np.convolve(np.ones(size), weights)[radius:radius + size]

    return XYSeries(series.x.copy(), numerator / denominator)


def linear_fit(series, x_from=None, x_to=None):
    """
    Ordinary least squares over the points with x_from <= x <= x_to.
    """
    window = series.window(x_from, x_to)
    if len(window) < 3:
        raise ValidationException("Linear fit needs at least three points", 201, "{0} in range".format(len(window)))
    if np.ptp(window.x) == 0:
        raise ValidationException("Linear fit needs distinct x values")

    result = stats.linregress(window.x, window.y)
    return LinearFit(float(result.slope), float(result.stderr), float(result.intercept),
                     float(result.intercept_stderr), float(result.rvalue) ** 2,
                     float(window.x[0]), float(window.x[-1]), len(window))


def trend_report(series, sigma_points=DEFAULT_SIGMA_POINTS, fit_from=None, fit_to=None):
    """
    Smooths the series and fits the raw points from fit_from (the trend peak, chosen by
    the caller) up to fit_to.
    """
    series.validate()
    smoothed = gaussian_smooth(series, sigma_points)
    fit = linear_fit(series, fit_from, fit_to)

    logger.info("Trend over %d points: %s", len(series), fit)
    return TrendReport(series, smoothed, fit, sigma_points)
