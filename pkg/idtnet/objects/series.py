import numpy as np

from ..exceptions import InputException, ValidationException
from ..helpers import format_mean_se
from .base import IdtnetBaseObject, IdtnetTable


class XYSeries(IdtnetTable):
    """
    Points ordered by strictly increasing x.
    """
    csv_header = ("x", "y")

    def __init__(self, x=None, y=None):
        super(XYSeries, self).__init__()
        self.x = np.asarray(x if x is not None else [], dtype=float)
        self.y = np.asarray(y if y is not None else [], dtype=float)

    def __str__(self):
        return "XYSeries({0} points)".format(len(self))

    def __len__(self):
        return len(self.x)

    def validate(self):
        if self.x.shape != self.y.shape or self.x.ndim != 1:
            raise ValidationException("x and y differ in length")
        if not (np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.y))):
            raise ValidationException("Series has non-finite values")
        if np.any(np.diff(self.x) <= 0):
            raise ValidationException("x must be strictly increasing")
        return True

    def window(self, x_from=None, x_to=None):
        keep = np.ones(len(self.x), dtype=bool)
        if x_from is not None:
            keep &= self.x >= x_from
        if x_to is not None:
            keep &= self.x <= x_to
        return XYSeries(self.x[keep], self.y[keep])

    def csv_rows(self):
        return list(zip(self.x.tolist(), self.y.tolist()))

    @classmethod
    def from_points(cls, x, y):
        """Sorts by x; repeated x values are rejected."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        order = np.argsort(x, kind="stable")
        series = cls(x[order], y[order])
        series.validate()
        return series

    @classmethod
    def from_csv(cls, text, y_column="y", x_column="x"):
        meta, rows = cls.read_csv(text, required=(x_column, y_column))
        try:
            x = [float(row[x_column]) for row in rows]
            y = [float(row[y_column]) for row in rows]
        except (TypeError, ValueError) as error:
            raise InputException("Malformed CSV value", 302, str(error))

        if not x:
            raise InputException("Series has no rows", 302)

        try:
            return cls.from_points(x, y)
        except ValidationException as error:
            raise InputException("Series is not a valid x,y table", 302, error.message)


class LinearFit(IdtnetBaseObject):
    """
    Ordinary least squares y = slope * x + intercept with standard errors.
    """

    def __init__(self, slope=0.0, slope_se=0.0, intercept=0.0, intercept_se=0.0, r_squared=0.0,
                 fit_from=None, fit_to=None, n_points=0):
        super(LinearFit, self).__init__()
        self.slope = slope
        self.slope_se = slope_se
        self.intercept = intercept
        self.intercept_se = intercept_se
        self.r_squared = r_squared
        self.fit_from = fit_from
        self.fit_to = fit_to
        self.n_points = n_points

    def __str__(self):
        return "slope {0}".format(format_mean_se(self.slope, self.slope_se))

    def meta(self):
        return [
            ("slope", self.slope),
            ("slope_se", self.slope_se),
            ("intercept", self.intercept),
            ("intercept_se", self.intercept_se),
            ("r_squared", self.r_squared),
            ("fit_from", self.fit_from),
            ("fit_to", self.fit_to),
        ]


class TrendReport(IdtnetTable):
    """
    Raw and smoothed series plus the regression over the chosen window.
    """
    csv_header = ("x", "y_raw", "y_smooth")

    def __init__(self, raw=None, smoothed=None, fit=None, sigma_points=10.0):
        super(TrendReport, self).__init__()
        self.raw = raw
        self.smoothed = smoothed
        self.fit = fit
        self.sigma_points = sigma_points

    def __str__(self):
        return "TrendReport({0} points, {1})".format(len(self.raw), self.fit)

    def csv_meta(self):
        meta = [("sigma_points", self.sigma_points)]
        if self.fit is not None:
            meta += self.fit.meta()
        return meta

    def csv_rows(self):
        return list(zip(self.raw.x.tolist(), self.raw.y.tolist(), self.smoothed.y.tolist()))

    @classmethod
    def from_csv_rows(cls, rows, meta):
        x = [float(r["x"]) for r in rows]
        raw = XYSeries(x, [float(r["y_raw"]) for r in rows])
        smoothed = XYSeries(x, [float(r["y_smooth"]) for r in rows])

        fit = None
        if "slope" in meta:
            fit = LinearFit(float(meta["slope"]), float(meta["slope_se"]), float(meta["intercept"]),
                            float(meta["intercept_se"]), float(meta["r_squared"]),
                            float(meta["fit_from"]), float(meta["fit_to"]))
        return cls(raw, smoothed, fit, float(meta.get("sigma_points", 10.0)))
