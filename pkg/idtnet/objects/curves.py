import numpy as np

from ..exceptions import ValidationException
from .base import IdtnetBaseObject, IdtnetTable


class CavityBranch(object):
    AUTO = "auto"
    BROKEN = "broken"
    SYMMETRIC = "symmetric"

    ALL = (AUTO, SYMMETRIC)


class CavitySolution(IdtnetBaseObject):
    """
    Probability rho that a neighbour reached along a random edge is in state +1.
    """

    def __init__(self, rho=0.5, converged=False, iterations=0, residual=float("inf"), branch=CavityBranch.SYMMETRIC):
        super(CavitySolution, self).__init__()
        self.rho = rho
        self.converged = converged
        self.iterations = iterations
        self.residual = residual
        self.branch = branch

    def __str__(self):
        return "rho={0:.12g} ({1}, {2} iterations, residual={3:.3g})".format(
            self.rho, self.branch, self.iterations, self.residual)

    @property
    def magnetization(self):
        return 2.0 * self.rho - 1.0

    def validate(self):
        if not 0.0 <= self.rho <= 1.0:
            raise ValidationException("rho outside [0, 1]", 201, str(self.rho))
        return True


class AnalyticRow(IdtnetBaseObject):
    def __init__(self, k=0, i0=0.0, t_k=0.0, i1_upper=0.0, d=0.0):
        super(AnalyticRow, self).__init__()
        self.k = k
        self.i0 = i0
        self.t_k = t_k
        self.i1_upper = i1_upper
        self.d = d

    def __str__(self):
        return "k={0} D={1:.6g}".format(self.k, self.d)


class AnalyticCurve(IdtnetTable):
    """
    Analytic IDT per degree, with the constants the curve was evaluated at.
    """
    csv_header = ("k", "i0_bits", "t_k_bits", "i1_upper_bits", "d_steps")

    list_dict = {
        "rows": AnalyticRow
    }

    def __init__(self):
        super(AnalyticCurve, self).__init__()
        self.rows = []
        self.eps = 1e-3
        self.c_eff = 1.0
        self.i_hat = 0.0
        self.rho = 0.5
        self.branch = CavityBranch.SYMMETRIC
        self.temperature = None
        self.flags = []

    def __str__(self):
        return "AnalyticCurve({0} degrees, {1}, i_hat={2:.6g})".format(len(self.rows), self.branch, self.i_hat)

    @property
    def ks(self):
        return np.array([row.k for row in self.rows], dtype=np.int64)

    @property
    def d_values(self):
        return np.array([row.d for row in self.rows], dtype=float)

    @property
    def argmax_k(self):
        return int(self.ks[int(np.argmax(self.d_values))])

    def row(self, k):
        for row in self.rows:
            if row.k == k:
                return row
        return None

    def csv_meta(self):
        return [
            ("eps", self.eps),
            ("c_eff", self.c_eff),
            ("i_hat", self.i_hat),
            ("rho", self.rho),
            ("branch", self.branch),
            ("flags", self.flags or "none"),
        ]

    def csv_rows(self):
        return [(row.k, row.i0, row.t_k, row.i1_upper, row.d) for row in self.rows]

    @classmethod
    def from_csv_rows(cls, rows, meta):
        curve = cls()
        curve.rows = [AnalyticRow(int(r["k"]), float(r["i0_bits"]), float(r["t_k_bits"]),
                                  float(r["i1_upper_bits"]), float(r["d_steps"])) for r in rows]

        for key in ("eps", "c_eff", "i_hat", "rho"):
            if key in meta:
                setattr(curve, key, float(meta[key]))
        if "temperature" in meta:
            curve.temperature = float(meta["temperature"])
        curve.branch = meta.get("branch", curve.branch)
        flags = meta.get("flags", "none")
        curve.flags = [] if flags == "none" else flags.split()

        return curve


class EmpiricalRow(IdtnetBaseObject):
    def __init__(self, k=0, n_units=0, mean=0.0, sem=0.0, censored=0):
        super(EmpiricalRow, self).__init__()
        self.k = k
        self.n_units = n_units
        self.mean = mean
        self.sem = sem
        self.censored = censored

    def __str__(self):
        return "k={0} D={1:.6g} +- {2:.3g} (n={3})".format(self.k, self.mean, self.sem, self.n_units)


class EmpiricalCurve(IdtnetTable):
    """
    Mean empirical IDT per degree with its standard error of the mean.

    Degrees whose units are all censored have no row; their units still count in
    censored_count. Degrees backed by a single unit are listed in low_n.
    """
    csv_header = ("k", "n_units", "mean_idt_sweeps", "sem_idt", "censored")

    list_dict = {
        "rows": EmpiricalRow
    }

    def __init__(self):
        super(EmpiricalCurve, self).__init__()
        self.rows = []
        self.censored_count = 0
        self.low_n = []
        self.label = "pooled"
        self.temperature = None

    def __str__(self):
        return "EmpiricalCurve({0}: {1} degrees, {2} censored)".format(self.label, len(self.rows), self.censored_count)

    @property
    def ks(self):
        return np.array([row.k for row in self.rows], dtype=np.int64)

    @property
    def means(self):
        return np.array([row.mean for row in self.rows], dtype=float)

    @property
    def sems(self):
        return np.array([row.sem for row in self.rows], dtype=float)

    def row(self, k):
        for row in self.rows:
            if row.k == k:
                return row
        return None

    def validate(self):
        for row in self.rows:
            if row.n_units < 1:
                raise ValidationException("Empirical row without units", 201, str(row))
            if row.sem < 0:
                raise ValidationException("Negative standard error", 201, str(row))
        return True

    def csv_meta(self):
        return [
            ("curve", self.label),
            ("censored_total", self.censored_count),
            ("low_n", self.low_n or "none"),
        ]

    def csv_rows(self):
        return [(row.k, row.n_units, row.mean, row.sem, row.censored) for row in self.rows]

    @classmethod
    def from_csv_rows(cls, rows, meta):
        curve = cls()
        curve.rows = [EmpiricalRow(int(r["k"]), int(r["n_units"]), float(r["mean_idt_sweeps"]),
                                   float(r["sem_idt"]), int(r["censored"])) for r in rows]

        curve.label = meta.get("curve", curve.label)
        curve.censored_count = int(meta.get("censored_total", sum(row.censored for row in curve.rows)))
        low_n = meta.get("low_n", "none")
        curve.low_n = [] if low_n == "none" else [int(k) for k in low_n.split()]
        if "temperature" in meta:
            curve.temperature = float(meta["temperature"])

        curve.validate()
        return curve


class LaggedInformationTable(IdtnetTable):
    """
    Exact I(S^{t+d}; s_u^t) per lag and unit.
    """
    csv_header = ("lag", "unit", "mi_bits")

    def __init__(self, rows=None, lag_unit="step"):
        super(LaggedInformationTable, self).__init__()
        self.rows = rows or []
        self.lag_unit = lag_unit

    def __str__(self):
        return "LaggedInformationTable({0} rows, lag in {1}s)".format(len(self.rows), self.lag_unit)

    def csv_meta(self):
        return [("lag_unit", self.lag_unit)]

    def csv_rows(self):
        return self.rows

    def series(self, unit):
        return [mi for lag, u, mi in self.rows if u == unit]

    @classmethod
    def from_csv_rows(cls, rows, meta):
        return cls([(int(r["lag"]), int(r["unit"]), float(r["mi_bits"])) for r in rows],
                   meta.get("lag_unit", "step"))
