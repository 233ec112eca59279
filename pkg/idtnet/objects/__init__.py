from .base import IdtnetBaseObject, IdtnetTable
from .config import RunConfig
from .curves import (
    CavityBranch, CavitySolution, AnalyticRow, AnalyticCurve, EmpiricalRow, EmpiricalCurve,
    LaggedInformationTable
)
from .distribution import Dist, Joint2, DegreeDistribution
from .dynamics import UpdateRule, StepUnit, DynamicsParams, SpinConfig
from .ensemble import (
    EnsembleConfig, LagHistograms, FitConfig, UnitFit, UnitFitTable, EmpiricalRun, TrajectoryDump
)
from .graph import Graph
from .kernel import Kernel
from .series import XYSeries, LinearFit, TrendReport
