import numpy as np

from ..exceptions import ValidationException
from .base import IdtnetBaseObject


class UpdateRule(object):
    GLAUBER = "glauber"
    METROPOLIS = "metropolis"

    ALL = (GLAUBER, METROPOLIS)


class StepUnit(object):
    SITE = "site"
    SWEEP = "sweep"

    ALL = (SITE, SWEEP)


class DynamicsParams(IdtnetBaseObject):
    """
    Ferromagnetic Ising dynamics: pair energy e(r|s_j) = -J r s_j, heat-bath temperature T.
    """

    def __init__(self, coupling=1.0, temperature=2.0, rule=UpdateRule.GLAUBER):
        super(DynamicsParams, self).__init__()
        self.coupling = coupling
        self.temperature = temperature
        self.rule = rule

    def __str__(self):
        return "J={0} T={1} {2}".format(self.coupling, self.temperature, self.rule)

    def validate(self):
        if not self.coupling > 0:
            raise ValidationException("Coupling J must be positive", 201, "J={0}".format(self.coupling))
        if not self.temperature > 0:
            raise ValidationException("Temperature T must be positive", 201, "T={0}".format(self.temperature))
        if self.rule not in UpdateRule.ALL:
            raise ValidationException("Unknown update rule", 201, str(self.rule))
        return True


class SpinConfig(IdtnetBaseObject):
    """
    One state in {-1, +1} per unit.
    """

    def __init__(self, states=None):
        super(SpinConfig, self).__init__()
        self.states = np.asarray(states if states is not None else [], dtype=np.int8)
        self.magnetization_trace = None

    def __str__(self):
        return "".join("+" if s > 0 else "-" for s in self.states)

    def __len__(self):
        return len(self.states)

    @property
    def n(self):
        return len(self.states)

    @property
    def magnetization(self):
        return float(self.states.mean()) if len(self.states) else 0.0

    def validate(self, n=None):
        if not np.all(np.abs(self.states) == 1):
            raise ValidationException("Spin states must be -1 or +1")
        if n is not None and len(self.states) != n:
            raise ValidationException("Configuration length differs from node count", 201,
                                      "{0} != {1}".format(len(self.states), n))
        return True

    def index(self):
        """Configuration index with bit i set when unit i is +1"""
        return int(np.dot((self.states > 0).astype(np.int64), 1 << np.arange(len(self.states), dtype=np.int64)))
