import math

from ..exceptions import ValidationException
from .base import IdtnetBaseObject

ECHO_EXCLUDED = ("command", "config", "out", "workers", "verbose", "per_unit", "dump")


class RunConfig(IdtnetBaseObject):
    """
    Resolved parameters of one command line run: config file, then flags, then the
    seed fallback. Attributes are the flag destinations of the chosen subcommand.
    """

    def __init__(self):
        super(RunConfig, self).__init__()
        self.command = None
        self.seed = 0
        self.out = None

    def __str__(self):
        return "{0} ({1})".format(self.command, ", ".join("{0}={1}".format(k, v) for k, v in self.echo_pairs()))

    def _check(self, name, condition, message):
        value = getattr(self, name, None)
        if value is not None and not condition(value):
            raise ValidationException(message, 201, "{0}={1}".format(name, value))

    def validate(self):
        if not self.out:
            raise ValidationException("An output path is required", 201, "--out")

        self._check("seed", lambda v: v >= 0, "Seed must be non-negative")
        self._check("n", lambda v: v >= 2, "Node count must be at least 2")
        self._check("gamma", math.isfinite, "gamma must be finite")
        self._check("k_min", lambda v: v >= 1, "k_min must be at least 1")
        self._check("coupling", lambda v: v > 0, "Coupling J must be positive")
        self._check("temperature", lambda v: v > 0, "Temperature must be positive")
        self._check("eps", lambda v: 0 < v < 1, "eps must lie in (0, 1)")
        self._check("c_eff", lambda v: v > 0, "c_eff must be positive")
        self._check("trajectories", lambda v: v >= 100, "At least 100 trajectories are needed")
        self._check("realizations", lambda v: v >= 1, "At least one realization is needed")
        self._check("workers", lambda v: v >= 1, "Worker count must be positive")
        self._check("batch_size", lambda v: v >= 1, "Batch size must be positive")
        self._check("sigma_points", lambda v: v > 0, "Smoothing width must be positive")

        k_max = getattr(self, "k_max", None)
        if k_max is not None and k_max < getattr(self, "k_min", 1):
            raise ValidationException("k_max must not be below k_min", 201, "k_max={0}".format(k_max))

        if self.command == "idt":
            self._check("max_lag", lambda v: v >= 10, "Maximum lag must be at least 10")
        elif self.command == "oracle":
            self._check("max_lag", lambda v: v >= 0, "Maximum lag must be non-negative")
            sources = [getattr(self, name, None) for name in ("graph", "star", "path")]
            if sum(source is not None for source in sources) != 1:
                raise ValidationException("Exactly one of --graph, --star, --path is required", 201)
        elif self.command == "trend" and not getattr(self, "input", None):
            raise ValidationException("An input series is required", 201, "--input")
        elif self.command == "plot" and not getattr(self, "inputs", None):
            raise ValidationException("At least one curve is required", 201, "inputs")

        return True

    def echo_pairs(self):
        """
        (key, value) pairs that determine the artifact, sorted by key.
        """
        values = self.to_dict()
        return sorted((key, value) for key, value in values.items()
                      if key not in ECHO_EXCLUDED and value is not None and not key.startswith("_"))
