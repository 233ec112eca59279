from .exceptions import IdtnetException

__version__ = "0.1.0"
