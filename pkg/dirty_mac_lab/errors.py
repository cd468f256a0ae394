"""Exception types raised by the library. The CLI maps them to exit codes."""


class LabError(Exception):
    """Base class for all dirty-mac-lab errors."""


class ParameterError(LabError, ValueError):
    """A numeric input is outside the domain of the operation."""


class RegionError(LabError):
    """A rate region is unbounded or empty where a bounded one is required."""


class SimulationError(LabError, ValueError):
    """A Monte Carlo request cannot be carried out as specified."""
