"""Exception types shared across rainbow_lab."""


class RainbowLabError(Exception):
    """Base class for domain errors (mapped to exit code 1 by the CLI)."""


class CapExceeded(RainbowLabError):
    """An exhaustive enumeration would exceed its configured cap."""


class ComplexityGuard(RainbowLabError):
    """An exact evaluation would exceed its configured work budget."""


class NoCycle(RainbowLabError):
    """The pattern graph is a forest, so no witness exists."""


class EpsilonTooLarge(RainbowLabError):
    """The perturbation size would push a graphon cell outside [0, 1]."""


class NoPositiveK(RainbowLabError):
    """No split point gives a positive leading coefficient."""


class NotFound(RainbowLabError):
    """The epsilon ladder was exhausted without a positive gap."""


class InvalidInput(RainbowLabError, ValueError):
    """Malformed graph, coloring or graphon data."""
