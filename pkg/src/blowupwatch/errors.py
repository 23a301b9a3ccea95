"""Exception types shared across the package.

Construction-time misuse (bad shapes, parameters outside their domain)
raises ValueError subclasses; runtime numerical trouble (a solver step
producing unphysical values, a search exhausting its range) raises
RuntimeError subclasses.  Everything derives from BlowupWatchError so
callers can catch the package's failures with one clause.
"""


class BlowupWatchError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BlowupWatchError, ValueError):
    """A parameter lies outside the mathematical domain of a formula."""


class NonconformingArrays(BlowupWatchError, ValueError):
    """Field arrays do not match the grid shape (or each other)."""


class TailTooLarge(BlowupWatchError, ValueError):
    """Boundary shells carry too much mass-moment: the box truncation
    of the whole-space integrals is not trustworthy."""


class TooFewSnapshots(BlowupWatchError, ValueError):
    """A time-series check needs at least three uniformly spaced samples."""


class DegenerateData(BlowupWatchError, ValueError):
    """Moments are degenerate (zero energy, zero inertia, or all-vacuum
    state) where a criterion needs them positive."""


class EtaNegative(BlowupWatchError, ValueError):
    """The entropy-weighted mass excess supplied for the compact-support
    criteria is negative, which the theory excludes."""


class PsiStarOutOfRange(BlowupWatchError, ValueError):
    """The damping margin parameter must lie strictly inside (0, 1)."""


class ThetaNegative(BlowupWatchError, ValueError):
    """The rotation drive constant came out negative, which cannot happen
    for moments measured on an actual state; inputs are inconsistent."""


class OutOfRange(BlowupWatchError, ValueError):
    """A requested time lies outside the integrated trajectory."""


class GridTooSmall(BlowupWatchError, ValueError):
    """A compactly supported construction does not fit strictly inside
    the grid box."""


class StepRejected(BlowupWatchError, RuntimeError):
    """An ODE step would cross a sign barrier the true solution preserves;
    retry with a smaller step."""


class SearchFailed(BlowupWatchError, RuntimeError):
    """A parameter search exhausted its range without meeting the target."""


class NegativePressure(BlowupWatchError, RuntimeError):
    """A finite-volume update produced pressure below the round-off
    allowance: near-vacuum or an under-resolved steepening front."""


class NonFinite(BlowupWatchError, RuntimeError):
    """A finite-volume update produced NaN or infinity."""


class ScenarioError(BlowupWatchError, ValueError):
    """A scenario file is missing, malformed, or inconsistent."""
