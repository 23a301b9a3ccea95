"""Integral diagnostics of a fluid state and their exact relations.

Everything here is a midpoint-rule quadrature over the grid box of a
weighted moment of (rho, V, P).  The central objects:

* inertia        half the second mass moment, (1/2) * integral rho |x|^2
* inertia_rate   integral rho (V, x) -- the time derivative of inertia
* angular_momentum  components integral rho (V_j x_i - V_i x_j), i > j
* radial_kinetic / angular_kinetic   the split of 2 * kinetic energy
  into the parts carried by the radial and tangential velocity

The box truncates whole-space integrals, so a tail gate refuses states
whose outermost shells still carry a visible fraction of the mass
moment.  All checks are plain value comparisons; nothing here mutates
its inputs.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import TailTooLarge, TooFewSnapshots, DomainError
from .fields import FluidState, GasModel

DEFAULT_TAIL_TOL = 1e-8

# Angular component ordering: index pairs (i, j), i > j, zero-based.
_PAIRS = {1: (), 2: ((1, 0),), 3: ((1, 0), (2, 0), (2, 1))}
ANGULAR_COMPONENTS = {n: len(p) for n, p in _PAIRS.items()}


@dataclasses.dataclass(frozen=True)
class MomentSet:
    """Scalar diagnostics of one state at one time.

    rotational_moment is the two-dimensional integral rho (V, x_perp)
    with x_perp = (x2, -x1); it equals the single angular momentum
    component in 2D and is None for other dimensions.
    """

    ndim: int
    time: float
    gamma: float
    mass: float
    inertia: float
    inertia_rate: float
    rotational_moment: float | None
    angular_momentum: tuple[float, ...]
    kinetic_energy: float
    internal_energy: float
    total_energy: float
    radial_kinetic: float
    angular_kinetic: float
    pressure_trace: float

    @property
    def angular_norm(self) -> float:
        return math.sqrt(sum(m * m for m in self.angular_momentum))


@dataclasses.dataclass(frozen=True)
class InequalityCheck:
    """One evaluated inequality lhs <= rhs (or >= as named)."""

    name: str
    lhs: float
    rhs: float
    satisfied: bool
    slack: float


@dataclasses.dataclass(frozen=True)
class IdentityReport:
    """Scaled residuals of the time-series identities.

    Each residual is normalized by the identity's own magnitude scale
    over the series (zero scale reports a zero residual).  Fields are
    None when they do not apply to the supplied force configuration.
    """

    inertia_rate_residual: float
    angular_drift: float | None
    energy_gain: float | None
    swirl_rate_residual: float | None
    invariant_drift: float | None
    notes: tuple[str, ...]


def _tail_gate(grid, weight_field, tail_tol, what):
    """Refuse fields whose outermost two shells carry a visible share."""
    total = float(np.sum(np.abs(weight_field)))
    if total == 0.0:
        return
    band = np.zeros(weight_field.shape, dtype=bool)
    for axis in range(grid.ndim):
        idx = [slice(None)] * grid.ndim
        idx[axis] = slice(0, 2)
        band[tuple(idx)] = True
        idx[axis] = slice(-2, None)
        band[tuple(idx)] = True
    share = float(np.sum(np.abs(weight_field[band]))) / total
    if share > tail_tol:
        raise TailTooLarge(
            f"outermost shells hold {share:.3e} of the {what} "
            f"(tolerance {tail_tol:.1e}); enlarge the box")


def weighted_moments(state: FluidState, model: GasModel, weight,
                     weight_grad, weight_laplacian):
    """Generic weighted functionals for an arbitrary radial weight.

    Parameters are the weight field phi(x) sampled on the grid, its
    gradient components, and its Laplacian.  Returns a dict with the
    weighted inertia, its rate, the radial/tangential kinetic split
    relative to grad phi, and the pressure trace integral P * lap phi.
    Only the |x|^2/2 instance is exercised by the criteria; other
    weights are accepted but untested territory.
    """
    w = state.grid.cell_volume
    rho, vel, pres = state.rho, state.vel, state.pres
    grad2 = sum(g * g for g in weight_grad)
    vdotg = sum(v * g for v, g in zip(vel, weight_grad))
    inertia = float(np.sum(rho * weight) * w)
    rate = float(np.sum(rho * vdotg) * w)
    with np.errstate(invalid="ignore", divide="ignore"):
        radial = np.where(grad2 > 0, vdotg * vdotg / grad2, 0.0)
    radial_kin = float(np.sum(rho * radial) * w)
    # Tangential part via the antisymmetric products V_i g_j - V_j g_i;
    # summing their squares gives |V|^2 |g|^2 - (V,g)^2 exactly.
    sigma2 = np.zeros_like(rho)
    for i, j in _PAIRS[state.grid.ndim]:
        s = vel[i] * weight_grad[j] - vel[j] * weight_grad[i]
        sigma2 = sigma2 + s * s
    with np.errstate(invalid="ignore", divide="ignore"):
        tang = np.where(grad2 > 0, sigma2 / grad2, 0.0)
    angular_kin = float(np.sum(rho * tang) * w)
    trace = float(np.sum(pres * weight_laplacian) * w)
    return {
        "inertia": inertia,
        "inertia_rate": rate,
        "radial_kinetic": radial_kin,
        "angular_kinetic": angular_kin,
        "pressure_trace": trace,
    }


def compute_moments(state: FluidState, model: GasModel, *,
                    tail_tol: float = DEFAULT_TAIL_TOL,
                    background: tuple[float, float] | None = None
                    ) -> MomentSet:
    """Evaluate the full MomentSet of a state by midpoint quadrature.

    background, when given as (rho_bar, pres_bar), switches to
    perturbation accounting for compact disturbances of a constant
    state: mass, inertia and internal energy integrate (rho - rho_bar)
    and (P - pres_bar), while every velocity-weighted integral keeps
    the full density (the velocity itself is compactly supported, so
    those integrals converge as they stand).
    """
    grid = state.grid
    if model.ndim != grid.ndim:
        raise DomainError(
            f"model dimension {model.ndim} != grid dimension {grid.ndim}")
    w = grid.cell_volume
    xs = grid.centers()
    r2 = grid.radius_squared()
    rho, vel, pres = state.rho, state.vel, state.pres

    if background is None:
        rho_w, pres_w = rho, pres
        _tail_gate(grid, rho * r2, tail_tol, "mass moment")
    else:
        rho_bar, pres_bar = background
        rho_w = rho - rho_bar
        pres_w = pres - pres_bar
        _tail_gate(grid, rho_w * r2, tail_tol, "perturbation mass moment")
        _tail_gate(grid, rho * state.speed_squared(), tail_tol,
                   "kinetic density")

    base = weighted_moments(state, model, weight=0.5 * r2, weight_grad=xs,
                            weight_laplacian=np.full_like(r2, grid.ndim))
    mass = float(np.sum(rho_w) * w)
    inertia = float(np.sum(rho_w * (0.5 * r2)) * w)

    angular = []
    for i, j in _PAIRS[grid.ndim]:
        angular.append(float(np.sum(rho * (vel[j] * xs[i] - vel[i] * xs[j]))
                             * w))
    rotational = None
    if grid.ndim == 2:
        rotational = float(np.sum(rho * (vel[0] * xs[1] - vel[1] * xs[0]))
                           * w)

    kinetic = float(np.sum(rho * state.speed_squared()) * 0.5 * w)
    internal = float(np.sum(pres_w) * w / (model.gamma - 1.0))
    pressure_trace = base["pressure_trace"] if background is None else \
        float(np.sum(pres_w * grid.ndim) * w)

    return MomentSet(
        ndim=grid.ndim,
        time=state.time,
        gamma=model.gamma,
        mass=mass,
        inertia=inertia,
        inertia_rate=base["inertia_rate"],
        rotational_moment=rotational,
        angular_momentum=tuple(angular),
        kinetic_energy=kinetic,
        internal_energy=internal,
        total_energy=kinetic + internal,
        radial_kinetic=base["radial_kinetic"],
        angular_kinetic=base["angular_kinetic"],
        pressure_trace=pressure_trace,
    )


def holder_check(ms: MomentSet, rtol: float = 1e-9) -> list[InequalityCheck]:
    """The four weighted Cauchy-Schwarz inequalities between moments.

    Each holds exactly at the quadrature level (the discrete sums obey
    the same inequality as the integrals), so rtol only absorbs
    round-off.  A fully degenerate state (inertia 0) satisfies them
    vacuously with both sides zero.
    """
    g, ek = ms.inertia, ms.kinetic_energy
    f2 = ms.inertia_rate ** 2
    m2 = ms.angular_norm ** 2
    entries = [
        ("rate-energy", f2, 4.0 * g * ek),
        ("rate-radial", f2, 2.0 * g * ms.radial_kinetic),
        ("angular-energy", m2, 4.0 * g * ek),
        ("angular-split", m2, 2.0 * g * ms.angular_kinetic),
    ]
    out = []
    for name, lhs, rhs in entries:
        slack = rhs - lhs
        ok = lhs <= rhs + rtol * max(abs(lhs), abs(rhs))
        out.append(InequalityCheck(name, lhs, rhs, ok, slack))
    return out


def _uniform_times(series):
    times = np.array([ms.time for ms in series])
    dts = np.diff(times)
    if np.any(dts <= 0):
        raise DomainError("snapshot times must be strictly increasing")
    dt = float(dts[0])
    if np.any(np.abs(dts - dt) > 1e-9 * max(dt, 1.0)):
        raise DomainError("snapshot times must be uniformly spaced")
    return times, dt


def _scaled_max(residuals, scale):
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(residuals)) / scale)


def time_series_identities(series: list[MomentSet],
                           model: GasModel) -> IdentityReport:
    """Central-difference checks of the exact balance laws on a series.

    Always checks d(inertia)/dt = inertia_rate.  Force-free (and
    viscous) series additionally check conservation of the angular
    momentum components and monotone decay of total energy; rotation
    series check d(rotational_moment)/dt = -l * inertia_rate and the
    constancy of l * inertia + rotational_moment.
    """
    if len(series) < 3:
        raise TooFewSnapshots(
            f"need at least 3 snapshots, got {len(series)}")
    times, dt = _uniform_times(series)
    notes = []

    g = np.array([ms.inertia for ms in series])
    f = np.array([ms.inertia_rate for ms in series])
    e = np.array([ms.total_energy for ms in series])
    ek = np.array([ms.kinetic_energy for ms in series])
    dgdt = (g[2:] - g[:-2]) / (2.0 * dt)
    # 2 sqrt(G Ek) bounds |F| and |M|, so it is the honest size scale
    # even when a component happens to vanish identically
    bound = float(np.max(2.0 * np.sqrt(np.maximum(g, 0.0)
                                       * np.maximum(ek, 0.0))))
    f_scale = max(float(np.max(np.abs(f))), bound)
    rate_res = _scaled_max(dgdt - f[1:-1], f_scale)

    kinds = {p.kind for p in model.force.flattened()}
    angular_drift = None
    energy_gain = None
    swirl_res = None
    invariant_drift = None

    if "friction" not in kinds and "coriolis" not in kinds:
        m = np.array([ms.angular_momentum for ms in series])
        if m.size:
            angular_drift = _scaled_max(m - m[0], bound)
        else:
            angular_drift = 0.0
            notes.append("no angular components in one dimension")
    if "coriolis" not in kinds:
        gain = np.diff(e)
        energy_gain = _scaled_max(np.maximum(gain, 0.0),
                                  float(np.max(np.abs(e))))
    if "coriolis" in kinds:
        l = next(p.coriolis_rate for p in model.force.flattened()
                 if p.kind == "coriolis")
        fp = np.array([ms.rotational_moment for ms in series])
        dfp = (fp[2:] - fp[:-2]) / (2.0 * dt)
        swirl_res = _scaled_max(dfp + l * f[1:-1], abs(l) * f_scale)
        inv = l * g + fp
        inv_scale = float(np.max(np.abs(l) * np.abs(g) + np.abs(fp)))
        invariant_drift = _scaled_max(inv - inv[0], inv_scale)

    return IdentityReport(
        inertia_rate_residual=rate_res,
        angular_drift=angular_drift,
        energy_gain=energy_gain,
        swirl_rate_residual=swirl_res,
        invariant_drift=invariant_drift,
        notes=tuple(notes),
    )
