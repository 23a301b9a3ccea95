"""Closed-form flow families used as references and counterexamples.

Two constructions: self-similar states whose velocity is a uniform
stretch rate times position (reduced to a two-component ODE for the
rate and the inverse inertia), and a compactly supported stationary
vortex balanced against a constant-rate rotational force.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .criteria import CheminConstant, chemin_constant, rate_threshold
from .errors import (DomainError, GridTooSmall, OutOfRange, SearchFailed,
                     StepRejected)
from .fields import FluidState, ForceSpec, GasModel, Grid
from .moments import ANGULAR_COMPONENTS, MomentSet
from .snapshots import format_float


@dataclasses.dataclass(frozen=True)
class AffineParams:
    """Data fixing one stretch-rate trajectory.

    The family with pressure couples the stretch rate to the inverse
    inertia through a single constant (``pressure_coupling``); the
    profile power sets the polynomial decay of the reference density.
    """

    ndim: int
    gamma: float
    inertia0: float
    internal0: float
    expansion0: float
    profile_power: float = 3.0

    def __post_init__(self):
        if self.ndim not in (1, 2, 3):
            raise DomainError(f"unsupported dimension {self.ndim}")
        if self.gamma <= 1.0:
            raise DomainError(
                f"adiabatic exponent must exceed 1, got {self.gamma}")
        if self.inertia0 <= 0.0:
            raise DomainError("initial inertia must be positive")
        if self.internal0 < 0.0:
            raise DomainError("initial internal energy must be nonnegative")
        if self.profile_power <= 0.5 * self.ndim:
            raise DomainError(
                "profile power must exceed half the dimension, got "
                f"{self.profile_power}")
        if not math.isfinite(self.expansion0):
            raise DomainError("initial stretch rate must be finite")

    @property
    def compression_exponent(self) -> float:
        """Power of the inertia that scales the internal energy down."""
        return 0.5 * (self.gamma - 1.0) * self.ndim

    @property
    def pressure_coupling(self) -> float:
        return self.internal0 * self.inertia0 ** self.compression_exponent


@dataclasses.dataclass(frozen=True)
class AffineTrajectory:
    """Sampled stretch rate and inverse inertia on a uniform time grid."""

    params: AffineParams
    times: np.ndarray
    expansion: np.ndarray
    inverse_inertia: np.ndarray
    step: float
    error_estimate: float

    def inertia(self) -> np.ndarray:
        return 1.0 / self.inverse_inertia

    def inertia_rate(self) -> np.ndarray:
        return 2.0 * self.expansion / self.inverse_inertia

    def internal_energy(self) -> np.ndarray:
        p = self.params
        return (p.pressure_coupling
                * self.inverse_inertia ** p.compression_exponent)

    def kinetic_energy(self) -> np.ndarray:
        return self.expansion ** 2 / self.inverse_inertia

    def sample(self, t: float) -> tuple[float, float]:
        """Stretch rate and inverse inertia at an intermediate time.

        Cubic interpolation fed with the exact slopes of the governing
        system keeps the accuracy of the integrator between nodes.
        """
        t0, t1 = self.times[0], self.times[-1]
        if not t0 <= t <= t1:
            raise OutOfRange(
                f"time {t} outside trajectory range [{t0}, {t1}]")
        k = min(int((t - t0) / self.step), len(self.times) - 2)
        u = (t - self.times[k]) / self.step
        out = []
        for j in (k, k + 1):
            out.append(_affine_rhs(self.params, self.expansion[j],
                                   self.inverse_inertia[j]))
        (da0, dg0), (da1, dg1) = out
        alpha = _hermite(self.expansion[k], self.expansion[k + 1],
                         da0, da1, self.step, u)
        g1 = _hermite(self.inverse_inertia[k], self.inverse_inertia[k + 1],
                      dg0, dg1, self.step, u)
        return alpha, g1


def _affine_rhs(p: AffineParams, alpha: float, g1: float) -> tuple[float,
                                                                   float]:
    drive = ((p.gamma - 1.0) * p.pressure_coupling
             * g1 ** (p.compression_exponent + 1.0))
    return -alpha * alpha + drive, -2.0 * alpha * g1


def _hermite(y0, y1, d0, d1, h, u):
    h00 = (1.0 + 2.0 * u) * (1.0 - u) ** 2
    h10 = u * (1.0 - u) ** 2
    h01 = u * u * (3.0 - 2.0 * u)
    h11 = u * u * (u - 1.0)
    return h00 * y0 + h * h10 * d0 + h01 * y1 + h * h11 * d1


def _rk4(p: AffineParams, alpha: float, g1: float, dt: float):
    a1, g1d1 = _affine_rhs(p, alpha, g1)
    a2, g1d2 = _affine_rhs(p, alpha + 0.5 * dt * a1, g1 + 0.5 * dt * g1d1)
    a3, g1d3 = _affine_rhs(p, alpha + 0.5 * dt * a2, g1 + 0.5 * dt * g1d2)
    a4, g1d4 = _affine_rhs(p, alpha + dt * a3, g1 + dt * g1d3)
    return (alpha + dt * (a1 + 2.0 * a2 + 2.0 * a3 + a4) / 6.0,
            g1 + dt * (g1d1 + 2.0 * g1d2 + 2.0 * g1d3 + g1d4) / 6.0)


def affine_integrate(p: AffineParams, t_end: float,
                     dt: float) -> AffineTrajectory:
    """March the stretch-rate system with a classic fourth-order step.

    Every step is also taken as two half steps; the worst discrepancy,
    scaled by the usual one-fifteenth, is reported as the error
    estimate.  The half-step values are the ones kept.
    """
    if dt <= 0.0 or t_end <= 0.0:
        raise DomainError("t_end and dt must be positive")
    steps = max(1, round(t_end / dt))
    alpha = p.expansion0
    g1 = 1.0 / p.inertia0
    times = np.linspace(0.0, steps * dt, steps + 1)
    alphas = np.empty(steps + 1)
    g1s = np.empty(steps + 1)
    alphas[0], g1s[0] = alpha, g1
    worst = 0.0
    for k in range(steps):
        full = _rk4(p, alpha, g1, dt)
        half = _rk4(p, *_rk4(p, alpha, g1, 0.5 * dt), 0.5 * dt)
        worst = max(worst, abs(full[0] - half[0]) / 15.0,
                    abs(full[1] - half[1]) / 15.0)
        alpha, g1 = half
        if g1 <= 0.0 or not math.isfinite(g1) or not math.isfinite(alpha):
            raise StepRejected(
                f"inverse inertia left (0, inf) at t={times[k + 1]}; "
                "the continuous solution stays positive, reduce the step")
        alphas[k + 1], g1s[k + 1] = alpha, g1
    return AffineTrajectory(params=p, times=times, expansion=alphas,
                            inverse_inertia=g1s, step=dt,
                            error_estimate=worst)


def affine_rebase(traj: AffineTrajectory, t: float) -> AffineParams:
    """Parameters whose initial data equal the trajectory state at t.

    The coupling constant is invariant along a trajectory, so chaining
    integrations through a rebase is exact; useful for escaping a
    violent early transient with a small step and then striding out.
    """
    p = traj.params
    alpha, g1 = traj.sample(t)
    return AffineParams(
        ndim=p.ndim, gamma=p.gamma, inertia0=1.0 / g1,
        internal0=p.pressure_coupling * g1 ** p.compression_exponent,
        expansion0=alpha, profile_power=p.profile_power)


def _planar_profile_scales(p: AffineParams) -> tuple[float, float]:
    # width and amplitude making the reference pair carry exactly the
    # requested inertia and internal energy while the pressure gradient
    # balances the stretch acceleration pointwise (planar case only)
    a = p.profile_power
    if a <= 1.0:
        raise DomainError("pressure-coupled profile needs power > 1")
    width_sq = (p.gamma - 1.0) * (a - 1.0) * p.internal0 / math.pi
    amp = 2.0 * a * (a - 1.0) * p.inertia0 / (math.pi * width_sq ** 2)
    return math.sqrt(width_sq), amp


def _dust_amplitude(p: AffineParams) -> float:
    # inertia normalization of (1 + r^2)^-(a+1) in n dimensions
    n, a = p.ndim, p.profile_power
    surface = 2.0 * math.pi ** (0.5 * n) / math.gamma(0.5 * n)
    second = 0.5 * surface * _beta(0.5 * (n + 2.0), a - 0.5 * n)
    return 2.0 * p.inertia0 / second


def _beta(x: float, y: float) -> float:
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def affine_reference_state(p: AffineParams, grid: Grid) -> FluidState:
    """Initial fields of the family: polynomial bumps, stretch velocity."""
    if grid.ndim != p.ndim:
        raise DomainError("grid dimension does not match parameters")
    rsq = grid.radius_squared()
    if p.internal0 > 0.0:
        if p.ndim != 2:
            raise DomainError(
                "the pressure-coupled reference profile is planar; "
                "use zero internal energy in other dimensions")
        width, amp = _planar_profile_scales(p)
        shape = 1.0 + rsq / (width * width)
        rho = amp * shape ** (-(p.profile_power + 1.0))
        pres = shape ** (-p.profile_power)
    else:
        amp = _dust_amplitude(p)
        rho = amp * (1.0 + rsq) ** (-(p.profile_power + 1.0))
        pres = np.zeros_like(rho)
    vel = tuple(p.expansion0 * x for x in grid.centers())
    return FluidState(grid=grid, time=0.0, rho=rho, vel=vel, pres=pres)


def affine_mass(p: AffineParams) -> float:
    """Total mass of the reference profile, in closed form."""
    n, a = p.ndim, p.profile_power
    if p.internal0 > 0.0:
        width, amp = _planar_profile_scales(p)
        return amp * math.pi * width * width / a
    surface = 2.0 * math.pi ** (0.5 * n) / math.gamma(0.5 * n)
    return (_dust_amplitude(p) * 0.5 * surface
            * _beta(0.5 * n, a + 1.0 - 0.5 * n))


def affine_entropy_floor(p: AffineParams) -> float:
    """Minimum entropy of the reference pair (attained at the center)."""
    if p.internal0 == 0.0:
        return -math.inf
    _, amp = _planar_profile_scales(p)
    return -p.gamma * math.log(amp)


def affine_fields(traj: AffineTrajectory, p: AffineParams, t: float,
                  grid: Grid | None = None) -> FluidState:
    """Reconstruct the full state at one time from the trajectory.

    Density and pressure ride the stretch map: lengths scale with the
    square root of the inertia ratio, density by the inverse volume
    factor (conserving mass), pressure by the adiabatic power of it.
    """
    if grid is None:
        grid = Grid.regular(p.ndim, 128, 12.0)
    alpha, g1 = traj.sample(t)
    stretch = math.sqrt(1.0 / (g1 * p.inertia0))
    base = affine_reference_state(
        p, Grid(ndim=grid.ndim, cells=grid.cells,
                halfwidth=tuple(w / stretch for w in grid.halfwidth)))
    rho = base.rho * stretch ** (-p.ndim)
    pres = base.pres * stretch ** (-p.ndim * p.gamma)
    vel = tuple(alpha * x for x in grid.centers())
    return FluidState(grid=grid, time=t, rho=rho, vel=vel, pres=pres)


def compatibility_check(state0: FluidState, inverse_inertia0: float,
                        internal0: float, gamma: float) -> float:
    """Worst pointwise mismatch of the pressure-balance identity.

    The family requires the initial pressure gradient to cancel the
    density times position, weighted by the initial inverse inertia and
    internal energy.  Centered differences; interior cells only.
    """
    grid = state0.grid
    factor = (gamma - 1.0) * inverse_inertia0 * internal0
    grads = np.gradient(state0.pres, *grid.spacing)
    if grid.ndim == 1:
        grads = [grads]
    worst = 0.0
    inner = (slice(1, -1),) * grid.ndim
    for g, x in zip(grads, grid.centers()):
        res = g + factor * state0.rho * x
        worst = max(worst, float(np.max(np.abs(res[inner]))))
    return worst


@dataclasses.dataclass(frozen=True)
class ThresholdGap:
    """How far one stretch rate sits below the blow-up threshold."""

    expansion0: float
    rate: float
    threshold: float
    deficit: float
    angle: float
    ratio: float


@dataclasses.dataclass(frozen=True)
class SearchResult:
    """Outcome of the near-threshold sweep over initial stretch rates."""

    expansion0: float
    rate: float
    threshold: float
    deficit: float
    epsilon: float
    evaluations: int


def _affine_moments(p: AffineParams, alpha0: float) -> MomentSet:
    g0 = p.inertia0
    ek = alpha0 * alpha0 * g0
    pairs = ANGULAR_COMPONENTS[p.ndim]
    return MomentSet(
        ndim=p.ndim, time=0.0, gamma=p.gamma, mass=affine_mass(p),
        inertia=g0, inertia_rate=2.0 * alpha0 * g0,
        rotational_moment=0.0 if p.ndim == 2 else None,
        angular_momentum=(0.0,) * pairs, kinetic_energy=ek,
        internal_energy=p.internal0, total_energy=ek + p.internal0,
        radial_kinetic=2.0 * ek, angular_kinetic=0.0,
        pressure_trace=p.ndim * (p.gamma - 1.0) * p.internal0)


def _affine_constant(p: AffineParams) -> CheminConstant:
    return chemin_constant(p.gamma, p.ndim, affine_mass(p),
                           affine_entropy_floor(p))


def affine_threshold_gap(p: AffineParams, alpha0: float,
                         cc: CheminConstant | None = None) -> ThresholdGap:
    """Threshold deficit plus the shrinking angle and rate ratio.

    The angle tends to zero and the ratio to one as the stretch rate
    grows, squeezing the deficit toward zero from above.
    """
    if alpha0 <= 0.0:
        raise DomainError("stretch rate must be positive for the sweep")
    cc = cc if cc is not None else _affine_constant(p)
    ms = _affine_moments(p, alpha0)
    info = rate_threshold(ms, cc)
    scale = p.inertia0 ** (0.5 + 0.5 * p.compression_exponent)
    angle = info.restraint / (2.0 * alpha0 * scale) if info.restraint else 0.0
    ratio = alpha0 * scale / math.sqrt(
        alpha0 * alpha0 * scale * scale + p.pressure_coupling)
    return ThresholdGap(expansion0=alpha0, rate=ms.inertia_rate,
                        threshold=info.rhs,
                        deficit=info.rhs - ms.inertia_rate,
                        angle=angle, ratio=ratio)


_SEARCH_CAP = 1e12


def theorem22_search(p: AffineParams, epsilon: float) -> SearchResult:
    """Find a stretch rate whose threshold deficit drops below epsilon.

    The family always sits strictly below the blow-up threshold, but the
    gap decays like the inverse rate; doubling the rate until the gap is
    inside (0, epsilon) exhibits data that miss the criterion by an
    arbitrarily small margin yet stay smooth forever.
    """
    if epsilon <= 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    if p.pressure_coupling == 0.0:
        raise DomainError(
            "the sweep needs pressure: without it the data sit exactly "
            "on the threshold for every rate")
    cc = _affine_constant(p)
    evaluations = 0
    lo = None
    alpha0 = 1.0
    while alpha0 <= _SEARCH_CAP:
        gap = affine_threshold_gap(p, alpha0, cc)
        evaluations += 1
        if 0.0 < gap.deficit < epsilon:
            return SearchResult(expansion0=alpha0, rate=gap.rate,
                                threshold=gap.threshold,
                                deficit=gap.deficit, epsilon=epsilon,
                                evaluations=evaluations)
        if gap.deficit <= 0.0:
            break
        lo = alpha0
        alpha0 *= 2.0
    if lo is None or alpha0 > _SEARCH_CAP:
        raise SearchFailed(
            "no stretch rate below the cap brings the deficit inside "
            f"(0, {epsilon})")
    # overshot into a nonpositive deficit: bisect back toward the band
    hi = alpha0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        gap = affine_threshold_gap(p, mid, cc)
        evaluations += 1
        if 0.0 < gap.deficit < epsilon:
            return SearchResult(expansion0=mid, rate=gap.rate,
                                threshold=gap.threshold,
                                deficit=gap.deficit, epsilon=epsilon,
                                evaluations=evaluations)
        if gap.deficit <= 0.0:
            hi = mid
        else:
            lo = mid
    raise SearchFailed("bisection failed to land inside the deficit band")


def write_trajectory_csv(path, traj: AffineTrajectory) -> None:
    """Dump the trajectory with its derived moment histories."""
    cols = zip(traj.times, traj.expansion, traj.inverse_inertia,
               traj.inertia(), traj.inertia_rate(), traj.internal_energy())
    with open(path, "w", encoding="ascii") as fh:
        fh.write("time,expansion,inverse_inertia,inertia,inertia_rate,"
                 "internal_energy\n")
        for row in cols:
            fh.write(",".join(format_float(v) for v in row) + "\n")


@dataclasses.dataclass(frozen=True)
class VortexParams:
    """Compact stationary vortex balanced by constant-rate rotation.

    The velocity is azimuthal with speed linear in the half-squared
    radius; the density profile follows by integrating the pointwise
    balance, with the offset pinned so it vanishes at the support edge
    unless overridden.
    """

    coriolis: float
    extent: float
    gamma: float
    pressure_constant: float = 1.0
    edge_offset: float | None = None

    def __post_init__(self):
        if self.coriolis == 0.0:
            raise DomainError("rotation rate must be nonzero")
        if self.extent <= 0.0:
            raise DomainError("support parameter must be positive")
        if self.gamma <= 1.0:
            raise DomainError(
                f"adiabatic exponent must exceed 1, got {self.gamma}")
        if self.pressure_constant <= 0.0:
            raise DomainError("pressure constant must be positive")

    @property
    def enthalpy_factor(self) -> float:
        return self.pressure_constant * self.gamma / (self.gamma - 1.0)

    @property
    def core_weight(self) -> float:
        """Density-power value at the center with the edge-pinned offset."""
        return (self.coriolis ** 2 * self.extent
                / (6.0 * self.enthalpy_factor))


def vortex_profile(vp: VortexParams,
                   half_rsq: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Swirl factor and density-power weight at given half-squared radii.

    The weight cubic is evaluated in factored form so it hits an exact
    zero at the support edge and is manifestly nonnegative inside.
    """
    theta = np.minimum(half_rsq, vp.extent)
    swirl = (vp.coriolis / vp.extent) * (vp.extent - theta)
    gap = theta - vp.extent
    weight = (vp.coriolis ** 2
              / (6.0 * vp.enthalpy_factor * vp.extent ** 2)) \
        * gap * gap * (vp.extent + 2.0 * theta)
    if vp.edge_offset is not None:
        weight = weight + (vp.edge_offset - vp.core_weight)
        if float(np.min(weight)) < 0.0:
            raise DomainError(
                "edge offset makes the density weight negative inside "
                "the support")
    outside = half_rsq > vp.extent
    swirl = np.where(outside, 0.0, swirl)
    weight = np.where(outside, 0.0, weight)
    return swirl, weight


def vortex_build(vp: VortexParams, grid: Grid) -> FluidState:
    """Stationary rotating state on a grid containing its support."""
    if grid.ndim != 2:
        raise DomainError("the vortex construction is planar")
    radius = math.sqrt(2.0 * vp.extent)
    for w, h in zip(grid.halfwidth, grid.spacing):
        if radius >= w - 2.0 * h:
            raise GridTooSmall(
                f"support radius {radius:.6g} needs two interior cells "
                f"of margin inside halfwidth {w:.6g}")
    x1, x2 = grid.centers()
    half_rsq = 0.5 * grid.radius_squared()
    swirl, weight = vortex_profile(vp, half_rsq)
    rho = weight ** (1.0 / (vp.gamma - 1.0))
    pres = vp.pressure_constant * rho ** vp.gamma
    vel = (-swirl * x2, swirl * x1)
    return FluidState(grid=grid, time=0.0, rho=rho, vel=vel, pres=pres)


def vortex_model(vp: VortexParams) -> GasModel:
    """Gas model whose rotational forcing matches the vortex balance."""
    return GasModel(gamma=vp.gamma, ndim=2,
                    force=ForceSpec.coriolis(vp.coriolis))
