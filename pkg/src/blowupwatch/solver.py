"""Desk-scale finite-volume scheme for the forced compressible system.

Conservative local Lax-Friedrichs update (optionally second order via
limited primitive slopes) in one or two dimensions, with friction,
rotation, and Newtonian viscosity applied by operator splitting.  The
point is moment bookkeeping and empirical steepening detection, not
shock-capturing fidelity.
"""

from __future__ import annotations

import dataclasses
import math
from pathlib import Path

import numpy as np

from .errors import DomainError, NegativePressure, NonFinite, TailTooLarge
from .fields import FluidState, GasModel, Grid
from .moments import MomentSet, compute_moments
from .residuals import stress_divergence
from .snapshots import format_float, write_moments_csv, write_state

_SCHEMES = ("llf", "muscl")
_BOUNDARIES = ("outflow", "periodic")


@dataclasses.dataclass(frozen=True)
class SolverConfig:
    """Run-control knobs.

    fixed_dt, when set, overrides the CFL choice so moment series land
    on a uniform time grid; the caller owns stability in that mode.
    The gradient detector fires when the worst velocity-derivative
    magnitude exceeds gradient_factor times its initial value (floored
    by sound speed over box size, so resting data cannot trip it on
    round-off).
    """

    t_end: float
    cfl: float = 0.4
    fixed_dt: float | None = None
    scheme: str = "muscl"
    boundary: str = "outflow"
    snapshot_interval: float | None = None
    moment_stride: int = 1
    tail_tol: float = 1e-6
    dt_floor: float = 1e-12
    gradient_factor: float = 100.0
    max_steps: int = 1_000_000

    def __post_init__(self):
        if self.t_end <= 0.0:
            raise DomainError("t_end must be positive")
        if not 0.0 < self.cfl < 1.0:
            raise DomainError(f"CFL must sit in (0, 1), got {self.cfl}")
        if self.scheme not in _SCHEMES:
            raise DomainError(f"unknown scheme {self.scheme!r}")
        if self.boundary not in _BOUNDARIES:
            raise DomainError(f"unknown boundary {self.boundary!r}")
        if self.fixed_dt is not None and self.fixed_dt <= 0.0:
            raise DomainError("fixed_dt must be positive when given")
        if self.dt_floor <= 0.0 or self.gradient_factor <= 0.0:
            raise DomainError("detector thresholds must be positive")
        if self.moment_stride < 0:
            raise DomainError("moment_stride must be >= 0")


@dataclasses.dataclass(frozen=True)
class BlowupEvent:
    """What tripped a run, when, and where (if localizable)."""

    time: float
    trigger: str
    location: tuple[float, ...] | None
    message: str


@dataclasses.dataclass(frozen=True)
class RunResult:
    snapshots: tuple[FluidState, ...]
    moments: tuple[MomentSet, ...]
    detection: BlowupEvent | None
    ledger: dict[str, float]
    notes: tuple[str, ...]
    steps: int


def _require_solvable(grid: Grid):
    if grid.ndim == 3:
        raise DomainError("the marching scheme covers one and two "
                          "dimensions only")


def _conservative(state: FluidState, gamma: float):
    rho = state.rho.copy()
    mom = [rho * v for v in state.vel]
    etot = state.pres / (gamma - 1.0) + 0.5 * rho * state.speed_squared()
    return rho, mom, etot


def _primitive_parts(rho, mom, etot, gamma, rho_floor):
    live = rho > rho_floor
    safe = np.where(live, rho, 1.0)
    vel = [np.where(live, m / safe, 0.0) for m in mom]
    kinetic = 0.5 * sum(m * v for m, v in zip(mom, vel))
    pres = (gamma - 1.0) * (etot - kinetic)
    return live, vel, pres


def _to_state(grid: Grid, time: float, rho, mom, etot,
              gamma: float) -> FluidState:
    """Rebuild a validated state, policing positivity.

    Round-off in near-vacuum cells may drive tiny negatives; anything
    beyond a relative whisker is a genuine detection signal.
    """
    if not (np.all(np.isfinite(rho)) and np.all(np.isfinite(etot))):
        raise NonFinite("non-finite value in the conservative update")
    rho_scale = float(np.max(rho))
    if rho_scale <= 0.0 or not math.isfinite(rho_scale):
        raise NonFinite("density collapsed to zero or worse everywhere")
    floor = 1e-14 * rho_scale
    if float(np.min(rho)) < -floor:
        err = NegativePressure("density went negative beyond round-off")
        err.location = _argmin_coords(grid, rho)
        raise err
    rho = np.maximum(rho, 0.0)
    live, vel, pres = _primitive_parts(rho, mom, etot, gamma, floor)
    pres_scale = float(np.max(np.abs(pres)))
    # in hypersonic cells the pressure is the difference of two nearly
    # equal energies, so undershoots up to the scheme's local kinetic
    # error are plumbing, not physics; anything deeper is a detection
    kinetic = 0.5 * sum(m * v for m, v in zip(mom, vel))
    band = 1e-3 * np.abs(kinetic) + 1e-12 * max(pres_scale, 1.0)
    if np.any(pres < -band):
        err = NegativePressure(
            "pressure went negative: near-vacuum or under-resolved "
            "compression")
        err.location = _argmin_coords(grid, pres + band)
        raise err
    pres = np.maximum(np.where(live, pres, 0.0), 0.0)
    vel = tuple(np.where(live, v, 0.0) for v in vel)
    return FluidState(grid=grid, time=time, rho=rho, vel=vel, pres=pres)


def _argmin_coords(grid: Grid, field) -> tuple[float, ...]:
    idx = np.unravel_index(int(np.argmin(field)), field.shape)
    return tuple(float(grid.axis_centers(a)[idx[a]])
                 for a in range(grid.ndim))


def _sound_speed(rho, pres, gamma):
    scale = float(np.max(rho))
    safe = np.maximum(rho, 1e-14 * max(scale, 1e-300))
    return np.sqrt(gamma * np.maximum(pres, 0.0) / safe)


def _wave_dt(state: FluidState, model: GasModel, cfl: float) -> float:
    c = _sound_speed(state.rho, state.pres, model.gamma)
    total = 0.0
    for axis in range(state.grid.ndim):
        speed = float(np.max(np.abs(state.vel[axis]) + c))
        total += speed / state.grid.spacing[axis]
    if total == 0.0:
        return math.inf
    return cfl / total


def _viscous_dt(state: FluidState, model: GasModel) -> float:
    shear = bulk = 0.0
    for part in model.force.flattened():
        if part.kind == "viscosity":
            shear += part.shear_viscosity
            bulk += abs(part.bulk_viscosity)
    if shear == 0.0 and bulk == 0.0:
        return math.inf
    # diffusion limit against a floored density so vacuum cells do not
    # drive the step to zero
    rho_eff = max(1e-3 * float(np.max(state.rho)), 1e-300)
    h_min = min(state.grid.spacing)
    nu = (2.0 * shear + bulk) / rho_eff
    return 0.2 * h_min * h_min / (state.grid.ndim * nu)


def _minmod(a, b):
    same = np.sign(a) == np.sign(b)
    return np.where(same, np.sign(a) * np.minimum(np.abs(a), np.abs(b)),
                    0.0)


def _face_states(u_pad, axis: int, ndim: int, order: int):
    """Left/right primitive values at every interior interface."""
    def cut(lo, hi):
        sl = [slice(2, -2)] * ndim
        sl[axis] = slice(lo, hi)
        return u_pad[tuple(sl)]

    if order == 1:
        return cut(1, -2), cut(2, -1)
    center = cut(1, -1)
    slope = _minmod(center - cut(0, -2), cut(2, None) - center)
    take = [slice(None)] * ndim
    take[axis] = slice(0, -1)
    lo = tuple(take)
    take[axis] = slice(1, None)
    hi = tuple(take)
    left = center[lo] + 0.5 * slope[lo]
    right = center[hi] - 0.5 * slope[hi]
    return left, right


def _face_flux(rho, vel, pres, axis: int, gamma: float):
    va = vel[axis]
    mom = [rho * v for v in vel]
    etot = pres / (gamma - 1.0) + 0.5 * rho * sum(v * v for v in vel)
    flux = [rho * va]
    for i, m in enumerate(mom):
        f = m * va
        if i == axis:
            f = f + pres
        flux.append(f)
    flux.append((etot + pres) * va)
    cons = [rho] + mom + [etot]
    return flux, cons, np.abs(va) + _sound_speed(rho, pres, gamma)


def _hyperbolic_rhs(state: FluidState, gamma: float, boundary: str,
                    order: int):
    grid = state.grid
    n = grid.ndim
    mode = "wrap" if boundary == "periodic" else "edge"
    padded = [np.pad(f, 2, mode=mode)
              for f in (state.rho, *state.vel, state.pres)]
    rhs = [np.zeros_like(state.rho) for _ in range(n + 2)]
    for axis in range(n):
        faces = [_face_states(f, axis, n, order) for f in padded]
        lrho, rrho = faces[0]
        lvel = [faces[1 + i][0] for i in range(n)]
        rvel = [faces[1 + i][1] for i in range(n)]
        lpre, rpre = faces[-1]
        fl, ul, sl = _face_flux(lrho, lvel, lpre, axis, gamma)
        fr, ur, sr = _face_flux(rrho, rvel, rpre, axis, gamma)
        speed = np.maximum(sl, sr)
        h = grid.spacing[axis]
        lo = [slice(None)] * n
        lo[axis] = slice(0, -1)
        hi = [slice(None)] * n
        hi[axis] = slice(1, None)
        for k in range(n + 2):
            numerical = 0.5 * (fl[k] + fr[k]) \
                - 0.5 * speed * (ur[k] - ul[k])
            rhs[k] -= (numerical[tuple(hi)] - numerical[tuple(lo)]) / h
    return rhs


def _apply_sources(grid: Grid, rho, mom, etot, model: GasModel, dt: float):
    """Half-step forcing: exact friction decay, exact rotation, explicit
    viscosity.  Rotation is energy-neutral by construction."""
    for part in model.force.flattened():
        if part.kind == "friction":
            decay = math.exp(-part.friction_rate * dt)
            floor = 1e-14 * max(float(np.max(rho)), 1e-300)
            live = rho > floor
            safe = np.where(live, rho, 1.0)
            kinetic = 0.5 * sum(m * m for m in mom) / safe
            etot -= np.where(live, kinetic * (1.0 - decay * decay), 0.0)
            for i in range(len(mom)):
                mom[i] *= decay
        elif part.kind == "coriolis":
            phi = part.coriolis_rate * dt
            c, s = math.cos(phi), math.sin(phi)
            m0 = mom[0] * c - mom[1] * s
            m1 = mom[0] * s + mom[1] * c
            mom[0], mom[1] = m0, m1
        elif part.kind == "viscosity":
            floor = 1e-14 * max(float(np.max(rho)), 1e-300)
            live = rho > floor
            safe = np.where(live, rho, 1.0)
            vel = tuple(np.where(live, m / safe, 0.0) for m in mom)
            divs = stress_divergence(grid, vel, part.shear_viscosity,
                                     part.bulk_viscosity)
            work = _stress_power_divergence(grid, vel,
                                            part.shear_viscosity,
                                            part.bulk_viscosity)
            for i in range(len(mom)):
                mom[i] = mom[i] + dt * divs[i]
            etot += dt * work
    return rho, mom, etot


def _stress_tensor(grid: Grid, vel, shear: float, bulk: float):
    grads = [np.gradient(v, *grid.spacing) for v in vel]
    if grid.ndim == 1:
        grads = [[g] for g in grads]
    div = sum(grads[i][i] for i in range(grid.ndim))
    tensor = {}
    for i in range(grid.ndim):
        for j in range(grid.ndim):
            t = shear * (grads[i][j] + grads[j][i])
            if i == j:
                t = t + bulk * div
            tensor[i, j] = t
    return tensor


def _stress_power_divergence(grid: Grid, vel, shear: float, bulk: float):
    tensor = _stress_tensor(grid, vel, shear, bulk)
    out = np.zeros_like(vel[0])
    for j in range(grid.ndim):
        w = sum(tensor[i, j] * vel[i] for i in range(grid.ndim))
        g = np.gradient(w, *grid.spacing)
        out += g[j] if grid.ndim > 1 else g
    return out


def _advance(state: FluidState, model: GasModel, cfg: SolverConfig,
             dt: float) -> FluidState:
    order = 2 if cfg.scheme == "muscl" else 1
    gamma = model.gamma
    grid = state.grid
    rho, mom, etot = _conservative(state, gamma)
    rho, mom, etot = _apply_sources(grid, rho, mom, etot, model, 0.5 * dt)
    work = _to_state(grid, state.time, rho, mom, etot, gamma)

    rhs = _hyperbolic_rhs(work, gamma, cfg.boundary, order)
    fields = [rho, *mom, etot]
    stage = [f + dt * r for f, r in zip(fields, rhs)]
    if order == 2:
        mid = _to_state(grid, state.time, stage[0],
                        stage[1:grid.ndim + 1], stage[-1], gamma)
        rhs2 = _hyperbolic_rhs(mid, gamma, cfg.boundary, order)
        stage = [0.5 * f + 0.5 * (s + dt * r)
                 for f, s, r in zip(fields, stage, rhs2)]

    rho, mom, etot = stage[0], list(stage[1:grid.ndim + 1]), stage[-1]
    rho, mom, etot = _apply_sources(grid, rho, mom, etot, model, 0.5 * dt)
    return _to_state(grid, state.time + dt, rho, mom, etot, gamma)


def _pick_dt(state: FluidState, model: GasModel, cfg: SolverConfig,
             remaining: float) -> float:
    if cfg.fixed_dt is not None:
        return min(cfg.fixed_dt, remaining)
    dt = min(_wave_dt(state, model, cfg.cfl), _viscous_dt(state, model))
    return min(dt, remaining)


def step(state: FluidState, model: GasModel,
         cfg: SolverConfig) -> FluidState:
    """One split conservative update with an internally chosen step."""
    _require_solvable(state.grid)
    if model.ndim != state.grid.ndim:
        raise DomainError("model and state dimensions differ")
    dt = _pick_dt(state, model, cfg, cfg.t_end)
    if not math.isfinite(dt):
        raise DomainError("no wave speed and no viscosity: nothing to do")
    return _advance(state, model, cfg, dt)


def _live_mask(state: FluidState):
    # near-vacuum cells reconstruct velocity from two tiny numbers, so
    # their gradients are reconstruction noise, not dynamics
    return state.rho > 1e-6 * float(np.max(state.rho))


def _gradient_metric(state: FluidState) -> float:
    mask = _live_mask(state)
    worst = 0.0
    for v in state.vel:
        grads = np.gradient(v, *state.grid.spacing)
        if state.grid.ndim == 1:
            grads = [grads]
        for g in grads:
            worst = max(worst, float(np.max(np.abs(g)[mask], initial=0.0)))
    return worst


def _gradient_location(state: FluidState) -> tuple[float, ...]:
    mask = _live_mask(state)
    best, where = -1.0, (0,) * state.grid.ndim
    for v in state.vel:
        grads = np.gradient(v, *state.grid.spacing)
        if state.grid.ndim == 1:
            grads = [grads]
        for g in grads:
            a = np.where(mask, np.abs(g), 0.0)
            idx = np.unravel_index(int(np.argmax(a)), a.shape)
            if float(a[idx]) > best:
                best, where = float(a[idx]), idx
    grid = state.grid
    return tuple(float(grid.axis_centers(a)[where[a]])
                 for a in range(grid.ndim))


def run(state0: FluidState, model: GasModel, cfg: SolverConfig) -> RunResult:
    """March to t_end or first detection, recording moment history.

    Step failures (negative pressure, non-finite data) are converted to
    detection events; only misuse raises.
    """
    _require_solvable(state0.grid)
    if model.ndim != state0.grid.ndim:
        raise DomainError("model and state dimensions differ")
    kinds = {p.kind for p in model.force.flattened()}
    vol = state0.grid.cell_volume
    spin_rate = sum(p.coriolis_rate for p in model.force.flattened()
                    if p.kind == "coriolis")

    def invariants(st: FluidState) -> dict[str, float]:
        rho = st.rho
        out = {"mass": float(rho.sum()) * vol,
               "energy": (0.5 * float((rho * st.speed_squared()).sum())
                          + float(st.pres.sum()) / (model.gamma - 1.0))
               * vol}
        for i, v in enumerate(st.vel):
            out[f"momentum{i + 1}"] = float((rho * v).sum()) * vol
        if st.grid.ndim == 2:
            x1, x2 = st.grid.centers()
            swirl = float((rho * (st.vel[0] * x2
                                  - st.vel[1] * x1)).sum()) * vol
            out["rotational_moment"] = swirl
            if "coriolis" in kinds:
                half = 0.5 * float((rho * st.grid.radius_squared()).sum())
                out["invariant_moment"] = spin_rate * half * vol + swirl
        return out

    base = invariants(state0)
    metric0 = _gradient_metric(state0)
    c0 = float(np.max(_sound_speed(state0.rho, state0.pres, model.gamma)))
    metric_base = max(metric0, c0 / max(state0.grid.halfwidth))

    snapshots = [state0]
    moments: list[MomentSet] = []
    notes: list[str] = []
    tail_warned = False

    def try_moments(st: FluidState):
        nonlocal tail_warned
        try:
            moments.append(compute_moments(st, model,
                                           tail_tol=cfg.tail_tol))
        except TailTooLarge as exc:
            if not tail_warned:
                notes.append(f"moment tail gate tripped at t="
                             f"{format_float(st.time)}: {exc}")
                tail_warned = True

    if cfg.moment_stride:
        try_moments(state0)

    detection = None
    state = state0
    steps = 0
    next_snap = (cfg.snapshot_interval if cfg.snapshot_interval is not None
                 else math.inf)
    while state.time < cfg.t_end - 1e-12 * cfg.t_end:
        if steps >= cfg.max_steps:
            notes.append(f"step budget {cfg.max_steps} exhausted at t="
                         f"{format_float(state.time)}")
            break
        dt = _pick_dt(state, model, cfg, cfg.t_end - state.time)
        if not math.isfinite(dt):
            raise DomainError("no wave speed and no viscosity: "
                              "nothing to march")
        if dt < cfg.dt_floor:
            detection = BlowupEvent(
                time=state.time, trigger="dt-floor", location=None,
                message=f"stable step {dt:.3e} fell below the floor "
                f"{cfg.dt_floor:.3e}")
            break
        try:
            state = _advance(state, model, cfg, dt)
        except (NegativePressure, NonFinite) as exc:
            detection = BlowupEvent(
                time=state.time, trigger=type(exc).__name__,
                location=getattr(exc, "location", None), message=str(exc))
            break
        steps += 1
        metric = _gradient_metric(state)
        if metric > cfg.gradient_factor * metric_base:
            detection = BlowupEvent(
                time=state.time, trigger="gradient-steepening",
                location=_gradient_location(state),
                message=f"velocity gradient reached {metric:.6g}, more "
                f"than {cfg.gradient_factor:g} times the initial scale "
                f"{metric_base:.6g}")
            snapshots.append(state)
            if cfg.moment_stride:
                try_moments(state)
            break
        if cfg.moment_stride and steps % cfg.moment_stride == 0:
            try_moments(state)
        if state.time >= next_snap - 1e-12:
            snapshots.append(state)
            next_snap += cfg.snapshot_interval
    if snapshots[-1] is not state:
        snapshots.append(state)

    final = invariants(state)
    ledger = _drift_ledger(base, final, state0, kinds, vol)
    return RunResult(snapshots=tuple(snapshots), moments=tuple(moments),
                     detection=detection, ledger=ledger,
                     notes=tuple(notes), steps=steps)


def _drift_ledger(base, final, state0: FluidState, kinds,
                  vol) -> dict[str, float]:
    """Relative drifts of whatever the forcing leaves conserved.

    Quantities that start near zero are measured against a physical
    scale built from the initial data instead of their own size.
    """
    rho0 = state0.rho
    speed0 = np.sqrt(state0.speed_squared())
    mom_scale = float((rho0 * speed0).sum()) * vol
    g0 = 0.5 * float((rho0 * state0.grid.radius_squared()).sum()) * vol
    ek0 = 0.5 * float((rho0 * state0.speed_squared()).sum()) * vol
    ang_scale = 2.0 * math.sqrt(max(g0 * ek0, 0.0))

    def rel(key, scale):
        delta = abs(final[key] - base[key])
        floor = max(abs(base[key]), scale)
        return delta / floor if floor > 0.0 else 0.0

    ledger = {"mass": rel("mass", 0.0)}
    if not kinds:
        for i in range(state0.grid.ndim):
            ledger[f"momentum{i + 1}"] = rel(f"momentum{i + 1}", mom_scale)
        ledger["energy"] = rel("energy", 0.0)
        if state0.grid.ndim == 2:
            ledger["rotational_moment"] = rel("rotational_moment",
                                              ang_scale)
    if "coriolis" in kinds:
        ledger["invariant_moment"] = rel("invariant_moment", ang_scale)
    return ledger


@dataclasses.dataclass(frozen=True)
class DecaySurfaceReport:
    """Magnitudes of the two far-field stress integrals on one shell.

    Smallness of both is the finite-box surrogate for the decay class
    the viscous blow-up argument needs; only magnitudes are reported,
    membership is not claimed.
    """

    radius: float
    moment_flux: float
    power_flux: float


def decay_surface_report(state: FluidState, model: GasModel,
                         radius: float | None = None,
                         samples: int = 720) -> DecaySurfaceReport:
    """Evaluate the two surface integrals on the largest interior shell.

    The integrands combine the stress tensor with position and velocity;
    fields are interpolated onto the shell (two points in 1D, a uniform
    circle in 2D).
    """
    grid = state.grid
    _require_solvable(grid)
    shear = bulk = 0.0
    for part in model.force.flattened():
        if part.kind == "viscosity":
            shear += part.shear_viscosity
            bulk += part.bulk_viscosity
    n = grid.ndim
    if radius is None:
        radius = min(w - 2.0 * h for w, h in zip(grid.halfwidth,
                                                 grid.spacing))
    if radius <= 0.0:
        raise DomainError("shell radius must be positive")
    if any(radius > w - h for w, h in zip(grid.halfwidth, grid.spacing)):
        raise DomainError("shell radius leaves the interpolation range")
    tensor = _stress_tensor(grid, state.vel, shear, bulk)
    trace_weight = 2.0 * shear + n * bulk

    if n == 1:
        moment = power = 0.0
        for sign in (-1.0, 1.0):
            t11 = _interp(grid, tensor[0, 0], (sign * radius,))
            v1 = _interp(grid, state.vel[0], (sign * radius,))
            moment += (t11 * sign * radius - trace_weight * v1) * sign
            power += t11 * v1 * sign
        return DecaySurfaceReport(radius=radius, moment_flux=abs(moment),
                                  power_flux=abs(power))

    phis = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    weight = 2.0 * math.pi * radius / samples
    moment = power = 0.0
    for phi in phis:
        normal = (math.cos(phi), math.sin(phi))
        point = (radius * normal[0], radius * normal[1])
        tij = {(i, j): _interp(grid, tensor[i, j], point)
               for i in range(2) for j in range(2)}
        v = [_interp(grid, state.vel[i], point) for i in range(2)]
        for i in range(2):
            for j in range(2):
                moment += tij[i, j] * point[i] * normal[j]
                power += tij[i, j] * v[i] * normal[j]
        moment -= trace_weight * (v[0] * normal[0] + v[1] * normal[1])
    return DecaySurfaceReport(radius=radius,
                              moment_flux=abs(moment * weight),
                              power_flux=abs(power * weight))


def _interp(grid: Grid, field: np.ndarray, point: tuple[float, ...]):
    """Multilinear interpolation at one physical point."""
    idx = []
    frac = []
    for a in range(grid.ndim):
        h = grid.spacing[a]
        f = (point[a] + grid.halfwidth[a]) / h - 0.5
        i0 = int(math.floor(f))
        i0 = max(0, min(i0, grid.cells[a] - 2))
        idx.append(i0)
        frac.append(min(max(f - i0, 0.0), 1.0))
    if grid.ndim == 1:
        i = idx[0]
        return float(field[i] * (1 - frac[0]) + field[i + 1] * frac[0])
    i, j = idx
    u, v = frac
    return float(field[i, j] * (1 - u) * (1 - v)
                 + field[i + 1, j] * u * (1 - v)
                 + field[i, j + 1] * (1 - u) * v
                 + field[i + 1, j + 1] * u * v)


def write_run_directory(path, result: RunResult) -> None:
    """Persist a run: binary snapshots, moment table, event log."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    snapdir = root / "snapshots"
    snapdir.mkdir(exist_ok=True)
    for k, snap in enumerate(result.snapshots):
        write_state(snapdir / f"state-{k:06d}.bin", snap)
    if result.moments:
        write_moments_csv(root / "moments.csv", result.moments)
    with open(root / "events.txt", "w", encoding="ascii") as fh:
        if result.detection is not None:
            ev = result.detection
            loc = ("none" if ev.location is None else
                   " ".join(format_float(c) for c in ev.location))
            fh.write(f"time={format_float(ev.time)} trigger={ev.trigger} "
                     f"location={loc} message={ev.message}\n")
    if result.notes:
        with open(root / "notes.txt", "w", encoding="ascii") as fh:
            for note in result.notes:
                fh.write(note + "\n")
    with open(root / "ledger.txt", "w", encoding="ascii") as fh:
        for key in sorted(result.ledger):
            fh.write(f"{key}={format_float(result.ledger[key])}\n")
