"""Finite-difference residuals of the governing equations.

Independent of both the closed-form constructions and the solver: a
state (or three consecutive states) goes in, the worst interior cell
violation of each primitive-form equation comes out.  Centered
differences throughout, so smooth exact data converge at second order.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, NonconformingArrays
from .fields import FluidState, GasModel, Grid


def _gradient(field: np.ndarray, grid: Grid) -> list[np.ndarray]:
    out = np.gradient(field, *grid.spacing)
    return [out] if grid.ndim == 1 else list(out)


def stress_divergence(grid: Grid, vel: tuple[np.ndarray, ...], shear: float,
                      bulk: float) -> tuple[np.ndarray, ...]:
    """Divergence of the Newtonian stress built from a velocity field."""
    grads = [_gradient(v, grid) for v in vel]
    div = sum(grads[i][i] for i in range(grid.ndim))
    out = []
    for i in range(grid.ndim):
        acc = np.zeros_like(vel[0])
        for j in range(grid.ndim):
            stress = shear * (grads[i][j] + grads[j][i])
            if i == j:
                stress = stress + bulk * div
            acc += _gradient(stress, grid)[j]
        out.append(acc)
    return tuple(out)


def force_density(state: FluidState, model: GasModel) -> tuple[np.ndarray,
                                                               ...]:
    """Momentum source per unit volume at the state's own time.

    Friction and rotation push proportionally to the local mass; the
    viscous contribution is the stress divergence itself.
    """
    n = state.grid.ndim
    out = [np.zeros_like(state.rho) for _ in range(n)]
    for part in model.force.flattened():
        if part.kind == "friction":
            for i in range(n):
                out[i] -= part.friction_rate * state.rho * state.vel[i]
        elif part.kind == "coriolis":
            out[0] -= part.coriolis_rate * state.rho * state.vel[1]
            out[1] += part.coriolis_rate * state.rho * state.vel[0]
        elif part.kind == "viscosity":
            divs = stress_divergence(state.grid, state.vel,
                                     part.shear_viscosity,
                                     part.bulk_viscosity)
            for i in range(n):
                out[i] += divs[i]
    return tuple(out)


def _interior(grid: Grid) -> tuple[slice, ...]:
    return (slice(2, -2),) * grid.ndim


def _equation_fields(state: FluidState, model: GasModel,
                     time_derivs=None) -> dict[str, np.ndarray]:
    grid = state.grid
    n = grid.ndim
    rho_grads = _gradient(state.rho, grid)
    pres_grads = _gradient(state.pres, grid)
    vel_grads = [_gradient(v, grid) for v in state.vel]
    div = sum(vel_grads[i][i] for i in range(n))
    force = force_density(state, model)

    mass = state.rho * div
    for i in range(n):
        mass = mass + state.vel[i] * rho_grads[i]

    # momentum in force-density form: no division by a vanishing density
    momentum = np.zeros_like(state.rho)
    for i in range(n):
        res_i = sum(state.vel[j] * vel_grads[i][j] for j in range(n))
        res_i = state.rho * res_i + pres_grads[i] - force[i]
        if time_derivs is not None:
            res_i = res_i + state.rho * time_derivs[1][i]
        momentum = np.maximum(momentum, np.abs(res_i))

    energy = model.gamma * state.pres * div
    for i in range(n):
        energy = energy + state.vel[i] * pres_grads[i]

    if time_derivs is not None:
        mass = mass + time_derivs[0]
        energy = energy + time_derivs[2]
    return {"mass": np.abs(mass), "momentum": momentum,
            "energy": np.abs(energy)}


def _reduce(fields: dict[str, np.ndarray], grid: Grid) -> dict[str, float]:
    inner = _interior(grid)
    return {k: float(np.max(v[inner])) for k, v in fields.items()}


def steady_residual(state: FluidState, model: GasModel) -> dict[str, float]:
    """Max interior violation of each equation with time derivatives 0."""
    if model.ndim != state.grid.ndim:
        raise DomainError("model and state dimensions differ")
    return _reduce(_equation_fields(state, model), state.grid)


def transient_residual(states: tuple[FluidState, FluidState, FluidState],
                       model: GasModel) -> dict[str, float]:
    """Equation residuals with centered time differences from a triple.

    The three states must share one grid and be uniformly spaced in
    time; spatial terms are evaluated on the middle state.
    """
    before, mid, after = states
    if model.ndim != mid.grid.ndim:
        raise DomainError("model and state dimensions differ")
    if before.grid != mid.grid or after.grid != mid.grid:
        raise NonconformingArrays("residual triple must share one grid")
    dt_lo = mid.time - before.time
    dt_hi = after.time - mid.time
    if dt_lo <= 0.0 or dt_hi <= 0.0 or abs(dt_hi - dt_lo) > 1e-9 * dt_lo:
        raise DomainError("residual triple must be uniformly spaced in time")
    span = after.time - before.time
    drho = (after.rho - before.rho) / span
    dvel = tuple((after.vel[i] - before.vel[i]) / span
                 for i in range(mid.grid.ndim))
    dpres = (after.pres - before.pres) / span
    fields = _equation_fields(mid, model, time_derivs=(drho, dvel, dpres))
    return _reduce(fields, mid.grid)
