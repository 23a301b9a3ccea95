"""Flat-file persistence for states and moment tables.

The state container is a short ASCII header followed by raw row-major
little-endian float64 blocks (rho, velocity components, pressure).
The header pins the grid, so a file round-trips to an identical
FluidState without external metadata.  CSV writers exist for states
and for moment time series; floats print with repr-faithful %.17g so
reruns produce bit-identical files.
"""

from __future__ import annotations

import csv
import io

import numpy as np

from .errors import ScenarioError
from .fields import FluidState, Grid
from .moments import MomentSet

_MAGIC = "blowupwatch-state 1"
_END = "end-header"
_FMT = "%.17g"


def write_state(path, state: FluidState) -> None:
    grid = state.grid
    lines = [
        _MAGIC,
        f"ndim {grid.ndim}",
        "cells " + " ".join(str(n) for n in grid.cells),
        "halfwidth " + " ".join(_FMT % h for h in grid.halfwidth),
        "time " + _FMT % state.time,
        _END,
    ]
    with open(path, "wb") as fh:
        fh.write(("\n".join(lines) + "\n").encode("ascii"))
        fh.write(np.ascontiguousarray(state.rho, dtype="<f8").tobytes())
        for v in state.vel:
            fh.write(np.ascontiguousarray(v, dtype="<f8").tobytes())
        fh.write(np.ascontiguousarray(state.pres, dtype="<f8").tobytes())


def read_state(path) -> FluidState:
    with open(path, "rb") as fh:
        blob = fh.read()
    nl = blob.find(b"\n")
    if nl < 0 or blob[:nl].decode("ascii", "replace") != _MAGIC:
        raise ScenarioError(f"{path}: not a state file")
    header = {}
    pos = nl + 1
    while True:
        nl = blob.find(b"\n", pos)
        if nl < 0:
            raise ScenarioError(f"{path}: truncated header")
        line = blob[pos:nl].decode("ascii")
        pos = nl + 1
        if line == _END:
            break
        key, _, rest = line.partition(" ")
        header[key] = rest
    try:
        ndim = int(header["ndim"])
        cells = tuple(int(t) for t in header["cells"].split())
        halfwidth = tuple(float(t) for t in header["halfwidth"].split())
        time = float(header["time"])
    except (KeyError, ValueError) as exc:
        raise ScenarioError(f"{path}: bad header field: {exc}") from exc
    grid = Grid(ndim=ndim, cells=cells, halfwidth=halfwidth)
    count = int(np.prod(cells))
    need = (ndim + 2) * count * 8
    body = blob[pos:]
    if len(body) != need:
        raise ScenarioError(
            f"{path}: expected {need} payload bytes, found {len(body)}")
    arrays = np.frombuffer(body, dtype="<f8").reshape(ndim + 2, *cells)
    return FluidState(grid=grid, time=time, rho=arrays[0],
                      vel=tuple(arrays[1:1 + ndim]), pres=arrays[1 + ndim])


def write_state_csv(path, state: FluidState) -> None:
    """Tabular dump: one row per cell, coordinates then rho, V, P."""
    grid = state.grid
    xs = grid.centers()
    cols = [x.ravel() for x in xs]
    cols.append(state.rho.ravel())
    cols.extend(v.ravel() for v in state.vel)
    cols.append(state.pres.ravel())
    names = [f"x{a + 1}" for a in range(grid.ndim)]
    names += ["rho"] + [f"v{a + 1}" for a in range(grid.ndim)] + ["p"]
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(names)
        for row in zip(*cols):
            out.writerow([_FMT % v for v in row])


_MOMENT_COLS = [
    "time", "ndim", "gamma", "mass", "inertia", "inertia_rate",
    "rotational_moment", "kinetic_energy", "internal_energy",
    "total_energy", "radial_kinetic", "angular_kinetic", "pressure_trace",
]


def write_moments_csv(path, series: list[MomentSet]) -> None:
    """Moment table; angular momentum components append as m1, m2, ..."""
    if not series:
        raise ScenarioError("refusing to write an empty moment table")
    n_ang = len(series[0].angular_momentum)
    names = _MOMENT_COLS + [f"m{k + 1}" for k in range(n_ang)]
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(names)
        for ms in series:
            row = [ms.time, ms.ndim, ms.gamma, ms.mass, ms.inertia,
                   ms.inertia_rate,
                   "" if ms.rotational_moment is None
                   else _FMT % ms.rotational_moment,
                   ms.kinetic_energy, ms.internal_energy, ms.total_energy,
                   ms.radial_kinetic, ms.angular_kinetic, ms.pressure_trace]
            row = [v if isinstance(v, str) else
                   (str(v) if isinstance(v, int) else _FMT % v)
                   for v in row]
            row += [_FMT % m for m in ms.angular_momentum]
            out.writerow(row)


def read_moments_csv(path) -> list[MomentSet]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ScenarioError(f"{path}: empty moment table")
    series = []
    for row in rows:
        try:
            n_ang = sum(1 for k in row if k.startswith("m") and k[1:].isdigit())
            rot = row["rotational_moment"]
            series.append(MomentSet(
                ndim=int(row["ndim"]),
                time=float(row["time"]),
                gamma=float(row["gamma"]),
                mass=float(row["mass"]),
                inertia=float(row["inertia"]),
                inertia_rate=float(row["inertia_rate"]),
                rotational_moment=None if rot == "" else float(rot),
                angular_momentum=tuple(float(row[f"m{k + 1}"])
                                       for k in range(n_ang)),
                kinetic_energy=float(row["kinetic_energy"]),
                internal_energy=float(row["internal_energy"]),
                total_energy=float(row["total_energy"]),
                radial_kinetic=float(row["radial_kinetic"]),
                angular_kinetic=float(row["angular_kinetic"]),
                pressure_trace=float(row["pressure_trace"]),
            ))
        except (KeyError, ValueError) as exc:
            raise ScenarioError(f"{path}: bad moment row: {exc}") from exc
    return series


def format_float(value: float) -> str:
    """The canonical float rendering used by every writer."""
    return _FMT % value
