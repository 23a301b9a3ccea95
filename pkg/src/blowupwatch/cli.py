"""Command-line front end: scenario files in, report directories out.

A scenario is a flat INI document.  Each subcommand maps one slice of
the library onto files under ``--out``: ``moments`` and ``criteria``
evaluate the initial data, ``affine`` and ``vortex`` drive the closed
constructions, ``simulate`` runs the full pipeline, and ``sweep`` fans
a parameter grid across worker processes.  Outputs are deterministic;
floats go through the shortest round-trip formatter and nothing records
wall-clock time or host details.
"""

import argparse
import configparser
import math
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .criteria import (SiderisSetup, chemin_constant, damped_check,
                       moment_inputs, pressureless_rotation_pointwise,
                       render_reports_text, report_csv_header,
                       report_csv_row, rotation_check, sideris_check,
                       theorem21_check)
from .errors import BlowupWatchError, ScenarioError
from .exact import (AffineParams, VortexParams, affine_integrate,
                    affine_reference_state, affine_threshold_gap,
                    theorem22_search, vortex_build, vortex_model,
                    write_trajectory_csv)
from .fields import FluidState, ForceSpec, GasModel, Grid
from .moments import DEFAULT_TAIL_TOL, compute_moments, holder_check
from .residuals import steady_residual
from .snapshots import (format_float, read_state, write_moments_csv,
                        write_state, write_state_csv)
from .solver import SolverConfig, run, write_run_directory

_MISSING = object()


def _parse_bool(raw: str) -> bool:
    low = raw.lower()
    if low in ("yes", "true", "on", "1"):
        return True
    if low in ("no", "false", "off", "0"):
        return False
    raise ValueError(f"expected yes or no, got {raw!r}")


def _parse_floats(raw: str) -> list[float]:
    values = [float(tok) for tok in raw.split()]
    if not values:
        raise ValueError("expected at least one number")
    return values


class _Doc:
    """Parsed scenario plus the raw lines, for error locations."""

    def __init__(self, text: str, source: str):
        self.text = text
        self.source = source
        self.lines = text.splitlines()
        parser = configparser.ConfigParser(
            interpolation=None, inline_comment_prefixes=("#", ";"))
        try:
            parser.read_string(text, source=source)
        except configparser.Error as exc:
            raise ScenarioError(str(exc)) from exc
        self.parser = parser

    @classmethod
    def load(cls, path) -> "_Doc":
        p = Path(path)
        try:
            text = p.read_text(encoding="utf-8")
        except OSError as exc:
            raise ScenarioError(f"cannot read scenario file: {exc}") from exc
        return cls(text, str(p))

    def where(self, section: str, key: str | None = None) -> str:
        """file:line of a key (or of its section header)."""
        current = None
        section_line = None
        for num, line in enumerate(self.lines, 1):
            header = re.match(r"\s*\[([^\]]+)\]", line)
            if header:
                current = header.group(1)
                if current == section and section_line is None:
                    section_line = num
                continue
            if (key is not None and current == section
                    and re.match(rf"\s*{re.escape(key)}\s*[=:]", line)):
                return f"{self.source}:{num}"
        if section_line is not None:
            return f"{self.source}:{section_line}"
        return self.source

    def has(self, section: str, key: str) -> bool:
        return (self.parser.has_section(section)
                and self.parser.has_option(section, key)
                and self.parser.get(section, key).strip() != "")

    def get(self, section, key, parse=None, default=_MISSING):
        if not self.has(section, key):
            if default is not _MISSING:
                return default
            raise ScenarioError(f"{self.where(section)}: section "
                                f"[{section}] needs key '{key}'")
        raw = self.parser.get(section, key).strip()
        if parse is None:
            return raw
        try:
            return parse(raw)
        except (TypeError, ValueError) as exc:
            raise ScenarioError(
                f"{self.where(section, key)}: bad value for "
                f"'{key}': {exc}") from exc

    def override(self, section: str, key: str, value: str) -> None:
        if not self.parser.has_section(section):
            self.parser.add_section(section)
        self.parser.set(section, key, value)


def _gas_model(doc: _Doc) -> GasModel:
    gamma = doc.get("gas", "gamma", float)
    ndim = doc.get("gas", "ndim", int)
    kinds = doc.get("gas", "force", default="none").split()
    parts = []
    for kind in kinds:
        if kind == "none":
            continue
        if kind == "friction":
            parts.append(ForceSpec.friction(
                doc.get("gas", "friction_bound", float),
                doc.get("gas", "friction_rate", float, default=None)))
        elif kind == "coriolis":
            parts.append(ForceSpec.coriolis(
                doc.get("gas", "coriolis_rate", float)))
        elif kind == "viscosity":
            parts.append(ForceSpec.viscosity(
                doc.get("gas", "shear_viscosity", float),
                doc.get("gas", "bulk_viscosity", float, default=0.0)))
        else:
            raise ScenarioError(f"{doc.where('gas', 'force')}: unknown "
                                f"force kind {kind!r}")
    try:
        if not parts:
            force = ForceSpec.none()
        elif len(parts) == 1:
            force = parts[0]
        else:
            force = ForceSpec.composite(*parts)
        return GasModel(gamma=gamma, ndim=ndim, force=force)
    except BlowupWatchError as exc:
        raise ScenarioError(f"{doc.where('gas')}: {exc}") from exc


def _grid(doc: _Doc, ndim: int, cells_override: int | None) -> Grid:
    cells = cells_override or doc.get("grid", "cells", int)
    halfwidth = doc.get("grid", "halfwidth", float)
    try:
        return Grid.regular(ndim, cells, halfwidth)
    except BlowupWatchError as exc:
        raise ScenarioError(f"{doc.where('grid')}: {exc}") from exc


def _spin_rate(model: GasModel) -> float:
    return sum(p.coriolis_rate for p in model.force.flattened()
               if p.kind == "coriolis")


def _friction_bound(model: GasModel) -> float:
    return sum(p.friction_bound for p in model.force.flattened()
               if p.kind == "friction")


def _vortex_params(doc: _Doc, gamma: float) -> VortexParams:
    return VortexParams(
        coriolis=doc.get("initial", "spin_rate", float),
        extent=doc.get("initial", "extent", float),
        gamma=gamma,
        pressure_constant=doc.get("initial", "pressure_constant", float,
                                  default=1.0),
        edge_offset=doc.get("initial", "edge_offset", float, default=None))


def _affine_params(doc: _Doc, model: GasModel) -> AffineParams:
    return AffineParams(
        ndim=model.ndim,
        gamma=model.gamma,
        inertia0=doc.get("initial", "inertia", float, default=1.0),
        internal0=doc.get("initial", "internal_energy", float),
        expansion0=doc.get("initial", "expansion", float),
        profile_power=doc.get("initial", "decay_power", float, default=3.0))


def _compact_state(doc: _Doc, grid: Grid, model: GasModel, seed: int):
    rho_bar = doc.get("initial", "background_density", float)
    s_bar = doc.get("initial", "background_entropy", float, default=0.0)
    height = doc.get("initial", "bump_height", float)
    radius = doc.get("initial", "bump_radius", float)
    count = doc.get("initial", "bump_count", int, default=1)
    if rho_bar <= 0.0:
        raise ScenarioError(f"{doc.where('initial', 'background_density')}: "
                            "background density must be positive")
    if radius <= 0.0 or count < 1:
        raise ScenarioError(f"{doc.where('initial')}: bump radius must be "
                            "positive and bump count at least 1")
    margin = min(w - 2.0 * h for w, h in zip(grid.halfwidth, grid.spacing))
    if count == 1:
        centers = np.zeros((1, grid.ndim))
    else:
        rng = np.random.default_rng(seed)
        centers = rng.uniform(-0.5 * margin, 0.5 * margin,
                              (count, grid.ndim))
    if radius + float(np.max(np.abs(centers))) >= margin:
        raise ScenarioError(f"{doc.where('initial', 'bump_radius')}: bumps "
                            "do not fit strictly inside the box")
    xs = grid.centers()
    rho = np.full(grid.cells, rho_bar)
    for center in centers:
        r = np.sqrt(sum((x - c) ** 2 for x, c in zip(xs, center)))
        taper = np.cos(0.5 * math.pi * np.minimum(r / radius, 1.0)) ** 2
        rho = rho + height * np.where(r < radius, taper, 0.0)
    if float(np.min(rho)) <= 0.0:
        raise ScenarioError(f"{doc.where('initial', 'bump_height')}: bumps "
                            "drive the density nonpositive")
    weight = math.exp(s_bar)
    pres = weight * rho ** model.gamma
    vel = tuple(np.zeros(grid.cells) for _ in range(grid.ndim))
    state = FluidState(grid=grid, time=0.0, rho=rho, vel=vel, pres=pres)
    return state, (rho_bar, weight * rho_bar ** model.gamma)


def _initial(doc: _Doc, model: GasModel, cells_override: int | None,
             seed: int):
    """Initial FluidState plus the (rho, P) background, when one exists."""
    kind = doc.get("initial", "kind")
    try:
        if kind == "file":
            path = Path(doc.get("initial", "path"))
            if not path.is_file():
                raise ScenarioError(f"{doc.where('initial', 'path')}: "
                                    f"no such state file: {path}")
            state = read_state(path)
            if state.grid.ndim != model.ndim:
                raise ScenarioError(
                    f"{doc.where('initial', 'path')}: state is "
                    f"{state.grid.ndim}-dimensional, gas model expects "
                    f"{model.ndim}")
            return state, None
        grid = _grid(doc, model.ndim, cells_override)
        if kind == "gaussian-affine":
            return affine_reference_state(_affine_params(doc, model),
                                          grid), None
        if kind == "vortex":
            return vortex_build(_vortex_params(doc, model.gamma), grid), None
        if kind == "compact-perturbation":
            return _compact_state(doc, grid, model, seed)
        raise ScenarioError(f"{doc.where('initial', 'kind')}: unknown "
                            f"initial kind {kind!r}")
    except ScenarioError:
        raise
    except BlowupWatchError as exc:
        raise ScenarioError(f"{doc.where('initial')}: {exc}") from exc


def _solver_config(doc: _Doc) -> SolverConfig:
    try:
        return SolverConfig(
            t_end=doc.get("solver", "t_end", float),
            cfl=doc.get("solver", "cfl", float, default=0.4),
            fixed_dt=doc.get("solver", "fixed_dt", float, default=None),
            scheme=doc.get("solver", "scheme", default="muscl"),
            boundary=doc.get("solver", "boundary", default="outflow"),
            snapshot_interval=doc.get("solver", "snapshot_interval", float,
                                      default=None),
            moment_stride=doc.get("solver", "moment_stride", int, default=1),
            tail_tol=doc.get("solver", "tail_tol", float,
                             default=DEFAULT_TAIL_TOL),
            dt_floor=doc.get("solver", "dt_floor", float, default=1e-12),
            gradient_factor=doc.get("solver", "gradient_factor", float,
                                    default=100.0),
            max_steps=doc.get("solver", "max_steps", int, default=1_000_000))
    except ScenarioError:
        raise
    except BlowupWatchError as exc:
        raise ScenarioError(f"{doc.where('solver')}: {exc}") from exc


def _moment_tail_tol(doc: _Doc) -> float:
    return doc.get("criteria", "tail_tol", float, default=DEFAULT_TAIL_TOL)


def _measured_support(state: FluidState, rho_bar: float) -> float:
    """Outermost radius where the state deviates from the background."""
    moving = np.abs(state.rho - rho_bar) > 1e-12 * rho_bar
    moving |= state.speed_squared() > 0.0
    if not bool(np.any(moving)):
        return float(max(state.grid.spacing))
    r = np.sqrt(state.grid.radius_squared())
    return (float(np.max(np.where(moving, r, 0.0)))
            + float(max(state.grid.spacing)))


_CC_TAGS = frozenset({"T2.1", "T4.1", "T5.1-53", "T5.1-54"})
_SIDERIS_TAGS = ("T3.1a", "T3.1b", "T3.1c", "T3.1d", "T3.1e")


def _sideris_setup(doc: _Doc, ms, state: FluidState, background):
    support = doc.get("criteria", "support_radius", float, default=None)
    if support is None:
        if background is None:
            raise ScenarioError(
                f"{doc.where('criteria')}: support_radius is required "
                "unless the initial data is a compact perturbation")
        support = _measured_support(state, background[0])
    excess = doc.get("criteria", "mass_excess", float, default=None)
    if excess is None:
        if background is None:
            raise ScenarioError(
                f"{doc.where('criteria')}: mass_excess is required unless "
                "the initial data is a compact perturbation")
        excess = ms.mass
    return SiderisSetup(
        ndim=ms.ndim,
        growth_exponent=doc.get("criteria", "growth_exponent", float),
        growth_constant=doc.get("criteria", "growth_constant", float),
        support_radius=support,
        density_max=doc.get("criteria", "density_max", float,
                            default=float(np.max(state.rho))),
        weighted_mass_excess=excess,
        angular_momentum_norm=ms.angular_norm,
        inertia_rate=ms.inertia_rate)


def _evaluate_criteria(doc: _Doc, ms, state: FluidState, model: GasModel,
                       background):
    tags = doc.get("criteria", "tags").split()
    inputs = moment_inputs(ms)
    reports = []
    cc = None
    rotation = None
    sideris = None
    for tag in tags:
        if tag in _CC_TAGS and cc is None:
            floor = doc.get("criteria", "entropy_floor", float, default=None)
            if floor is None:
                floor = state.min_entropy(model.gamma)
            cc = chemin_constant(model.gamma, model.ndim, ms.mass, floor)
            inputs["entropy_floor"] = floor
            inputs["bound_constant"] = cc.bound_constant
        if tag == "T2.1":
            reports.append(theorem21_check(ms, cc))
        elif tag == "T4.1":
            bound = doc.get("criteria", "friction_bound", float,
                            default=_friction_bound(model))
            psi = doc.get("criteria", "psi_star", float, default=0.9)
            inputs["friction_bound"] = bound
            inputs["psi_star"] = psi
            reports.append(damped_check(ms, cc, bound, psi))
        elif tag in ("T5.1-53", "T5.1-54"):
            if rotation is None:
                spin = doc.get("criteria", "spin_rate", float,
                               default=_spin_rate(model))
                if spin == 0.0:
                    raise ScenarioError(
                        f"{doc.where('criteria')}: rotation criteria need "
                        "a nonzero spin_rate")
                inputs["spin_rate"] = spin
                rotation = rotation_check(ms, cc, spin)
            reports.append(rotation[1] if tag == "T5.1-53" else rotation[2])
        elif tag in _SIDERIS_TAGS:
            if sideris is None:
                setup = _sideris_setup(doc, ms, state, background)
                inputs["growth_exponent"] = setup.growth_exponent
                inputs["growth_constant"] = setup.growth_constant
                inputs["support_radius"] = setup.support_radius
                inputs["density_max"] = setup.density_max
                inputs["mass_excess"] = setup.weighted_mass_excess
                sideris = {rep.tag: rep for rep in sideris_check(setup)}
            reports.append(sideris[tag])
        elif tag == "R5.1":
            spin = doc.get("criteria", "spin_rate", float,
                           default=_spin_rate(model))
            if spin == 0.0:
                raise ScenarioError(
                    f"{doc.where('criteria')}: the pointwise rotation test "
                    "needs a nonzero spin_rate")
            inputs["spin_rate"] = spin
            rep, _ = pressureless_rotation_pointwise(state.grid, state.vel,
                                                     spin)
            reports.append(rep)
        else:
            raise ScenarioError(f"{doc.where('criteria', 'tags')}: unknown "
                                f"criterion tag {tag!r}")
    return reports, inputs


def _write_criteria(out: Path, reports, inputs) -> None:
    keys = sorted(inputs)
    (out / "criteria.txt").write_text(render_reports_text(reports, inputs),
                                      encoding="ascii")
    with open(out / "criteria.csv", "w", encoding="ascii") as fh:
        fh.write(",".join(report_csv_header(keys)) + "\n")
        for rep in reports:
            fh.write(",".join(report_csv_row(rep, inputs, keys)) + "\n")


def _write_series(path, series, spin: float) -> None:
    """Plot-ready history: second moment, its rate, energy, invariant."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("time,inertia,inertia_rate,total_energy,"
                 "invariant_moment\n")
        for ms in series:
            swirl = ms.rotational_moment or 0.0
            row = (ms.time, ms.inertia, ms.inertia_rate, ms.total_energy,
                   spin * ms.inertia + swirl)
            fh.write(",".join(format_float(v) for v in row) + "\n")


def _do_moments(doc: _Doc, out: Path, cells: int | None, seed: int):
    model = _gas_model(doc)
    state, background = _initial(doc, model, cells, seed)
    ms = compute_moments(state, model, tail_tol=_moment_tail_tol(doc),
                         background=background)
    write_moments_csv(out / "moments.csv", [ms])
    with open(out / "holder.txt", "w", encoding="ascii") as fh:
        for chk in holder_check(ms):
            fh.write(f"{chk.name} lhs={format_float(chk.lhs)} "
                     f"rhs={format_float(chk.rhs)} "
                     f"slack={format_float(chk.slack)} "
                     f"satisfied={'yes' if chk.satisfied else 'no'}\n")
    return ms


def _do_criteria(doc: _Doc, out: Path, cells: int | None, seed: int):
    model = _gas_model(doc)
    state, background = _initial(doc, model, cells, seed)
    ms = compute_moments(state, model, tail_tol=_moment_tail_tol(doc),
                         background=background)
    reports, inputs = _evaluate_criteria(doc, ms, state, model, background)
    _write_criteria(out, reports, inputs)
    return reports, inputs


def _do_affine(doc: _Doc, out: Path):
    model = _gas_model(doc)
    if doc.get("initial", "kind") != "gaussian-affine":
        raise ScenarioError(f"{doc.where('initial', 'kind')}: the affine "
                            "subcommand needs initial kind gaussian-affine")
    params = _affine_params(doc, model)
    t_end = doc.get("affine", "t_end", float)
    dt = doc.get("affine", "dt", float)
    traj = affine_integrate(params, t_end, dt)
    write_trajectory_csv(out / "trajectory.csv", traj)
    lines = [f"error_estimate={format_float(traj.error_estimate)}"]
    if params.expansion0 > 0.0:
        gap = affine_threshold_gap(params, params.expansion0)
        lines += [f"rate={format_float(gap.rate)}",
                  f"threshold={format_float(gap.threshold)}",
                  f"deficit={format_float(gap.deficit)}"]
    epsilon = doc.get("affine", "epsilon", float, default=None)
    if epsilon is not None:
        found = theorem22_search(params, epsilon)
        lines += [f"search_expansion={format_float(found.expansion0)}",
                  f"search_deficit={format_float(found.deficit)}",
                  f"search_evaluations={found.evaluations}"]
    (out / "affine.txt").write_text("\n".join(lines) + "\n",
                                    encoding="ascii")
    return traj


def _do_vortex(doc: _Doc, out: Path, cells: int | None):
    model = _gas_model(doc)
    if doc.get("initial", "kind") != "vortex":
        raise ScenarioError(f"{doc.where('initial', 'kind')}: the vortex "
                            "subcommand needs initial kind vortex")
    params = _vortex_params(doc, model.gamma)
    try:
        state = vortex_build(params, _grid(doc, 2, cells))
    except ScenarioError:
        raise
    except BlowupWatchError as exc:
        raise ScenarioError(f"{doc.where('initial')}: {exc}") from exc
    balanced = vortex_model(params)
    write_state(out / "state.bin", state)
    write_state_csv(out / "state.csv", state)
    write_moments_csv(out / "moments.csv",
                      [compute_moments(state, balanced,
                                       tail_tol=_moment_tail_tol(doc))])
    residual = steady_residual(state, balanced)
    with open(out / "residual.txt", "w", encoding="ascii") as fh:
        for key in sorted(residual):
            fh.write(f"{key}={format_float(residual[key])}\n")
    return residual


def _do_simulate(doc: _Doc, out: Path, cells: int | None, seed: int):
    """The full pipeline: data, moments, criteria, then the march."""
    model = _gas_model(doc)
    state, background = _initial(doc, model, cells, seed)
    ms = compute_moments(state, model, tail_tol=_moment_tail_tol(doc),
                         background=background)
    if doc.has("criteria", "tags"):
        reports, inputs = _evaluate_criteria(doc, ms, state, model,
                                             background)
        _write_criteria(out, reports, inputs)
    if not doc.parser.has_section("solver"):
        write_moments_csv(out / "moments.csv", [ms])
        (out / "events.txt").write_text("", encoding="ascii")
        _write_series(out / "series.csv", [ms], _spin_rate(model))
        return None
    result = run(state, model, _solver_config(doc))
    write_run_directory(out, result)
    if not result.moments:
        write_moments_csv(out / "moments.csv", [ms])
    _write_series(out / "series.csv", result.moments or [ms],
                  _spin_rate(model))
    return result


def _summary_line(result) -> str:
    if result is None:
        return "completed: no solver section, initial data only"
    if result.detection is not None:
        ev = result.detection
        return (f"detected: {ev.trigger} at t={format_float(ev.time)} "
                f"after {result.steps} steps")
    last = result.snapshots[-1].time
    return f"completed: t={format_float(last)} after {result.steps} steps"


def _sweep_task(payload):
    """One sweep point, run in a worker process."""
    (text, source, section, key, value, action, outdir, cells,
     seed) = payload
    param = f"{section}.{key}"
    try:
        return _sweep_point(text, source, section, key, value, action,
                            outdir, cells, seed, param)
    except BlowupWatchError as exc:
        raise type(exc)(f"sweep point {param}={value}: {exc}") from None


def _sweep_point(text, source, section, key, value, action, outdir, cells,
                 seed, param):
    doc = _Doc(text, source)
    doc.override(section, key, value)
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    if action == "criteria":
        reports, inputs = _do_criteria(doc, out, cells, seed)
        keys = sorted(inputs)
        header = ",".join([param] + report_csv_header(keys))
        rows = [",".join([value] + report_csv_row(rep, inputs, keys))
                for rep in reports]
    elif action == "moments":
        _do_moments(doc, out, cells, seed)
        written = (out / "moments.csv").read_text(encoding="ascii")
        head, row = written.splitlines()[:2]
        header = f"{param},{head}"
        rows = [f"{value},{row}"]
    else:
        result = _do_simulate(doc, out, cells, seed)
        header = f"{param},steps,trigger,time"
        if result is None or result.detection is None:
            steps = 0 if result is None else result.steps
            rows = [f"{value},{steps},none,none"]
        else:
            ev = result.detection
            rows = [f"{value},{result.steps},{ev.trigger},"
                    f"{format_float(ev.time)}"]
    return header, rows


def _do_sweep(doc: _Doc, out: Path, cells: int | None, seed: int):
    action = doc.get("sweep", "action", default="criteria")
    if action not in ("moments", "criteria", "simulate"):
        raise ScenarioError(f"{doc.where('sweep', 'action')}: unknown sweep "
                            f"action {action!r}")
    target = doc.get("sweep", "parameter")
    if "." not in target:
        raise ScenarioError(f"{doc.where('sweep', 'parameter')}: expected "
                            "section.key, got " + repr(target))
    section, key = target.split(".", 1)
    values = doc.get("sweep", "values", _parse_floats)
    name = doc.get("scenario", "name", default="point")
    workers = doc.get("sweep", "workers", int,
                      default=min(len(values), os.cpu_count() or 1))
    payloads = [(doc.text, doc.source, section, key, format_float(v),
                 action, str(out / f"{name}-{k:03d}"), cells, seed)
                for k, v in enumerate(values)]
    if workers <= 1:
        outcomes = [_sweep_task(p) for p in payloads]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_sweep_task, payloads))
    with open(out / f"{action}.csv", "w", encoding="ascii") as fh:
        fh.write(outcomes[0][0] + "\n")
        for _, rows in outcomes:
            for row in rows:
                fh.write(row + "\n")
    return len(values)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blowup-watch",
        description="scenario-driven blow-up diagnostics for compressible "
                    "flow")
    subs = parser.add_subparsers(dest="command", required=True)
    helps = {
        "moments": "integral diagnostics of the initial data",
        "criteria": "evaluate the requested blow-up criteria",
        "affine": "integrate the self-stretching family",
        "vortex": "build the stationary vortex and its residuals",
        "simulate": "full pipeline: moments, criteria, time marching",
        "sweep": "fan one parameter across worker processes",
    }
    for name, text in helps.items():
        sub = subs.add_parser(name, help=text)
        sub.add_argument("--scenario", required=True,
                         help="scenario file (INI)")
        sub.add_argument("--out", required=True,
                         help="output directory, created if missing")
        sub.add_argument("--grid", type=int, default=None,
                         help="override the cell count per axis")
        sub.add_argument("--seed", type=int, default=0,
                         help="seed for randomized initial data")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        doc = _Doc.load(args.scenario)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "moments":
            _do_moments(doc, out, args.grid, args.seed)
            print(f"wrote moments for scenario "
                  f"{doc.get('scenario', 'name', default='(unnamed)')}")
        elif args.command == "criteria":
            reports, _ = _do_criteria(doc, out, args.grid, args.seed)
            hits = sum(1 for rep in reports if rep.satisfied)
            print(f"evaluated {len(reports)} criteria, {hits} satisfied")
        elif args.command == "affine":
            traj = _do_affine(doc, out)
            print(f"integrated {len(traj.times) - 1} steps, error "
                  f"estimate {format_float(traj.error_estimate)}")
        elif args.command == "vortex":
            residual = _do_vortex(doc, out, args.grid)
            worst = max(residual.values())
            print(f"stationarity residual {format_float(worst)}")
        elif args.command == "simulate":
            print(_summary_line(_do_simulate(doc, out, args.grid,
                                             args.seed)))
        else:
            count = _do_sweep(doc, out, args.grid, args.seed)
            print(f"swept {count} parameter values")
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return 2
    except BlowupWatchError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
