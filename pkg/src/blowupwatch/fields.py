"""Gridded compressible-flow states and the model data they evolve under.

A state is a cell-centered sample of (rho, V, P) on a uniform box grid
symmetric about the origin.  The box must contain the origin in its
interior because every diagnostic in this package weights fields by
|x|^2.  Entropy is a derived quantity, only defined where the density
sits above a vacuum floor.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import DomainError, DegenerateData, NonconformingArrays

# Density below this is treated as vacuum when evaluating entropy.
VACUUM_FLOOR = 1e-30


@dataclasses.dataclass(frozen=True)
class Grid:
    """Uniform cell-centered grid on the box [-halfwidth, halfwidth]^ndim.

    Cell centers along an axis with N cells and halfwidth R sit at
    -R + (i + 1/2) * (2R / N); an even N keeps the origin off the cell
    centers, which the |x|^-2 weighted functionals appreciate.
    """

    ndim: int
    cells: tuple[int, ...]
    halfwidth: tuple[float, ...]

    def __post_init__(self):
        if self.ndim not in (1, 2, 3):
            raise DomainError(f"ndim must be 1, 2 or 3, got {self.ndim}")
        cells = tuple(int(c) for c in self.cells)
        halfwidth = tuple(float(r) for r in self.halfwidth)
        if len(cells) != self.ndim or len(halfwidth) != self.ndim:
            raise NonconformingArrays(
                f"expected {self.ndim} per-axis entries, got cells={cells}, "
                f"halfwidth={halfwidth}")
        if any(c < 4 for c in cells):
            raise DomainError(f"need at least 4 cells per axis, got {cells}")
        if any(not (r > 0 and math.isfinite(r)) for r in halfwidth):
            raise DomainError(f"halfwidths must be positive, got {halfwidth}")
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "halfwidth", halfwidth)

    @classmethod
    def regular(cls, ndim: int, cells, halfwidth) -> "Grid":
        """Build a grid, broadcasting scalar cells/halfwidth over axes."""
        if np.isscalar(cells):
            cells = (int(cells),) * ndim
        if np.isscalar(halfwidth):
            halfwidth = (float(halfwidth),) * ndim
        return cls(ndim, tuple(cells), tuple(halfwidth))

    @property
    def spacing(self) -> tuple[float, ...]:
        return tuple(2.0 * r / c for r, c in zip(self.halfwidth, self.cells))

    @property
    def cell_volume(self) -> float:
        return math.prod(self.spacing)

    def axis_centers(self, axis: int) -> np.ndarray:
        n = self.cells[axis]
        r = self.halfwidth[axis]
        h = 2.0 * r / n
        return -r + h * (np.arange(n) + 0.5)

    def centers(self) -> tuple[np.ndarray, ...]:
        """Cell-center coordinate arrays, each of shape ``cells``."""
        axes = [self.axis_centers(a) for a in range(self.ndim)]
        return tuple(np.meshgrid(*axes, indexing="ij")) if self.ndim > 1 \
            else (axes[0],)

    def radius_squared(self) -> np.ndarray:
        xs = self.centers()
        out = xs[0] ** 2
        for x in xs[1:]:
            out = out + x ** 2
        return out


@dataclasses.dataclass(frozen=True)
class ForceSpec:
    """Right-hand-side force configuration.

    kind is one of "none", "friction", "coriolis", "viscosity",
    "composite".  Friction keeps both the bound used by the criteria
    (the sup of |rate| the theory sees) and the constant rate the solver
    actually applies; they coincide by default.
    """

    kind: str = "none"
    friction_bound: float = 0.0
    friction_rate: float = 0.0
    coriolis_rate: float = 0.0
    shear_viscosity: float = 0.0
    bulk_viscosity: float = 0.0
    parts: tuple["ForceSpec", ...] = ()

    _KINDS = ("none", "friction", "coriolis", "viscosity", "composite")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise DomainError(f"unknown force kind {self.kind!r}")
        if self.kind == "friction":
            if self.friction_bound < 0:
                raise DomainError("friction bound must be >= 0")
            if abs(self.friction_rate) > self.friction_bound * (1 + 1e-12):
                raise DomainError("friction rate exceeds its stated bound")
        if self.kind == "viscosity" and self.shear_viscosity < 0:
            raise DomainError("shear viscosity must be >= 0")
        if self.kind == "composite":
            if not self.parts:
                raise DomainError("composite force needs at least one part")
            if any(p.kind == "composite" for p in self.parts):
                raise DomainError("composite forces do not nest")

    @classmethod
    def none(cls) -> "ForceSpec":
        return cls("none")

    @classmethod
    def friction(cls, bound: float, rate: float | None = None) -> "ForceSpec":
        rate = bound if rate is None else rate
        return cls("friction", friction_bound=float(bound),
                   friction_rate=float(rate))

    @classmethod
    def coriolis(cls, rate: float) -> "ForceSpec":
        return cls("coriolis", coriolis_rate=float(rate))

    @classmethod
    def viscosity(cls, shear: float, bulk: float = 0.0) -> "ForceSpec":
        return cls("viscosity", shear_viscosity=float(shear),
                   bulk_viscosity=float(bulk))

    @classmethod
    def composite(cls, *parts: "ForceSpec") -> "ForceSpec":
        return cls("composite", parts=tuple(parts))

    def flattened(self) -> tuple["ForceSpec", ...]:
        """Primitive (non-composite) parts, "none" entries dropped."""
        if self.kind == "composite":
            return tuple(p for p in self.parts if p.kind != "none")
        return () if self.kind == "none" else (self,)


@dataclasses.dataclass(frozen=True)
class GasModel:
    """Adiabatic exponent, space dimension, and force configuration."""

    gamma: float
    ndim: int
    force: ForceSpec = dataclasses.field(default_factory=ForceSpec.none)

    def __post_init__(self):
        if not self.gamma > 1:
            raise DomainError(f"adiabatic exponent must exceed 1, "
                              f"got {self.gamma}")
        if self.ndim not in (1, 2, 3):
            raise DomainError(f"ndim must be 1, 2 or 3, got {self.ndim}")
        for part in self.force.flattened():
            if part.kind == "viscosity":
                mu, lam = part.shear_viscosity, part.bulk_viscosity
                if lam + 2.0 * mu / self.ndim < 0:
                    raise DomainError(
                        "viscosity coefficients violate "
                        f"lambda + 2*mu/n >= 0 (mu={mu}, lambda={lam}, "
                        f"n={self.ndim})")
            if part.kind == "coriolis" and self.ndim != 2:
                raise DomainError("rotation forcing is two-dimensional only")


def _conforming(name: str, arr, shape) -> np.ndarray:
    out = np.asarray(arr, dtype=float)
    if out.shape != shape:
        raise NonconformingArrays(
            f"{name} has shape {out.shape}, grid expects {shape}")
    return out


@dataclasses.dataclass(frozen=True)
class FluidState:
    """One snapshot of (rho, V, P) on a grid at a given time."""

    grid: Grid
    time: float
    rho: np.ndarray
    vel: tuple[np.ndarray, ...]
    pres: np.ndarray

    def __post_init__(self):
        shape = tuple(self.grid.cells)
        rho = _conforming("rho", self.rho, shape)
        pres = _conforming("pres", self.pres, shape)
        if len(self.vel) != self.grid.ndim:
            raise NonconformingArrays(
                f"expected {self.grid.ndim} velocity components, "
                f"got {len(self.vel)}")
        vel = tuple(_conforming(f"vel[{i}]", v, shape)
                    for i, v in enumerate(self.vel))
        for name, arr in (("rho", rho), ("pres", pres)) + tuple(
                (f"vel[{i}]", v) for i, v in enumerate(vel)):
            if not np.all(np.isfinite(arr)):
                raise NonconformingArrays(f"{name} contains non-finite values")
        if np.any(rho < 0):
            raise DomainError("density must be nonnegative")
        if np.any(pres < 0):
            raise DomainError("pressure must be nonnegative")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "vel", vel)
        object.__setattr__(self, "pres", pres)

    def speed_squared(self) -> np.ndarray:
        out = self.vel[0] ** 2
        for v in self.vel[1:]:
            out = out + v ** 2
        return out

    def entropy(self, gamma: float, floor: float = VACUUM_FLOOR) -> np.ndarray:
        """log(P / rho^gamma) where rho > floor, NaN in vacuum cells.

        Cells with positive density but zero pressure get -inf, the
        correct degenerate value for a pressureless region.
        """
        out = np.full(self.rho.shape, np.nan)
        mask = self.rho > floor
        with np.errstate(divide="ignore"):
            out[mask] = np.log(self.pres[mask]) \
                - gamma * np.log(self.rho[mask])
        return out

    def min_entropy(self, gamma: float, floor: float = VACUUM_FLOOR) -> float:
        """Minimum entropy over non-vacuum cells (-inf if pressureless)."""
        mask = self.rho > floor
        if not np.any(mask):
            raise DegenerateData("state is vacuum everywhere above the floor")
        with np.errstate(divide="ignore"):
            vals = np.log(self.pres[mask]) - gamma * np.log(self.rho[mask])
        return float(vals.min())
