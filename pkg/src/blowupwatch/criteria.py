"""Sufficient singularity criteria evaluated from moment diagnostics.

Each check consumes an initial-time MomentSet (plus model constants)
and returns a CriterionReport: the evaluated inequality, a verdict,
and, when the criterion carries one, an upper bound on the smooth
lifetime.  The checks are sufficient conditions only; a false verdict
never certifies global existence.

Boundary handling: verdicts printed with a non-strict inequality
accept a relative slack of 1e-12 so that data sitting exactly on the
threshold (a meaningful configuration, not an edge case) is not
rejected for round-off reasons.  Cotangent arguments are clamped away
from the pole at pi by 1e-9 with a report note.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import (DegenerateData, DomainError, EtaNegative,
                     PsiStarOutOfRange, ThetaNegative)
from .moments import InequalityCheck, MomentSet
from .snapshots import format_float

BOUNDARY_RTOL = 1e-12
_COT_GUARD = 1e-9
_BISECT_TOL = 1e-10
_BISECT_MAX = 300


@dataclasses.dataclass(frozen=True)
class CheminConstant:
    """Lower-bound constant for internal energy against inertia growth.

    bound_constant is the printed closed form; shape_factor is the
    gamma- and dimension-dependent coefficient inside it.  degenerate
    marks the zero-mass limit where the bound collapses to zero.
    """

    gamma: float
    ndim: int
    mass: float
    entropy_min: float
    shape_factor: float
    bound_constant: float
    degenerate: bool


def chemin_constant(gamma: float, ndim: int, mass: float,
                    entropy_min: float) -> CheminConstant:
    """Internal-energy floor constant from mass and minimum entropy."""
    if gamma <= 1.0:
        raise DomainError(f"adiabatic exponent must exceed 1, got {gamma}")
    if ndim not in (1, 2, 3):
        raise DomainError(f"dimension must be 1, 2 or 3, got {ndim}")
    if mass < 0.0:
        raise DomainError(f"mass must be nonnegative, got {mass}")
    d = (ndim + 2) * gamma - ndim
    base = 2.0 * gamma / (ndim * (gamma - 1.0))
    shape = base ** (ndim * (gamma - 1.0) / d) + base ** (-2.0 * gamma / d)
    if mass == 0.0:
        value = 0.0
    else:
        value = (math.exp(entropy_min) / (gamma - 1.0)
                 * (mass / shape) ** (d / 2.0))
    return CheminConstant(gamma=gamma, ndim=ndim, mass=mass,
                          entropy_min=entropy_min, shape_factor=shape,
                          bound_constant=value, degenerate=(mass == 0.0))


@dataclasses.dataclass(frozen=True)
class CriterionReport:
    """Verdict of one sufficient criterion.

    margin is arranged so that positive means satisfied; t_star, when
    present, is the predicted upper bound on the smooth lifetime.
    """

    tag: str
    satisfied: bool
    lhs: float
    rhs: float
    margin: float
    t_star: float | None
    notes: tuple[str, ...] = ()


@dataclasses.dataclass(frozen=True)
class ThresholdInfo:
    """Pieces of the initial-rate threshold shared by several checks."""

    restraint: float
    restraint_lower: float
    restraint_upper: float
    rate_cap: float
    rhs: float
    clamped: bool


def _require_initial(ms: MomentSet, cc: CheminConstant) -> None:
    if cc.gamma != ms.gamma or cc.ndim != ms.ndim:
        raise DomainError(
            "constant was built for (gamma={}, n={}) but moments carry "
            "(gamma={}, n={})".format(cc.gamma, cc.ndim, ms.gamma, ms.ndim))
    if ms.total_energy <= 0.0 or ms.inertia <= 0.0:
        raise DegenerateData(
            "criterion needs positive energy and inertia, got "
            f"E={ms.total_energy}, G={ms.inertia}")


def _restraint(ms: MomentSet, cc: CheminConstant) -> float:
    """Combined pressure-floor and angular-momentum scale."""
    gamma, n = ms.gamma, ms.ndim
    power = 1.0 - (gamma - 1.0) * n / 2.0
    sq = (2.0 * n * (gamma - 1.0) * cc.bound_constant * ms.inertia ** power
          + ms.angular_norm ** 2)
    return math.sqrt(sq)


def rate_threshold(ms: MomentSet, cc: CheminConstant) -> ThresholdInfo:
    """Threshold the initial inertia rate must reach for blow-up.

    For steep adiabatic exponents (gamma > 1 + 2/n) the two restraint
    scales inside the cotangent split; below that they coincide.
    """
    _require_initial(ms, cc)
    gamma, n = ms.gamma, ms.ndim
    restraint = _restraint(ms, cc)
    if gamma <= 1.0 + 2.0 / n:
        lower = upper = restraint
    else:
        lower = restraint / ((gamma - 1.0) * n - 1.0)
        upper = restraint
    cap = 2.0 * math.sqrt(ms.total_energy * ms.inertia)
    clamped = False
    if restraint == 0.0:
        rhs = cap
    else:
        arg = lower / cap
        if arg >= math.pi - _COT_GUARD:
            arg = math.pi - _COT_GUARD
            clamped = True
        rhs = upper / math.tan(arg)
    return ThresholdInfo(restraint=restraint, restraint_lower=lower,
                         restraint_upper=upper, rate_cap=cap, rhs=rhs,
                         clamped=clamped)


def _boundary_ok(lhs: float, rhs: float, *scales: float) -> bool:
    scale = max(abs(lhs), abs(rhs), *(abs(s) for s in scales))
    return lhs - rhs >= -BOUNDARY_RTOL * scale


def theorem21_check(ms: MomentSet, cc: CheminConstant) -> CriterionReport:
    """Main sufficient condition on the initial inertia rate."""
    info = rate_threshold(ms, cc)
    notes = []
    if info.clamped:
        notes.append("cotangent argument clamped below its pole")
    f0 = ms.inertia_rate
    satisfied = _boundary_ok(f0, info.rhs, info.rate_cap)
    t_star = None
    if satisfied:
        t_star, t_notes = _lifetime_bound(ms, info)
        notes.extend(t_notes)
    return CriterionReport(tag="T2.1", satisfied=satisfied, lhs=f0,
                           rhs=info.rhs, margin=f0 - info.rhs,
                           t_star=t_star, notes=tuple(notes))


def _lifetime_bound(ms: MomentSet, info: ThresholdInfo):
    """Upper bound on the smooth lifetime once the threshold is met."""
    f0, g, e = ms.inertia_rate, ms.inertia, ms.total_energy
    if info.restraint == 0.0:
        denom = f0 - info.rate_cap
        if denom > 0.0:
            return 2.0 * g / denom, ()
        return None, ("lifetime bound degenerates at the threshold",)
    q = (info.rate_cap / info.restraint_upper
         * (math.pi / 2.0 - math.atan(f0 / info.restraint_lower)))
    if q >= 1.0:
        return None, ("lifetime bound denominator not positive",)
    return math.sqrt(g / e) * q / (1.0 - q), ()


@dataclasses.dataclass(frozen=True)
class DiagnosticsReport:
    """Advisory necessary-side diagnostics (never a verdict).

    kinetic_scale and internal_scale are the two dimensionless groups
    entering the reachability function; checks list the printed
    necessary conditions as evaluated inequalities.
    """

    kinetic_scale: float | None
    internal_scale: float | None
    reach_value: float | None
    checks: tuple[InequalityCheck, ...]
    unreachable: bool
    notes: tuple[str, ...]


def necessary_diagnostics(ms: MomentSet,
                          cc: CheminConstant) -> DiagnosticsReport:
    """Advisory obstructions to the main criterion."""
    _require_initial(ms, cc)
    ek, ep, e, g = (ms.kinetic_energy, ms.internal_energy,
                    ms.total_energy, ms.inertia)
    if ep <= 0.0:
        return DiagnosticsReport(
            kinetic_scale=None, internal_scale=None, reach_value=None,
            checks=(), unreachable=False,
            notes=("pressureless data: diagnostics void",))
    restraint = _restraint(ms, cc)
    notes = []
    if restraint == 0.0:
        z = z1 = reach = None
        notes.append("restraint scale vanished; reachability scales "
                     "undefined")
    else:
        z = 2.0 * math.sqrt(ek * g) / restraint
        z1 = 2.0 * math.sqrt(ep * g) / restraint
        reach = math.atan2(1.0, z) - 1.0 / math.hypot(z, z1)
    cot1 = 1.0 / math.tan(1.0)
    quarter_pi_sq = math.pi ** 2 / 4.0
    rate_floor = 2.0 * math.sqrt(e * g) * cot1
    f0 = ms.inertia_rate
    checks = (
        InequalityCheck("kinetic-internal-ratio", ek / ep, quarter_pi_sq,
                        ek / ep >= quarter_pi_sq, ek / ep - quarter_pi_sq),
        InequalityCheck("kinetic-share", ek / e, cot1,
                        ek / e >= cot1, ek / e - cot1),
        InequalityCheck("rate-floor", f0, rate_floor,
                        f0 >= rate_floor, f0 - rate_floor),
    )
    spin_floor = 1e-10 * 2.0 * math.sqrt(max(g * ek, 0.0))
    unreachable = ms.angular_norm <= spin_floor
    if unreachable:
        notes.append("no angular momentum with positive internal energy: "
                     "rate threshold unreachable")
    return DiagnosticsReport(kinetic_scale=z, internal_scale=z1,
                             reach_value=reach, checks=checks,
                             unreachable=unreachable, notes=tuple(notes))


@dataclasses.dataclass(frozen=True)
class SiderisSetup:
    """Inputs for the compact-support perturbation criteria.

    The support of the perturbation is assumed to obey
    radius(t) < growth_constant * (1+t)^growth_exponent; density_max
    bounds the initial density; weighted_mass_excess is the
    entropy-weighted excess over the background (must be >= 0, an
    input rather than a derived quantity).
    """

    ndim: int
    growth_exponent: float
    growth_constant: float
    support_radius: float
    density_max: float
    weighted_mass_excess: float
    angular_momentum_norm: float
    inertia_rate: float

    def __post_init__(self):
        if self.ndim not in (1, 2, 3):
            raise DomainError(f"dimension must be 1, 2 or 3, got {self.ndim}")
        if self.growth_constant <= 0.0 or self.density_max <= 0.0:
            raise DomainError("growth constant and density bound must be "
                              "positive")
        if self.weighted_mass_excess < 0.0:
            raise EtaNegative(
                "weighted mass excess must be nonnegative, got "
                f"{self.weighted_mass_excess}")

    @property
    def ball_volume(self) -> float:
        """Volume of the unit ball in ndim dimensions."""
        return math.pi ** (self.ndim / 2.0) / math.gamma(self.ndim / 2.0
                                                         + 1.0)

    @property
    def amplitude(self) -> float:
        """Density bound times the grown support volume scale."""
        return (self.density_max * self.ball_volume
                * self.growth_constant ** (2 + self.ndim))


def angular_threshold(momentum_norm: float, base: float) -> float:
    """Cotangent-weighted threshold, continuous at zero momentum."""
    if momentum_norm == 0.0:
        return base
    return momentum_norm / math.tan(momentum_norm / base)


def sideris_check(setup: SiderisSetup) -> list[CriterionReport]:
    """The five compact-support growth criteria, evaluated verbatim."""
    n = setup.ndim
    alpha = setup.growth_exponent
    a_val = setup.amplitude
    f0 = setup.inertia_rate
    m_norm = setup.angular_momentum_norm
    slow = alpha <= 1.0 / (2 + n)
    thr = (alpha * (2 + n) - 1.0) * a_val
    m_zero = m_norm <= 1e-12 * max(abs(f0), a_val)
    branch_note = () if slow else (
        "support growth too fast for the slow branch",)
    fast_note = () if not slow else (
        "support growth within the slow branch",)

    reports = [
        CriterionReport(tag="T3.1a",
                        satisfied=slow and m_zero and f0 > 0.0,
                        lhs=f0, rhs=0.0, margin=f0, t_star=None,
                        notes=branch_note),
        CriterionReport(tag="T3.1b",
                        satisfied=slow and not m_zero,
                        lhs=m_norm, rhs=0.0, margin=m_norm, t_star=None,
                        notes=branch_note),
    ]
    # fast-growth family: thresholds are positive multiples of amplitude
    notes_c = fast_note
    reports.append(CriterionReport(
        tag="T3.1c", satisfied=(not slow) and f0 > thr,
        lhs=f0, rhs=thr, margin=f0 - thr, t_star=None, notes=notes_c))

    pole_note = ()
    if not slow and m_norm > 0.0 and abs(math.sin(m_norm / thr)) < 1e-12:
        ang = math.inf
        pole_note = ("angular threshold at a cotangent pole",)
        d_ok = False
    else:
        ang = angular_threshold(m_norm, thr) if not slow else math.inf
        d_ok = (not slow) and m_norm >= math.pi * thr and f0 > ang
    reports.append(CriterionReport(
        tag="T3.1d", satisfied=d_ok, lhs=f0, rhs=ang,
        margin=f0 - ang if math.isfinite(ang) else -math.inf, t_star=None,
        notes=fast_note + pole_note))
    reports.append(CriterionReport(
        tag="T3.1e", satisfied=(not slow) and m_norm >= math.pi * thr,
        lhs=m_norm, rhs=math.pi * thr if not slow else math.inf,
        margin=(m_norm - math.pi * thr) if not slow else -math.inf,
        t_star=None, notes=fast_note))
    return reports


def _damping_window(ms: MomentSet, restraint: float, mu0: float,
                    psi_star: float):
    """First time the decay envelope falls to psi_star squared."""
    if mu0 == 0.0:
        return math.inf
    if restraint == 0.0:
        return 0.0
    e0, g0 = ms.total_energy, ms.inertia
    m0 = ms.angular_norm
    n = ms.ndim
    se, sg = math.sqrt(e0), math.sqrt(g0)

    def envelope(t: float) -> float:
        beta = se * t + sg
        return 1.0 - (4.0 * mu0 * se * beta ** 3
                      + n * e0 * mu0 ** 2 * t ** 2
                      * (se * t + 2.0 * sg) ** 2
                      + 2.0 * mu0 * math.sqrt(n) * m0 * se * t
                      * (se * t + 2.0 * sg)) / restraint ** 2

    target = psi_star ** 2
    if envelope(0.0) <= target:
        return 0.0
    hi = 1.0
    while envelope(hi) > target:
        hi *= 2.0
        if hi > 1e300:
            return math.inf
    lo = 0.0
    for _ in range(_BISECT_MAX):
        mid = 0.5 * (lo + hi)
        if envelope(mid) > target:
            lo = mid
        else:
            hi = mid
        if hi - lo < _BISECT_TOL:
            break
    return 0.5 * (lo + hi)


def _damped_lifetime(ms: MomentSet, scaled: float):
    """Positive root of the damped threshold phase equation."""
    f0, e0, g0 = ms.inertia_rate, ms.total_energy, ms.inertia
    se, sg = math.sqrt(e0), math.sqrt(g0)
    if scaled == 0.0:
        denom = f0 - 2.0 * math.sqrt(e0 * g0)
        return (2.0 * g0 / denom) if denom > 0.0 else math.inf

    def phase(t: float) -> float:
        beta = se * t + sg
        return (math.atan(f0 / scaled)
                + scaled / (2.0 * se) * (1.0 / sg - 1.0 / beta)
                - math.pi / 2.0)

    if phase(0.0) >= 0.0:
        return 0.0
    limit = math.atan(f0 / scaled) + scaled / (2.0 * se * sg) - math.pi / 2.0
    if limit <= 0.0:
        return math.inf
    hi = 1.0
    while phase(hi) < 0.0:
        hi *= 2.0
        if hi > 1e300:
            return math.inf
    lo = 0.0
    for _ in range(_BISECT_MAX):
        mid = 0.5 * (lo + hi)
        if phase(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < _BISECT_TOL:
            break
    return 0.5 * (lo + hi)


def damped_check(ms: MomentSet, cc: CheminConstant, friction_bound: float,
                 psi_star: float = 0.9) -> CriterionReport:
    """Sufficient condition under bounded friction.

    friction_bound is the supremum of the (possibly time-dependent)
    friction coefficient; psi_star is the free decay-envelope knob in
    (0, 1).  The criterion asks the threshold inequality to hold with
    the restraint shrunk by psi_star, and the envelope to stay above
    psi_star^2 past the predicted lifetime bound.
    """
    if not 0.0 < psi_star < 1.0:
        raise PsiStarOutOfRange(
            f"envelope knob must lie in (0, 1), got {psi_star}")
    if friction_bound < 0.0:
        raise DomainError(
            f"friction bound must be nonnegative, got {friction_bound}")
    _require_initial(ms, cc)
    gamma, n = ms.gamma, ms.ndim
    restraint = _restraint(ms, cc)
    notes = []
    if gamma > 1.0 + 2.0 / n:
        notes.append("threshold applied beyond its printed range of "
                     "adiabatic exponents")
    scaled = restraint * psi_star
    cap = 2.0 * math.sqrt(ms.total_energy * ms.inertia)
    if scaled == 0.0:
        rhs = cap
    else:
        arg = scaled / cap
        if arg >= math.pi - _COT_GUARD:
            arg = math.pi - _COT_GUARD
            notes.append("cotangent argument clamped below its pole")
        rhs = scaled / math.tan(arg)
    f0 = ms.inertia_rate
    threshold_ok = _boundary_ok(f0, rhs, cap)
    t_star = None
    satisfied = False
    if threshold_ok:
        t_star = _damped_lifetime(ms, scaled)
        window = _damping_window(ms, restraint, friction_bound, psi_star)
        if math.isinf(t_star):
            notes.append("bound attained only in the limit")
            satisfied = math.isinf(window)
        else:
            satisfied = window > t_star
        if math.isinf(window):
            notes.append("no friction: decay window unbounded")
        else:
            notes.append("decay window closes at t=" + format_float(window))
    return CriterionReport(tag="T4.1", satisfied=satisfied, lhs=f0,
                           rhs=rhs, margin=f0 - rhs,
                           t_star=(None if t_star is None
                                   or math.isinf(t_star) else t_star),
                           notes=tuple(notes))


@dataclasses.dataclass(frozen=True)
class RotationBounds:
    """Derived bounds for constant-rotation flows in the plane."""

    coriolis: float
    invariant_moment: float
    drive: float
    inertia_lower: float
    inertia_upper: float
    pressure_offset: float
    discriminant: float


def rotation_check(ms: MomentSet, cc: CheminConstant, coriolis: float
                   ) -> tuple[RotationBounds, CriterionReport,
                              CriterionReport]:
    """Blow-up criteria for rotating planar flow.

    Returns the derived bounds plus one report per printed condition:
    a positive-discriminant branch and a rate-dominated branch.  Only
    one of the two can be satisfied for given data.
    """
    _require_initial(ms, cc)
    if ms.ndim != 2:
        raise DomainError("rotation criteria require two dimensions")
    if coriolis == 0.0:
        raise DomainError("rotation rate must be nonzero")
    if ms.rotational_moment is None:
        raise DomainError("moments lack the rotational component")
    gamma, n = ms.gamma, ms.ndim
    e0, g0, f0 = ms.total_energy, ms.inertia, ms.inertia_rate
    l = coriolis
    invariant = l * g0 + ms.rotational_moment
    drive = 2.0 * e0 + l * invariant
    if drive < 0.0:
        raise ThetaNegative(
            f"rotation drive 2E+l*moment = {drive} is negative; "
            "inconsistent inputs")
    c_val = cc.bound_constant
    g_minus = (c_val / e0) ** (1.0 / (gamma - 1.0))
    g_plus = (math.sqrt(drive) + math.sqrt(2.0 * e0)) ** 2 / l ** 2
    power = 1.0 - (gamma - 1.0) * n / 2.0
    if gamma <= 1.0 + 2.0 / n:
        offset = c_val * g_minus ** power
    else:
        offset = c_val * g_plus ** power
    disc = invariant ** 2 - l ** 2 * g_plus ** 2 + offset

    notes = []
    if c_val == 0.0:
        notes.append("pressure floor absent: lower inertia bound "
                     "degenerates to zero")
    elif g_minus > g0:
        notes.append("lower inertia bound exceeds the initial inertia; "
                     "the bound constant overshoots on this data")
    if gamma > 2.0:
        notes.append("upper inertia bound applied beyond its printed "
                     "range of adiabatic exponents")
    bounds = RotationBounds(coriolis=l, invariant_moment=invariant,
                            drive=drive, inertia_lower=g_minus,
                            inertia_upper=g_plus, pressure_offset=offset,
                            discriminant=disc)

    t53 = _rotation_lifetime(f0, disc, g_plus) if disc > 0.0 else None
    rep53 = CriterionReport(tag="T5.1-53", satisfied=disc > 0.0,
                            lhs=disc, rhs=0.0, margin=disc,
                            t_star=t53, notes=tuple(notes))
    k_neg = math.sqrt(max(-disc, 0.0))
    ok54 = disc <= 0.0 and f0 > k_neg
    t54 = _rotation_lifetime(f0, disc, g_plus) if ok54 else None
    notes54 = tuple(notes)
    if disc > 0.0:
        notes54 += ("discriminant positive: companion criterion applies",)
    rep54 = CriterionReport(tag="T5.1-54", satisfied=ok54, lhs=f0,
                            rhs=k_neg, margin=f0 - k_neg, t_star=t54,
                            notes=notes54)
    return bounds, rep53, rep54


def _rotation_lifetime(f0: float, disc: float, g_plus: float) -> float:
    """Blow-up bound from the rate inequality dF/dt >= (F^2+D)/(2 G+).

    Integrating that Riccati bound in closed form from F(0) gives the
    time at which F must leave every bounded interval.
    """
    if disc > 0.0:
        root = math.sqrt(disc)
        return 2.0 * g_plus / root * (math.pi / 2.0 - math.atan(f0 / root))
    if disc < 0.0:
        k = math.sqrt(-disc)
        return g_plus / k * math.log((f0 + k) / (f0 - k))
    return 2.0 * g_plus / f0


def pressureless_rotation_pointwise(grid, vel, coriolis: float
                                    ) -> tuple[CriterionReport, np.ndarray]:
    """Pointwise smoothness test for rotating dust.

    Evaluates 2*l*curl + (eigenvalue gap)^2 < l^2 cell by cell from
    finite differences of the velocity; the report's verdict is the
    global one, the returned mask marks cells that pass individually.
    """
    if grid.ndim != 2:
        raise DomainError("pointwise rotation test requires two dimensions")
    if coriolis == 0.0:
        raise DomainError("rotation rate must be nonzero")
    v1 = np.asarray(vel[0], dtype=float)
    v2 = np.asarray(vel[1], dtype=float)
    h1, h2 = grid.spacing
    d1v1, d2v1 = np.gradient(v1, h1, h2)
    d1v2, d2v2 = np.gradient(v2, h1, h2)
    curl = d1v2 - d2v1
    trace = d1v1 + d2v2
    det = d1v1 * d2v2 - d2v1 * d1v2
    gap_sq = trace * trace - 4.0 * det
    field = 2.0 * coriolis * curl + gap_sq
    worst = float(np.max(field))
    lhs = coriolis ** 2
    report = CriterionReport(tag="R5.1", satisfied=lhs > worst, lhs=lhs,
                             rhs=worst, margin=lhs - worst, t_star=None)
    return report, field < lhs


def render_reports_text(reports, inputs=None) -> str:
    """Structured text document: one record per report, inputs echoed."""
    lines = []
    if inputs:
        for key in sorted(inputs):
            lines.append(f"input {key} {_fmt(inputs[key])}")
        lines.append("")
    for rep in reports:
        lines.append(f"criterion {rep.tag}")
        lines.append(f"  satisfied {'yes' if rep.satisfied else 'no'}")
        lines.append(f"  lhs {_fmt(rep.lhs)}")
        lines.append(f"  rhs {_fmt(rep.rhs)}")
        lines.append(f"  margin {_fmt(rep.margin)}")
        lines.append(f"  t_star {_fmt(rep.t_star)}")
        for note in rep.notes:
            lines.append(f"  note {note}")
    return "\n".join(lines) + "\n"


def report_csv_header(input_keys=()) -> list[str]:
    return (["tag", "satisfied", "lhs", "rhs", "margin", "t_star"]
            + list(input_keys))


def report_csv_row(rep: CriterionReport, inputs=None,
                   input_keys=()) -> list[str]:
    """One CSV row per report; inputs echoed so a row stands alone."""
    row = [rep.tag, "yes" if rep.satisfied else "no", _fmt(rep.lhs),
           _fmt(rep.rhs), _fmt(rep.margin), _fmt(rep.t_star)]
    for key in input_keys:
        row.append(_fmt(inputs[key]) if inputs else "")
    return row


def moment_inputs(ms: MomentSet) -> dict:
    """Input echo of the moment values every verdict depends on."""
    out = {
        "time": ms.time, "gamma": ms.gamma, "ndim": ms.ndim,
        "mass": ms.mass, "inertia": ms.inertia,
        "inertia_rate": ms.inertia_rate,
        "kinetic_energy": ms.kinetic_energy,
        "internal_energy": ms.internal_energy,
        "angular_norm": ms.angular_norm,
    }
    if ms.rotational_moment is not None:
        out["rotational_moment"] = ms.rotational_moment
    return out


def _fmt(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (int, np.integer)):
        return str(value)
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format_float(float(value))
