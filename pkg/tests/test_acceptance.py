"""End-to-end acceptance checks, one test per shipped guarantee.

Each test exercises one headline behavior at its stated tolerance and
prints a single verdict line (visible with -v through the test name,
or with -s through the printed summary).  Several tests march the 2D
scheme on fine grids, so this module is the slow part of the suite;
the time-budget assertions below are part of the contract, not hints.
"""

import math
import time
from functools import lru_cache

import numpy as np
from mpmath import mp

from blowupwatch.criteria import (SiderisSetup, angular_threshold,
                                  chemin_constant, damped_check,
                                  rotation_check, sideris_check,
                                  theorem21_check)
from blowupwatch.exact import (AffineParams, VortexParams,
                               affine_entropy_floor, affine_fields,
                               affine_integrate, affine_mass, affine_rebase,
                               affine_reference_state, compatibility_check,
                               theorem22_search, vortex_build, vortex_model)
from blowupwatch.fields import FluidState, ForceSpec, GasModel, Grid
from blowupwatch.moments import (MomentSet, compute_moments, holder_check,
                                 time_series_identities)
from blowupwatch.residuals import steady_residual, transient_residual
from blowupwatch.solver import SolverConfig, run
from conftest import mixture_state


def _verdict(item, label, ok, detail=""):
    line = f"acceptance {item:02d} {label}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


@lru_cache(maxsize=1)
def _moment_bank():
    """200 random Gaussian-mixture states reduced to their moments.

    States are streamed and dropped so the bank stays small; the build
    time is recorded because the identity sweep carries a time budget.
    """
    rng = np.random.default_rng(20260815)
    start = time.perf_counter()
    bank = []
    for _ in range(200):
        cells = int(rng.choice((64, 96, 128, 192, 256)))
        gamma = float(rng.choice((1.4, 5.0 / 3.0, 2.0)))
        state, model = mixture_state(rng, cells=cells, gamma=gamma,
                                     n_blobs=int(rng.integers(2, 5)))
        bank.append(compute_moments(state, model))
    return tuple(bank), time.perf_counter() - start


def test_01_moment_identities_across_random_mixtures():
    bank, elapsed = _moment_bank()
    worst_split = worst_trace = 0.0
    for ms in bank:
        ek2 = 2.0 * ms.kinetic_energy
        worst_split = max(worst_split,
                          abs(ms.radial_kinetic + ms.angular_kinetic - ek2)
                          / ek2)
        trace = ms.ndim * (ms.gamma - 1.0) * ms.internal_energy
        worst_trace = max(worst_trace,
                          abs(ms.pressure_trace - trace) / trace)
    _verdict(1, "kinetic split and pressure trace identities",
             worst_split <= 1e-8 and worst_trace <= 1e-12 and elapsed < 60.0,
             f"split {worst_split:.2e}, trace {worst_trace:.2e}, "
             f"{len(bank)} states in {elapsed:.1f}s")


def test_02_moment_inequalities_and_stretch_equality():
    bank, _ = _moment_bank()
    failures = sum(not chk.satisfied for ms in bank for chk in holder_check(ms))
    # pure stretch V = beta x saturates the rate-energy inequality
    rng = np.random.default_rng(42)
    worst_eq = 0.0
    for beta in (0.3, 1.7, -0.9):
        state, model = mixture_state(rng, cells=96)
        x1, x2 = state.grid.centers()
        stretched = FluidState(grid=state.grid, time=0.0, rho=state.rho,
                               vel=(beta * x1, beta * x2), pres=state.pres)
        ms = compute_moments(stretched, model)
        lhs = ms.inertia_rate ** 2
        rhs = 4.0 * ms.inertia * ms.kinetic_energy
        worst_eq = max(worst_eq, abs(lhs - rhs) / rhs)
    _verdict(2, "moment inequalities hold, stretch data saturate",
             failures == 0 and worst_eq <= 1e-10,
             f"{len(bank) * 4} checks, equality gap {worst_eq:.2e}")


def test_03_energy_floor_constant_matches_high_precision():
    def oracle(gamma, ndim, mass, entropy):
        with mp.workdps(40):
            g, n = mp.mpf(gamma), mp.mpf(ndim)
            d = (n + 2) * g - n
            b = 2 * g / (n * (g - 1))
            shape = b ** (n * (g - 1) / d) + b ** (-2 * g / d)
            value = (mp.e ** mp.mpf(entropy) / (g - 1)
                     * (mp.mpf(mass) / shape) ** (d / 2))
            return float(shape), float(value)

    worst = 0.0
    for gamma in (1.4, 5.0 / 3.0, 2.0):
        for ndim in (1, 2, 3):
            cc = chemin_constant(gamma, ndim, 2.5, -0.3)
            shape_ref, value_ref = oracle(gamma, ndim, 2.5, -0.3)
            worst = max(worst, abs(cc.shape_factor - shape_ref) / shape_ref,
                        abs(cc.bound_constant - value_ref) / value_ref)
    _verdict(3, "floor constant agrees with 40-digit evaluation",
             worst <= 1e-12, f"worst rel {worst:.2e} over 9 pairs")


def test_04_dust_stretch_flow_matches_closed_form():
    dust = AffineParams(ndim=2, gamma=2.0, inertia0=0.25, internal0=0.0,
                        expansion0=0.8, profile_power=3.0)
    traj = affine_integrate(dust, 2.0, 1e-3)
    grow = 1.0 + dust.expansion0 * traj.times
    err_rate = float(np.max(np.abs(traj.expansion
                                   - dust.expansion0 / grow)
                            / (dust.expansion0 / grow)))
    err_inertia = float(np.max(np.abs(traj.inertia()
                                      - dust.inertia0 * grow ** 2)
                               / (dust.inertia0 * grow ** 2)))
    model = GasModel(gamma=dust.gamma, ndim=2)
    res = {}
    for cells in (64, 128, 256):
        grid = Grid.regular(2, cells, 3.0)
        triple = tuple(affine_fields(traj, dust, 1.0 + s, grid)
                       for s in (-1e-4, 0.0, 1e-4))
        res[cells] = max(transient_residual(triple, model).values())
    second_order = res[64] / res[128] > 3.0 and res[128] / res[256] > 3.0
    _verdict(4, "pressureless stretch flow",
             err_rate <= 1e-8 and err_inertia <= 1e-8
             and res[128] < 1e-3 and second_order,
             f"closed form {max(err_rate, err_inertia):.2e}, residual "
             f"{res[128]:.2e} at 128, ratios "
             f"{res[64] / res[128]:.2f}/{res[128] / res[256]:.2f}")


_PRINTED = AffineParams(ndim=2, gamma=2.0, inertia0=math.pi / 4.0,
                        internal0=math.pi, expansion0=1.0, profile_power=2.0)


def test_05_reference_pair_balances_pointwise():
    res = {}
    for cells in (64, 128, 256):
        state = affine_reference_state(_PRINTED, Grid.regular(2, cells, 1.5))
        res[cells] = compatibility_check(state, 1.0 / _PRINTED.inertia0,
                                         _PRINTED.internal0, _PRINTED.gamma)
    second_order = res[64] / res[128] > 3.5 and res[128] / res[256] > 3.5
    _verdict(5, "reference pair satisfies the balance identity",
             res[256] < 1e-3 and second_order,
             f"residual {res[256]:.2e} at 256, ratios "
             f"{res[64] / res[128]:.2f}/{res[128] / res[256]:.2f}")


def test_06_near_threshold_data_integrate_smoothly():
    found = theorem22_search(_PRINTED, 1e-3)
    # the located data must genuinely miss the rate criterion
    g0, a0 = _PRINTED.inertia0, found.expansion0
    ek = a0 * a0 * g0
    ms = MomentSet(ndim=2, time=0.0, gamma=_PRINTED.gamma,
                   mass=affine_mass(_PRINTED), inertia=g0,
                   inertia_rate=2.0 * a0 * g0, rotational_moment=0.0,
                   angular_momentum=(0.0,), kinetic_energy=ek,
                   internal_energy=_PRINTED.internal0,
                   total_energy=ek + _PRINTED.internal0,
                   radial_kinetic=2.0 * ek, angular_kinetic=0.0,
                   pressure_trace=2.0 * (_PRINTED.gamma - 1.0)
                   * _PRINTED.internal0)
    cc = chemin_constant(_PRINTED.gamma, 2, affine_mass(_PRINTED),
                         affine_entropy_floor(_PRINTED))
    missed = not theorem21_check(ms, cc).satisfied

    # escape the violent transient with rate-scaled legs, then stride out
    start = time.perf_counter()
    cur = AffineParams(ndim=2, gamma=_PRINTED.gamma,
                       inertia0=_PRINTED.inertia0,
                       internal0=_PRINTED.internal0, expansion0=a0,
                       profile_power=_PRINTED.profile_power)
    covered, min_g1, max_rate = 0.0, math.inf, 0.0
    while cur.expansion0 > 10.0 and covered < 10.0:
        traj = affine_integrate(cur, 10.0 / cur.expansion0,
                                0.02 / cur.expansion0)
        min_g1 = min(min_g1, float(traj.inverse_inertia.min()))
        max_rate = max(max_rate, float(np.max(np.abs(traj.expansion))))
        covered += float(traj.times[-1])
        cur = affine_rebase(traj, traj.times[-1])
    traj = affine_integrate(cur, 100.0 - covered, 1e-3)
    min_g1 = min(min_g1, float(traj.inverse_inertia.min()))
    max_rate = max(max_rate, float(np.max(np.abs(traj.expansion))))
    wall = time.perf_counter() - start
    _verdict(6, "near-threshold data stay smooth to t=100",
             0.0 < found.deficit < 1e-3 and missed and min_g1 > 0.0
             and max_rate <= found.expansion0 and wall < 10.0,
             f"deficit {found.deficit:.2e} at rate {found.expansion0:g}, "
             f"march {wall:.1f}s, final rate {traj.expansion[-1]:.4f}")


_VORTEX = VortexParams(coriolis=1.0, extent=0.8, gamma=2.0,
                       pressure_constant=1.0)


def test_07_balanced_vortex_stays_put():
    grid = Grid.regular(2, 256, 1.6)
    state = vortex_build(_VORTEX, grid)
    model = vortex_model(_VORTEX)
    steady = max(steady_residual(state, model).values())
    start = time.perf_counter()
    result = run(state, model,
                 SolverConfig(t_end=1.0 / _VORTEX.coriolis, moment_stride=0))
    wall = time.perf_counter() - start
    drift = float(np.sum(np.abs(result.snapshots[-1].rho - state.rho))
                  / np.sum(state.rho))
    _verdict(7, "balanced vortex is stationary",
             steady < 1e-3 and drift < 1e-3 and result.detection is None
             and wall < 300.0,
             f"pointwise {steady:.2e}, density drift {drift:.2e} "
             f"over one rotation time in {wall:.1f}s")


def _spinning_blob(cells):
    # off-center blob with mild shear: every conserved quantity moves
    grid = Grid.regular(2, cells, 8.0)
    x1, x2 = grid.centers()
    rho = np.exp(-((x1 - 2.0) ** 2 + (x2 - 1.0) ** 2))
    env = np.exp(-0.25 * grid.radius_squared())
    vel = ((0.45 * x2 + 0.15 * x1) * env, (-0.35 * x1 + 0.1 * x2) * env)
    return FluidState(grid=grid, time=0.0, rho=rho, vel=vel,
                      pres=0.3 * rho ** 1.4)


def test_08_rotation_invariant_within_conservation_budget():
    spin = GasModel(gamma=1.4, ndim=2, force=ForceSpec.coriolis(0.7))
    free = GasModel(gamma=1.4, ndim=2)
    ratios, swirl = {}, {}
    for cells, dt in ((48, 0.005), (96, 0.0025)):
        state = _spinning_blob(cells)
        forced = run(state, spin, SolverConfig(t_end=0.5, fixed_dt=dt,
                                               moment_stride=1,
                                               tail_tol=1e-3))
        twin = run(state, free, SolverConfig(t_end=0.5, fixed_dt=dt,
                                             moment_stride=0, tail_tol=1e-3))
        # yardstick: the same scheme's angular-momentum drift without
        # forcing, measured against the same normalization
        ratios[cells] = (forced.ledger["invariant_moment"]
                         / twin.ledger["rotational_moment"])
        swirl[cells] = time_series_identities(
            list(forced.moments), spin).swirl_rate_residual
    _verdict(8, "rotation invariant drift vs conservation error",
             max(ratios.values()) < 10.0 and swirl[96] < swirl[48] / 2.5
             and swirl[96] < 2e-3,
             f"drift ratios {ratios[48]:.2f}/{ratios[96]:.2f}, swirl "
             f"residual {swirl[48]:.2e} -> {swirl[96]:.2e}")


def _random_moments(rng):
    """Moment set respecting every quadrature-level inequality."""
    ndim = int(rng.integers(1, 4))
    gamma_cap = {1: 2.6, 2: 2.0, 3: 5.0 / 3.0}[ndim]
    gamma = float(rng.uniform(1.15, gamma_cap))
    g = float(rng.uniform(0.3, 3.0))
    ek = float(rng.uniform(0.05, 4.0))
    ep = float(rng.uniform(0.002, 2.0))
    if ndim == 1:
        i1, i2, m = 2.0 * ek, 0.0, 0.0
    else:
        split = float(rng.uniform(0.0, 1.0))
        i1, i2 = 2.0 * ek * split, 2.0 * ek * (1.0 - split)
        m = float(rng.uniform(-1.0, 1.0)) * math.sqrt(2.0 * g * i2)
    f = float(rng.uniform(-1.0, 1.0)) * math.sqrt(2.0 * g * i1)
    n_ang = {1: 0, 2: 1, 3: 3}[ndim]
    angular = ((m,) + (0.0,) * (n_ang - 1)) if n_ang else ()
    ms = MomentSet(ndim=ndim, time=0.0, gamma=gamma,
                   mass=float(rng.uniform(0.2, 5.0)), inertia=g,
                   inertia_rate=f,
                   rotational_moment=m if ndim == 2 else None,
                   angular_momentum=angular, kinetic_energy=ek,
                   internal_energy=ep, total_energy=ek + ep,
                   radial_kinetic=i1, angular_kinetic=i2,
                   pressure_trace=ndim * (gamma - 1.0) * ep)
    cc = chemin_constant(gamma, ndim, ms.mass, float(rng.uniform(-2.0, 3.0)))
    return ms, cc


def test_09_criterion_variants_consistent():
    # friction-free damped check degenerates to the undamped one
    rng = np.random.default_rng(20260815)
    agreements = satisfied = 0
    for _ in range(100):
        ms, cc = _random_moments(rng)
        undamped = theorem21_check(ms, cc)
        damped = damped_check(ms, cc, 0.0, psi_star=1.0 - 1e-9)
        agreements += undamped.satisfied == damped.satisfied
        satisfied += undamped.satisfied

    # the angular-momentum threshold joins the plain one continuously
    setup = SiderisSetup(ndim=2, growth_exponent=0.5, growth_constant=1.0,
                         support_radius=1.0, density_max=1.0,
                         weighted_mass_excess=0.1,
                         angular_momentum_norm=1e-4, inertia_rate=4.0)
    by_tag = {rep.tag: rep for rep in sideris_check(setup)}
    plain = by_tag["T3.1c"].rhs
    joins = (abs(by_tag["T3.1d"].rhs - plain) <= 1e-6
             and angular_threshold(0.0, plain) == plain)

    # the discriminant branch needs pressure: never fires on dust
    rng = np.random.default_rng(77)
    dust_false = True
    for k in range(30):
        state, model = mixture_state(rng, cells=48,
                                     gamma=float(rng.uniform(1.2, 2.0)))
        dust = FluidState(grid=state.grid, time=0.0, rho=state.rho,
                          vel=state.vel, pres=np.zeros_like(state.rho))
        ms = compute_moments(dust, model)
        cc = chemin_constant(model.gamma, 2, ms.mass, -math.inf)
        rate = float(rng.uniform(0.2, 2.0)) * (1.0 if k % 2 else -1.0)
        _, branch, _ = rotation_check(ms, cc, rate)
        dust_false = dust_false and not branch.satisfied
    _verdict(9, "criterion variants agree on shared ground",
             agreements == 100 and 10 <= satisfied <= 90 and joins
             and dust_false,
             f"{agreements}/100 verdicts agree ({satisfied} satisfied), "
             f"threshold join gap {abs(by_tag['T3.1d'].rhs - plain):.2e}")


def test_10_detector_separates_steepening_from_vortex():
    # acoustic ripple riding a stretched Gaussian: the rate criterion
    # holds, so the gradient detector must fire in finite time
    grid = Grid.regular(2, 192, 5.0)
    r = np.sqrt(grid.radius_squared())
    rho = np.exp(-r * r) * (1.0 + 0.45 * np.cos(2.0 * np.pi * r / 0.3)
                            * np.exp(-((r - 1.1) / 0.6) ** 2))
    x1, x2 = grid.centers()
    ripple = FluidState(grid=grid, time=0.0, rho=rho,
                        vel=(0.286 * x1, 0.286 * x2), pres=0.1 * rho ** 2)
    model = GasModel(gamma=2.0, ndim=2)
    ms = compute_moments(ripple, model, tail_tol=1e-6)
    cc = chemin_constant(2.0, 2, ms.mass, ripple.min_entropy(2.0))
    report = theorem21_check(ms, cc)

    horizon = SolverConfig(t_end=5.0, moment_stride=0, gradient_factor=3.0)
    hot = run(ripple, model, horizon)
    fired = (hot.detection is not None
             and hot.detection.trigger == "gradient-steepening"
             and 0.0 < hot.detection.time < horizon.t_end)

    calm = vortex_build(_VORTEX, Grid.regular(2, 128, 1.6))
    quiet = run(calm, vortex_model(_VORTEX), horizon)
    _verdict(10, "steepening fires the detector, the vortex never does",
             report.satisfied and fired and quiet.detection is None,
             f"margin {report.margin:.3f}, fired at "
             f"t={hot.detection.time:.4f}" if hot.detection else "no event")
