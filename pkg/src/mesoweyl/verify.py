"""Oracle-equivalence and property suites.

Each suite returns a machine-readable report: a list of named checks with a
measured maximum error, its tolerance and a pass flag.  The CLI ``verify``
subcommand prints these as JSON; the test suite asserts on them.
"""

import cmath
import math

import numpy as np

from . import fockbench, interference, squid, twomode
from .states import (
    ChargeCoupling,
    CoherentState,
    ModeParams,
    NumberState,
    SqueezedState,
    ThermalState,
    TwoModeFactorizable,
    TwoModeProductSuperposition,
    TwoModeSeparableMixture,
    emf_stats,
    flux_stats,
    match_mean_photons,
    weyl,
)

__all__ = [
    "SUITES",
    "run_suite",
    "acceptance_states",
    "weyl_z_grid",
    "gamma_window_oracle",
    "intensity_operator",
    "sin_phase_operator",
]

MEAN_PHOTONS = 17.0
SQUEEZING_R = 4.2


def acceptance_states() -> dict:
    """The four benchmark families with matched mean photon number."""
    return {
        "number": NumberState(int(MEAN_PHOTONS)),
        "coherent": match_mean_photons("coherent", MEAN_PHOTONS),
        "squeezed": match_mean_photons("squeezed", MEAN_PHOTONS, r=SQUEEZING_R),
        "thermal": match_mean_photons("thermal", MEAN_PHOTONS),
    }


def weyl_z_grid() -> list:
    """25 points with |z| <= 3 covering radii and phases."""
    radii = (0.2, 0.5, 1.0, 2.0, 3.0)
    angles = (0.0, 0.7, math.pi / 2.0, 2.2, 3.0)
    return [r * cmath.exp(1j * a) for r in radii for a in angles]


def _check(name, max_error, tolerance):
    return {
        "name": name,
        "max_error": float(max_error),
        "tolerance": float(tolerance),
        "passed": bool(max_error <= tolerance),
    }


def _report(suite, checks):
    return {"suite": suite, "checks": checks, "passed": all(c["passed"] for c in checks)}


# ---------------------------------------------------------------------------
# oracle operator builders (shared with the tests)

def intensity_operator(dim, q, omega, x, t):
    """Matrix of 1 + cos(x - e flux(t)) on the truncated basis."""
    d = fockbench.displacement_matrix(1j * q * cmath.exp(1j * omega * t), dim)
    return (
        np.eye(dim, dtype=complex)
        + 0.5 * (cmath.exp(1j * x) * d.conj().T + cmath.exp(-1j * x) * d)
    )


def sin_phase_operator(dim, qp, omega_mw, omega_ramp, t):
    """Matrix of sin(omega_ramp t + 2e flux(t)) for a ring."""
    d = fockbench.displacement_matrix(1j * qp * cmath.exp(1j * omega_mw * t), dim)
    ph = cmath.exp(1j * omega_ramp * t)
    return (ph * d - np.conj(ph) * d.conj().T) / 2j


def gamma_window_oracle(state, coupling, mode, tau, dim, nt=96):
    """Finite-window intensity autocorrelation: the average of
    Tr[rho I(t) I(t+tau)] over one full drive period (trapezoid on a periodic
    integrand, so the window is exact up to truncation)."""
    q, w = coupling.q, mode.omega
    rho = fockbench.density_matrix(state, dim)
    ts = np.arange(nt) / nt * (2.0 * math.pi / w)
    total = 0j
    for t in ts:
        op1 = intensity_operator(dim, q, w, 0.0, t)
        op2 = intensity_operator(dim, q, w, 0.0, t + tau)
        total += fockbench.expectation(rho, op1 @ op2)
    return total / nt


# ---------------------------------------------------------------------------
# suites

def weyl_oracle_suite(policy=None) -> dict:
    policy = policy or fockbench.TruncationPolicy()
    grid = weyl_z_grid()
    checks = []
    for fam, state in acceptance_states().items():
        err = 0.0
        for z in grid:
            err = max(err, abs(weyl(state, z) - fockbench.weyl_numeric(state, z, policy)))
        checks.append(_check(f"weyl-closed-vs-oracle-{fam}", err, 1e-8))
    bound = max(
        abs(weyl(state, z)) - 1.0
        for state in acceptance_states().values()
        for z in grid
    )
    checks.append(_check("weyl-magnitude-bound", max(bound, 0.0), 1e-12))
    sym = max(
        abs(weyl(state, -z) - weyl(state, z).conjugate())
        for state in acceptance_states().values()
        for z in grid
    )
    checks.append(_check("weyl-conjugate-symmetry", sym, 1e-12))
    return _report("weyl-oracle", checks)


def _converged_pure_vector(state, tol=1e-10, dim_cap=4096):
    """Double the truncation until the vector content stabilizes.

    A norm/deficit test is not enough: the squeeze generator is
    anti-Hermitian, so its truncated exponential is unitary and hides
    truncation error inside a rotated vector of perfect norm.
    """
    dim = fockbench.default_dim(state)
    vec = fockbench.state_vector(state, dim)
    while True:
        dim2 = 2 * dim
        if dim2 > dim_cap:
            raise fockbench.TruncationError("state vector did not converge")
        vec2 = fockbench.state_vector(state, dim2)
        err = float(np.linalg.norm(vec2[:dim] - vec)) + float(np.linalg.norm(vec2[dim:]))
        vec, dim = vec2, dim2
        if err < tol:
            return vec


def flux_stats_suite(policy=None) -> dict:
    mode = ModeParams(omega=1.0e-4, xi=1.0)
    times = [k * 2.0 * math.pi / (8.0 * mode.omega) for k in range(8)]
    checks = []
    for fam, state in acceptance_states().items():
        if isinstance(state, ThermalState):
            dim = 2048
            rho = fockbench.density_matrix(state, dim)
            def mean_var(op):
                m = fockbench.expectation(rho, op).real
                v = fockbench.expectation(rho, op @ op).real - m * m
                return m, math.sqrt(v)
        else:
            vec = _converged_pure_vector(state)
            dim = vec.shape[0]
            def mean_var(op):
                w1 = op @ vec
                m = float(np.vdot(vec, w1).real)
                v = float(np.vdot(w1, w1).real) - m * m
                return m, math.sqrt(v)
        err_f = err_e = 0.0
        for t in times:
            mf, sf = flux_stats(state, mode, t)
            me, se = emf_stats(state, mode, t)
            omf, osf = mean_var(fockbench.flux_matrix(mode, t, dim))
            ome, ose = mean_var(fockbench.emf_matrix(mode, t, dim))
            err_f = max(err_f, abs(mf - omf), abs(sf - osf))
            # emf carries the omega scale; compare relative to it
            err_e = max(err_e, abs(me - ome) / mode.omega, abs(se - ose) / mode.omega)
        checks.append(_check(f"flux-stats-vs-oracle-{fam}", err_f, 1e-8))
        checks.append(_check(f"emf-stats-vs-oracle-{fam}", err_e, 1e-8))
    # uncertainty product for the squeezed family
    sq = acceptance_states()["squeezed"]
    slack = 0.0
    for t in times:
        _, sf = flux_stats(sq, mode, t)
        _, se = emf_stats(sq, mode, t)
        slack = min(slack, sf * se - mode.omega * mode.xi ** 2 / 2.0)
    checks.append(_check("squeezed-uncertainty-product", max(-slack, 0.0), 1e-10))
    return _report("flux-stats", checks)


def autocorr_suite(policy=None) -> dict:
    coupling = ChargeCoupling(twomode.DEFAULT_COUPLING_Q)
    mode = ModeParams(omega=1.0e-4)
    period = 2.0 * math.pi / mode.omega
    taus = np.arange(64) / 64.0 * 2.0 * period
    checks = []
    states = acceptance_states()
    e_phi1 = math.sqrt(2.0 * MEAN_PHOTONS)

    gcl = interference.autocorrelation_classical(e_phi1, mode.omega, taus)
    prop_err = _gamma_property_error(
        lambda tau: complex(interference.classical_gamma_series(e_phi1, mode.omega).evaluate(tau)),
        gcl, taus,
    )
    checks.append(_check("classical-gamma-properties", prop_err, 1e-10))
    checks.append(
        _check("classical-im-gamma", float(np.max(np.abs(gcl.values.imag))) / gcl.gamma0, 1e-12)
    )

    for fam, state in states.items():
        series = interference.autocorrelation_quantum(state, coupling, mode, taus)
        err = _gamma_property_error(
            lambda tau, s=state: interference.autocorrelation_quantum(
                s, coupling, mode, [tau]
            ).values[0],
            series, taus,
        )
        checks.append(_check(f"quantum-gamma-properties-{fam}", err, 1e-10))
    num = interference.normalized_gamma(
        interference.autocorrelation_quantum(states["number"], coupling, mode, taus)
    )
    im_max = float(np.max(np.abs(num.values.imag)))
    checks.append(_check("number-17-im-gamma-present", 1e-4 - im_max, 0.0))

    # displacement-algebra path against the finite-window matrix oracle
    small = {
        "vacuum": NumberState(0),
        "number-2": NumberState(2),
        "coherent-1": CoherentState(1.0 + 0j),
        "thermal-bw1": ThermalState(1.0),
    }
    lags = [0.0, 0.31 * period, 0.62 * period]
    for fam, state in small.items():
        dim = max(48, fockbench.default_dim(state))
        err = 0.0
        for tau in lags:
            exact = interference.autocorrelation_quantum(state, coupling, mode, [tau]).values[0]
            window = gamma_window_oracle(state, coupling, mode, tau, dim)
            err = max(err, abs(exact - window))
        checks.append(_check(f"quantum-gamma-vs-window-oracle-{fam}", err, 1e-6))
    return _report("autocorr", checks)


def _gamma_property_error(point_fn, series, taus) -> float:
    g0 = series.gamma0
    err = max(0.0, -g0)
    vals = series.values
    err = max(err, float(np.max(np.abs(vals) - g0)) / max(g0, 1e-300))
    for tau in taus[:16]:
        a = point_fn(float(tau))
        b = point_fn(float(-tau))
        err = max(err, abs(b - a.conjugate()) / max(g0, 1e-300))
    return err


def twomode_suite(policy=None) -> dict:
    policy = policy or fockbench.TruncationPolicy(tol=1e-11)
    q = twomode.DEFAULT_COUPLING_Q
    coupling = ChargeCoupling(q)
    checks = []
    t = 0.37 / (twomode.FIG_OMEGA_1 + twomode.FIG_OMEGA_2)
    xs = np.linspace(-2 * math.pi, 2 * math.pi, 9)

    fact = twomode.TwoModeField(
        TwoModeFactorizable(ThermalState(1.0), CoherentState(1.3 + 0.2j)),
        ModeParams(twomode.FIG_OMEGA_1),
        ModeParams(twomode.FIG_OMEGA_2),
    )
    err = max(
        abs(twomode.ratio_R(fact, coupling, xa, xb, t) - 1.0) for xa in xs for xb in xs
    )
    checks.append(_check("factorizable-ratio-unity", err, 1e-12))

    fields = {
        "number-pair-sep": twomode.number_pair_separable(0, 1),
        "number-pair-ent": twomode.number_pair_entangled(0, 1),
        "coherent-pair-ent": twomode.coherent_pair_entangled(1.0, math.sqrt(3.0)),
        "factorizable-thermal-coherent": fact,
    }
    pts = [(0.4, -1.1), (2.0, 2.9), (-0.7, 0.3)]
    for name, field in fields.items():
        err = 0.0
        for xa, xb in pts:
            closed = twomode.joint_intensity(field, coupling, xa, xb, t)
            oracle, _ = fockbench.converged_two_mode_expectation(
                field.state,
                lambda dim: intensity_operator(dim, q, field.mode_a.omega, xa, t),
                lambda dim: intensity_operator(dim, q, field.mode_b.omega, xb, t),
                policy,
            )
            err = max(err, abs(closed - oracle))
        checks.append(_check(f"joint-intensity-vs-oracle-{name}", err, 1e-8))

    sep = twomode.number_pair_separable(0, 1)
    ent = twomode.number_pair_entangled(0, 1)
    err = max(
        abs(
            twomode.marginal_intensity(sep, w, coupling, x, t)
            - twomode.marginal_intensity(ent, w, coupling, x, t)
        )
        for w in ("A", "B")
        for x in xs
    )
    checks.append(_check("sep-ent-marginals-identical", err, 1e-12))

    lower, upper = twomode.sep_bounds(q)
    corner_err = max(
        abs(twomode.ratio_R(sep, coupling, 0.0, 0.0, t) - lower),
        abs(twomode.ratio_R(sep, coupling, math.pi, math.pi, t) - upper),
    )
    checks.append(_check("corner-values-vs-bounds", corner_err, 1e-10))
    return _report("twomode", checks)


def squid_suite(policy=None) -> dict:
    policy = policy or fockbench.TruncationPolicy(tol=1e-11)
    coupling = ChargeCoupling(0.25)  # qprime = 0.5
    checks = []

    drive = squid.SquidDrive(phase0=0.7, omega_a=3.0e-4, u_phase=3.0, omega1=1.0e-4)
    err = max(
        abs(squid.classical_current(drive, t) - squid.classical_current_expansion(drive, t))
        for t in np.linspace(0.0, 2.0 * math.pi / drive.omega1, 64, endpoint=False)
    )
    checks.append(_check("classical-direct-vs-expansion", err, 1e-10))

    # coherent drive rescales every step by exp(-q'^2/2) (phase-matched state)
    u = 2.0
    base = squid.SquidDrive(phase0=0.7, u_phase=0.0, omega1=1.0e-4)
    ref = squid.SquidDrive(phase0=0.7, u_phase=u, omega1=1.0e-4)
    amp = u / (2.0 * coupling.qprime)
    coh = CoherentState(amp * cmath.exp(1j * math.pi / 2.0))
    scale = math.exp(-coupling.qprime ** 2 / 2.0)
    err = max(
        abs(
            squid.quantum_shapiro(coh, base, n, coupling)
            - scale * squid.classical_shapiro(ref, n)
        )
        for n in range(-3, 4)
    )
    checks.append(_check("coherent-step-rescaling", err, 1e-10))

    # squeezed vacuum: odd steps vanish, an even step survives for every r
    odd_err, even_worst = 0.0, math.inf
    stepdrive = squid.SquidDrive(phase0=math.pi / 2.0, u_phase=0.0, omega1=1.0e-4)
    for r in (0.5, 2.0, SQUEEZING_R):
        sq = SqueezedState(0j, r)
        for n in (1, 3, 5, -1):
            odd_err = max(odd_err, abs(squid.quantum_shapiro(sq, stepdrive, n, coupling)))
        even_worst = min(
            even_worst,
            max(abs(squid.quantum_shapiro(sq, stepdrive, n, coupling)) for n in (2, 4)),
        )
    checks.append(_check("squeezed-vacuum-odd-steps", odd_err, 1e-10))
    checks.append(_check("squeezed-vacuum-even-step-present", 1e-4 - even_worst, 0.0))

    # number-pair moments against the two-mode oracle
    w1, w2 = 1.2e-4, 1.0e-4
    wa, wb = w1, w2
    ts = (np.arange(16) + 0.5) / 16.0 * 2.0 * math.pi / abs(w1 - w2)
    err = 0.0
    for entangled in (False, True):
        state2 = _number_pair_crossed(1, 3, entangled)
        for t in ts[::4]:
            mom = squid.two_squid_currents_number(
                1, 3, entangled, coupling, wa, wb, w1, w2, float(t)
            )
            oracle = _squid_moments_oracle(state2, coupling.qprime, wa, wb, w1, w2, float(t), policy)
            scale = max(abs(np.array(oracle)))
            err = max(err, max(abs(np.array(mom) - np.array(oracle))) / scale)
    checks.append(_check("two-squid-number-moments-vs-oracle", err, 1e-8))

    # factorizable baseline
    fact = TwoModeFactorizable(CoherentState(1.0), CoherentState(0.8 + 0.4j))
    t0 = 0.3 / w1
    mom = _squid_oracle_moments_generic(fact, coupling.qprime, wa, wb, w1, w2, t0, policy)
    err = max(abs(squid.ratio_c(mom) - 1.0), abs(squid.ratio_c2(mom) - 1.0))
    checks.append(_check("factorizable-current-ratios-unity", err, 1e-12))
    return _report("squid", checks)


def _number_pair_crossed(n1, n2, entangled):
    if entangled:
        c = 1.0 / math.sqrt(2.0)
        return TwoModeProductSuperposition(
            ((c, NumberState(n1), NumberState(n2)), (c, NumberState(n2), NumberState(n1)))
        )
    return TwoModeSeparableMixture(
        ((0.5, NumberState(n1), NumberState(n2)), (0.5, NumberState(n2), NumberState(n1)))
    )


def _squid_moments_oracle(state2, qp, wa, wb, w1, w2, t, policy):
    return _squid_oracle_moments_generic(state2, qp, wa, wb, w1, w2, t, policy)


def _squid_oracle_moments_generic(state2, qp, wa, wb, w1, w2, t, policy) -> squid.TwoSquidMoments:
    def sa(dim):
        return sin_phase_operator(dim, qp, w1, wa, t)

    def sb(dim):
        return sin_phase_operator(dim, qp, w2, wb, t)

    def sa2(dim):
        s = sa(dim)
        return s @ s

    def sb2(dim):
        s = sb(dim)
        return s @ s

    eye = lambda dim: np.eye(dim, dtype=complex)
    ia, _ = fockbench.converged_two_mode_expectation(state2, sa, eye, policy)
    ib, _ = fockbench.converged_two_mode_expectation(state2, eye, sb, policy)
    ia2, _ = fockbench.converged_two_mode_expectation(state2, sa2, eye, policy)
    ib2, _ = fockbench.converged_two_mode_expectation(state2, eye, sb2, policy)
    iaib, _ = fockbench.converged_two_mode_expectation(state2, sa, sb, policy)
    ia2ib2, _ = fockbench.converged_two_mode_expectation(state2, sa2, sb2, policy)
    return squid.TwoSquidMoments(
        ia.real, ib.real, ia2.real, ib2.real, iaib.real, ia2ib2.real
    )


SUITES = {
    "weyl-oracle": weyl_oracle_suite,
    "flux-stats": flux_stats_suite,
    "autocorr": autocorr_suite,
    "twomode": twomode_suite,
    "squid": squid_suite,
}


def run_suite(name: str, policy=None) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](policy)
