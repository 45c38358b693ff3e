"""Field-state descriptors and their closed-form single-mode observables.

Conventions used throughout the package:

* displacement  D(z) = exp(z a^dag - z* a), Weyl function W(z) = Tr[rho D(z)];
* squeezing     S = exp(-(r/4) e^{-i varphi} a^dag^2 + (r/4) e^{i varphi} a^2)
  applied to the displaced vacuum, |A; r varphi> = S D(A)|0>, so quadrature
  scalings carry half-angle arguments cosh(r/2), sinh(r/2);
* the loop flux operator is flux(t) = (xi/sqrt2)(e^{iwt} a^dag + e^{-iwt} a)
  and the electromotive force is its dual quadrature, fixed by the single
  normative convention a = (flux + i emf/omega) / (sqrt2 xi).

Thermal states are parameterized by the product beta*omega, which is the only
combination their observables depend on.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from . import specfun

__all__ = [
    "NumberState",
    "CoherentState",
    "SqueezedState",
    "ThermalState",
    "ModeParams",
    "ChargeCoupling",
    "TwoModeFactorizable",
    "TwoModeSeparableMixture",
    "TwoModeProductSuperposition",
    "weyl",
    "weyl_drive_coeffs",
    "weyl_time_average",
    "photon_counting",
    "mean_photons",
    "match_mean_photons",
    "flux_stats",
    "emf_stats",
    "number_displacement_element",
    "coherent_overlap",
    "coherent_displacement_element",
]


@dataclass(frozen=True)
class NumberState:
    n: int

    def __post_init__(self):
        if self.n < 0 or self.n != int(self.n):
            raise ValueError("photon number must be a nonnegative integer")


@dataclass(frozen=True)
class CoherentState:
    amplitude: complex


@dataclass(frozen=True)
class SqueezedState:
    amplitude: complex
    r: float
    varphi: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("squeezing parameter r must be >= 0")


@dataclass(frozen=True)
class ThermalState:
    beta_omega: float  # inverse temperature times mode frequency

    def __post_init__(self):
        if self.beta_omega <= 0:
            raise ValueError("beta*omega must be positive")


@dataclass(frozen=True)
class ModeParams:
    """Mode frequency and loop coupling (area) constant, k_B = hbar = c = 1."""

    omega: float
    xi: float = 1.0

    def __post_init__(self):
        if self.omega <= 0 or self.xi <= 0:
            raise ValueError("omega and xi must be positive")


@dataclass(frozen=True)
class ChargeCoupling:
    """Scaled charges: q for single electrons, qprime = 2q for Cooper pairs."""

    q: float

    def __post_init__(self):
        if self.q <= 0:
            raise ValueError("coupling q must be positive")

    @property
    def qprime(self) -> float:
        return 2.0 * self.q


# ---------------------------------------------------------------------------
# two-mode descriptors (built-in correlated families live in twomode/squid)

@dataclass(frozen=True)
class TwoModeFactorizable:
    state_a: object
    state_b: object


@dataclass(frozen=True)
class TwoModeSeparableMixture:
    """Probabilistic mixture sum_k P_k rho_{A,k} x rho_{B,k}."""

    terms: tuple  # of (weight, state_a, state_b)

    def __post_init__(self):
        total = 0.0
        for w, _, _ in self.terms:
            if w < 0:
                raise ValueError("mixture weights must be nonnegative")
            total += w
        if abs(total - 1.0) > 1e-12:
            raise ValueError("mixture weights must sum to one")


@dataclass(frozen=True)
class TwoModeProductSuperposition:
    """Pure state sum_k c_k |u_k> x |v_k| with pure single-mode kets u, v."""

    terms: tuple  # of (coeff, ket_a, ket_b)


# ---------------------------------------------------------------------------
# Weyl functions

def weyl(state, z) -> complex:
    """Closed-form Weyl function W(z) = Tr[rho D(z)] of a single-mode state."""
    z = complex(z)
    x = abs(z) ** 2
    if isinstance(state, NumberState):
        return complex(math.exp(-x / 2.0) * specfun.laguerre(state.n, 0, x))
    if isinstance(state, CoherentState):
        a = complex(state.amplitude)
        return cmath.exp(-x / 2.0 + z * a.conjugate() - z.conjugate() * a)
    if isinstance(state, SqueezedState):
        a = complex(state.amplitude)
        th = cmath.phase(z)
        yy = 0.5 * x * (math.cosh(state.r) + math.sinh(state.r) * math.cos(2 * th + state.varphi))
        xx = 2.0 * abs(a) * abs(z) * (
            math.cosh(state.r / 2.0) * math.sin(th - cmath.phase(a))
            - math.sinh(state.r / 2.0) * math.sin(th + cmath.phase(a) + state.varphi)
        )
        return cmath.exp(-yy + 1j * xx)
    if isinstance(state, ThermalState):
        # phase-invariant; reduces to exp(-(zeta^2/2) coth(bw/2)) on z real*e^{iwt}
        return complex(math.exp(-0.5 * x / math.tanh(state.beta_omega / 2.0)))
    raise TypeError(f"unsupported state {state!r}")


def _ipow(k: int) -> complex:
    return (1, 1j, -1, -1j)[k % 4]


def _signed_j(js, n: int) -> float:
    v = js[abs(n)]
    return -v if (n < 0 and n & 1) else v


def _order_cutoff(x: float) -> int:
    """Order beyond which J_n(x), I_n(x) fall under ~1e-18."""
    return int(x + 16.0 + 10.0 * x ** 0.4) + 2


def weyl_drive_coeffs(state, c, tol: float = 1e-18) -> dict:
    """Fourier coefficients a_k of theta -> W(i c e^{i theta}).

    The circular drive z(theta) = i c e^{i theta} (theta = omega t) turns the
    Weyl function of every supported family into a rapidly decaying harmonic
    series; the k = 0 entry is the exact infinite-time average.
    """
    c = complex(c)
    rho = abs(c)
    if isinstance(state, (NumberState, ThermalState)):
        return {0: weyl(state, 1j * rho)}
    if isinstance(state, CoherentState):
        a = complex(state.amplitude)
        amp = 2.0 * rho * abs(a)
        if amp == 0.0:
            return {0: complex(math.exp(-rho * rho / 2.0))}
        delta = cmath.phase(c) - cmath.phase(a)
        kmax = _order_cutoff(amp)
        js = specfun.bessel_j_all(kmax, amp)
        base = math.exp(-rho * rho / 2.0)
        out = {}
        for k in range(-kmax, kmax + 1):
            val = base * _ipow(k) * _signed_j(js, k) * cmath.exp(1j * k * delta)
            if abs(val) > tol:
                out[k] = val
        return out
    if isinstance(state, SqueezedState):
        a = complex(state.amplitude)
        r, ph = state.r, state.varphi
        u = math.pi / 2.0 + cmath.phase(c)
        base = math.exp(-0.5 * rho * rho * math.cosh(r))
        v = 0.5 * rho * rho * math.sinh(r)
        chi = 2.0 * u + ph
        if a != 0:
            w = 2.0 * abs(a) * rho * (
                math.cosh(r / 2.0) * cmath.exp(1j * (u - cmath.phase(a)))
                - math.sinh(r / 2.0) * cmath.exp(1j * (u + cmath.phase(a) + ph))
            )
        else:
            w = 0j
        nmax = _order_cutoff(abs(w))
        mmax = _order_cutoff(v)
        js = specfun.bessel_j_all(nmax, abs(w)) if w != 0 else None
        ims = specfun.bessel_i_all(mmax, v) if v > 0 else None
        psi = cmath.phase(w) if w != 0 else 0.0
        out = {}
        for m in range(-mmax, mmax + 1):
            im = 1.0 if ims is None and m == 0 else (0.0 if ims is None else ims[abs(m)])
            fm = base * (-1 if m & 1 else 1) * im
            if abs(fm) <= tol:
                continue
            fm = fm * cmath.exp(1j * m * chi)
            if js is None:
                k = 2 * m
                out[k] = out.get(k, 0j) + fm
                continue
            for n in range(-nmax, nmax + 1):
                jn = _signed_j(js, n)
                if abs(fm) * abs(jn) <= tol:
                    continue
                k = n + 2 * m
                out[k] = out.get(k, 0j) + fm * jn * cmath.exp(1j * n * psi)
        return {k: val for k, val in out.items() if abs(val) > tol}
    raise TypeError(f"unsupported state {state!r}")


def weyl_time_average(state, c) -> complex:
    """Exact average over theta of W(i c e^{i theta}).

    Collapses the harmonic expansion to its zero-frequency entry without
    building the full coefficient map (this sits in the inner loop of the
    autocorrelation and spectral-density computations).
    """
    c = complex(c)
    rho = abs(c)
    if isinstance(state, (NumberState, ThermalState)):
        return weyl(state, 1j * rho)
    if isinstance(state, CoherentState):
        amp = 2.0 * rho * abs(state.amplitude)
        base = math.exp(-rho * rho / 2.0)
        if amp == 0.0:
            return complex(base)
        return complex(base * specfun.bessel_j(0, amp))
    if isinstance(state, SqueezedState):
        a = complex(state.amplitude)
        r, ph = state.r, state.varphi
        u = math.pi / 2.0 + cmath.phase(c)
        base = math.exp(-0.5 * rho * rho * math.cosh(r))
        v = 0.5 * rho * rho * math.sinh(r)
        chi = 2.0 * u + ph
        if a != 0:
            w = 2.0 * abs(a) * rho * (
                math.cosh(r / 2.0) * cmath.exp(1j * (u - cmath.phase(a)))
                - math.sinh(r / 2.0) * cmath.exp(1j * (u + cmath.phase(a) + ph))
            )
        else:
            w = 0j
        if v == 0.0:
            # no squeezing-induced 2-theta modulation: only the m = 0 term
            return complex(base * (specfun.bessel_j(0, abs(w)) if w != 0 else 1.0))
        mmax = _order_cutoff(v)
        ims = specfun.bessel_i_all(mmax, v)
        if w == 0:
            return complex(base * ims[0])
        psi = cmath.phase(w)
        js = specfun.bessel_j_all(2 * mmax, abs(w))
        total = 0j
        # zero frequency requires the theta index n = -2m; J_{-2m} = J_{2m}
        for m in range(-mmax, mmax + 1):
            term = ims[abs(m)] * js[2 * abs(m)]
            if term == 0.0:
                continue
            sign = -1.0 if m & 1 else 1.0
            total += sign * term * cmath.exp(1j * m * (chi - 2.0 * psi))
        return base * total
    raise TypeError(f"unsupported state {state!r}")


# ---------------------------------------------------------------------------
# displacement matrix elements (closed forms; the matrix oracle has its own)

def number_displacement_element(m: int, z, n: int) -> complex:
    """<m| D(z) |n> = sqrt(n!/m!) z^{m-n} e^{-|z|^2/2} L_n^{m-n}(|z|^2)."""
    z = complex(z)
    if m < n:
        # fixed by D(z)^dag = D(-z)
        return number_displacement_element(n, -z, m).conjugate()
    x = abs(z) ** 2
    pref = math.exp(0.5 * (math.lgamma(n + 1) - math.lgamma(m + 1)) - x / 2.0)
    return pref * z ** (m - n) * specfun.laguerre(n, m - n, x)


def coherent_overlap(a, b) -> complex:
    """<a|b> for coherent states."""
    a, b = complex(a), complex(b)
    return cmath.exp(-abs(a) ** 2 / 2.0 - abs(b) ** 2 / 2.0 + a.conjugate() * b)


def coherent_displacement_element(b, z, a) -> complex:
    """<b| D(z) |a> via D(z)|a> = e^{(z a* - z* a)/2} |a+z>."""
    a, b, z = complex(a), complex(b), complex(z)
    return cmath.exp((z * a.conjugate() - z.conjugate() * a) / 2.0) * coherent_overlap(b, a + z)


# ---------------------------------------------------------------------------
# photon statistics

def _poisson(mean: float, n: int) -> float:
    if mean == 0.0:
        return 1.0 if n == 0 else 0.0
    return math.exp(n * math.log(mean) - mean - math.lgamma(n + 1))


@lru_cache(maxsize=256)
def _squeezed_amplitudes(amplitude: complex, r: float, varphi: float, nmax: int) -> tuple:
    """Fock amplitudes of S D(A)|0> = D(A') S|0> by the annihilator recurrence.

    With s = r/2 and squeeze phase theta = -varphi, the state is annihilated
    by cosh(s)(a - beta) + e^{i theta} sinh(s)(a^dag - beta*), beta = A' =
    A cosh(s) - A* e^{i theta} sinh(s).
    """
    s = r / 2.0
    theta = -varphi
    a = complex(amplitude)
    beta = a * math.cosh(s) - a.conjugate() * cmath.exp(1j * theta) * math.sinh(s)
    th = math.tanh(s)
    e_th = cmath.exp(1j * theta) * th
    c0 = (1.0 / math.cosh(s)) ** 0.5 * cmath.exp(
        -0.5 * (abs(beta) ** 2 + e_th * beta.conjugate() ** 2)
    )
    amps = [c0, (beta + e_th * beta.conjugate()) * c0]
    for n in range(1, nmax):
        nxt = ((beta + e_th * beta.conjugate()) * amps[n] - e_th * math.sqrt(n) * amps[n - 1]) / math.sqrt(n + 1)
        amps.append(nxt)
    return tuple(amps[: nmax + 1])


def photon_counting(state, n: int) -> float:
    """P(n) = <n| rho |n>."""
    if n < 0:
        raise ValueError("photon count must be nonnegative")
    if isinstance(state, NumberState):
        return 1.0 if n == state.n else 0.0
    if isinstance(state, CoherentState):
        return _poisson(abs(state.amplitude) ** 2, n)
    if isinstance(state, ThermalState):
        bw = state.beta_omega
        return (1.0 - math.exp(-bw)) * math.exp(-bw * n)
    if isinstance(state, SqueezedState):
        amps = _squeezed_amplitudes(complex(state.amplitude), state.r, state.varphi, n)
        return abs(amps[n]) ** 2
    raise TypeError(f"unsupported state {state!r}")


def mean_annihilation(state) -> complex:
    """<a> of the state."""
    if isinstance(state, (NumberState, ThermalState)):
        return 0j
    if isinstance(state, CoherentState):
        return complex(state.amplitude)
    if isinstance(state, SqueezedState):
        a = complex(state.amplitude)
        return a * math.cosh(state.r / 2.0) - a.conjugate() * cmath.exp(-1j * state.varphi) * math.sinh(state.r / 2.0)
    raise TypeError(f"unsupported state {state!r}")


def mean_photons(state) -> float:
    """Average photon number <a^dag a>."""
    if isinstance(state, NumberState):
        return float(state.n)
    if isinstance(state, CoherentState):
        return abs(state.amplitude) ** 2
    if isinstance(state, ThermalState):
        return 1.0 / (math.exp(state.beta_omega) - 1.0)
    if isinstance(state, SqueezedState):
        # sinh^2(r/2) + |<a>|^2; collapses to the familiar
        # sinh^2(r/2) + [cosh(r/2)-sinh(r/2)]^2 |A|^2 when cos(2 arg A + varphi) = 1
        return math.sinh(state.r / 2.0) ** 2 + abs(mean_annihilation(state)) ** 2
    raise TypeError(f"unsupported state {state!r}")


def match_mean_photons(family: str, target: float, r: float = None, varphi: float = 0.0):
    """State of the given family with mean photon number ``target``.

    Solved in closed form; squeezed states keep r, varphi fixed and carry the
    required amplitude along the real axis (arg A = 0).
    """
    if target < 0:
        raise ValueError("target mean photon number must be nonnegative")
    if family == "number":
        n = round(target)
        if abs(target - n) > 1e-9:
            raise ValueError("number family can only match integer targets")
        return NumberState(int(n))
    if family == "coherent":
        return CoherentState(complex(math.sqrt(target)))
    if family == "thermal":
        if target == 0:
            raise ValueError("thermal target must be positive (beta*omega finite)")
        return ThermalState(math.log((target + 1.0) / target))
    if family == "squeezed":
        if r is None:
            raise ValueError("squeezed family needs the fixed squeezing parameter r")
        floor = math.sinh(r / 2.0) ** 2
        if target < floor - 1e-12:
            raise ValueError(f"target {target} below the squeezed-vacuum floor {floor}")
        amp2 = max(target - floor, 0.0) / (math.cosh(r / 2.0) - math.sinh(r / 2.0)) ** 2
        return SqueezedState(complex(math.sqrt(amp2)), r, varphi)
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# flux and electromotive-force statistics

def flux_stats(state, mode: ModeParams, t: float):
    """(mean, standard deviation) of the loop flux operator at time t."""
    xi, w = mode.xi, mode.omega
    if isinstance(state, NumberState):
        return 0.0, xi * math.sqrt(state.n + 0.5)
    if isinstance(state, CoherentState):
        a = complex(state.amplitude)
        mean = math.sqrt(2.0) * xi * abs(a) * math.cos(w * t - cmath.phase(a))
        return mean, xi / math.sqrt(2.0)
    if isinstance(state, ThermalState):
        return 0.0, xi * math.sqrt(0.5 / math.tanh(state.beta_omega / 2.0))
    if isinstance(state, SqueezedState):
        am = mean_annihilation(state)
        mean = math.sqrt(2.0) * xi * (cmath.exp(-1j * w * t) * am).real
        var = 0.5 * xi * xi * (math.cosh(state.r) - math.sinh(state.r) * math.cos(2 * w * t + state.varphi))
        return mean, math.sqrt(var)
    raise TypeError(f"unsupported state {state!r}")


def emf_stats(state, mode: ModeParams, t: float):
    """(mean, standard deviation) of the electromotive force at time t.

    The EMF is the flux quadrature a quarter period ahead, scaled by omega.
    """
    xi, w = mode.xi, mode.omega
    if isinstance(state, NumberState):
        return 0.0, w * xi * math.sqrt(state.n + 0.5)
    if isinstance(state, CoherentState):
        a = complex(state.amplitude)
        mean = -math.sqrt(2.0) * w * xi * abs(a) * math.sin(w * t - cmath.phase(a))
        return mean, w * xi / math.sqrt(2.0)
    if isinstance(state, ThermalState):
        return 0.0, w * xi * math.sqrt(0.5 / math.tanh(state.beta_omega / 2.0))
    if isinstance(state, SqueezedState):
        # the EMF is the time derivative of the mean flux
        am = mean_annihilation(state)
        mean = math.sqrt(2.0) * w * xi * (cmath.exp(-1j * w * t) * am).imag
        var = 0.5 * (w * xi) ** 2 * (math.cosh(state.r) + math.sinh(state.r) * math.cos(2 * w * t + state.varphi))
        return mean, math.sqrt(var)
    raise TypeError(f"unsupported state {state!r}")
