"""Truncated Fock-space matrix oracle.

Everything here is built from ladder matrices, matrix exponentials and brute
force traces, independently of the closed forms elsewhere, so that every
closed-form result can be verified numerically.  Matrices are dense complex
numpy arrays over the number basis |0>..|dim-1>.  Truncation is explicit:
dimensions double under a TruncationPolicy until the observable stabilizes,
and truncated density matrices are never renormalized; the trace deficit is
reported instead of being hidden.

Two-mode matrices use mode-A-major ordering: index = i_A * dim_B + i_B.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import expm_multiply
from scipy.special import gammaln

from .exceptions import TruncationError
from .states import (
    CoherentState,
    ModeParams,
    NumberState,
    SqueezedState,
    ThermalState,
    TwoModeFactorizable,
    TwoModeProductSuperposition,
    TwoModeSeparableMixture,
    mean_photons,
)

__all__ = [
    "TruncationPolicy",
    "ConvergenceInfo",
    "ladder",
    "state_vector",
    "density_matrix",
    "displacement_matrix",
    "displacement_diagonal",
    "apply_displacement",
    "flux_matrix",
    "emf_matrix",
    "expectation",
    "weyl_numeric",
    "weyl_numeric_report",
    "two_mode_density",
    "partial_trace",
    "two_mode_expectation",
    "converged_two_mode_expectation",
    "default_dim",
    "dump_matrix",
    "load_matrix",
]


@dataclass(frozen=True)
class TruncationPolicy:
    """Dimension-doubling policy: start at initial_dim (or a state-derived
    default), double until the target scalar moves by less than tol, stop at
    dim_cap."""

    initial_dim: int = 0  # 0: derive from the state
    growth: int = 2
    tol: float = 1e-10
    dim_cap: int = 4096


@dataclass(frozen=True)
class ConvergenceInfo:
    dim: int
    delta: float
    trace_deficit: float


DEFAULT_POLICY = TruncationPolicy()


def default_dim(state) -> int:
    """Starting truncation dimension for a single-mode state."""
    nbar = mean_photons(state)
    return max(32, int(math.ceil(nbar + 10.0 * math.sqrt(nbar + 1.0))))


def ladder(dim: int) -> np.ndarray:
    """Annihilation operator a on the truncated basis."""
    a = np.zeros((dim, dim), dtype=complex)
    ns = np.arange(1, dim)
    a[ns - 1, ns] = np.sqrt(ns)
    return a


def _ladder_sparse(dim: int):
    ns = np.arange(1, dim)
    return sparse.csr_matrix((np.sqrt(ns), (ns - 1, ns)), shape=(dim, dim), dtype=complex)


def state_vector(state, dim: int) -> np.ndarray:
    """Fock-basis vector of a pure state, truncated to dim."""
    if isinstance(state, NumberState):
        if state.n >= dim:
            raise ValueError("dim too small for the requested number state")
        v = np.zeros(dim, dtype=complex)
        v[state.n] = 1.0
        return v
    if isinstance(state, CoherentState):
        a = complex(state.amplitude)
        v = np.zeros(dim, dtype=complex)
        c = math.exp(-abs(a) ** 2 / 2.0)
        for n in range(dim):
            v[n] = c
            c = c * a / math.sqrt(n + 1)
        return v
    if isinstance(state, SqueezedState):
        coh = state_vector(CoherentState(state.amplitude), dim)
        asp = _ladder_sparse(dim)
        adag2 = (asp.conj().T @ asp.conj().T).tocsc()
        a2 = (asp @ asp).tocsc()
        gen = (-(state.r / 4.0) * cmath.exp(-1j * state.varphi)) * adag2 + (
            (state.r / 4.0) * cmath.exp(1j * state.varphi)
        ) * a2
        return expm_multiply(gen, coh)
    raise TypeError(f"{state!r} is not a pure state with a vector form")


def density_matrix(state, dim: int) -> np.ndarray:
    """Density matrix truncated to dim (no renormalization)."""
    if isinstance(state, ThermalState):
        bw = state.beta_omega
        diag = (1.0 - math.exp(-bw)) * np.exp(-bw * np.arange(dim))
        return np.diag(diag.astype(complex))
    v = state_vector(state, dim)
    return np.outer(v, v.conj())


def trace_deficit(rho: np.ndarray) -> float:
    return 1.0 - float(np.trace(rho).real)


def _vector_deficit(vec: np.ndarray) -> float:
    return 1.0 - float(np.vdot(vec, vec).real)


def _displacement_band(absz: float, dim: int) -> np.ndarray:
    """band[n, d] = sqrt(n!/(n+d)!) |z|^d e^{-|z|^2/2} L_n^d(|z|^2).

    These are the moduli-with-sign of the D(z) entries along each diagonal
    offset d; the degree recurrence is run directly on the scaled values, so
    nothing overflows (entries of a unitary are bounded by one).
    """
    x = absz * absz
    ds = np.arange(dim, dtype=float)
    band = np.zeros((dim, dim))
    # T_0^d = e^{-x/2} |z|^d / sqrt(d!)
    with np.errstate(under="ignore"):
        band[0, :] = np.exp(-x / 2.0 + ds * math.log(absz) - 0.5 * gammaln(ds + 1.0)) if absz > 0 else 0.0
    if absz == 0:
        band[0, 0] = 1.0
        return band
    if dim == 1:
        return band
    # T_1^d = T_0^d (1 + d - x) sqrt(1/(1+d))
    band[1, :] = band[0, :] * (1.0 + ds - x) / np.sqrt(1.0 + ds)
    for k in range(1, dim - 1):
        r1 = np.sqrt((k + 1.0) / (k + 1.0 + ds))
        r2 = np.sqrt((k + 1.0) * k / ((k + 1.0 + ds) * (k + ds)))
        band[k + 1, :] = (
            (2.0 * k + 1.0 + ds - x) * r1 * band[k, :] - (k + ds) * r2 * band[k - 1, :]
        ) / (k + 1.0)
    return band


def displacement_matrix(z, dim: int) -> np.ndarray:
    """Matrix of D(z) = exp(z a^dag - z* a) on the truncated basis.

    Entries for m >= n are sqrt(n!/m!) z^{m-n} e^{-|z|^2/2} L_n^{m-n}(|z|^2),
    evaluated by a scaled degree recurrence along each diagonal (independent
    of the package's own polynomial code); m < n entries are fixed by
    D(z)^dag = D(-z).
    """
    z = complex(z)
    if z == 0:
        return np.eye(dim, dtype=complex)
    band = _displacement_band(abs(z), dim)
    arg = cmath.phase(z)
    out = np.zeros((dim, dim), dtype=complex)
    for d in range(dim):
        vals = band[: dim - d, d]
        ph = cmath.exp(1j * d * arg)
        idx = np.arange(dim - d)
        out[idx + d, idx] = vals * ph
        if d > 0:
            # <n|D(z)|n+d> = conj(<n+d|D(-z)|n>)
            sign = -1.0 if d & 1 else 1.0
            out[idx, idx + d] = vals * sign * np.conj(ph)
    return out


def displacement_diagonal(z, dim: int) -> np.ndarray:
    """<n|D(z)|n> = e^{-|z|^2/2} L_n(|z|^2) for n < dim, by the stable
    upward degree recurrence on the pre-scaled values."""
    x = abs(complex(z)) ** 2
    out = np.empty(dim, dtype=complex)
    prev = math.exp(-x / 2.0)
    out[0] = prev
    if dim == 1:
        return out
    cur = prev * (1.0 - x)
    out[1] = cur
    for n in range(1, dim - 1):
        prev, cur = cur, ((2.0 * n + 1.0 - x) * cur - n * prev) / (n + 1.0)
        out[n + 1] = cur
    return out


def apply_displacement(z, vec: np.ndarray) -> np.ndarray:
    """D(z) |vec> through the matrix exponential acting on the vector."""
    dim = vec.shape[0]
    a = _ladder_sparse(dim)
    gen = complex(z) * a.conj().T.tocsc() - complex(z).conjugate() * a.tocsc()
    return expm_multiply(gen, vec)


def flux_matrix(mode: ModeParams, t: float, dim: int) -> np.ndarray:
    """(xi/sqrt2)(e^{iwt} a^dag + e^{-iwt} a)."""
    a = ladder(dim)
    ph = cmath.exp(1j * mode.omega * t)
    return mode.xi / math.sqrt(2.0) * (ph * a.conj().T + np.conj(ph) * a)


def emf_matrix(mode: ModeParams, t: float, dim: int) -> np.ndarray:
    """(omega xi/sqrt2) i (e^{iwt} a^dag - e^{-iwt} a), the dual quadrature."""
    a = ladder(dim)
    ph = cmath.exp(1j * mode.omega * t)
    return mode.omega * mode.xi / math.sqrt(2.0) * 1j * (ph * a.conj().T - np.conj(ph) * a)


def expectation(rho: np.ndarray, obs: np.ndarray) -> complex:
    """Tr(rho obs)."""
    if rho.shape != obs.shape:
        raise ValueError("dimension mismatch between rho and observable")
    return complex(np.sum(rho * obs.T))


def _weyl_value(state, z, dim: int):
    """One truncated evaluation of Tr[rho D(z)]; returns (value, deficit)."""
    if isinstance(state, ThermalState):
        bw = state.beta_omega
        p = (1.0 - math.exp(-bw)) * np.exp(-bw * np.arange(dim))
        val = complex(np.sum(p * displacement_diagonal(z, dim)))
        return val, 1.0 - float(np.sum(p))
    vec = state_vector(state, dim)
    val = complex(np.vdot(vec, apply_displacement(z, vec)))
    return val, _vector_deficit(vec)


def weyl_numeric_report(state, z, policy: TruncationPolicy = DEFAULT_POLICY):
    """Oracle Weyl value with its convergence diagnostics."""
    dim = policy.initial_dim or default_dim(state)
    val, deficit = _weyl_value(state, z, dim)
    while True:
        new_dim = dim * policy.growth
        if new_dim > policy.dim_cap:
            raise TruncationError(
                f"weyl_numeric did not converge below dim cap {policy.dim_cap}"
            )
        new_val, deficit = _weyl_value(state, z, new_dim)
        delta = abs(new_val - val)
        dim, val = new_dim, new_val
        if delta < policy.tol:
            return val, ConvergenceInfo(dim=dim, delta=delta, trace_deficit=deficit)


def weyl_numeric(state, z, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Tr[density_matrix x displacement_matrix], converged under the policy."""
    val, _ = weyl_numeric_report(state, z, policy)
    return val


# ---------------------------------------------------------------------------
# two-mode machinery

def _components(state2):
    """Decompose a two-mode descriptor into weighted product components.

    Returns ('mixed', [(p, rho_a, rho_b)]) for mixtures and
    ('pure', [(c, ket_a, ket_b)]) for product superpositions.
    """
    if isinstance(state2, TwoModeFactorizable):
        return "mixed", [(1.0, state2.state_a, state2.state_b)]
    if isinstance(state2, TwoModeSeparableMixture):
        return "mixed", list(state2.terms)
    if isinstance(state2, TwoModeProductSuperposition):
        return "pure", list(state2.terms)
    raise TypeError(f"unsupported two-mode state {state2!r}")


def two_mode_density(state2, dim_a: int, dim_b: int) -> np.ndarray:
    """Two-mode density matrix, mode-A-major tensor ordering."""
    kind, comps = _components(state2)
    if kind == "mixed":
        out = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=complex)
        for p, sa, sb in comps:
            out += p * np.kron(density_matrix(sa, dim_a), density_matrix(sb, dim_b))
        return out
    vec = np.zeros(dim_a * dim_b, dtype=complex)
    for c, ka, kb in comps:
        vec += c * np.kron(state_vector(ka, dim_a), state_vector(kb, dim_b))
    return np.outer(vec, vec.conj())


def partial_trace(rho: np.ndarray, dims, keep: str) -> np.ndarray:
    """Reduced density matrix of mode 'A' or 'B'."""
    dim_a, dim_b = dims
    if rho.shape != (dim_a * dim_b, dim_a * dim_b):
        raise ValueError("rho shape does not match the stated mode dimensions")
    r = rho.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "A":
        return np.trace(r, axis1=1, axis2=3)
    if keep == "B":
        return np.trace(r, axis1=0, axis2=2)
    raise ValueError("keep must be 'A' or 'B'")


def two_mode_expectation(state2, op_a: np.ndarray, op_b: np.ndarray) -> complex:
    """Tr[rho (op_a x op_b)] using the product structure of the components.

    Identical to the dense-kron trace, but never forms the tensor-product
    matrix, so it stays cheap at the converged dimensions.
    """
    dim_a = op_a.shape[0]
    dim_b = op_b.shape[0]
    kind, comps = _components(state2)
    total = 0j
    if kind == "mixed":
        for p, sa, sb in comps:
            total += p * expectation(density_matrix(sa, dim_a), op_a) * expectation(
                density_matrix(sb, dim_b), op_b
            )
        return total
    vecs = [(c, state_vector(ka, dim_a), state_vector(kb, dim_b)) for c, ka, kb in comps]
    for ck, ua, ub in vecs:
        for cl, va, vb in vecs:
            total += ck * np.conj(cl) * np.vdot(va, op_a @ ua) * np.vdot(vb, op_b @ ub)
    return total


def converged_two_mode_expectation(state2, build_a, build_b, policy: TruncationPolicy = DEFAULT_POLICY):
    """Two-mode expectation converged by doubling both mode dimensions.

    build_a(dim) and build_b(dim) return the single-mode observable matrices.
    Returns (value, ConvergenceInfo) with the joint trace deficit.
    """
    dim = policy.initial_dim or _default_two_mode_dim(state2)
    val = two_mode_expectation(state2, build_a(dim), build_b(dim))
    while True:
        new_dim = dim * policy.growth
        if new_dim > policy.dim_cap:
            raise TruncationError(
                f"two-mode expectation did not converge below dim cap {policy.dim_cap}"
            )
        new_val = two_mode_expectation(state2, build_a(new_dim), build_b(new_dim))
        delta = abs(new_val - val)
        dim, val = new_dim, new_val
        if delta < policy.tol:
            deficit = _two_mode_deficit(state2, dim)
            return val, ConvergenceInfo(dim=dim, delta=delta, trace_deficit=deficit)


def dump_matrix(mat: np.ndarray, path: str) -> None:
    """Debug dump: header row "re,im", then one row-major entry per line.

    The first line is "# dim_rows,dim_cols"; reload with load_matrix.
    """
    mat = np.asarray(mat, dtype=complex)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# {mat.shape[0]},{mat.shape[1]}\n")
        fh.write("re,im\n")
        for v in mat.ravel(order="C"):
            fh.write(f"{float(v.real)!r},{float(v.imag)!r}\n")


def load_matrix(path: str) -> np.ndarray:
    """Inverse of dump_matrix."""
    with open(path, "r", encoding="utf-8") as fh:
        shape = tuple(int(s) for s in fh.readline().lstrip("# ").split(","))
        fh.readline()
        data = [complex(float(a), float(b)) for a, b in (line.split(",") for line in fh)]
    return np.array(data, dtype=complex).reshape(shape)


def _default_two_mode_dim(state2) -> int:
    _, comps = _components(state2)
    dims = [default_dim(s) for _, sa, sb in comps for s in (sa, sb)]
    return max(dims) if dims else 32


def _two_mode_deficit(state2, dim: int) -> float:
    kind, comps = _components(state2)
    if kind == "mixed":
        total = 0.0
        for p, sa, sb in comps:
            ta = 1.0 - trace_deficit(density_matrix(sa, dim))
            tb = 1.0 - trace_deficit(density_matrix(sb, dim))
            total += p * ta * tb
        return 1.0 - total
    total = 0j
    vecs = [(c, state_vector(ka, dim), state_vector(kb, dim)) for c, ka, kb in comps]
    for ck, ua, ub in vecs:
        for cl, va, vb in vecs:
            total += ck * np.conj(cl) * np.vdot(va, ua) * np.vdot(vb, ub)
    return 1.0 - float(total.real)
