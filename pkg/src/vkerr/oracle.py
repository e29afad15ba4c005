"""Brute-force references for the analytic pipeline.

Two independent checks live here:

* ``lindblad_steady_state`` solves the full atom + cavity master equation
  (probe off) on a truncated Fock space by a dense null-space solve, traces
  out the cavity and rotates to the dressed basis.  It shares nothing with
  the reduced dynamics except the two mixing amplitudes (c, s).

* ``time_domain_reference`` integrates the reduced periodic-coefficient
  equations of motion directly, with the probe at finite amplitude, runs
  them into their limit cycle and reads harmonic amplitudes off a DFT over
  one period.  This validates the Floquet recursion order by order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .dressed import CoefficientSet, dress
from .floquet import SteadyState0
from .params import SystemParams, effective_gamma12

__all__ = [
    "NonConvergedTruncation",
    "DegenerateNullSpace",
    "NoLimitCycle",
    "FockTruncation",
    "LimitCycleRecord",
    "atom_operators",
    "liouvillian",
    "lindblad_steady_state",
    "converged_steady_state",
    "time_domain_reference",
]


class NonConvergedTruncation(RuntimeError):
    """Fock-space cutoff too small for the requested tolerance."""


class DegenerateNullSpace(ArithmeticError):
    """Liouvillian null space is not one-dimensional."""


class NoLimitCycle(RuntimeError):
    """Reduced-equation integration did not settle within the horizon."""


@dataclass(frozen=True)
class FockTruncation:
    n_max: int

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")


@dataclass(frozen=True)
class LimitCycleRecord:
    """One settled period of the reduced dynamics plus its DFT harmonics.

    ``harmonics[element][n]`` is the complex amplitude of exp(i n delta_p t)
    for n in [-3, 3]; element keys follow the floquet module labels.
    """
    delta_p: float
    omega_p: float
    times: np.ndarray
    trajectory: dict
    harmonics: dict
    drift: float
    hermiticity_error: float

    def harmonic(self, element: str, n: int) -> complex:
        return self.harmonics[element][n]

    def probe_harmonic(self, n: int, c: float, s: float) -> complex:
        """Amplitude of the probe-transition coherence s*rho_{1+} - c*rho_{1-}."""
        return s * self.harmonics["1p"][n] - c * self.harmonics["1m"][n]


# ---------------------------------------------------------------------------
# full atom + cavity Lindblad oracle
# ---------------------------------------------------------------------------

def atom_operators(n_max: int):
    """|l><k| atomic operators and the annihilation operator on atom x Fock."""
    dim_f = n_max + 1
    id_f = np.eye(dim_f)
    ops = {}
    for l in range(3):
        for k in range(3):
            m = np.zeros((3, 3))
            m[l, k] = 1.0
            ops[(l, k)] = np.kron(m, id_f)
    a_f = np.diag(np.sqrt(np.arange(1, dim_f)), k=1)
    a = np.kron(np.eye(3), a_f)
    return ops, a


def _dissipator(L1: np.ndarray, L2: np.ndarray) -> np.ndarray:
    """Superoperator of 2 L1 . L2+ - L2+ L1 . - . L2+ L1 (row-major vec)."""
    d = L1.shape[0]
    eye = np.eye(d)
    L2d = L2.conj().T
    anti = L2d @ L1
    return (2.0 * np.kron(L1, L2d.T)
            - np.kron(anti, eye) - np.kron(eye, anti.T))


def liouvillian(params: SystemParams, trunc: FockTruncation) -> np.ndarray:
    """Dense probe-free Liouvillian of the full master equation.

    Row-major vectorization: vec(rho)[i*d+j] = rho[i, j].  With the probe
    off the generator is time independent in the drive frame.
    """
    ops, a = atom_operators(trunc.n_max)
    ad = a.conj().T
    g12 = effective_gamma12(params)

    H = (params.delta * ops[(2, 2)]
         - (params.omega21 - params.delta) * ops[(1, 1)]
         + params.omega_L_rabi * (ops[(0, 2)] + ops[(2, 0)])
         + params.delta_c * (ad @ a)
         + params.g1 * (ad @ ops[(0, 1)] + ops[(1, 0)] @ a)
         + params.g2 * (ad @ ops[(0, 2)] + ops[(2, 0)] @ a))

    d = H.shape[0]
    eye = np.eye(d)
    L = -1j * (np.kron(H, eye) - np.kron(eye, H.T))
    L = L + params.gamma1 * _dissipator(ops[(0, 1)], ops[(0, 1)])
    L = L + params.gamma2 * _dissipator(ops[(0, 2)], ops[(0, 2)])
    if g12 != 0.0:
        L = L + g12 * _dissipator(ops[(0, 1)], ops[(0, 2)])
        L = L + g12 * _dissipator(ops[(0, 2)], ops[(0, 1)])
    L = L + params.kappa * _dissipator(a, a)
    return L


def _null_state(L: np.ndarray, dim: int) -> np.ndarray:
    """Unique trace-one steady state from the Liouvillian null space."""
    _, sing, vh = np.linalg.svd(L)
    scale = sing[0]
    null_dim = int(np.sum(sing <= 1e-10 * scale))
    if null_dim != 1:
        raise DegenerateNullSpace(
            f"null space dimension {null_dim}, expected 1")
    rho = vh[-1].conj().reshape(dim, dim)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    return rho


def lindblad_steady_state(params: SystemParams,
                          trunc: FockTruncation) -> SteadyState0:
    """Probe-off steady state of the full model, reduced to the dressed atom."""
    dim = 3 * (trunc.n_max + 1)
    L = liouvillian(params, trunc)
    rho = _null_state(L, dim)

    herm = np.abs(rho - rho.conj().T).max()
    eigs = np.linalg.eigvalsh(rho)
    if herm > 1e-9 or eigs.min() < -1e-9:
        raise DegenerateNullSpace(
            f"steady state not a physical state (herm {herm:.2e}, "
            f"min eig {eigs.min():.2e})")

    # trace out the cavity: rho_atom[l, k] = sum_n rho[(l, n), (k, n)]
    dim_f = trunc.n_max + 1
    rho_atom = rho.reshape(3, dim_f, 3, dim_f).trace(axis1=1, axis2=3)

    basis = dress(params)
    c, s = basis.c, basis.s
    # dressed kets as columns in the bare (|0>, |1>, |2>) ordering
    minus = np.array([-c, 0.0, s])
    plus = np.array([s, 0.0, c])
    one = np.array([0.0, 1.0, 0.0])
    return SteadyState0(
        rho_11=float(np.real(one @ rho_atom @ one)),
        rho_mm=float(np.real(minus @ rho_atom @ minus)),
        rho_pp=float(np.real(plus @ rho_atom @ plus)),
        rho_m1=complex(minus @ rho_atom @ one),
    )


def converged_steady_state(params: SystemParams, n_max_start: int = 2,
                           n_max_limit: int = 12, tol: float = 1e-4
                           ) -> tuple[SteadyState0, FockTruncation]:
    """Raise the Fock cutoff until populations move by less than ``tol``."""
    previous = lindblad_steady_state(params, FockTruncation(n_max_start))
    for n_max in range(n_max_start + 1, n_max_limit + 1):
        current = lindblad_steady_state(params, FockTruncation(n_max))
        change = max(abs(current.rho_11 - previous.rho_11),
                     abs(current.rho_mm - previous.rho_mm),
                     abs(current.rho_pp - previous.rho_pp),
                     abs(current.rho_m1 - previous.rho_m1))
        if change < tol:
            return current, FockTruncation(n_max)
        previous = current
    raise NonConvergedTruncation(
        f"populations still moving by > {tol:g} at n_max = {n_max_limit}")


# ---------------------------------------------------------------------------
# time-domain integration of the reduced equations
# ---------------------------------------------------------------------------

_STATE_ELEMENTS = ("mm", "11", "m1", "1m", "1p", "p1", "mp", "pm")


def _reduced_rhs(coeffs: CoefficientSet, delta_p: float, omega_p: float):
    """RHS of the reduced equations with explicit exp(+-i delta_p t) factors."""
    basis, r, x = coeffs.basis, coeffs.rates, coeffs.interference
    c, s = basis.c, basis.s
    x1, x2, x3, x4 = x.x1, x.x2, x.x3, x.x4
    g_m1 = r.Gamma3
    g_1p = r.Gamma_plus.conjugate() + 1j * (basis.lambda_1 - basis.lambda_plus)
    g_mp = r.gamma0_pair - 1j * basis.omega_R

    def rhs(t, y):
        z = y[0::2] + 1j * y[1::2]
        mm, p11, m1, om, op, po, mp, pm = z
        pp = 1.0 - mm - p11
        ep = np.exp(1j * delta_p * t)
        em = ep.conjugate()

        d_mm = (-r.R_minus_plus * mm + r.R_plus_minus * pp + r.R_1_minus * p11
                + s * (x1 * m1 + x1.conjugate() * om)
                + 1j * omega_p * c * (om * ep - m1 * em))
        d_11 = (-(r.R_1_plus + r.R_1_minus) * p11
                - s * (x2 * m1 + x2.conjugate() * om)
                + 1j * omega_p * (s * (op * ep - po * em) - c * (om * ep - m1 * em)))
        d_m1 = (-g_m1 * m1 - s * (x4 * p11 + x2.conjugate() * mm)
                + 1j * omega_p * ep * (s * mp + c * (p11 - mm)))
        d_1m = (-g_m1.conjugate() * om - s * (x4.conjugate() * p11 + x2 * mm)
                - 1j * omega_p * em * (s * pm + c * (p11 - mm)))
        d_1p = (-g_1p * op - s * x2 * mp
                + 1j * omega_p * em * (s * (p11 - pp) + c * mp))
        d_p1 = (-g_1p.conjugate() * po - s * x2.conjugate() * pm
                - 1j * omega_p * ep * (s * (p11 - pp) + c * pm))
        d_mp = (-g_mp * mp - s * x3 * op
                + 1j * omega_p * (s * m1 * em + c * op * ep))
        d_pm = (-g_mp.conjugate() * pm - s * x3.conjugate() * po
                - 1j * omega_p * (s * om * ep + c * po * em))

        dz = np.array([d_mm, d_11, d_m1, d_1m, d_1p, d_p1, d_mp, d_pm])
        out = np.empty_like(y)
        out[0::2] = dz.real
        out[1::2] = dz.imag
        return out

    return rhs


def time_domain_reference(coeffs: CoefficientSet, omega_p: float,
                          delta_p: float, horizon: float | None = None,
                          drift_tol: float = 1e-9, n_samples: int = 256,
                          rtol: float = 1e-10) -> LimitCycleRecord:
    """Integrate the reduced equations to their limit cycle and DFT it."""
    if delta_p == 0.0:
        raise ValueError("delta_p must be non-zero for a well-defined period")
    params = coeffs.params
    if horizon is None:
        horizon = 50.0 / min(params.gamma1, params.gamma2)
    period = 2.0 * math.pi / abs(delta_p)

    rhs = _reduced_rhs(coeffs, delta_p, omega_p)
    y = np.zeros(16)
    y[0] = 1.0   # start in rho_{--}; any state inside the simplex works

    t0 = 0.0
    previous = None
    drift = math.inf
    while True:
        t_grid = t0 + np.linspace(0.0, period, n_samples + 1)
        sol = solve_ivp(rhs, (t0, t0 + period), y, method="DOP853",
                        t_eval=t_grid, rtol=rtol, atol=1e-12)
        if not sol.success:
            raise NoLimitCycle(f"integrator failed: {sol.message}")
        block = sol.y[0::2, :n_samples] + 1j * sol.y[1::2, :n_samples]
        y = sol.y[:, -1]
        if previous is not None:
            drift = np.abs(block - previous).max()
            if drift < drift_tol:
                sample_times = t_grid[:n_samples]
                break
        previous = block
        t0 += period
        if t0 > horizon:
            raise NoLimitCycle(
                f"period drift {drift:.3e} above {drift_tol:g} at t = {t0:g}")

    trajectory = {name: block[i] for i, name in enumerate(_STATE_ELEMENTS)}
    trajectory["pp"] = 1.0 - trajectory["mm"] - trajectory["11"]
    herm_err = max(
        np.abs(trajectory["1m"] - trajectory["m1"].conj()).max(),
        np.abs(trajectory["p1"] - trajectory["1p"].conj()).max(),
        np.abs(trajectory["pm"] - trajectory["mp"].conj()).max(),
    )

    # phase of each sample relative to the absolute drive clock
    phases = np.exp(-1j * delta_p * sample_times)
    harmonics = {}
    for name, series in trajectory.items():
        harmonics[name] = {
            n: complex(np.mean(series * phases ** n)) for n in range(-3, 4)
        }
    return LimitCycleRecord(
        delta_p=delta_p, omega_p=omega_p,
        times=sample_times, trajectory=trajectory, harmonics=harmonics,
        drift=float(drift), hermiticity_error=float(herm_err),
    )
