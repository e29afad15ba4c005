"""Dressed basis and cavity-modified coefficient blocks.

The strong drive on |0> <-> |2> is diagonalized into dressed states

    |+> = s|0> + c|2>,   lambda_+ = +c^2 * Omega_R
    |-> = s|2> - c|0>,   lambda_- = -s^2 * Omega_R
    |1>,                 lambda_1 = -(omega21 - delta)

with c, s >= 0 and Omega_R = sqrt(delta^2 + 4 Omega_L^2).  Eliminating the
strongly damped cavity mode leaves the atom with frequency-selective decay:
every rate picks up a cavity filter B_i = (amplitude^2) * kappa / (kappa +
i(delta_c - nu)) evaluated at the dressed emission frequency nu, and the
shared mode generates cross couplings x_1..x_4 between the two transitions
that play the role of a spontaneously generated coherence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import SystemParams, effective_gamma12

__all__ = [
    "DegenerateDressing",
    "DressedBasis",
    "CavityResponse",
    "InterferenceTerms",
    "RateSet",
    "CoefficientSet",
    "dress",
    "cavity_response",
    "interference_terms",
    "rate_set",
    "coefficient_set",
]


class DegenerateDressing(ValueError):
    """No drive and no detuning: the dressed basis is undefined."""


@dataclass(frozen=True)
class DressedBasis:
    c: float
    s: float
    omega_R: float
    lambda_plus: float
    lambda_minus: float
    lambda_1: float


@dataclass(frozen=True)
class CavityResponse:
    """Cavity filter factors at the five dressed emission frequencies."""
    B0: complex
    B1: complex
    B2: complex
    B3: complex
    B4: complex


@dataclass(frozen=True)
class InterferenceTerms:
    x1: complex
    x2: complex
    x3: complex
    x4: complex


@dataclass(frozen=True)
class RateSet:
    """Population transfer rates and complex coherence dampings.

    ``gamma0_pair`` is the damping actually carried by the rho_{-+}
    coherence.  It differs from ``Gamma0`` by conjugating the B2 filter:
    the B2 channel acts on the |+> side of rho_{-+}, so its Purcell shift
    enters with the opposite sign to the population-side channels.
    """
    R_plus_minus: float
    R_minus_plus: float
    R_1_minus: float
    R_1_plus: float
    Gamma0: complex
    Gamma_minus: complex
    Gamma_plus: complex
    Gamma1: complex
    Gamma2: complex
    Gamma3: complex
    gamma0_pair: complex


@dataclass(frozen=True)
class CoefficientSet:
    """Everything the reduced dynamics needs, for one parameter set."""
    params: SystemParams
    gamma12: float
    basis: DressedBasis
    response: CavityResponse
    interference: InterferenceTerms
    rates: RateSet


def dress(params: SystemParams) -> DressedBasis:
    """Dressed mixing amplitudes and eigenvalues of the driven transition."""
    omega_R = math.sqrt(params.delta ** 2 + 4.0 * params.omega_L_rabi ** 2)
    if omega_R == 0.0:
        raise DegenerateDressing("omega_L_rabi = 0 and delta = 0")
    c2 = 0.5 + params.delta / (2.0 * omega_R)
    s2 = 0.5 - params.delta / (2.0 * omega_R)
    # clip tiny negative round-off at |delta| >> Omega_L
    c = math.sqrt(max(c2, 0.0))
    s = math.sqrt(max(s2, 0.0))
    return DressedBasis(
        c=c, s=s, omega_R=omega_R,
        lambda_plus=c2 * omega_R,
        lambda_minus=-s2 * omega_R,
        lambda_1=-(params.omega21 - params.delta),
    )


def cavity_response(params: SystemParams, basis: DressedBasis,
                    near_degenerate: bool = False) -> CavityResponse:
    """Cavity filters B0..B4.

    ``near_degenerate`` replaces B4 -> B0 and B3 -> B1, the approximation
    valid when the probe level is degenerate with |->; exact denominators
    are the default.
    """
    kappa = params.kappa
    dc = params.delta_c
    c2 = basis.c ** 2
    s2 = basis.s ** 2
    B0 = c2 * kappa / (kappa + 1j * dc)
    B1 = s2 * kappa / (kappa + 1j * (dc + basis.omega_R))
    B2 = c2 * kappa / (kappa + 1j * (dc - basis.omega_R))
    if near_degenerate:
        B3, B4 = B1, B0
    else:
        B3 = s2 * kappa / (kappa + 1j * (dc + params.omega21 - basis.lambda_minus))
        B4 = c2 * kappa / (kappa + 1j * (dc + params.omega21 - basis.lambda_plus))
    return CavityResponse(B0=B0, B1=B1, B2=B2, B3=B3, B4=B4)


def interference_terms(params: SystemParams, basis: DressedBasis,
                       resp: CavityResponse) -> InterferenceTerms:
    c, s = basis.c, basis.s
    g12 = effective_gamma12(params)
    gg = params.g1 * params.g2 / params.kappa
    return InterferenceTerms(
        x1=(c * c - s * s) * g12 + gg * (resp.B0 - resp.B3.conjugate()),
        x2=g12 + gg * (resp.B0 + resp.B1),
        x3=(2.0 * c * s + 1.0) * g12 + gg * (resp.B0.conjugate() + 2.0 * resp.B4 + resp.B3),
        x4=g12 + gg * (resp.B3 + resp.B4),
    )


def _lorentzian(kappa: float, detuning: float) -> float:
    return kappa * kappa / (kappa * kappa + detuning * detuning)


def rate_set(params: SystemParams, basis: DressedBasis,
             resp: CavityResponse) -> RateSet:
    c, s = basis.c, basis.s
    c2, s2 = c * c, s * s
    g1sq = params.g1 ** 2 / params.kappa
    g2sq = params.g2 ** 2 / params.kappa
    kappa = params.kappa
    dc = params.delta_c

    # |B_i|^2 / amplitude^4 written as unit Lorentzians; removable 0/0 at c or s = 0
    L1 = _lorentzian(kappa, dc + basis.omega_R)
    L2 = _lorentzian(kappa, dc - basis.omega_R)
    L3 = _lorentzian(kappa, dc + params.omega21 - basis.lambda_minus)
    L4 = _lorentzian(kappa, dc + params.omega21 - basis.lambda_plus)

    R_pm = 2.0 * c2 * c2 * (params.gamma2 + g2sq * L2)
    R_mp = 2.0 * s2 * s2 * (params.gamma2 + g2sq * L1)
    R_1m = 2.0 * c2 * (params.gamma1 + g1sq * L4)
    R_1p = 2.0 * s2 * (params.gamma1 + g1sq * L3)

    B0, B1, B2, B3, B4 = resp.B0, resp.B1, resp.B2, resp.B3, resp.B4
    Gamma0 = (params.gamma2 * (1.0 + 2.0 * c2 * s2)
              + g2sq * (s2 * (2.0 * B0 + 2.0 * B0.conjugate() + B1) + c2 * B2))
    Gamma_minus = (params.gamma1 + g1sq * (B3.conjugate() + B4.conjugate())
                   + s2 * (params.gamma2 + g2sq * (B0 + B1)))
    Gamma_plus = (params.gamma1 + g1sq * (B3.conjugate() + B4.conjugate())
                  + c2 * (params.gamma2 + g2sq * B2) + s2 * g2sq * B0)
    # rho_{-+} damping: B2 sits on the |+> (right) side, so it enters conjugated
    gamma0_pair = Gamma0 + c2 * g2sq * (B2.conjugate() - B2)

    shift = basis.lambda_plus - params.omega21
    return RateSet(
        R_plus_minus=R_pm, R_minus_plus=R_mp,
        R_1_minus=R_1m, R_1_plus=R_1p,
        Gamma0=Gamma0, Gamma_minus=Gamma_minus, Gamma_plus=Gamma_plus,
        Gamma1=Gamma0 + 1j * basis.omega_R,
        Gamma2=Gamma_plus - 1j * shift,
        Gamma3=Gamma_minus - 1j * shift,
        gamma0_pair=gamma0_pair,
    )


def coefficient_set(params: SystemParams,
                    near_degenerate: bool = False) -> CoefficientSet:
    """Assemble every coefficient block for one parameter set."""
    basis = dress(params)
    resp = cavity_response(params, basis, near_degenerate=near_degenerate)
    return CoefficientSet(
        params=params,
        gamma12=effective_gamma12(params),
        basis=basis,
        response=resp,
        interference=interference_terms(params, basis, resp),
        rates=rate_set(params, basis, resp),
    )
