"""Perturbative Floquet solution of the reduced dressed-state dynamics.

Every density-matrix element is expanded twice: in harmonics of the probe
detuning and in powers of the probe Rabi frequency,

    rho_jk(t) = sum_m sum_n  Omega_p^m * (rho_jk)_m^n * exp(i n delta_p t),

with Omega_p factored out analytically, so the stored coefficients are
independent of the probe strength.  The stationary hierarchy closes order
by order: populations at (m, n) see the slow coherence rho_{-1} at the
same order (the interference terms), so the two are solved together
through a 2x2 kernel; the fast pair (rho_{1+}, rho_{-+}) couples only
within itself plus order m-1 sources.

Element labels: 'mm' = rho_{--}, '11' = rho_{11}, 'pp' = rho_{++},
'm1' = rho_{-1}, '1m' = rho_{1-}, '1p' = rho_{1+}, 'p1' = rho_{+1},
'mp' = rho_{-+}, 'pm' = rho_{+-}, with rho_ab = <a|rho|b>.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dressed import CoefficientSet

__all__ = [
    "ELEMENTS",
    "CONJUGATE_ELEMENT",
    "POPULATIONS",
    "SingularSteadyState",
    "SingularKernel",
    "HarmonicIndex",
    "HarmonicTable",
    "SteadyState0",
    "zeroth_order_steady_state",
    "harmonic",
    "probe_coherence",
]

POPULATIONS = ("mm", "11", "pp")
ELEMENTS = POPULATIONS + ("m1", "1m", "1p", "p1", "mp", "pm")
CONJUGATE_ELEMENT = {
    "mm": "mm", "11": "11", "pp": "pp",
    "m1": "1m", "1m": "m1", "1p": "p1", "p1": "1p", "mp": "pm", "pm": "mp",
}

_REL_TOL = 1e-12


class SingularSteadyState(ArithmeticError):
    """The stationary 2x2 population system has no unique solution."""


class SingularKernel(ArithmeticError):
    """A harmonic denominator or kernel determinant vanished."""


@dataclass(frozen=True)
class HarmonicIndex:
    element: str
    m: int
    n: int

    def __post_init__(self):
        if self.element not in ELEMENTS:
            raise ValueError(f"unknown element {self.element!r}")
        if self.m < 0:
            raise ValueError("probe order m must be >= 0")


@dataclass(frozen=True)
class SteadyState0:
    """Probe-free stationary state in the dressed basis."""
    rho_11: float
    rho_mm: float
    rho_pp: float
    rho_m1: complex


class HarmonicTable:
    """Memoized harmonic coefficients for one (coefficients, delta_p) pair.

    Construction is lazy: requesting any coefficient triggers the finite
    recursion down to (m, n) = (0, 0).  A populated table is immutable in
    practice; distinct delta_p evaluations share nothing mutable.
    """

    def __init__(self, coeffs: CoefficientSet, delta_p: float):
        self.coeffs = coeffs
        self.delta_p = float(delta_p)
        self._cache: dict[tuple[str, int, int], complex] = {}

        basis, rates = coeffs.basis, coeffs.rates
        self._c, self._s = basis.c, basis.s
        x = coeffs.interference
        self._x1, self._x2, self._x3, self._x4 = x.x1, x.x2, x.x3, x.x4
        # static drift constants: damping + i * (bare rotation of the element)
        self._gamma_m1 = rates.Gamma3
        self._gamma_1p = (rates.Gamma_plus.conjugate()
                          + 1j * (basis.lambda_1 - basis.lambda_plus))
        self._gamma_mp = rates.gamma0_pair - 1j * basis.omega_R

    # -- public access ------------------------------------------------

    def get(self, element: str, m: int, n: int) -> complex:
        if element not in ELEMENTS:
            raise ValueError(f"unknown element {element!r}")
        if m < 0:
            return 0.0 + 0.0j
        if m == 0 and n != 0:
            return 0.0 + 0.0j
        key = (element, m, n)
        if key not in self._cache:
            self._compute(element, m, n)
        return self._cache[key]

    def __getitem__(self, idx: HarmonicIndex) -> complex:
        return self.get(idx.element, idx.m, idx.n)

    # -- denominators ---------------------------------------------------

    def _denominator(self, gamma: complex, n: int) -> complex:
        d = gamma + 1j * n * self.delta_p
        if abs(d) <= _REL_TOL * (abs(gamma) + abs(n * self.delta_p)):
            raise SingularKernel(f"vanishing denominator at n={n}")
        return d

    # -- the closed recursion -------------------------------------------

    def _compute(self, element: str, m: int, n: int) -> None:
        if element in POPULATIONS or element in ("m1", "1m"):
            self._solve_slow_block(m, n)
        elif element in ("1p", "mp"):
            self._solve_pair(m, n)
        else:
            self._solve_pair_conjugate(m, n)

    def _solve_slow_block(self, m: int, n: int) -> None:
        """Populations and rho_{-1}, rho_{1-} at (m, n) in one shot."""
        s, c = self._s, self._c
        x1, x2, x4 = self._x1, self._x2, self._x4
        r = self.coeffs.rates
        g3 = self._denominator(self._gamma_m1, n)
        g3c = self._denominator(self._gamma_m1.conjugate(), n)
        indp = 1j * n * self.delta_p

        # order m-1 probe sources (one power of Omega_p consumed per i factor)
        alpha = 1j * (s * self.get("mp", m - 1, n - 1)
                      + c * (self.get("11", m - 1, n - 1) - self.get("mm", m - 1, n - 1)))
        beta = -1j * (s * self.get("pm", m - 1, n + 1)
                      + c * (self.get("11", m - 1, n + 1) - self.get("mm", m - 1, n + 1)))
        d_1m = self.get("1m", m - 1, n - 1) - self.get("m1", m - 1, n + 1)
        d_1p = self.get("1p", m - 1, n - 1) - self.get("p1", m - 1, n + 1)

        s2 = s * s
        H1 = (r.R_minus_plus + r.R_plus_minus + indp
              + s2 * (x1 * x2.conjugate() / g3 + x1.conjugate() * x2 / g3c))
        H2 = (r.R_plus_minus - r.R_1_minus
              + s2 * (x1 * x4 / g3 + x1.conjugate() * x4.conjugate() / g3c))
        H3 = (r.R_1_plus + r.R_1_minus + indp
              - s2 * (x2 * x4 / g3 + x2.conjugate() * x4.conjugate() / g3c))
        H4 = s2 * abs(x2) ** 2 * (1.0 / g3 + 1.0 / g3c)

        const = r.R_plus_minus if (m == 0 and n == 0) else 0.0
        rhs_u = (const
                 + s * (x1 * alpha / g3 + x1.conjugate() * beta / g3c)
                 + 1j * c * d_1m)
        rhs_w = (-s * (x2 * alpha / g3 + x2.conjugate() * beta / g3c)
                 + 1j * (s * d_1p - c * d_1m))

        det = H1 * H3 + H2 * H4
        scale = abs(H1 * H3) + abs(H2 * H4)
        if abs(det) <= _REL_TOL * scale:
            exc = SingularSteadyState if m == 0 else SingularKernel
            raise exc(f"population kernel singular at (m={m}, n={n})")
        u = (rhs_u * H3 - H2 * rhs_w) / det   # rho_{--}
        w = (H1 * rhs_w + H4 * rhs_u) / det   # rho_{11}

        trace = 1.0 if (m == 0 and n == 0) else 0.0
        self._cache[("mm", m, n)] = u
        self._cache[("11", m, n)] = w
        self._cache[("pp", m, n)] = trace - u - w
        self._cache[("m1", m, n)] = (alpha - s * (x4 * w + x2.conjugate() * u)) / g3
        self._cache[("1m", m, n)] = (beta - s * (x4.conjugate() * w + x2 * u)) / g3c

    def _solve_pair(self, m: int, n: int) -> None:
        s, c = self._s, self._c
        x2, x3 = self._x2, self._x3
        g2 = self._denominator(self._gamma_1p, n)
        g1 = self._denominator(self._gamma_mp, n)
        p_src = 1j * (s * (self.get("11", m - 1, n + 1) - self.get("pp", m - 1, n + 1))
                      + c * self.get("mp", m - 1, n + 1))
        q_src = 1j * (s * self.get("m1", m - 1, n + 1)
                      + c * self.get("1p", m - 1, n - 1))
        det = g1 * g2 - s * s * x2 * x3
        if abs(det) <= _REL_TOL * (abs(g1 * g2) + abs(s * s * x2 * x3)):
            raise SingularKernel(f"coherence pair kernel singular at (m={m}, n={n})")
        self._cache[("1p", m, n)] = (g1 * p_src - s * x2 * q_src) / det
        self._cache[("mp", m, n)] = (g2 * q_src - s * x3 * p_src) / det

    def _solve_pair_conjugate(self, m: int, n: int) -> None:
        # independent evaluation of rho_{+1}, rho_{+-} from the conjugated
        # equations of motion, not from the hermiticity identity
        s, c = self._s, self._c
        x2c, x3c = self._x2.conjugate(), self._x3.conjugate()
        g2c = self._denominator(self._gamma_1p.conjugate(), n)
        g1c = self._denominator(self._gamma_mp.conjugate(), n)
        p_src = -1j * (s * (self.get("11", m - 1, n - 1) - self.get("pp", m - 1, n - 1))
                       + c * self.get("pm", m - 1, n - 1))
        q_src = -1j * (s * self.get("1m", m - 1, n - 1)
                       + c * self.get("p1", m - 1, n + 1))
        det = g1c * g2c - s * s * x2c * x3c
        if abs(det) <= _REL_TOL * (abs(g1c * g2c) + abs(s * s * x2c * x3c)):
            raise SingularKernel(f"coherence pair kernel singular at (m={m}, n={n})")
        self._cache[("p1", m, n)] = (g1c * p_src - s * x2c * q_src) / det
        self._cache[("pm", m, n)] = (g2c * q_src - s * x3c * p_src) / det


def harmonic(idx: HarmonicIndex, delta_p: float, coeffs: CoefficientSet,
             table: HarmonicTable | None = None) -> complex:
    """Coefficient of Omega_p^m for one element/harmonic."""
    if table is None:
        table = HarmonicTable(coeffs, delta_p)
    elif table.coeffs is not coeffs or table.delta_p != delta_p:
        raise ValueError("table was built for different coefficients")
    return table[idx]


def zeroth_order_steady_state(coeffs: CoefficientSet) -> SteadyState0:
    """Stationary probe-free state: populations plus the rho_{-1} coherence.

    The (0, 0) system is closed by eliminating rho_{-1} through its own
    stationary equation and rho_{++} by the unit trace, which feeds the
    constant source R_{+-} into the rho_{--} balance.
    """
    table = HarmonicTable(coeffs, 0.0)
    return SteadyState0(
        rho_11=table.get("11", 0, 0).real,
        rho_mm=table.get("mm", 0, 0).real,
        rho_pp=table.get("pp", 0, 0).real,
        rho_m1=table.get("m1", 0, 0),
    )


def probe_coherence(order: int, delta_p: float, coeffs: CoefficientSet,
                    table: HarmonicTable | None = None) -> tuple[complex, complex]:
    """((rho_{1+})_k^{-1}, (rho_{1-})_k^{-1}) for k = 1 or 3."""
    if order not in (1, 3):
        raise ValueError("probe order must be 1 or 3")
    if table is None:
        table = HarmonicTable(coeffs, delta_p)
    return table.get("1p", order, -1), table.get("1m", order, -1)
