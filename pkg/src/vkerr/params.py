"""Physical parameters and detuning conventions.

Every rate and frequency is a dimensionless multiple of a reference damping
rate gamma = 1.  The laser-frame detunings are

    delta   = omega_2 - omega_L      (drive detuning from the driven line)
    delta_c = omega_c - omega_L      (cavity detuning)
    delta_p = omega_p - omega_L      (probe detuning, derived)

while sweeps are reported against omega = omega_p - omega_1, the probe
offset from the probed line, which is what the spectra are plotted over.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

__all__ = [
    "SystemParams",
    "ProbeGrid",
    "RegimeAdvisory",
    "effective_gamma12",
    "probe_detuning_to_delta_p",
    "load_config",
]


class RegimeAdvisory(UserWarning):
    """Parameters are outside kappa >> g1, g2 >> gamma1, gamma2."""


@dataclass(frozen=True)
class SystemParams:
    """Immutable parameter set for the driven V-type atom in a cavity.

    ``theta`` is the angle between the two transition dipole moments and
    sets the free-space cross damping sqrt(gamma1*gamma2)*cos(theta);
    alternatively ``gamma12_override`` fixes the cross damping directly.
    The two are mutually exclusive; with neither given, the dipoles are
    taken perpendicular and the cross damping is exactly zero.
    """

    gamma1: float = 0.1
    gamma2: float = 0.1
    g1: float = 0.0
    g2: float = 0.0
    kappa: float = 100.0
    omega21: float = 200.0
    omega_L_rabi: float = 200.0
    delta: float = 0.0
    delta_c: float = 0.0
    theta: float | None = None
    gamma12_override: float | None = None
    regime_factor: float = 3.0
    advisory: bool = field(init=False, default=False)

    def __post_init__(self):
        if self.theta is not None and self.gamma12_override is not None:
            raise ValueError("theta and gamma12_override are mutually exclusive")
        if not (self.gamma1 > 0 and self.gamma2 > 0 and self.kappa > 0):
            raise ValueError("gamma1, gamma2 and kappa must be positive")
        if self.g1 < 0 or self.g2 < 0 or self.omega_L_rabi < 0:
            raise ValueError("g1, g2 and omega_L_rabi must be non-negative")
        for name in ("gamma1", "gamma2", "g1", "g2", "kappa", "omega21",
                     "omega_L_rabi", "delta", "delta_c", "theta"):
            value = getattr(self, name)
            if value is not None and not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
        g12 = effective_gamma12(self)
        bound = math.sqrt(self.gamma1 * self.gamma2)
        if abs(g12) > bound * (1.0 + 1e-12):
            raise ValueError(
                f"|gamma12| = {abs(g12):g} exceeds sqrt(gamma1*gamma2) = {bound:g}")
        # only channels that actually couple to the cavity constrain the
        # kappa >> g >> gamma hierarchy; g = 0 means nothing to eliminate
        f = self.regime_factor
        couplings = [g for g in (self.g1, self.g2) if g > 0.0]
        gamma_max = max(self.gamma1, self.gamma2)
        bad_cavity = all(self.kappa >= f * g and g >= f * gamma_max
                         for g in couplings)
        if not bad_cavity:
            object.__setattr__(self, "advisory", True)
            warnings.warn(
                "parameters violate kappa >> g1, g2 >> gamma1, gamma2 "
                f"(factor {f:g}); adiabatic elimination may degrade",
                RegimeAdvisory, stacklevel=2)

    def replace(self, **kwargs) -> "SystemParams":
        data = self.as_dict()
        # choosing one cross-damping convention displaces the other
        if "theta" in kwargs and "gamma12_override" not in kwargs:
            data["gamma12_override"] = None
        if "gamma12_override" in kwargs and "theta" not in kwargs:
            data["theta"] = None
        data.update(kwargs)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RegimeAdvisory)
            return SystemParams(**data)

    def as_dict(self) -> dict:
        return {
            "gamma1": self.gamma1, "gamma2": self.gamma2,
            "g1": self.g1, "g2": self.g2, "kappa": self.kappa,
            "omega21": self.omega21, "omega_L_rabi": self.omega_L_rabi,
            "delta": self.delta, "delta_c": self.delta_c,
            "theta": self.theta, "gamma12_override": self.gamma12_override,
            "regime_factor": self.regime_factor,
        }


@dataclass(frozen=True)
class ProbeGrid:
    """Strictly increasing grid of probe detunings omega = omega_p - omega_1."""

    omega_values: tuple

    def __init__(self, omega_values):
        values = tuple(float(w) for w in omega_values)
        if not values:
            raise ValueError("probe grid must not be empty")
        if any(not math.isfinite(w) for w in values):
            raise ValueError("probe grid values must be finite")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("probe grid must be strictly increasing")
        object.__setattr__(self, "omega_values", values)

    @classmethod
    def from_range(cls, start: float, stop: float, step: float) -> "ProbeGrid":
        if step <= 0:
            raise ValueError("step must be positive")
        n = int(round((stop - start) / step))
        return cls(start + step * i for i in range(n + 1))

    def __len__(self):
        return len(self.omega_values)

    def __iter__(self):
        return iter(self.omega_values)


def effective_gamma12(params: SystemParams) -> float:
    """Cross damping sqrt(gamma1*gamma2)*cos(theta), or the explicit override.

    Defaults to exactly zero (perpendicular dipoles): the interference is
    then purely cavity-engineered.
    """
    if params.gamma12_override is not None:
        return params.gamma12_override
    if params.theta is None:
        return 0.0
    return math.sqrt(params.gamma1 * params.gamma2) * math.cos(params.theta)


def probe_detuning_to_delta_p(omega: float, params: SystemParams) -> float:
    """Convert omega = omega_p - omega_1 to delta_p = omega_p - omega_L.

    omega_L = omega_2 - delta and omega_21 = omega_2 - omega_1, hence
    delta_p = omega - omega21 + delta.
    """
    return omega - params.omega21 + params.delta


# keys accepted in a config file, all plain numbers (gamma12_override may be null)
_CONFIG_KEYS = ("gamma1", "gamma2", "g1", "g2", "kappa", "omega21",
                "omega_L_rabi", "delta", "delta_c", "theta",
                "gamma12_override", "regime_factor")


def load_config(path) -> SystemParams:
    """Load a flat JSON config whose keys mirror the SystemParams fields."""
    with open(path) as f:
        raw = json.load(f)
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    unknown = set(raw) - set(_CONFIG_KEYS)
    if unknown:
        raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")
    if "theta" in raw and raw.get("gamma12_override") is not None:
        raise ValueError(f"{path}: theta and gamma12_override are mutually exclusive")
    kwargs = {}
    for key, value in raw.items():
        if key == "gamma12_override":
            kwargs[key] = None if value is None else float(value)
        else:
            kwargs[key] = float(value)
    return SystemParams(**kwargs)
