"""Zeno closed forms for a neutron spin precessing through field regions.

The ideal survival probability after n measurements is [cos^2(pi/2n)]^n and
tends to one.  Beam uncertainties put a floor phi0 = dE_m / (4 dE_k) under
the per-measurement rotation angle, so the limited form falls to zero for
large n instead; the crossover count is ``neutron_n_max``.

The exact-cosine forms are primary.  ``p_up_limited_asymptotic`` keeps the
small-angle exponential exp(-phi0^2 n) as a diagnostic; the two visibly
disagree at moderate n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BoundViolationError, ConfigError
from .ion import _guarded_floor


def _consistent(given: float, derived: float, name: str) -> None:
    if abs(given - derived) > 1e-12 * max(abs(given), abs(derived)):
        raise ConfigError(
            f"value {given:.12g} disagrees with the raw-input value {derived:.12g}",
            field=name,
        )


@dataclass(frozen=True)
class NeutronConfig:
    """Energy scales of the neutron-spin experiment.

    Either give the energies directly (``delta_e_m`` is the magnetic gap
    2 mu B, ``delta_e_k`` the kinetic-energy spread m v0 dv at the mean
    speed), or give the raw quantities and let them be derived.  When both
    are given they must agree to 1e-12 relative.  ``delta_x`` (position
    uncertainty) is accepted for completeness but enters no formula here.
    Units have hbar = 1.
    """

    delta_e_m: float = None  # type: ignore[assignment]
    delta_e_k: float = None  # type: ignore[assignment]
    mu: float | None = None
    b_field: float | None = None
    length_l: float | None = None
    v0: float | None = None
    delta_v: float | None = None
    mass: float | None = None
    delta_x: float | None = None

    def __post_init__(self):
        if self.mu is not None and self.b_field is not None:
            raw = 2.0 * self.mu * self.b_field
            if self.delta_e_m is None:
                object.__setattr__(self, "delta_e_m", raw)
            else:
                _consistent(self.delta_e_m, raw, "neutron.delta_e_m")
        if self.mass is not None and self.v0 is not None and self.delta_v is not None:
            raw = self.mass * self.v0 * self.delta_v
            if self.delta_e_k is None:
                object.__setattr__(self, "delta_e_k", raw)
            else:
                _consistent(self.delta_e_k, raw, "neutron.delta_e_k")
        if self.delta_e_m is None or not (
            math.isfinite(self.delta_e_m) and self.delta_e_m > 0
        ):
            raise ConfigError(
                "must be finite and > 0 (give it or mu and b_field)",
                field="neutron.delta_e_m",
            )
        if self.delta_e_k is None or not (
            math.isfinite(self.delta_e_k) and self.delta_e_k > 0
        ):
            raise ConfigError(
                "must be finite and > 0 (give it or mass, v0 and delta_v)",
                field="neutron.delta_e_k",
            )

    def traversal_angle(self) -> float:
        """Spin rotation mu*B*l/v0 across one field region (the ideal pi/2N)."""
        if None in (self.mu, self.b_field, self.length_l, self.v0):
            raise ConfigError(
                "needs mu, b_field, length_l and v0", field="neutron.length_l"
            )
        return self.mu * self.b_field * self.length_l / self.v0


def _check_n(n: int) -> None:
    if not (isinstance(n, int) and n >= 1):
        raise ValueError("n must be an integer >= 1")


def p_up_ideal(n: int) -> float:
    """Survival probability [cos^2(pi/2n)]^n after n ideal measurements."""
    _check_n(n)
    return math.cos(math.pi / (2.0 * n)) ** (2 * n)


def phi_zero(cfg: NeutronConfig) -> float:
    """Lower bound on the per-measurement angle, dE_m / (4 dE_k)."""
    if not cfg.delta_e_m > 0 or not cfg.delta_e_k > 0:
        raise ValueError("energies must be positive")
    return cfg.delta_e_m / (4.0 * cfg.delta_e_k)


def p_up_limited(n: int, phi0: float) -> float:
    """Survival with the per-measurement angle clamped from below at ``phi0``.

    Equals :func:`p_up_ideal` while pi/2n >= phi0; for larger n the angle
    sticks at phi0 and the survival decays like exp(-phi0^2 n).
    """
    _check_n(n)
    if not 0.0 < phi0 < math.pi / 2.0:
        raise ValueError("phi0 must lie in (0, pi/2)")
    phi = max(math.pi / (2.0 * n), phi0)
    return math.cos(phi) ** (2 * n)


def p_up_limited_asymptotic(n: int, phi0: float) -> float:
    """Small-angle exponential exp(-phi0^2 n); diagnostic only."""
    _check_n(n)
    if not 0.0 < phi0 < math.pi / 2.0:
        raise ValueError("phi0 must lie in (0, pi/2)")
    return math.exp(-(phi0**2) * n)


def neutron_n_max(cfg: NeutronConfig) -> int:
    """Largest measurement count before the angle floor binds, floor(pi/(2 phi0)).

    Raises
    ------
    BoundViolationError
        If phi0 > pi/2, where not even one measurement fits.
    """
    phi0 = phi_zero(cfg)
    if phi0 > math.pi / 2.0:
        raise BoundViolationError(
            f"phi0 = {phi0:.6g} exceeds pi/2; no valid measurement count"
        )
    return _guarded_floor(math.pi / (2.0 * phi0))
