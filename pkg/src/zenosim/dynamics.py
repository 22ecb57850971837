"""Time evolution: Bloch precession, projective measurement, Lindblad dynamics.

The two-level drive rotates the Bloch vector about the first axis,

    dR/dt = w x R,    w = (Omega, 0, 0),

so a system started in the lower level has r3(t) = -cos(Omega t).  A
projective population measurement zeroes the coherences and leaves the
populations untouched.

The three-level model adds a short-lived auxiliary level (index 2) coupled to
the lower level by square optical pulses and decaying back to it at rate
gamma = 1/tau_sp.  Its master equation,

    drho/dt = -i [H(t), rho] + gamma (L rho L+ - {L+L, rho}/2),   L = |0><2|,

is integrated with a fixed-step classical 4th-order Runge-Kutta scheme, with
steps aligned to the pulse-window boundaries so the piecewise-constant
Hamiltonian never changes inside a step.  The drive signs follow the Bloch
convention above, which fixes H_rf = -(Omega/2)(|0><1| + |1><0|).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, IntegrationError, InvalidStateError
from .states import BlochVector, as_density, min_eigenvalue

#: Trace drift tolerated along a stored trajectory.
TRAJECTORY_TRACE_TOL = 1e-9
#: Hermiticity residue tolerated along a stored trajectory.
TRAJECTORY_HERMITICITY_TOL = 1e-10
#: Most negative eigenvalue tolerated along a stored trajectory.
TRAJECTORY_MIN_EIG_TOL = 1e-8

#: Steps per fastest timescale required of the integrator step.
_STEP_MARGIN = 20


@dataclass(frozen=True)
class IonConfig:
    """Drive and decay parameters of the two-level ion.

    ``omega`` is the Rabi frequency of the always-on drive, ``tau_sp`` the
    spontaneous lifetime of the auxiliary measurement level, and ``n_pulses``
    the number of equispaced measurements during the inversion pulse of
    duration ``t_pi``.
    """

    omega: float
    tau_sp: float
    n_pulses: int

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ConfigError("must be finite and > 0", field="ion.omega")
        if not (math.isfinite(self.tau_sp) and self.tau_sp > 0):
            raise ConfigError("must be finite and > 0", field="ion.tau_sp")
        if not (isinstance(self.n_pulses, int) and self.n_pulses >= 1):
            raise ConfigError("must be an integer >= 1", field="ion.n_pulses")

    @property
    def t_pi(self) -> float:
        """Duration of the population-inverting drive pulse, pi/omega."""
        return math.pi / self.omega


@dataclass(frozen=True)
class PulseSchedule:
    """Timing of the optical measurement pulses.

    Each measurement is a square pulse on the 0<->2 transition ending at its
    measurement time, so the last pulse ends exactly when the drive pulse
    does.  ``rf_during_pulse`` keeps the two-level drive on inside the
    windows (the default) or gates it off.
    """

    measurement_times: tuple[float, ...]
    optical_pulse_duration: float
    optical_rabi: float
    rf_during_pulse: bool = True

    def __post_init__(self):
        times = tuple(float(t) for t in self.measurement_times)
        object.__setattr__(self, "measurement_times", times)
        if not times:
            raise ConfigError("needs at least one time", field="schedule.measurement_times")
        if not all(math.isfinite(t) for t in times):
            raise ConfigError("times must be finite", field="schedule.measurement_times")
        gaps = [times[0]] + [b - a for a, b in zip(times, times[1:])]
        if min(gaps) <= 0:
            raise ConfigError(
                "times must be strictly increasing and start after 0",
                field="schedule.measurement_times",
            )
        if not (math.isfinite(self.optical_pulse_duration) and self.optical_pulse_duration > 0):
            raise ConfigError("must be finite and > 0", field="schedule.optical_pulse_duration")
        if not self.optical_pulse_duration < min(gaps):
            raise ConfigError(
                "pulses must be shorter than the measurement spacing",
                field="schedule.optical_pulse_duration",
            )
        if not (math.isfinite(self.optical_rabi) and self.optical_rabi > 0):
            raise ConfigError("must be finite and > 0", field="schedule.optical_rabi")

    @classmethod
    def equispaced(
        cls,
        ion: IonConfig,
        duration_fraction: float = 0.025,
        pulse_area: float = math.pi,
        rf_during_pulse: bool = True,
    ) -> "PulseSchedule":
        """Build the schedule tau_k = k T / N for ``ion``.

        The pulse length is ``duration_fraction`` of the spacing T/N and the
        optical Rabi frequency is set so each pulse has area ``pulse_area``
        (a pi pulse by default).  The default fraction keeps the decay during
        a pulse weak (gamma * duration <= 1) so the pulse is not overdamped;
        overdamping suppresses the optical transfer and weakens the
        measurement itself.
        """
        if not 0 < duration_fraction < 1:
            raise ConfigError("must be in (0, 1)", field="schedule.pulse_duration_fraction")
        if not pulse_area > 0:
            raise ConfigError("must be > 0", field="schedule.pulse_area")
        n = ion.n_pulses
        times = tuple(ion.t_pi * (k / n) for k in range(1, n + 1))
        duration = duration_fraction * (ion.t_pi / n)
        return cls(times, duration, pulse_area / duration, rf_during_pulse)


@dataclass(frozen=True)
class LindbladConfig:
    """Full three-level integration setup.

    ``gamma`` defaults to 1/tau_sp and must stay consistent with it;
    ``integrator_step`` defaults to 1/``_STEP_MARGIN`` of the fastest
    timescale and may only be made smaller.
    """

    ion: IonConfig
    schedule: PulseSchedule | None = None
    gamma: float = field(default=None)  # type: ignore[assignment]
    integrator_step: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.gamma is None:
            object.__setattr__(self, "gamma", 1.0 / self.ion.tau_sp)
        if abs(self.gamma * self.ion.tau_sp - 1.0) > 1e-12:
            raise ConfigError("gamma must equal 1/tau_sp", field="lindblad.gamma")
        if self.schedule is not None:
            t_end = self.schedule.measurement_times[-1]
            if abs(t_end - self.ion.t_pi) > 1e-12 * self.ion.t_pi:
                raise ConfigError(
                    "last measurement must coincide with the end of the drive pulse",
                    field="schedule.measurement_times",
                )
        bound = self.max_step()
        if self.integrator_step is None:
            object.__setattr__(self, "integrator_step", bound)
        if not 0 < self.integrator_step <= bound * (1 + 1e-12):
            raise ConfigError(
                f"must be in (0, {bound:.6g}] to resolve the fastest timescale",
                field="lindblad.integrator_step",
            )

    def max_step(self) -> float:
        """Largest admissible step: fastest timescale over ``_STEP_MARGIN``."""
        scales = [1.0 / self.ion.omega]
        if self.gamma > 0:
            scales.append(1.0 / self.gamma)
        if self.schedule is not None:
            scales.append(1.0 / self.schedule.optical_rabi)
        return min(scales) / _STEP_MARGIN


def evolve_bloch(r0: BlochVector, omega: float, dt: float) -> BlochVector:
    """Rotate ``r0`` about the first axis for a time ``dt`` at frequency ``omega``.

    Solves dR/dt = (omega, 0, 0) x R exactly; the norm is preserved.

    Raises
    ------
    ValueError
        If ``dt`` is negative.
    """
    if dt < 0:
        raise ValueError("dt must be >= 0")
    r0 = BlochVector(*r0)
    angle = omega * dt
    c, s = math.cos(angle), math.sin(angle)
    return BlochVector(r0.r1, r0.r2 * c - r0.r3 * s, r0.r2 * s + r0.r3 * c)


def apply_projection(rho) -> np.ndarray:
    """Projective population measurement: zero the coherences, keep the diagonal."""
    rho = as_density(rho)
    return np.diag(np.diag(rho)).astype(complex)


def _validate_step(rho: np.ndarray, t: float) -> None:
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > TRAJECTORY_HERMITICITY_TOL:
        raise IntegrationError(f"state lost Hermiticity (residue {herm:.3e})", time=t)
    trace = abs(complex(rho.trace()) - 1.0)
    if trace > TRAJECTORY_TRACE_TOL:
        raise IntegrationError(f"state lost unit trace (residue {trace:.3e})", time=t)
    low = min_eigenvalue(0.5 * (rho + rho.conj().T))
    if low < -TRAJECTORY_MIN_EIG_TOL:
        raise IntegrationError(f"state lost positivity (min eig {low:.3e})", time=t)


def _segments(cfg: LindbladConfig) -> list[tuple[float, float, bool]]:
    """Split [0, T] into (start, end, pulse_on) pieces at the window edges."""
    t_end = cfg.ion.t_pi
    if cfg.schedule is None:
        return [(0.0, t_end, False)]
    d = cfg.schedule.optical_pulse_duration
    segs: list[tuple[float, float, bool]] = []
    cursor = 0.0
    for tk in cfg.schedule.measurement_times:
        start = tk - d
        if start > cursor:
            segs.append((cursor, start, False))
        segs.append((start, tk, True))
        cursor = tk
    if t_end - cursor > 1e-12 * t_end:
        segs.append((cursor, t_end, False))
    return segs


def integrate_lindblad(cfg: LindbladConfig, rho0) -> list[tuple[float, np.ndarray]]:
    """Integrate the three-level master equation over the drive pulse.

    Parameters
    ----------
    cfg : LindbladConfig
        Drive, decay, pulse schedule, and step size.
    rho0 : array_like
        Initial 3x3 density matrix.

    Returns
    -------
    list of (time, ndarray)
        The stored trajectory, one state per integrator step, ending exactly
        at ``cfg.ion.t_pi``.  Every stored state is validated for trace,
        Hermiticity, and positivity; the returned arrays are read-only.

    Raises
    ------
    InvalidStateError
        If ``rho0`` is not 3x3.
    IntegrationError
        If any stored state (including ``rho0`` at t=0) violates a state
        invariant; the error carries the offending time.
    """
    rho = as_density(rho0)
    if rho.shape != (3, 3):
        raise InvalidStateError("initial state must be 3x3")

    omega = cfg.ion.omega
    h_free = np.zeros((3, 3), dtype=complex)
    h_free[0, 1] = h_free[1, 0] = -omega / 2.0
    if cfg.schedule is not None:
        h_pulse = h_free.copy() if cfg.schedule.rf_during_pulse else np.zeros(
            (3, 3), dtype=complex
        )
        h_pulse[0, 2] = h_pulse[2, 0] = -cfg.schedule.optical_rabi / 2.0
    else:
        h_pulse = h_free

    lower = np.zeros((3, 3), dtype=complex)
    lower[0, 2] = 1.0  # |0><2|: the auxiliary level decays to the lower level only
    lower_dag = lower.conj().T
    number = lower_dag @ lower
    gamma = cfg.gamma

    def rhs(ham: np.ndarray, state: np.ndarray) -> np.ndarray:
        out = -1j * (ham @ state - state @ ham)
        if gamma != 0.0:
            out += gamma * (
                lower @ state @ lower_dag - 0.5 * (number @ state + state @ number)
            )
        return out

    traj: list[tuple[float, np.ndarray]] = []

    def store(t: float, state: np.ndarray) -> None:
        _validate_step(state, t)
        snapshot = state.copy()
        snapshot.flags.writeable = False
        traj.append((t, snapshot))

    store(0.0, rho)
    for start, end, pulse_on in _segments(cfg):
        ham = h_pulse if pulse_on else h_free
        n_steps = max(1, math.ceil((end - start) / cfg.integrator_step))
        h = (end - start) / n_steps
        for i in range(1, n_steps + 1):
            k1 = rhs(ham, rho)
            k2 = rhs(ham, rho + (0.5 * h) * k1)
            k3 = rhs(ham, rho + (0.5 * h) * k2)
            k4 = rhs(ham, rho + h * k3)
            rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            store(start + i * h if i < n_steps else end, rho)
    return traj


def populations(traj: list[tuple[float, np.ndarray]]) -> list[tuple[float, float, float, float]]:
    """Extract (time, p1, p2, p3) from a stored trajectory."""
    if not traj:
        raise ValueError("empty trajectory")
    return [
        (t, rho[0, 0].real, rho[1, 1].real, rho[2, 2].real) for t, rho in traj
    ]
