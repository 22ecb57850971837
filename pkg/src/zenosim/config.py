"""Sectioned key-value configuration files for the command-line runner.

The format is INI-style with sections ``[ion]``, ``[schedule]``,
``[neutron]``, ``[sweep]``, and ``[output]``.  Unknown sections or keys are
rejected so a typo in a physics parameter cannot silently fall back to a
default.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field

from .errors import ConfigError
from .neutron import NeutronConfig

_ALLOWED_KEYS = {
    "ion": ("omega", "tau_sp"),
    "schedule": (
        "pulse_duration_fraction",
        "pulse_area",
        "rf_during_pulse",
        "integrator_step",
    ),
    "neutron": (
        "delta_e_m",
        "delta_e_k",
        "mu",
        "b_field",
        "length_l",
        "v0",
        "delta_v",
        "mass",
        "delta_x",
    ),
    "sweep": ("n_list", "lindblad"),
    "output": ("format", "path"),
}

_FORMATS = ("csv", "json")


@dataclass(frozen=True)
class ScheduleParams:
    """Optical measurement-pulse knobs shared by all rows of a sweep.

    Pulses last ``pulse_duration_fraction`` of the measurement spacing and
    carry ``pulse_area`` on the optical transition (pi by default).
    """

    pulse_duration_fraction: float = 0.025
    pulse_area: float = math.pi
    rf_during_pulse: bool = True
    integrator_step: float | None = None


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration for one runner invocation."""

    ion_omega: float | None = None
    ion_tau_sp: float | None = None
    schedule: ScheduleParams = field(default_factory=ScheduleParams)
    neutron: NeutronConfig | None = None
    n_list: tuple[int, ...] | None = None
    lindblad: bool = False
    out_format: str = "csv"
    out_path: str | None = None

    def require_ion(self) -> tuple[float, float]:
        if self.ion_omega is None or self.ion_tau_sp is None:
            raise ConfigError("section [ion] with omega and tau_sp is required", field="ion")
        return self.ion_omega, self.ion_tau_sp

    def require_neutron(self) -> NeutronConfig:
        if self.neutron is None:
            raise ConfigError("section [neutron] is required", field="neutron")
        return self.neutron

    def require_n_list(self) -> tuple[int, ...]:
        if self.n_list is None:
            raise ConfigError("n_list is required (config [sweep] or --n-list)", field="sweep.n_list")
        return tuple(sorted(set(self.n_list)))


def parse_n_list(text: str, field_name: str = "sweep.n_list") -> tuple[int, ...]:
    """Parse a comma-separated list of measurement counts, sorted and deduplicated."""
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            n = int(part)
        except ValueError as exc:
            raise ConfigError(f"not an integer: {part!r}", field=field_name) from exc
        if n < 1:
            raise ConfigError(f"counts must be >= 1, got {n}", field=field_name)
        values.append(n)
    return tuple(sorted(set(values)))


def _positive_float(raw: str, field_name: str) -> float:
    try:
        value = float(raw)
    except ValueError as exc:
        raise ConfigError(f"not a number: {raw!r}", field=field_name) from exc
    if not (math.isfinite(value) and value > 0):
        raise ConfigError(f"must be finite and > 0, got {value}", field=field_name)
    return value


def _boolean(raw: str, field_name: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {raw!r}", field=field_name)


def parse_config(path) -> RunConfig:
    """Read and validate a runner configuration file.

    Raises
    ------
    ConfigError
        On unreadable files, unknown sections or keys, and malformed values;
        the message carries the dotted field path.
    """
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=(";", "#")
    )
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}", field=str(path)) from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file: {exc}", field=str(path)) from exc

    for section in parser.sections():
        if section not in _ALLOWED_KEYS:
            raise ConfigError("unknown section", field=section)
        for key in parser[section]:
            if key not in _ALLOWED_KEYS[section]:
                raise ConfigError("unknown key", field=f"{section}.{key}")

    ion_omega = ion_tau_sp = None
    if parser.has_section("ion"):
        ion = parser["ion"]
        if "omega" in ion:
            ion_omega = _positive_float(ion["omega"], "ion.omega")
        if "tau_sp" in ion:
            ion_tau_sp = _positive_float(ion["tau_sp"], "ion.tau_sp")

    schedule = ScheduleParams()
    if parser.has_section("schedule"):
        sched = parser["schedule"]
        fraction = schedule.pulse_duration_fraction
        if "pulse_duration_fraction" in sched:
            fraction = _positive_float(
                sched["pulse_duration_fraction"], "schedule.pulse_duration_fraction"
            )
            if not fraction < 1:
                raise ConfigError(
                    "must be < 1", field="schedule.pulse_duration_fraction"
                )
        area = schedule.pulse_area
        if "pulse_area" in sched:
            area = _positive_float(sched["pulse_area"], "schedule.pulse_area")
        rf_on = schedule.rf_during_pulse
        if "rf_during_pulse" in sched:
            rf_on = _boolean(sched["rf_during_pulse"], "schedule.rf_during_pulse")
        step = schedule.integrator_step
        if "integrator_step" in sched:
            step = _positive_float(sched["integrator_step"], "schedule.integrator_step")
        schedule = ScheduleParams(fraction, area, rf_on, step)

    neutron = None
    if parser.has_section("neutron"):
        kwargs = {
            key: _positive_float(parser["neutron"][key], f"neutron.{key}")
            for key in _ALLOWED_KEYS["neutron"]
            if key in parser["neutron"]
        }
        neutron = NeutronConfig(**kwargs)

    n_list = None
    lindblad = False
    if parser.has_section("sweep"):
        swp = parser["sweep"]
        if "n_list" in swp:
            n_list = parse_n_list(swp["n_list"])
        if "lindblad" in swp:
            lindblad = _boolean(swp["lindblad"], "sweep.lindblad")

    out_format = "csv"
    out_path = None
    if parser.has_section("output"):
        out = parser["output"]
        if "format" in out:
            out_format = out["format"].strip().lower()
            if out_format not in _FORMATS:
                raise ConfigError(
                    f"must be one of {_FORMATS}, got {out_format!r}", field="output.format"
                )
        if "path" in out:
            out_path = out["path"].strip()

    return RunConfig(
        ion_omega=ion_omega,
        ion_tau_sp=ion_tau_sp,
        schedule=schedule,
        neutron=neutron,
        n_list=n_list,
        lindblad=lindblad,
        out_format=out_format,
        out_path=out_path,
    )
