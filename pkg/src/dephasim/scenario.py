"""Configuration-driven trajectory runs and figure presets.

Scenario files are JSON with five sections::

    {
      "scheme":      {"variant": "ii", "theta_a": 0.0, "phi_a": 0.0,
                      "theta_b": 0.7853981633974483, "phi_b": 0.0},
      "bath":        {"kind": "ohmic_family", "s": 1.0, "lambda": 1.0},
      "temperature": {"beta_omega0": 0.1},
      "ratio":       {"omega0_over_omegac": 0.01},
      "grid":        {"t_max_omega_c": 1000.0, "n_points": 400,
                      "spacing": "log", "t_min_omega_c": 0.01}
    }

Angles are radians by default; put "unit": "deg" inside "scheme" to give
them in degrees.  Scheme variants and their angle keys:

    selective  theta, phi                      (direction of the state)
    i          theta_a, phi_a
    ii         theta_a, phi_a, theta_b, phi_b
    iii        theta_a, phi_a, theta_b, phi_b
    iii_prime  theta_a, phi_a, theta_b, phi_b
    general    theta_a, phi_a, theta_1, phi_1, theta_2, phi_2

Discrete baths use {"kind": "discrete", "modes": [[omega, g2], ...]}.

Output is a CSV with one row per grid point; cells that are undefined
for degenerate preparations are left empty.  Values are written with 17
significant digits so reruns are byte-identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .bath import BathSpec, DiscreteBath, OhmicFamily
from .bloch import BlochDirection
from .dynamics import DephasingTrajectory, coherence_trajectory
from .preparation import (
    PreparationScheme,
    scheme_i,
    scheme_ii,
    scheme_iii,
    scheme_iii_prime,
    selective_from_direction,
)

__all__ = [
    "ConfigError",
    "ScenarioConfig",
    "CSV_HEADER",
    "FIGURE_PRESETS",
    "figure_preset_configs",
    "run_trace",
    "run_figure",
    "write_trajectory_csv",
]

CSV_HEADER = (
    "t_omega_c,gamma,gamma_cor,gamma_eff,phi,chi,re_sigma_plus,im_sigma_plus,"
    "reduced_coherence,bloch_v,purity,entropy"
)

_SCHEME_ANGLE_KEYS = {
    "selective": ("theta", "phi"),
    "i": ("theta_a", "phi_a"),
    "ii": ("theta_a", "phi_a", "theta_b", "phi_b"),
    "iii": ("theta_a", "phi_a", "theta_b", "phi_b"),
    "iii_prime": ("theta_a", "phi_a", "theta_b", "phi_b"),
    "general": ("theta_a", "phi_a", "theta_1", "phi_1", "theta_2", "phi_2"),
}


class ConfigError(ValueError):
    """A scenario file failed validation; the message names the field."""


def _require(mapping: Any, key: str, where: str) -> Any:
    if not isinstance(mapping, dict):
        raise ConfigError(f"{where}: expected an object")
    if key not in mapping:
        raise ConfigError(f"{where}.{key}: missing required field")
    return mapping[key]


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _positive(value: Any, where: str) -> float:
    x = _number(value, where)
    if not (x > 0.0 and math.isfinite(x)):
        raise ConfigError(f"{where}: must be finite and > 0, got {value!r}")
    return x


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario: scheme variant plus physics and grid parameters."""

    scheme_variant: str
    angles: dict[str, float]  # radians, keyed per variant
    bath_kind: str
    bath_s: float | None
    bath_lambda: float | None
    bath_modes: tuple[tuple[float, float], ...] | None
    beta_omega0: float
    omega0_over_omegac: float
    t_max: float
    n_points: int
    spacing: str
    t_min: float | None = field(default=None)

    @classmethod
    def from_json_dict(cls, data: Any) -> "ScenarioConfig":
        if not isinstance(data, dict):
            raise ConfigError("top level: expected a JSON object")
        scheme = _require(data, "scheme", "top level")
        variant = _require(scheme, "variant", "scheme")
        if variant not in _SCHEME_ANGLE_KEYS:
            known = ", ".join(sorted(_SCHEME_ANGLE_KEYS))
            raise ConfigError(f"scheme.variant: unknown variant {variant!r} (known: {known})")
        unit = scheme.get("unit", "rad")
        if unit not in ("rad", "deg"):
            raise ConfigError(f"scheme.unit: must be 'rad' or 'deg', got {unit!r}")
        scale = math.pi / 180.0 if unit == "deg" else 1.0
        angles = {}
        for key in _SCHEME_ANGLE_KEYS[variant]:
            angles[key] = scale * _number(_require(scheme, key, "scheme"), f"scheme.{key}")
        for key in angles:
            if key.startswith("theta") and not 0.0 <= angles[key] <= math.pi:
                raise ConfigError(
                    f"scheme.{key}: polar angle must lie in [0, pi] radians"
                )

        bath = _require(data, "bath", "top level")
        kind = _require(bath, "kind", "bath")
        bath_s = bath_lambda = None
        bath_modes = None
        if kind == "ohmic_family":
            bath_s = _positive(_require(bath, "s", "bath"), "bath.s")
            bath_lambda = _number(_require(bath, "lambda", "bath"), "bath.lambda")
            if bath_lambda < 0.0:
                raise ConfigError("bath.lambda: must be >= 0")
        elif kind == "discrete":
            modes = _require(bath, "modes", "bath")
            if not isinstance(modes, list) or not modes:
                raise ConfigError("bath.modes: expected a non-empty list of [omega, g2]")
            parsed = []
            for k, entry in enumerate(modes):
                if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                    raise ConfigError(f"bath.modes[{k}]: expected a pair [omega, g2]")
                omega = _positive(entry[0], f"bath.modes[{k}].omega")
                g2 = _number(entry[1], f"bath.modes[{k}].g2")
                if g2 < 0.0:
                    raise ConfigError(f"bath.modes[{k}].g2: must be >= 0")
                parsed.append((omega, g2))
            bath_modes = tuple(parsed)
        else:
            raise ConfigError(
                f"bath.kind: unknown kind {kind!r} (known: ohmic_family, discrete)"
            )

        temperature = _require(data, "temperature", "top level")
        beta_omega0 = _positive(
            _require(temperature, "beta_omega0", "temperature"),
            "temperature.beta_omega0",
        )
        ratio = _require(data, "ratio", "top level")
        omega0_over_omegac = _positive(
            _require(ratio, "omega0_over_omegac", "ratio"), "ratio.omega0_over_omegac"
        )

        grid = _require(data, "grid", "top level")
        t_max = _positive(_require(grid, "t_max_omega_c", "grid"), "grid.t_max_omega_c")
        n_points = _require(grid, "n_points", "grid")
        if isinstance(n_points, bool) or not isinstance(n_points, int) or n_points < 2:
            raise ConfigError(f"grid.n_points: must be an integer >= 2, got {n_points!r}")
        spacing = _require(grid, "spacing", "grid")
        if spacing not in ("linear", "log"):
            raise ConfigError(f"grid.spacing: must be 'linear' or 'log', got {spacing!r}")
        t_min = grid.get("t_min_omega_c")
        if t_min is not None:
            t_min = _positive(t_min, "grid.t_min_omega_c")
            if t_min >= t_max:
                raise ConfigError("grid.t_min_omega_c: must be < t_max_omega_c")
        return cls(
            scheme_variant=variant,
            angles=angles,
            bath_kind=kind,
            bath_s=bath_s,
            bath_lambda=bath_lambda,
            bath_modes=bath_modes,
            beta_omega0=beta_omega0,
            omega0_over_omegac=omega0_over_omegac,
            t_max=t_max,
            n_points=n_points,
            spacing=spacing,
            t_min=t_min,
        )

    @classmethod
    def from_path(cls, path: str | Path) -> "ScenarioConfig":
        try:
            data = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_json_dict(data)

    def to_json_dict(self) -> dict:
        """Canonical form: radians, explicit keys, stable ordering."""
        scheme: dict[str, Any] = {"variant": self.scheme_variant, "unit": "rad"}
        for key in _SCHEME_ANGLE_KEYS[self.scheme_variant]:
            scheme[key] = self.angles[key]
        if self.bath_kind == "ohmic_family":
            bath: dict[str, Any] = {
                "kind": "ohmic_family",
                "s": self.bath_s,
                "lambda": self.bath_lambda,
            }
        else:
            bath = {"kind": "discrete", "modes": [list(m) for m in self.bath_modes]}
        grid: dict[str, Any] = {
            "t_max_omega_c": self.t_max,
            "n_points": self.n_points,
            "spacing": self.spacing,
        }
        if self.t_min is not None:
            grid["t_min_omega_c"] = self.t_min
        return {
            "scheme": scheme,
            "bath": bath,
            "temperature": {"beta_omega0": self.beta_omega0},
            "ratio": {"omega0_over_omegac": self.omega0_over_omegac},
            "grid": grid,
        }

    def build_scheme(self) -> PreparationScheme:
        a = self.angles
        if self.scheme_variant == "selective":
            return selective_from_direction(BlochDirection(a["theta"], a["phi"]))
        if self.scheme_variant == "i":
            return scheme_i(BlochDirection(a["theta_a"], a["phi_a"]))
        if self.scheme_variant in ("ii", "iii", "iii_prime"):
            da = BlochDirection(a["theta_a"], a["phi_a"])
            db = BlochDirection(a["theta_b"], a["phi_b"])
            maker = {
                "ii": scheme_ii,
                "iii": scheme_iii,
                "iii_prime": scheme_iii_prime,
            }[self.scheme_variant]
            return maker(da, db)
        from .preparation import NonSelectiveGeneral

        return NonSelectiveGeneral(
            BlochDirection(a["theta_a"], a["phi_a"]),
            BlochDirection(a["theta_1"], a["phi_1"]),
            BlochDirection(a["theta_2"], a["phi_2"]),
        )

    def build_bath(self) -> BathSpec:
        if self.bath_kind == "ohmic_family":
            return OhmicFamily(s=self.bath_s, lambda_s=self.bath_lambda)
        return DiscreteBath(self.bath_modes)

    def times(self) -> np.ndarray:
        if self.spacing == "linear":
            start = 0.0 if self.t_min is None else self.t_min
            return np.linspace(start, self.t_max, self.n_points)
        start = self.t_max * 1e-5 if self.t_min is None else self.t_min
        return np.geomspace(start, self.t_max, self.n_points)

    def run(self) -> DephasingTrajectory:
        return coherence_trajectory(
            self.build_scheme(),
            self.build_bath(),
            self.beta_omega0,
            self.omega0_over_omegac,
            self.times(),
        )


def _fmt(x: float) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:.17g}"


def write_trajectory_csv(path: str | Path, traj: DephasingTrajectory) -> None:
    lines = [CSV_HEADER]
    for i in range(traj.grid.size):
        lines.append(
            ",".join(
                [
                    _fmt(traj.grid[i]),
                    _fmt(traj.gamma[i]),
                    _fmt(traj.gamma_cor[i]),
                    _fmt(traj.gamma_eff[i]),
                    _fmt(traj.phi[i]),
                    _fmt(traj.chi[i]),
                    _fmt(traj.coherence_plus[i].real),
                    _fmt(traj.coherence_plus[i].imag),
                    _fmt(traj.reduced_coherence[i]),
                    _fmt(traj.bloch_v[i]),
                    _fmt(traj.purity[i]),
                    _fmt(traj.entropy[i]),
                ]
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def run_trace(config_path: str | Path, out_path: str | Path) -> DephasingTrajectory:
    """Parse a scenario file, compute the trajectory, write the CSV."""
    config = ScenarioConfig.from_path(config_path)
    traj = config.run()
    write_trajectory_csv(out_path, traj)
    return traj


# ---------------------------------------------------------------------------
# Figure presets
# ---------------------------------------------------------------------------

_PRESET_GRID = {
    "t_max_omega_c": 1000.0,
    "n_points": 400,
    "spacing": "log",
    "t_min_omega_c": 0.01,
}

_THETA_B = math.pi / 4.0


def _scheme_section(variant: str) -> dict:
    return {
        "variant": variant,
        "unit": "rad",
        "theta_a": 0.0,
        "phi_a": 0.0,
        "theta_b": _THETA_B,
        "phi_b": 0.0,
    }


def _preset_config(variant: str, lam: float, beta_omega0: float, ratio: float) -> dict:
    return {
        "scheme": _scheme_section(variant),
        "bath": {"kind": "ohmic_family", "s": 1.0, "lambda": lam},
        "temperature": {"beta_omega0": beta_omega0},
        "ratio": {"omega0_over_omegac": ratio},
        "grid": dict(_PRESET_GRID),
    }


def _build_presets() -> dict[str, tuple[tuple[str, dict], ...]]:
    presets: dict[str, tuple[tuple[str, dict], ...]] = {}
    # Reduced-coherence enhancement scan over the coupling constant.
    presets["fig1"] = tuple(
        (f"lambda{lam:g}", _preset_config("ii", lam, 0.1, 0.01))
        for lam in (0.5, 1.0, 2.0)
    )
    # Entropy/purity vs coupling at fixed temperature, both enhancement schemes.
    coupling_curves = tuple(
        (f"{variant}_lambda{lam:g}", _preset_config(variant, lam, 1.0, 0.1))
        for lam in (2.0, 4.0, 6.0)
        for variant in ("ii", "iii_prime")
    )
    presets["fig2"] = coupling_curves
    presets["fig3"] = coupling_curves
    # Entropy/purity vs temperature at fixed coupling.
    temperature_curves = tuple(
        (f"{variant}_beta{bw:g}", _preset_config(variant, 6.0, bw, 0.1))
        for bw in (0.01, 0.1, 1.0)
        for variant in ("ii", "iii_prime")
    )
    presets["fig4"] = temperature_curves
    presets["fig5"] = temperature_curves
    return presets


FIGURE_PRESETS = _build_presets()


def figure_preset_configs(name: str) -> tuple[tuple[str, ScenarioConfig], ...]:
    """Validated configs for one preset, in deterministic curve order."""
    if name not in FIGURE_PRESETS:
        known = ", ".join(sorted(FIGURE_PRESETS))
        raise ConfigError(f"unknown preset {name!r} (available: {known})")
    return tuple(
        (label, ScenarioConfig.from_json_dict(cfg))
        for label, cfg in FIGURE_PRESETS[name]
    )


def run_figure(
    name: str, out_dir: str | Path, dump_config: bool = False
) -> list[Path]:
    """Write one CSV per preset curve into out_dir; deterministic names.

    With dump_config=True the embedded scenario files are written instead
    of being run, so they can be perturbed and fed back to `trace`.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for label, config in figure_preset_configs(name):
        if dump_config:
            path = out / f"{name}_{label}.json"
            path.write_text(json.dumps(config.to_json_dict(), indent=2) + "\n")
        else:
            path = out / f"{name}_{label}.csv"
            write_trajectory_csv(path, config.run())
        written.append(path)
    return written
