"""Experiment driver: config parsing, parameter sweeps, CSV and SVG output.

Sweeps reproduce the three experiments: ESC versus transmit SNR, versus the
near users' distance from their base stations (far users fixed), and versus
the near-user power fraction. Configuration is flat key=value text; every
output is byte-deterministic for identical inputs.
"""

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .channel import InfeasibleCsiError, derive_link_statistics
from .geometry import build_layout
from .montecarlo import estimate_esc
from .schemes import SchemeId, SystemParams


class ConfigError(ValueError):
    """Configuration document problem; message names the key and line."""


class SweepKind(enum.Enum):
    RHO_DB = "rho"
    NEAR_RADIUS = "near-radius"
    ALPHA = "alpha"

    @classmethod
    def from_token(cls, token: str) -> "SweepKind":
        for kind in cls:
            if kind.value == token.strip().lower():
                return kind
        raise ValueError(f"unknown sweep kind {token!r}; expected one of "
                         f"{', '.join(k.value for k in cls)}")


# Sweep ranges used when a config omits from/to/steps.
_SWEEP_RANGE_DEFAULTS = {
    SweepKind.RHO_DB: (0.0, 40.0),
    SweepKind.NEAR_RADIUS: (0.1, 0.9),
    SweepKind.ALPHA: (0.05, 0.24),
}

CONFIG_KEYS = ("alpha", "rho_db", "upsilon", "sigma_eps", "pathloss_exponent",
               "near_radius", "far_radius", "trials", "seed", "sweep", "from",
               "to", "steps", "schemes")


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: the swept knob, its range, and every fixed parameter."""

    sweep_kind: SweepKind = SweepKind.RHO_DB
    from_value: float = 0.0
    to_value: float = 40.0
    steps: int = 9
    alpha: float = 0.1
    rho_db: float = 20.0
    upsilon: float = 0.01
    sigma_eps: float = 0.001
    pathloss_exponent: float = 4.0
    near_radius: float = 0.5
    far_radius: float = 0.95
    schemes: tuple = tuple(SchemeId)
    trials: int = 100_000
    seed: int = 1
    output_path: str = "results.csv"

    def sweep_values(self) -> np.ndarray:
        return np.linspace(self.from_value, self.to_value, self.steps)


@dataclass(frozen=True)
class ResultRow:
    sweep_kind: SweepKind
    sweep_value: float
    scheme: SchemeId
    esc_mc: float
    esc_ci95: float
    esc_analytic: float | None
    trials: int
    seed: int


def _parse_float(raw, key, where):
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{where}: key '{key}': cannot parse {raw!r} as a number")
    if not math.isfinite(value):
        raise ConfigError(f"{where}: key '{key}': value must be finite")
    return value


def _parse_int(raw, key, where):
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{where}: key '{key}': cannot parse {raw!r} as an integer")


def _raw_pairs(text: str) -> dict:
    """key -> (value, source location) from a key=value document."""
    pairs = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key=value, got {stripped!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key '{key}'")
        pairs[key] = (value.strip(), f"line {lineno}")
    return pairs


def _config_from_raw(raw: dict) -> SweepConfig:
    cfg = SweepConfig()
    if "sweep" in raw:
        value, where = raw["sweep"]
        try:
            kind = SweepKind.from_token(value)
        except ValueError as exc:
            raise ConfigError(f"{where}: key 'sweep': {exc}")
        lo, hi = _SWEEP_RANGE_DEFAULTS[kind]
        cfg = replace(cfg, sweep_kind=kind, from_value=lo, to_value=hi)
    if "schemes" in raw:
        value, where = raw["schemes"]
        try:
            schemes = tuple(SchemeId.from_token(t) for t in value.split(","))
        except ValueError as exc:
            raise ConfigError(f"{where}: key 'schemes': {exc}")
        order = list(SchemeId)
        cfg = replace(cfg, schemes=tuple(sorted(set(schemes), key=order.index)))

    float_keys = {"alpha": "alpha", "rho_db": "rho_db", "upsilon": "upsilon",
                  "sigma_eps": "sigma_eps",
                  "pathloss_exponent": "pathloss_exponent",
                  "near_radius": "near_radius", "far_radius": "far_radius",
                  "from": "from_value", "to": "to_value"}
    for key, attr in float_keys.items():
        if key in raw:
            value, where = raw[key]
            cfg = replace(cfg, **{attr: _parse_float(value, key, where)})
    for key, attr in (("trials", "trials"), ("seed", "seed"), ("steps", "steps")):
        if key in raw:
            value, where = raw[key]
            cfg = replace(cfg, **{attr: _parse_int(value, key, where)})

    _validate(cfg, raw)
    return cfg


def _where(raw, key):
    return raw[key][1] if key in raw else "default"


def _validate(cfg: SweepConfig, raw: dict) -> None:
    def fail(key, message):
        raise ConfigError(f"{_where(raw, key)}: key '{key}': {message}")

    if not 0.0 < cfg.alpha < 0.25:
        fail("alpha", f"must lie in (0, 0.25), got {cfg.alpha}")
    if cfg.upsilon < 0:
        fail("upsilon", f"must be nonnegative, got {cfg.upsilon}")
    if cfg.sigma_eps < 0:
        fail("sigma_eps", f"must be nonnegative, got {cfg.sigma_eps}")
    if cfg.pathloss_exponent <= 0:
        fail("pathloss_exponent", f"must be positive, got {cfg.pathloss_exponent}")
    for key, value in (("near_radius", cfg.near_radius),
                       ("far_radius", cfg.far_radius)):
        if not 0.0 < value <= 1.0:
            fail(key, f"must lie in (0, 1], got {value}")
    if cfg.trials < 1:
        fail("trials", f"must be >= 1, got {cfg.trials}")
    if cfg.steps < 2:
        fail("steps", f"must be >= 2, got {cfg.steps}")
    if not cfg.from_value < cfg.to_value:
        fail("from", f"sweep range must satisfy from < to, got "
                     f"[{cfg.from_value}, {cfg.to_value}]")
    if not cfg.schemes:
        fail("schemes", "at least one scheme is required")
    if cfg.sweep_kind is SweepKind.ALPHA:
        if not (0.0 < cfg.from_value and cfg.to_value < 0.25):
            fail("to", f"swept alpha values must lie in (0, 0.25), got "
                       f"[{cfg.from_value}, {cfg.to_value}]")
    if cfg.sweep_kind is SweepKind.NEAR_RADIUS:
        if not (0.0 < cfg.from_value and cfg.to_value <= 1.0):
            fail("to", f"swept radii must lie in (0, 1], got "
                       f"[{cfg.from_value}, {cfg.to_value}]")


def parse_config(text: str, overrides: dict | None = None) -> SweepConfig:
    """Parse a key=value document ('#' comments) into a validated SweepConfig.

    overrides maps config keys to raw string values that take precedence over
    the document (used for command-line flags).
    """
    raw = _raw_pairs(text)
    for key, value in (overrides or {}).items():
        if key not in CONFIG_KEYS:
            raise ConfigError(f"command line: unknown key '{key}'")
        raw[key] = (str(value), "command line")
    return _config_from_raw(raw)


def run_sweep(cfg: SweepConfig, workers: int = 1) -> list:
    """Estimate every requested scheme at every sweep point.

    The near-radius sweep moves all three near users together along their
    rays; far users stay fixed. Rows come out ordered by (sweep_value, scheme).
    """
    rows = []
    for value in cfg.sweep_values():
        alpha, rho_db, near = cfg.alpha, cfg.rho_db, cfg.near_radius
        if cfg.sweep_kind is SweepKind.RHO_DB:
            rho_db = value
        elif cfg.sweep_kind is SweepKind.NEAR_RADIUS:
            near = value
        else:
            alpha = value
        layout = build_layout(1.0, (near,) * 3, (cfg.far_radius,) * 3)
        try:
            stats = derive_link_statistics(layout, cfg.pathloss_exponent,
                                           cfg.sigma_eps)
        except InfeasibleCsiError as exc:
            raise InfeasibleCsiError(
                f"sweep value {value:.6g}: {exc}") from exc
        params = SystemParams(alpha=alpha, rho=db_to_linear(rho_db),
                              upsilon=cfg.upsilon)
        for scheme in cfg.schemes:
            estimate = estimate_esc(layout, stats, params, scheme, cfg.trials,
                                    cfg.seed, workers)
            rows.append(ResultRow(
                sweep_kind=cfg.sweep_kind,
                sweep_value=float(value),
                scheme=scheme,
                esc_mc=estimate.mean_total,
                esc_ci95=estimate.ci95_halfwidth,
                esc_analytic=estimate.analytic_total,
                trials=cfg.trials,
                seed=cfg.seed,
            ))
    return rows


CSV_HEADER = "sweep_kind,sweep_value,scheme,esc_mc,esc_ci95,esc_analytic,trials,seed"


def _fmt(value: float) -> str:
    return format(value, ".12g")


def write_results(rows, path) -> None:
    """Write rows as UTF-8 CSV with LF endings and 12-significant-digit reals."""
    lines = [CSV_HEADER]
    for row in rows:
        analytic = "" if row.esc_analytic is None else _fmt(row.esc_analytic)
        lines.append(",".join([
            row.sweep_kind.value,
            _fmt(row.sweep_value),
            row.scheme.token,
            _fmt(row.esc_mc),
            _fmt(row.esc_ci95),
            analytic,
            str(row.trials),
            str(row.seed),
        ]))
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc


def read_results(path) -> list:
    """Parse a CSV produced by write_results back into ResultRow values."""
    with open(path, "r", encoding="utf-8", newline="") as handle:
        lines = handle.read().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path} does not carry the expected results header")
    rows = []
    for line in lines[1:]:
        kind, value, scheme, mc, ci95, analytic, trials, seed = line.split(",")
        rows.append(ResultRow(
            sweep_kind=SweepKind.from_token(kind),
            sweep_value=float(value),
            scheme=SchemeId.from_token(scheme),
            esc_mc=float(mc),
            esc_ci95=float(ci95),
            esc_analytic=None if analytic == "" else float(analytic),
            trials=int(trials),
            seed=int(seed),
        ))
    return rows


_SERIES_COLORS = {
    SchemeId.OMA: "#888888",
    SchemeId.NOMA: "#d62728",
    SchemeId.VPNOMA: "#1f77b4",
    SchemeId.COMP_VPNOMA: "#2ca02c",
}

_AXIS_LABELS = {
    SweepKind.RHO_DB: "transmit SNR (dB)",
    SweepKind.NEAR_RADIUS: "near-user radius (R)",
    SweepKind.ALPHA: "near-user power fraction",
}


def _ticks(lo: float, hi: float, count: int = 5):
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def emit_plot(rows, path) -> None:
    """Write a self-contained SVG line chart, one series per scheme."""
    width, height = 640.0, 440.0
    left, right, top, bottom = 72.0, 176.0, 24.0, 56.0

    series = {}
    for row in rows:
        series.setdefault(row.scheme, []).append((row.sweep_value, row.esc_mc))
    ordered = [s for s in SchemeId if s in series]

    xs = [row.sweep_value for row in rows]
    ys = [row.esc_mc for row in rows]
    x_lo, x_hi = (min(xs), max(xs)) if rows else (0.0, 1.0)
    y_lo, y_hi = (min(ys), max(ys)) if rows else (0.0, 1.0)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    def px(x):
        return left + (x - x_lo) / (x_hi - x_lo) * (width - left - right)

    def py(y):
        return height - bottom - (y - y_lo) / (y_hi - y_lo) * (height - top - bottom)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<line x1="{left:.2f}" y1="{height - bottom:.2f}" '
        f'x2="{width - right:.2f}" y2="{height - bottom:.2f}" stroke="black"/>',
        f'<line x1="{left:.2f}" y1="{top:.2f}" x2="{left:.2f}" '
        f'y2="{height - bottom:.2f}" stroke="black"/>',
    ]
    for tick in _ticks(x_lo, x_hi):
        x = px(tick)
        parts.append(f'<line x1="{x:.2f}" y1="{height - bottom:.2f}" '
                     f'x2="{x:.2f}" y2="{height - bottom + 5:.2f}" stroke="black"/>')
        parts.append(f'<text x="{x:.2f}" y="{height - bottom + 18:.2f}" '
                     f'font-size="11" text-anchor="middle">{tick:.4g}</text>')
    for tick in _ticks(y_lo, y_hi):
        y = py(tick)
        parts.append(f'<line x1="{left - 5:.2f}" y1="{y:.2f}" x2="{left:.2f}" '
                     f'y2="{y:.2f}" stroke="black"/>')
        parts.append(f'<text x="{left - 8:.2f}" y="{y + 4:.2f}" font-size="11" '
                     f'text-anchor="end">{tick:.4g}</text>')
    x_label = _AXIS_LABELS[rows[0].sweep_kind] if rows else "sweep value"
    parts.append(f'<text x="{(left + width - right) / 2:.2f}" '
                 f'y="{height - 14:.2f}" font-size="13" '
                 f'text-anchor="middle">{x_label}</text>')
    parts.append(f'<text x="18" y="{(top + height - bottom) / 2:.2f}" '
                 f'font-size="13" text-anchor="middle" '
                 f'transform="rotate(-90 18 {(top + height - bottom) / 2:.2f})">'
                 f'ESC (bits/s/Hz)</text>')

    for scheme in ordered:
        points = sorted(series[scheme])
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in points)
        parts.append(f'<polyline fill="none" stroke="{_SERIES_COLORS[scheme]}" '
                     f'stroke-width="1.8" points="{coords}"/>')
    legend_x = width - right + 12.0
    for index, scheme in enumerate(ordered):
        y = top + 14.0 + 20.0 * index
        parts.append(f'<line x1="{legend_x:.2f}" y1="{y:.2f}" '
                     f'x2="{legend_x + 22:.2f}" y2="{y:.2f}" '
                     f'stroke="{_SERIES_COLORS[scheme]}" stroke-width="1.8"/>')
        parts.append(f'<text x="{legend_x + 28:.2f}" y="{y + 4:.2f}" '
                     f'font-size="12">{scheme.token}</text>')
    parts.append("</svg>")
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write("\n".join(parts) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write plot to {path}: {exc}") from exc
