"""Sweep configuration, execution and CSV output.

A sweep walks a cartesian grid of mode parameters and distances, evaluates
one experiment kind at every point and emits one CSV row per point.  Rows
appear in deterministic order (parameter combinations in configured order,
then distance ascending) regardless of parallel execution; per-point
numerical failures land in the row's `error` column and the sweep carries
on.  Floats are written as 9-significant-digit scientific notation so reruns
are byte-identical.

Parallelism across parameter combinations is capped by the PDL_THREADS
environment variable (default: serial).
"""
from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import IO, Iterable, Optional

import numpy as np

from .dispersion import FS2_PER_M, PS2_PER_KM, Medium, PropagationSpec, medium_by_label
from .errors import ConfigError, ParameterDomainError, PdlabError
from .metrics import gamma_gaussian, gamma_numeric, gamma_numeric_sweep, symbol_rate
from .modes import (
    ChirpedGaussianMode,
    GeneralizedGaussianMode,
    SechMode,
    TemporalMode,
    TimeBinQubitMode,
)
from .qkd import ATTENUATION_CONVENTIONS, QkdLinkParams, key_rate
from .sampling import SampledWaveFunction, moments, plan_grid, sample
from .dispersion import propagate_spectral

PS = 1e-12

KINDS = ("gamma_analytic", "gamma_numeric", "symbol_rate_analytic",
         "symbol_rate_numeric", "keyrate", "qubit_pdf")

_COLUMNS = {
    "gamma_analytic": ["experiment", "medium", "sigma_ps", "chirp_c", "l_m",
                       "sigma_l_s", "gamma", "error"],
    "gamma_numeric": ["experiment", "family", "medium", "sigma_ps", "shape_q",
                      "chirp_c", "sep_t_ps", "packet_sigma_ps", "theta_rad",
                      "phi_rad", "l_m", "sigma0_s", "sigma_l_s", "gamma", "error"],
    "symbol_rate_analytic": ["experiment", "medium", "sigma_ps", "chirp_c", "l_m",
                             "sigma_l_s", "f_symbol_bd", "error"],
    "symbol_rate_numeric": ["experiment", "family", "medium", "sigma_ps", "shape_q",
                            "chirp_c", "l_m", "sigma_l_s", "f_symbol_bd", "error"],
    "keyrate": ["experiment", "medium", "sigma_ps", "chirp_c", "jitter_ps",
                "window_ps", "separation_ps", "atten_db_per_km", "l_m", "eta",
                "p_sig", "p_error", "qber", "key_rate", "error"],
    "qubit_pdf": ["experiment", "medium", "sep_t_ps", "packet_sigma_ps", "chirp_c",
                  "theta_rad", "phi_rad", "l_m", "t_s", "pdf_per_s", "error"],
}


def _as_list(v) -> list:
    if isinstance(v, (list, tuple)):
        return list(v)
    return [v]


@dataclass(frozen=True)
class SweepConfig:
    experiment: str
    kind: str
    mode: dict
    media: tuple[Medium, ...]
    lengths_m: tuple[float, ...]
    qkd: Optional[dict] = None
    seed: int = 0
    max_n: Optional[int] = None
    trace_points: int = 1200
    out: Optional[str] = None

    @staticmethod
    def from_dict(raw: dict) -> "SweepConfig":
        try:
            experiment = str(raw["experiment"])
            kind = str(raw["kind"])
            mode = dict(raw["mode"])
        except KeyError as exc:
            raise ConfigError(f"config is missing required key {exc}") from None
        if kind not in KINDS:
            raise ConfigError(f"unknown kind {kind!r}; expected one of {KINDS}")

        media = _parse_media(raw)
        lengths = _parse_lengths(raw.get("length"))
        qkd = raw.get("qkd")
        if kind == "keyrate":
            if not qkd:
                raise ConfigError("keyrate sweeps need a 'qkd' block")
            conv = qkd.get("attenuation_convention", "db")
            if conv not in ATTENUATION_CONVENTIONS:
                raise ConfigError(f"attenuation_convention must be one of "
                                  f"{ATTENUATION_CONVENTIONS}, got {conv!r}")
        return SweepConfig(
            experiment=experiment, kind=kind, mode=mode, media=media,
            lengths_m=lengths, qkd=qkd, seed=int(raw.get("seed", 0)),
            max_n=raw.get("max_n"), trace_points=int(raw.get("trace_points", 1200)),
            out=raw.get("out"),
        )

    @staticmethod
    def from_json(stream_or_text) -> "SweepConfig":
        if hasattr(stream_or_text, "read"):
            text = stream_or_text.read()
        else:
            text = stream_or_text
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        return SweepConfig.from_dict(raw)


def _parse_media(raw: dict) -> tuple[Medium, ...]:
    if "beta_fs2_per_m" in raw or "beta_ps2_per_km" in raw:
        beta = (float(raw["beta_fs2_per_m"]) * FS2_PER_M if "beta_fs2_per_m" in raw
                else float(raw["beta_ps2_per_km"]) * PS2_PER_KM)
        att = float(raw.get("atten_db_per_km", 0.0))
        return (Medium("custom", beta, att),)
    labels = raw.get("media") or _as_list(raw.get("medium"))
    if not labels or labels == [None]:
        raise ConfigError("config needs 'medium', 'media' or an explicit beta")
    return tuple(medium_by_label(str(lab)) for lab in labels)


def _parse_lengths(block) -> tuple[float, ...]:
    if block is None:
        raise ConfigError("config needs a 'length' block")
    if "values_m" in block:
        values = [float(v) for v in block["values_m"]]
        if not values:
            raise ConfigError("length.values_m must not be empty")
        return tuple(values)
    try:
        lo, hi, points = float(block["min_m"]), float(block["max_m"]), int(block["points"])
    except KeyError as exc:
        raise ConfigError(f"length block is missing {exc}") from None
    if points < 2:
        raise ConfigError("length.points must be >= 2")
    if hi <= lo:
        raise ConfigError("length.max_m must exceed length.min_m")
    axis = block.get("axis", "linear")
    if axis == "linear":
        return tuple(np.linspace(lo, hi, points))
    if axis == "log":
        if lo <= 0:
            raise ConfigError("log axis needs length.min_m > 0")
        return tuple(np.geomspace(lo, hi, points))
    raise ConfigError(f"length.axis must be 'linear' or 'log', got {axis!r}")


def _mode_combos(cfg: SweepConfig) -> list[dict]:
    """Cartesian expansion of list-valued mode parameters, in config order."""
    m = cfg.mode
    family = m.get("family", "gaussian")
    combos: list[dict] = [{"family": family}]

    def expand(key, values):
        nonlocal combos
        combos = [dict(c, **{key: v}) for c in combos for v in values]

    if family == "ggd":
        expand("shape_q", [float(q) for q in _as_list(m.get("shape_q", 2.0))])
    if family in ("gaussian", "ggd", "sech", "timebin"):
        expand("chirp_c", [float(c) for c in _as_list(m.get("chirp_c", 0.0))])
    if family == "timebin":
        for c in combos:
            c["sep_t_ps"] = float(m.get("sep_t_ps", 5.0))
            c["packet_sigma_ps"] = float(m.get("packet_sigma_ps", 0.25))
            c["theta_rad"] = float(m.get("theta_rad", math.pi / 2))
            c["phi_rad"] = float(m.get("phi_rad", 0.0))
    else:
        for c in combos:
            c["sigma_ps"] = float(m.get("sigma_ps", 4.25))
    return combos


def build_mode(combo: dict) -> TemporalMode:
    family = combo["family"]
    if family == "gaussian":
        return ChirpedGaussianMode(sigma=combo["sigma_ps"] * PS, chirp_c=combo["chirp_c"])
    if family == "ggd":
        return GeneralizedGaussianMode(sigma=combo["sigma_ps"] * PS,
                                       chirp_c=combo["chirp_c"],
                                       shape_q=combo["shape_q"])
    if family == "sech":
        return SechMode(sigma=combo["sigma_ps"] * PS, chirp_c=combo["chirp_c"])
    if family == "timebin":
        return TimeBinQubitMode(separation_t=combo["sep_t_ps"] * PS,
                                packet_sigma=combo["packet_sigma_ps"] * PS,
                                chirp_c=combo["chirp_c"],
                                theta=combo["theta_rad"], phi=combo["phi_rad"])
    raise ConfigError(f"unknown mode family {family!r}")


@dataclass
class SweepResult:
    experiment: str
    kind: str
    columns: list[str]
    rows: list[dict] = field(default_factory=list)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.8e}"
    return str(v)


def write_csv(result: SweepResult, fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([_fmt(row.get(col)) for col in result.columns])


def _base_row(cfg: SweepConfig, medium: Medium, combo: dict) -> dict:
    row = {"experiment": cfg.experiment, "medium": medium.label}
    for key in ("family", "sigma_ps", "shape_q", "chirp_c", "sep_t_ps",
                "packet_sigma_ps", "theta_rad", "phi_rad"):
        if key in combo:
            row[key] = combo[key]
    return row


def _run_combo(cfg: SweepConfig, medium: Medium, combo: dict) -> list[dict]:
    kind = cfg.kind
    if kind in ("gamma_analytic", "symbol_rate_analytic"):
        return _run_analytic(cfg, medium, combo)
    if kind in ("gamma_numeric", "symbol_rate_numeric"):
        return _run_numeric(cfg, medium, combo)
    if kind == "keyrate":
        return _run_keyrate(cfg, medium, combo)
    if kind == "qubit_pdf":
        return _run_qubit_pdf(cfg, medium, combo)
    raise ConfigError(f"unknown kind {kind!r}")


def _run_analytic(cfg: SweepConfig, medium: Medium, combo: dict) -> list[dict]:
    if combo["family"] != "gaussian":
        raise ConfigError(f"{cfg.kind} supports only the gaussian family")
    rows = []
    for length in cfg.lengths_m:
        row = _base_row(cfg, medium, combo)
        row["l_m"] = float(length)
        try:
            res = gamma_gaussian(combo["sigma_ps"] * PS, combo["chirp_c"],
                                 medium.beta, length)
            row["sigma_l_s"] = res.sigma_l
            if cfg.kind == "gamma_analytic":
                row["gamma"] = res.gamma
            else:
                row["f_symbol_bd"] = symbol_rate(res.sigma_l).f_symbol
        except PdlabError as exc:
            row["error"] = str(exc)
        rows.append(row)
    return rows


def _run_numeric(cfg: SweepConfig, medium: Medium, combo: dict) -> list[dict]:
    mode = build_mode(combo)
    lengths = [float(length) for length in cfg.lengths_m]
    rows = [dict(_base_row(cfg, medium, combo), l_m=length) for length in lengths]
    try:
        results = gamma_numeric_sweep(mode, medium, lengths, max_n=cfg.max_n)
        for row, res in zip(rows, results):
            _fill_numeric_row(cfg.kind, row, res)
    except PdlabError:
        # batch failed somewhere: redo point by point so good rows survive
        for row, length in zip(rows, lengths):
            try:
                res = gamma_numeric(mode, PropagationSpec(medium=medium, length=length),
                                    max_n=cfg.max_n)
                _fill_numeric_row(cfg.kind, row, res)
            except PdlabError as exc:
                row["error"] = str(exc)
    return rows


def _fill_numeric_row(kind: str, row: dict, res) -> None:
    row["sigma_l_s"] = res.sigma_l
    if kind == "gamma_numeric":
        row["sigma0_s"] = res.sigma0
        row["gamma"] = res.gamma
    else:
        row["f_symbol_bd"] = symbol_rate(res.sigma_l).f_symbol


def _run_keyrate(cfg: SweepConfig, medium: Medium, combo: dict) -> list[dict]:
    if combo["family"] != "gaussian":
        raise ConfigError("keyrate sweeps support only the gaussian family")
    qkd = cfg.qkd or {}
    jitter = float(qkd.get("jitter_ps", 5.0)) * PS
    separation = float(qkd.get("separation_ps", 100.0)) * PS
    convention = qkd.get("attenuation_convention", "db")
    windows = [float(w) * PS for w in _as_list(qkd.get("window_ps", 50.0))]
    mode = ChirpedGaussianMode(sigma=combo["sigma_ps"] * PS, chirp_c=combo["chirp_c"])
    rows = []
    for window in windows:
        for length in cfg.lengths_m:
            row = _base_row(cfg, medium, combo)
            row.update(jitter_ps=jitter / PS, window_ps=window / PS,
                       separation_ps=separation / PS,
                       atten_db_per_km=medium.atten_db_per_km, l_m=float(length))
            try:
                params = QkdLinkParams(mode=mode, medium=medium, jitter_sigma_d=jitter,
                                       window_w=window, separation_theta=separation,
                                       length_l=float(length),
                                       attenuation_convention=convention)
                res = key_rate(params)
                row.update(eta=res.eta, p_sig=res.p_sig, p_error=res.p_error,
                           qber=res.qber_q, key_rate=res.key_rate_k)
            except PdlabError as exc:
                row["error"] = str(exc)
            rows.append(row)
    return rows


def _run_qubit_pdf(cfg: SweepConfig, medium: Medium, combo: dict) -> list[dict]:
    if combo["family"] != "timebin":
        raise ConfigError("qubit_pdf sweeps need the timebin family")
    mode = build_mode(combo)
    rows = []
    for length in cfg.lengths_m:
        base = dict(_base_row(cfg, medium, combo), l_m=float(length))
        try:
            grid = plan_grid(mode, medium.beta, float(length),
                             **({} if cfg.max_n is None else {"max_n": cfg.max_n}))
            swf = sample(mode, grid)
            if medium.beta != 0.0 and length > 0:
                swf = propagate_spectral(swf, PropagationSpec(medium=medium,
                                                              length=float(length)))
            p = np.abs(swf.amps) ** 2
            t = grid.times()
            support = p > p.max() * 1e-8
            idx = np.nonzero(support)[0]
            sl = slice(idx[0], idx[-1] + 1)
            t, p = t[sl], p[sl]
            stride = max(1, len(t) // cfg.trace_points)
            for tk, pk in zip(t[::stride], p[::stride]):
                rows.append(dict(base, t_s=float(tk), pdf_per_s=float(pk)))
        except PdlabError as exc:
            rows.append(dict(base, error=str(exc)))
    return rows


def run_sweep(cfg: SweepConfig) -> SweepResult:
    """Execute a sweep; rows in deterministic combo-then-length order."""
    combos = [(medium, combo) for medium in cfg.media for combo in _mode_combos(cfg)]
    workers = _thread_cap()
    if workers > 1 and len(combos) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda mc: _run_combo(cfg, mc[0], mc[1]), combos))
    else:
        chunks = [_run_combo(cfg, medium, combo) for medium, combo in combos]
    result = SweepResult(experiment=cfg.experiment, kind=cfg.kind,
                         columns=list(_COLUMNS[cfg.kind]))
    for chunk in chunks:
        result.rows.extend(chunk)
    return result


def _thread_cap() -> int:
    raw = os.environ.get("PDL_THREADS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def preset_names() -> list[str]:
    root = resources.files("pdlab").joinpath("presets")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_preset(name: str) -> SweepConfig:
    root = resources.files("pdlab").joinpath("presets")
    path = root.joinpath(f"{name}.json")
    if not path.is_file():
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return SweepConfig.from_json(path.read_text(encoding="utf-8"))


def resolve_config(arg: str) -> SweepConfig:
    """Treat `arg` as a config file path, else as a bundled preset name."""
    if os.path.exists(arg):
        with open(arg, "r", encoding="utf-8") as fh:
            return SweepConfig.from_json(fh)
    return load_preset(arg)
