"""BB84 key-rate model with detector jitter and neighbor-photon errors.

The receiver integrates a jitter-convolved Gaussian arrival density over a
detection window of width w centred on the compensated mean arrival time.
Neighbor photons one slot away (separation theta) leak into the window and
produce errors; simultaneous detection of both neighbors is recognized and
discarded, hence the -2 e+ e- joint term.  Channel loss enters as the
transmittance eta; by default the attenuation coefficient is read in the
standard dB sense, eta = 10^(-alpha_dB L_km / 10).  The "literal" convention
eta = 10^(-alpha L_km) is also available for comparison.

Only Gaussian-family modes are accepted: their dispersed width is closed
form, which keeps every probability an error function.  The printed error
rate Q = p_error (1 - eta p_sig) / (4 p_raw) is not a bounded fraction once
eta is small; reported values are clamped to [0, 1] and the binary entropy
is evaluated on [0, 1/2], which zeroes the key rate in the saturated regime.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterDomainError
from .dispersion import Medium
from .metrics import gamma_gaussian
from .modes import ChirpedGaussianMode

ATTENUATION_CONVENTIONS = ("db", "literal")


@dataclass(frozen=True)
class QkdLinkParams:
    mode: ChirpedGaussianMode
    medium: Medium
    jitter_sigma_d: float          # s
    window_w: float                # s
    separation_theta: float        # s
    length_l: float                # m
    attenuation_convention: str = "db"

    def __post_init__(self):
        if self.jitter_sigma_d < 0:
            raise ParameterDomainError(f"jitter must be >= 0, got {self.jitter_sigma_d}")
        if self.window_w <= 0:
            raise ParameterDomainError(f"window must be > 0, got {self.window_w}")
        # the window may not reach the neighboring slot centre; wider windows
        # (up to 2 theta) are legal and simply pay a large error probability
        if self.separation_theta <= self.window_w / 2.0:
            raise ParameterDomainError(
                f"separation ({self.separation_theta}) must exceed half the window "
                f"({self.window_w}); the window would swallow the neighboring slot")
        if self.length_l < 0:
            raise ParameterDomainError(f"length must be >= 0, got {self.length_l}")
        if self.attenuation_convention not in ATTENUATION_CONVENTIONS:
            raise ParameterDomainError(
                f"attenuation_convention must be one of {ATTENUATION_CONVENTIONS}")

    @property
    def sigma_l(self) -> float:
        return gamma_gaussian(self.mode.sigma, self.mode.chirp_c,
                              self.medium.beta, self.length_l).sigma_l


@dataclass(frozen=True)
class QkdRateResult:
    p_sig: float
    p_error: float
    p_raw: float
    qber_q: float
    key_rate_k: float
    eta: float


@dataclass(frozen=True)
class McEstimate:
    p_sig_hat: float
    p_sig_stderr: float
    p_error_hat: float
    p_error_stderr: float
    n_samples: int
    seed: int


def effective_detection_sd(sigma_l: float, sigma_d: float) -> float:
    """Width of the jitter-convolved arrival density: sqrt(sigma_l^2 + sigma_d^2)."""
    if sigma_l < 0 or sigma_d < 0:
        raise ParameterDomainError("widths must be >= 0")
    return math.hypot(sigma_l, sigma_d)


def _window_probability(center: float, sigma_eff: float, w: float) -> float:
    """Mass of a Gaussian(center, sigma_eff^2) inside [-w/2, w/2]."""
    if sigma_eff == 0.0:
        return 1.0 if abs(center) <= w / 2.0 else 0.0
    rt2 = math.sqrt(2.0) * sigma_eff
    return 0.5 * (math.erf((w / 2.0 - center) / rt2) - math.erf((-w / 2.0 - center) / rt2))


def p_signal(params: QkdLinkParams) -> float:
    """Probability of the signal photon registering inside the window."""
    s_eff = effective_detection_sd(params.sigma_l, params.jitter_sigma_d)
    return _window_probability(0.0, s_eff, params.window_w)


def p_error_neighbors(params: QkdLinkParams) -> float:
    """Probability of a stray count from a neighboring slot.

    e+ and e- are the window masses of the two shifted arrival densities;
    double detections are discarded, hence e+ + e- - 2 e+ e-.
    """
    s_eff = effective_detection_sd(params.sigma_l, params.jitter_sigma_d)
    e_plus = _window_probability(-params.separation_theta, s_eff, params.window_w)
    e_minus = _window_probability(params.separation_theta, s_eff, params.window_w)
    return e_plus + e_minus - 2.0 * e_plus * e_minus


def transmittance(atten_db_per_km: float, length: float, convention: str = "db") -> float:
    """Channel transmittance over length metres of fiber."""
    if atten_db_per_km < 0 or length < 0:
        raise ParameterDomainError("attenuation and length must be >= 0")
    l_km = length / 1000.0
    if convention == "db":
        return 10.0 ** (-atten_db_per_km * l_km / 10.0)
    if convention == "literal":
        return 10.0 ** (-atten_db_per_km * l_km)
    raise ParameterDomainError(f"unknown attenuation convention {convention!r}")


def binary_entropy(q: float) -> float:
    """h(q) = -q log2 q - (1-q) log2 (1-q), with h(0) = h(1) = 0."""
    if q <= 0.0 or q >= 1.0:
        return 0.0
    return -q * math.log2(q) - (1.0 - q) * math.log2(1.0 - q)


def key_rate(params: QkdLinkParams) -> QkdRateResult:
    """Raw-key probability, error rate and the BB84 key bound for one link."""
    p_sig = p_signal(params)
    p_err = p_error_neighbors(params)
    eta = transmittance(params.medium.atten_db_per_km, params.length_l,
                        params.attenuation_convention)
    stray = p_err * (1.0 - eta * p_sig)
    p_raw = eta * (p_sig + stray) / 2.0
    if p_raw > 0.0:
        qber = 0.25 * stray / p_raw
    else:
        qber = 0.0
    qber_clamped = min(max(qber, 0.0), 1.0)
    h = binary_entropy(min(qber_clamped, 0.5))
    k = max(p_raw * (1.0 - 2.0 * h), 0.0)
    return QkdRateResult(p_sig=p_sig, p_error=p_err, p_raw=p_raw,
                         qber_q=qber_clamped, key_rate_k=k, eta=eta)


def monte_carlo_oracle(params: QkdLinkParams, n_samples: int, seed: int) -> McEstimate:
    """Sampled window probabilities for cross-checking the erf expressions.

    Draws arrival times for the signal and both neighbor photons, adds
    detector jitter, and counts window hits; a neighbor error is scored when
    exactly one of the two neighbors lands in the window (both -> discarded),
    matching the joint-probability subtraction in the analytic form.
    """
    if n_samples < 10_000:
        raise ParameterDomainError(f"n_samples must be >= 10000, got {n_samples}")
    rng = np.random.default_rng(seed)
    s_l = params.sigma_l
    s_d = params.jitter_sigma_d
    half_w = params.window_w / 2.0
    theta = params.separation_theta

    sig = rng.normal(0.0, s_l, n_samples) + rng.normal(0.0, s_d, n_samples)
    hit_sig = np.abs(sig) <= half_w
    late = rng.normal(theta, s_l, n_samples) + rng.normal(0.0, s_d, n_samples)
    early = rng.normal(-theta, s_l, n_samples) + rng.normal(0.0, s_d, n_samples)
    hit_one = (np.abs(late) <= half_w) ^ (np.abs(early) <= half_w)

    p_sig_hat = float(hit_sig.mean())
    p_err_hat = float(hit_one.mean())
    return McEstimate(
        p_sig_hat=p_sig_hat,
        p_sig_stderr=math.sqrt(max(p_sig_hat * (1 - p_sig_hat), 1e-300) / n_samples),
        p_error_hat=p_err_hat,
        p_error_stderr=math.sqrt(max(p_err_hat * (1 - p_err_hat), 1e-300) / n_samples),
        n_samples=n_samples,
        seed=seed,
    )


@dataclass(frozen=True)
class WindowOptimum:
    w_best: float
    k_best: float
    all_zero: bool
    k_by_window: dict[float, float] = field(default_factory=dict)


def optimize_window(mode: ChirpedGaussianMode, medium: Medium, jitter_sigma_d: float,
                    separation_theta: float, length_l: float, w_grid,
                    attenuation_convention: str = "db") -> WindowOptimum:
    """Grid argmax of the key rate over detection windows; ties favor smaller w."""
    ws = [float(w) for w in w_grid]
    if not ws:
        raise ParameterDomainError("w_grid must not be empty")
    for w in ws:
        if w / 2.0 >= separation_theta:
            raise ParameterDomainError(
                f"window {w} must stay below twice the slot separation {separation_theta}")
    rates: dict[float, float] = {}
    for w in sorted(ws):
        params = QkdLinkParams(mode=mode, medium=medium, jitter_sigma_d=jitter_sigma_d,
                               window_w=w, separation_theta=separation_theta,
                               length_l=length_l,
                               attenuation_convention=attenuation_convention)
        rates[w] = key_rate(params).key_rate_k
    w_best = min(rates)
    for w in sorted(rates):
        if rates[w] > rates[w_best]:
            w_best = w
    all_zero = all(k == 0.0 for k in rates.values())
    if all_zero:
        w_best = min(rates)
    return WindowOptimum(w_best=w_best, k_best=rates[w_best], all_zero=all_zero,
                         k_by_window=rates)
