"""Chromatic-dispersion propagation of sampled and analytic temporal modes.

Three independent routes are provided:

* a closed form for chirped Gaussian modes,
* a spectral (FFT) method for arbitrary sampled modes,
* a direct oscillatory-quadrature evaluation of the propagation integral,
  used as a cross-check oracle.

Propagation convolves psi with the time-domain kernel

    S(t, tau, L) = exp(i (t - tau)^2 / (4 beta L)) / (2 sqrt(pi i beta L)),

where beta is the group-velocity-dispersion parameter (s^2/m) and L the
distance.  Under the forward Fourier convention
psi_hat(omega) = integral psi(t) exp(-i omega t) dt, the kernel's transfer
function is

    H(omega) = exp(-i beta L omega^2),

obtained by completing the square in the Fresnel integral; numpy's FFT uses
exactly this convention, so the spectral route is ifft(H * fft(psi)).  A
sign error in H flips the chirp-dispersion interaction and is caught by the
closed-form cross-check with C != 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, ParameterDomainError, ResolutionError
from .modes import (
    ChirpedGaussianMode,
    GeneralizedGaussianMode,
    SechMode,
    TemporalMode,
    TimeBinQubitMode,
    evaluate,
)
from .sampling import TAIL_FATAL, GridSpec, SampledWaveFunction, predicted_sd

FS2_PER_M = 1e-30  # fs^2/m in s^2/m
PS2_PER_KM = 1e-27  # ps^2/km in s^2/m


@dataclass(frozen=True)
class Medium:
    label: str
    beta: float                  # s^2/m, signed
    atten_db_per_km: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.beta):
            raise ParameterDomainError(f"beta must be finite, got {self.beta}")
        if self.atten_db_per_km < 0:
            raise ParameterDomainError(
                f"attenuation must be >= 0 dB/km, got {self.atten_db_per_km}")


@dataclass(frozen=True)
class PropagationSpec:
    medium: Medium
    length: float  # m

    def __post_init__(self):
        if self.length < 0 or not math.isfinite(self.length):
            raise ParameterDomainError(f"length must be >= 0 m, got {self.length}")


# Gas values measured at 800 nm; the fiber entry is SMF-28e+ at 1550 nm.
_MEDIA = (
    Medium("nitrogen", 18.70 * FS2_PER_M),
    Medium("air", 20.05 * FS2_PER_M),
    Medium("oxygen", 24.76 * FS2_PER_M),
    Medium("carbon dioxide", 30.90 * FS2_PER_M),
    Medium("smf28e+", -1.15e-26, atten_db_per_km=0.2),
)

_ALIASES = {
    "co2": "carbon dioxide",
    "carbon-dioxide": "carbon dioxide",
    "carbon_dioxide": "carbon dioxide",
    "smf": "smf28e+",
    "smf-28e+": "smf28e+",
    "smf28e": "smf28e+",
    "fiber": "smf28e+",
}


def media_catalog() -> list[Medium]:
    """All built-in propagation media."""
    return list(_MEDIA)


def medium_by_label(label: str) -> Medium:
    key = label.strip().lower()
    key = _ALIASES.get(key, key)
    for m in _MEDIA:
        if m.label == key:
            return m
    known = ", ".join(m.label for m in _MEDIA)
    raise ParameterDomainError(f"unknown medium {label!r}; known media: {known}")


def propagate_gaussian_closed_form(mode: ChirpedGaussianMode, spec: PropagationSpec,
                                   t) -> np.ndarray:
    """Exact dispersed field of a chirped Gaussian mode.

    Evaluates the Gaussian propagation integral
    N / (2 sqrt(pi i beta L)) * sqrt(pi / A) * exp(i (1+iC) t^2 / (4 D)) with
    A = (1+iC)/(4 sigma^2) - i/(4 beta L) and D = beta L (1+iC) - i sigma^2,
    using principal square roots throughout (Re A > 0 makes that unambiguous).
    This single expression covers both dispersion signs and reproduces the
    published per-sign forms up to their printed global-phase conventions;
    |psi_L|^2 and all derived moments are identical.  L = 0 or beta = 0 is
    the identity map.
    """
    t = np.asarray(t, dtype=float)
    beta, length = spec.medium.beta, spec.length
    if beta == 0.0 or length == 0.0:
        return evaluate(mode, t)
    sigma, c = mode.sigma, mode.chirp_c
    bl = beta * length
    pref0 = (2.0 * math.pi) ** -0.25 / math.sqrt(sigma)
    a_quad = (1.0 + 1j * c) / (4.0 * sigma ** 2) - 1j / (4.0 * bl)
    d = bl * (1.0 + 1j * c) - 1j * sigma ** 2
    pref = pref0 / (2.0 * np.sqrt(np.pi * 1j * bl)) * np.sqrt(np.pi / a_quad)
    return pref * np.exp(1j * (1.0 + 1j * c) * t * t / (4.0 * d))


def transfer_function(grid: GridSpec, spec: PropagationSpec) -> np.ndarray:
    """H(omega) = exp(-i beta L omega^2) on the grid's FFT frequency layout."""
    omega = 2.0 * math.pi * np.fft.fftfreq(grid.n, grid.dt)
    return np.exp(-1j * spec.medium.beta * spec.length * omega ** 2)


def propagate_spectral(swf: SampledWaveFunction, spec: PropagationSpec) -> SampledWaveFunction:
    """Dispersed field via FFT, unimodular transfer function; norm-preserving."""
    if spec.medium.beta == 0.0 or spec.length == 0.0:
        amps = np.fft.ifft(np.fft.fft(swf.amps))
    else:
        amps = np.fft.ifft(np.fft.fft(swf.amps) * transfer_function(swf.grid, spec))
    out = SampledWaveFunction(grid=swf.grid, amps=amps)
    tail = out.edge_tail_mass
    if tail > TAIL_FATAL:
        raise ResolutionError(
            f"post-propagation edge tail mass {tail:.3g} exceeds {TAIL_FATAL:g} at "
            f"L={spec.length:g} m; plan a wider grid (larger l_max or max_n)")
    return out


# 7-point Gauss / 15-point Kronrod pair on [-1, 1] (QUADPACK dqk15 constants).
_KRONROD_X = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813,
])
_KRONROD_W = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529,
])
_GAUSS_W = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870,
])


def _panel_integrals(f, a: np.ndarray, b: np.ndarray):
    """Vectorized GK15 on panels [a_i, b_i]: returns (I15_i, err_i)."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = mid[:, None] + half[:, None] * _KRONROD_X[None, :]
    fx = f(x)
    i15 = (fx @ _KRONROD_W) * half
    i7 = (fx[:, 1::2] @ _GAUSS_W) * half
    return i15, np.abs(i15 - i7)


def _envelope_support(mode: TemporalMode, cutoff: float = 1e-14) -> tuple[float, float]:
    """Interval outside which |psi| < cutoff * peak."""
    ln = math.log(1.0 / cutoff)
    if isinstance(mode, ChirpedGaussianMode):
        w = 2.0 * mode.sigma * math.sqrt(ln)
        return -w, w
    if isinstance(mode, GeneralizedGaussianMode):
        w = mode.alpha * (2.0 * ln) ** (1.0 / mode.shape_q)
        return -w, w
    if isinstance(mode, SechMode):
        w = mode.sigma * (4.0 / math.pi) * (ln + 0.5 * math.log(2.0))
        return -w, w
    if isinstance(mode, TimeBinQubitMode):
        w = mode.separation_t / 2.0 + mode.packet_sigma * math.sqrt(2.0 * ln)
        return -w, w
    raise ParameterDomainError(f"unknown mode type: {type(mode).__name__}")


def _phase_breakpoints(mode: TemporalMode, lo: float, hi: float) -> np.ndarray:
    """tau values where the mode's own chirp phase crosses multiples of pi/4."""
    c = abs(getattr(mode, "chirp_c", 0.0))
    if c == 0.0:
        return np.array([])
    out = []
    if isinstance(mode, GeneralizedGaussianMode):
        # phase C |tau|^q / (2 alpha^q) crosses k pi/4 at |tau| = alpha (k pi / 2C)^(1/q)
        q, alpha = mode.shape_q, mode.alpha
        k, span = 1, max(abs(lo), abs(hi))
        while True:
            r = alpha * ((k * math.pi) / (2.0 * c)) ** (1.0 / q)
            if r > span or k > 100000:
                break
            out.extend((-r, r))
            k += 1
    else:
        centers = [0.0]
        scale2 = None
        if isinstance(mode, TimeBinQubitMode):
            centers = [-mode.separation_t / 2.0, mode.separation_t / 2.0]
            scale2 = 2.0 * mode.packet_sigma ** 2  # phase C x^2 / (2 st^2)
        else:
            scale2 = 4.0 * mode.sigma ** 2         # phase C t^2 / (4 sigma^2)
        span = hi - lo
        for t0 in centers:
            k = 1
            while True:
                r = math.sqrt(k * math.pi * scale2 / (4.0 * c))
                if r > span or k > 100000:
                    break
                out.extend((t0 - r, t0 + r))
                k += 1
    return np.asarray(out)


def propagate_quadrature_oracle(mode: TemporalMode, spec: PropagationSpec, t: float, *,
                                rel_tol: float = 1e-7,
                                max_panels: int = 60000) -> complex:
    """Dispersed amplitude at a single time by direct kernel quadrature.

    The integration domain is truncated where the initial envelope falls
    below 1e-14 of its peak.  Panels are seeded so neither the Fresnel
    kernel phase nor the mode's chirp phase advances more than pi/4 per
    panel, then bisected adaptively using the embedded Gauss 7 / Kronrod 15
    error estimate until the accumulated error is below rel_tol of the
    post-propagation peak amplitude scale.
    """
    beta, length = spec.medium.beta, spec.length
    if beta == 0.0 or length == 0.0:
        return complex(evaluate(mode, t))
    bl = beta * length
    lo, hi = _envelope_support(mode)

    # kernel phase (t-tau)^2/(4 bl) crosses k*pi/4 at tau = t +- sqrt(k pi |bl|)
    bps = [lo, hi, 0.0]
    if lo < t < hi:
        bps.append(t)
    k, abl = 1, abs(bl)
    while True:
        r = math.sqrt(k * math.pi * abl)
        if r > (hi - lo) or k > 200000:
            break
        bps.extend((t - r, t + r))
        k += 1
    if isinstance(mode, TimeBinQubitMode):
        bps.extend((-mode.separation_t / 2.0, mode.separation_t / 2.0))
    bps.extend(_phase_breakpoints(mode, lo, hi).tolist())
    edges = np.unique(np.clip(np.asarray(bps, dtype=float), lo, hi))
    # drop near-duplicate edges (min panel width 1e-12 of the span)
    keep = np.concatenate(([True], np.diff(edges) > 1e-12 * (hi - lo)))
    edges = edges[keep]
    if len(edges) < 2:
        edges = np.array([lo, hi])

    kernel_pref = 1.0 / (2.0 * np.sqrt(np.pi * 1j * bl))

    def integrand(tau):
        return kernel_pref * np.exp(1j * (t - tau) ** 2 / (4.0 * bl)) * evaluate(mode, tau)

    a, b = edges[:-1].copy(), edges[1:].copy()
    i15, err = _panel_integrals(integrand, a, b)

    # amplitude scale of the broadened field, for the absolute error floor
    sigma_f = _feature_width(mode)
    peak0 = float(np.max(np.abs(evaluate(mode, np.linspace(lo, hi, 513)))))
    spread = max(1.0, predicted_sd(sigma_f, getattr(mode, "chirp_c", 0.0), beta, length) / sigma_f)
    amp_scale = peak0 / math.sqrt(spread)

    while True:
        total = complex(i15.sum())
        tol = rel_tol * max(abs(total), 0.05 * amp_scale)
        if err.sum() <= tol:
            return total
        bad = err > 0.5 * tol / len(a)
        if not bad.any():
            bad = err >= np.partition(err, -min(8, len(err)))[-min(8, len(err))]
        if len(a) + int(bad.sum()) > max_panels:
            raise AccuracyError(
                f"quadrature oracle hit the {max_panels}-panel cap at achieved error "
                f"{err.sum() / max(abs(total), 1e-300):.2e} (target {rel_tol:g})",
                achieved=float(err.sum() / max(abs(total), 1e-300)))
        mid = 0.5 * (a[bad] + b[bad])
        sub_a = np.concatenate([a[bad], mid])
        sub_b = np.concatenate([mid, b[bad]])
        sub_i, sub_e = _panel_integrals(integrand, sub_a, sub_b)
        a = np.concatenate([a[~bad], sub_a])
        b = np.concatenate([b[~bad], sub_b])
        i15 = np.concatenate([i15[~bad], sub_i])
        err = np.concatenate([err[~bad], sub_e])


def _feature_width(mode: TemporalMode) -> float:
    if isinstance(mode, TimeBinQubitMode):
        return mode.packet_as_gaussian().sigma
    return mode.sigma
