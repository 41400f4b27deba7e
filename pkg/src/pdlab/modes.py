"""Analytic single-photon temporal modes.

Every mode family is an immutable parameter record plus a pure evaluation
function returning the complex amplitude psi(t) in units of s^(-1/2).  All
families are unit-normalized: integral of |psi(t)|^2 over the real line is 1.
Times are SI seconds throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ParameterDomainError

# Supported parameter windows.  They exist to keep time grids finite: shape
# exponents below ~0.8 and chirps beyond |C|=100 produce tails or bandwidths
# that no 2^22-point grid can hold.  Widen at your own risk.
SHAPE_Q_RANGE = (0.1, 64.0)
CHIRP_RANGE = (-100.0, 100.0)


def gamma_function(s: float) -> float:
    """Euler gamma for real s > 0 (platform Lanczos implementation)."""
    if s <= 0:
        raise ParameterDomainError(f"gamma_function requires s > 0, got {s}")
    return math.gamma(s)


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterDomainError(msg)


def _check_chirp(c: float) -> None:
    _check(math.isfinite(c), f"chirp_c must be finite, got {c}")
    _check(CHIRP_RANGE[0] <= c <= CHIRP_RANGE[1],
           f"chirp_c={c} outside supported range {CHIRP_RANGE}")


@dataclass(frozen=True)
class GeneralizedGaussianMode:
    """exp(-(1+iC)|t|^q / (2 alpha^q)) envelope with q-dependent scale alpha.

    sigma is the standard deviation of |psi|^2 for every q; alpha is derived
    so that holds.  q=2 reduces exactly to ChirpedGaussianMode, q=1 is the
    Laplacian-shaped mode.  The chirp phase uses the same |t|^q power as the
    envelope, not a quadratic phase.
    """

    sigma: float
    chirp_c: float = 0.0
    shape_q: float = 2.0

    def __post_init__(self):
        _check(self.sigma > 0 and math.isfinite(self.sigma),
               f"sigma must be positive and finite, got {self.sigma}")
        _check_chirp(self.chirp_c)
        _check(SHAPE_Q_RANGE[0] <= self.shape_q <= SHAPE_Q_RANGE[1],
               f"shape_q={self.shape_q} outside supported range {SHAPE_Q_RANGE}")
        a = self.alpha
        _check(a > 0 and math.isfinite(a), f"derived alpha={a} is not positive/finite")

    @property
    def alpha(self) -> float:
        q = self.shape_q
        return self.sigma * math.sqrt(gamma_function(1.0 / q) / gamma_function(3.0 / q))


@dataclass(frozen=True)
class ChirpedGaussianMode:
    """Gaussian envelope exp(-(1+iC) t^2 / (4 sigma^2)); sigma is the SD of |psi|^2."""

    sigma: float
    chirp_c: float = 0.0

    def __post_init__(self):
        _check(self.sigma > 0 and math.isfinite(self.sigma),
               f"sigma must be positive and finite, got {self.sigma}")
        _check_chirp(self.chirp_c)


@dataclass(frozen=True)
class SechMode:
    """Hyperbolic-secant envelope sqrt(sech(pi t / 2 sigma) / 2 sigma) with quadratic chirp."""

    sigma: float
    chirp_c: float = 0.0

    def __post_init__(self):
        _check(self.sigma > 0 and math.isfinite(self.sigma),
               f"sigma must be positive and finite, got {self.sigma}")
        _check_chirp(self.chirp_c)


@dataclass(frozen=True)
class TimeBinQubitMode:
    """Photon delocalized into two Gaussian wave packets separated by T.

    Amplitudes are a = cos(theta/2) on the packet centred at +T/2 and
    b = sin(theta/2) e^{i phi} on the packet centred at -T/2.  Each packet
    carries the envelope exp(-(1+iC) t^2 / (2 packet_sigma^2)), i.e. one
    packet's |psi|^2 has standard deviation packet_sigma / sqrt(2).
    Evaluation divides by the square root of the exact overlap norm so the
    returned wave function integrates to 1 even for overlapping packets.
    """

    separation_t: float
    packet_sigma: float
    chirp_c: float = 0.0
    theta: float = math.pi / 2
    phi: float = 0.0

    def __post_init__(self):
        _check(self.separation_t >= 0 and math.isfinite(self.separation_t),
               f"separation_t must be >= 0, got {self.separation_t}")
        _check(self.packet_sigma > 0 and math.isfinite(self.packet_sigma),
               f"packet_sigma must be positive and finite, got {self.packet_sigma}")
        _check_chirp(self.chirp_c)
        _check(0.0 <= self.theta <= math.pi, f"theta={self.theta} outside [0, pi]")
        _check(0.0 <= self.phi < 2 * math.pi, f"phi={self.phi} outside [0, 2*pi)")

    @property
    def amplitude_a(self) -> complex:
        return complex(math.cos(self.theta / 2.0))

    @property
    def amplitude_b(self) -> complex:
        return math.sin(self.theta / 2.0) * complex(math.cos(self.phi), math.sin(self.phi))

    def packet_as_gaussian(self) -> ChirpedGaussianMode:
        """One wave packet expressed in the Gaussian-mode convention."""
        # (1+iC) t^2 / (2 s~^2) == (1+iC) t^2 / (4 sigma^2) with sigma = s~/sqrt(2)
        return ChirpedGaussianMode(sigma=self.packet_sigma / math.sqrt(2.0),
                                   chirp_c=self.chirp_c)


TemporalMode = Union[GeneralizedGaussianMode, ChirpedGaussianMode, SechMode, TimeBinQubitMode]


def _sech(x: np.ndarray) -> np.ndarray:
    # 1/cosh overflows around |x| ~ 710; this form never does
    ax = np.abs(x)
    e = np.exp(-ax)
    return 2.0 * e / (1.0 + e * e)


def exact_overlap_norm(qubit: TimeBinQubitMode) -> float:
    """Norm of the raw two-packet superposition before renormalization.

    Equals 1 + sin(theta) cos(phi) exp(-(1+C^2) T^2 / (4 packet_sigma^2)),
    the deviation from 1 being the interference of the overlapping packets.
    """
    T, st, c = qubit.separation_t, qubit.packet_sigma, qubit.chirp_c
    return 1.0 + math.sin(qubit.theta) * math.cos(qubit.phi) * math.exp(
        -(1.0 + c * c) * T * T / (4.0 * st * st))


def _packet(t: np.ndarray, packet_sigma: float, chirp_c: float) -> np.ndarray:
    pref = math.pi ** -0.25 / math.sqrt(packet_sigma)
    return pref * np.exp(-(1.0 + 1j * chirp_c) * t * t / (2.0 * packet_sigma ** 2))


def evaluate(mode: TemporalMode, t) -> np.ndarray:
    """Complex amplitude psi(t) of a unit-normalized mode; t scalar or array (s)."""
    t = np.asarray(t, dtype=float)
    if isinstance(mode, ChirpedGaussianMode):
        pref = (2.0 * math.pi) ** -0.25 / math.sqrt(mode.sigma)
        return pref * np.exp(-(1.0 + 1j * mode.chirp_c) * t * t / (4.0 * mode.sigma ** 2))
    if isinstance(mode, GeneralizedGaussianMode):
        q, a = mode.shape_q, mode.alpha
        pref = math.sqrt(q / (2.0 * a * gamma_function(1.0 / q)))
        return pref * np.exp(-(1.0 + 1j * mode.chirp_c) * np.abs(t) ** q / (2.0 * a ** q))
    if isinstance(mode, SechMode):
        s = mode.sigma
        env = np.sqrt(_sech(math.pi * t / (2.0 * s)) / (2.0 * s))
        return env * np.exp(-1j * mode.chirp_c * t * t / (4.0 * s * s))
    if isinstance(mode, TimeBinQubitMode):
        half = mode.separation_t / 2.0
        raw = (mode.amplitude_a * _packet(t - half, mode.packet_sigma, mode.chirp_c)
               + mode.amplitude_b * _packet(t + half, mode.packet_sigma, mode.chirp_c))
        return raw / math.sqrt(exact_overlap_norm(mode))
    raise ParameterDomainError(f"unknown mode type: {type(mode).__name__}")


def pdf(mode: TemporalMode, t) -> np.ndarray:
    """Arrival-time probability density |psi(t)|^2 (1/s)."""
    amp = evaluate(mode, t)
    return (amp.real ** 2 + amp.imag ** 2)
