"""Broadening ratios, symbol rates and the chirp optimum.

For chirped Gaussian modes the width after distance L is closed-form:

    sigma_L = sqrt(L^2 beta^2 + (sigma^2 - C L beta)^2) / sigma
    Gamma   = sigma_L / sigma = sqrt((1 - C L beta / sigma^2)^2 + (L beta / sigma^2)^2)

For every other family the ratio is obtained numerically from the spectral
pipeline.  The symbol rate uses the three-sigma convention: a symbol lasts
6 sigma_L, so f_S = 1 / (6 sigma_L).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .dispersion import Medium, PropagationSpec, transfer_function
from .errors import ParameterDomainError, ResolutionError
from .modes import TemporalMode
from .sampling import (
    TAIL_FATAL,
    SampledWaveFunction,
    moments,
    plan_grid,
    predicted_sd,
    sample,
)


@dataclass(frozen=True)
class BroadeningResult:
    sigma0: float
    sigma_l: float
    gamma: float
    method: str  # "closed_form" | "numeric"


@dataclass(frozen=True)
class SymbolRateResult:
    t_symbol: float
    f_symbol: float


@dataclass(frozen=True)
class ChirpOptimum:
    """Interior minimum of Gamma(L), or the statement that none exists.

    When chirp_c * beta <= 0 the width is nondecreasing from L = 0; then
    has_interior_min is False, l_min is None and the best width is the
    initial one.
    """
    l_min: Optional[float]
    sigma_min: float
    gamma_min: float
    has_interior_min: bool


def gamma_gaussian(sigma: float, chirp_c: float, beta: float, length: float) -> BroadeningResult:
    """Closed-form broadening of a chirped Gaussian mode."""
    if sigma <= 0:
        raise ParameterDomainError(f"sigma must be positive, got {sigma}")
    sigma_l = predicted_sd(sigma, chirp_c, beta, length)
    return BroadeningResult(sigma0=sigma, sigma_l=sigma_l, gamma=sigma_l / sigma,
                            method="closed_form")


def gamma_numeric(mode: TemporalMode, spec: PropagationSpec, *,
                  max_n: Optional[int] = None) -> BroadeningResult:
    """Broadening via sampling, FFT propagation and central moments.

    The reference width sigma0 is the numeric standard deviation at L = 0 on
    the same grid, so shared discretization bias cancels in the ratio.
    """
    return gamma_numeric_sweep(mode, spec.medium, [spec.length], max_n=max_n)[0]


def gamma_numeric_sweep(mode: TemporalMode, medium: Medium, lengths: Sequence[float], *,
                        max_n: Optional[int] = None) -> list[BroadeningResult]:
    """Numeric broadening over many distances, reusing one plan per grid size.

    Distances are grouped in ascending order; whenever the planner would
    double the grid for the next batch the mode is resampled once and its
    forward transform reused for every distance in the batch.
    """
    if len(lengths) == 0:
        return []
    kw = {} if max_n is None else {"max_n": max_n}
    order = np.argsort(lengths, kind="stable")
    results: list[BroadeningResult] = [None] * len(lengths)  # type: ignore[list-item]

    grid = swf0 = fwd = sigma0 = None
    for idx in order[::-1]:  # descending L: each replan covers all smaller batches
        length = float(lengths[idx])
        g = plan_grid(mode, medium.beta, length, **kw)
        if grid is None or g.n != grid.n or g.dt != grid.dt:
            grid = g
            swf0 = sample(mode, grid)
            fwd = np.fft.fft(swf0.amps)
            sigma0 = moments(swf0).sd
        if medium.beta == 0.0 or length == 0.0:
            swf_l = swf0
        else:
            spec = PropagationSpec(medium=medium, length=length)
            amps = np.fft.ifft(fwd * transfer_function(grid, spec))
            swf_l = SampledWaveFunction(grid=grid, amps=amps)
            tail = swf_l.edge_tail_mass
            if tail > TAIL_FATAL:
                raise ResolutionError(
                    f"post-propagation edge tail mass {tail:.3g} exceeds {TAIL_FATAL:g} "
                    f"at L={length:g} m")
        sd_l = moments(swf_l).sd
        results[idx] = BroadeningResult(sigma0=sigma0, sigma_l=sd_l,
                                        gamma=sd_l / sigma0, method="numeric")
    return results


def chirp_optimum(sigma: float, chirp_c: float, beta: float) -> ChirpOptimum:
    """Distance of minimal width for a chirped Gaussian, L_min = C sigma^2 / ((1+C^2) beta).

    A genuine interior minimum requires C and beta to share a sign; the
    minimal width there is sigma / sqrt(1 + C^2).
    """
    if sigma <= 0:
        raise ParameterDomainError(f"sigma must be positive, got {sigma}")
    if chirp_c * beta <= 0 or beta == 0:
        return ChirpOptimum(l_min=None, sigma_min=sigma, gamma_min=1.0,
                            has_interior_min=False)
    denom = (1.0 + chirp_c ** 2)
    l_min = chirp_c * sigma ** 2 / (denom * beta)
    return ChirpOptimum(l_min=l_min, sigma_min=sigma / math.sqrt(denom),
                        gamma_min=1.0 / math.sqrt(denom), has_interior_min=True)


def symbol_rate(sigma_l: float) -> SymbolRateResult:
    """Three-sigma symbol duration and rate for a received width sigma_l."""
    if sigma_l <= 0:
        raise ParameterDomainError(f"sigma_l must be positive, got {sigma_l}")
    t_symbol = 6.0 * sigma_l
    return SymbolRateResult(t_symbol=t_symbol, f_symbol=1.0 / t_symbol)


def symbol_rate_gaussian(sigma: float, chirp_c: float, beta: float, length: float) -> SymbolRateResult:
    """Symbol rate of a chirped Gaussian after distance L (closed form)."""
    return symbol_rate(gamma_gaussian(sigma, chirp_c, beta, length).sigma_l)


def symbol_rate_asymptotic(which: str, sigma: float, chirp_c: float, beta: float,
                           length: float) -> float:
    """Three-term large-C or large-L expansions of the Gaussian symbol rate.

    Both expansions are evaluated exactly as published, keeping groupings
    like sqrt(L^2 beta^2) (= |L beta|) unsimplified.
    """
    lb = length * beta
    s = sigma
    c = chirp_c
    if which == "large_C":
        if c == 0 or lb == 0:
            raise ParameterDomainError("large_C expansion needs C != 0 and L*beta != 0")
        root = math.sqrt(lb * lb)
        return (s / (6.0 * c * root)
                + s ** 3 * root / (6.0 * c ** 2 * lb ** 3)
                - root * (lb * lb * s - 2.0 * s ** 5) / (12.0 * c ** 3 * lb ** 4))
    if which == "large_L":
        if length == 0 or beta == 0:
            raise ParameterDomainError("large_L expansion needs L != 0 and beta != 0")
        b2c = beta * beta * (c * c + 1.0)
        return (s / (6.0 * length * math.sqrt(b2c))
                + beta * c * s ** 3 / (6.0 * length ** 2 * b2c ** 1.5)
                + beta * beta * (2.0 * c * c - 1.0) * s ** 5 / (12.0 * length ** 3 * b2c ** 2.5))
    raise ParameterDomainError(f"which must be 'large_C' or 'large_L', got {which!r}")
