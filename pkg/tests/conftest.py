"""Shared fixtures and independent numerical oracles.

The oracles here deliberately avoid the package's own integration paths:
moments come from scipy's adaptive quadrature on the analytic density, the
propagation oracle is a plain fine-step trapezoid over the explicit kernel,
and the detection probabilities come from a discrete convolution.  Tests
freeze values computed with these and compare the package against them.
"""
import numpy as np
import pytest
from scipy.integrate import quad

import pdlab as p


@pytest.fixture(scope="session")
def air():
    return p.medium_by_label("air")


@pytest.fixture(scope="session")
def smf():
    return p.medium_by_label("smf28e+")


def quad_moments(mode, half_width, points=()):
    """Mean and SD of |psi|^2 by adaptive quadrature (independent oracle)."""
    dens = lambda t: float(p.pdf(mode, t))
    kw = dict(limit=800, epsabs=1e-40)
    if points:
        kw["points"] = list(points)
    norm = quad(dens, -half_width, half_width, **kw)[0]
    mean = quad(lambda t: t * dens(t), -half_width, half_width, **kw)[0] / norm
    var = quad(lambda t: (t - mean) ** 2 * dens(t), -half_width, half_width, **kw)[0] / norm
    return norm, mean, float(np.sqrt(var))


def kernel_trapezoid_oracle(mode, medium, length, t, *, width_factor=1.0, steps=400_000):
    """Direct fine-trapezoid evaluation of the dispersion kernel integral."""
    beta = medium.beta
    from pdlab.dispersion import _envelope_support
    lo, hi = _envelope_support(mode)
    lo, hi = lo * width_factor, hi * width_factor
    phase_scale = np.sqrt(abs(beta) * length)
    dtau = min((hi - lo) / steps, phase_scale / 60.0)
    tau = np.arange(lo, hi, dtau)
    kern = 1.0 / (2.0 * np.sqrt(np.pi * 1j * beta * length)) * np.exp(
        1j * (t - tau) ** 2 / (4.0 * beta * length))
    vals = kern * p.evaluate(mode, tau)
    return np.trapezoid(vals, dx=dtau)


def convolution_window_oracle(sigma_l, sigma_d, w, center=0.0, n=2 ** 18 + 1):
    """Window mass of the jitter-convolved arrival density on a dense grid.

    Odd grid length keeps 'same'-mode convolution exactly centred; the mass
    comes from the cumulative trapezoid interpolated at the window edges, so
    the result is O(dt^2) accurate, well below 1e-6.
    """
    from scipy.signal import fftconvolve
    s = max(sigma_l, sigma_d)
    half_span = abs(center) + w / 2.0 + 16.0 * s
    tgrid = np.linspace(-half_span, half_span, n)
    dt = tgrid[1] - tgrid[0]
    g = lambda t, sc: np.exp(-t ** 2 / (2 * sc ** 2)) / (sc * np.sqrt(2 * np.pi))
    if sigma_l == 0.0 or sigma_d == 0.0:
        conv = g(tgrid - center, s)
    else:
        conv = fftconvolve(g(tgrid - center, sigma_l), g(tgrid, sigma_d), mode="same") * dt
    cum = np.concatenate(([0.0], np.cumsum((conv[1:] + conv[:-1]) * 0.5 * dt)))
    hi, lo = np.interp([w / 2.0, -w / 2.0], tgrid, cum)
    return float(hi - lo)
