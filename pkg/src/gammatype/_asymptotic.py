"""Large-argument expansion of ``E^gam_{rho,mu}(-x)``.

With ``t = x^(1/rho)`` the function equals ``t^(1-mu) e(t)`` where ``e`` has
Laplace transform ``F(s) = s^(rho gam - mu) / (s^rho + 1)^gam``.  The
expansion has two parts:

* the algebraic series coming from the branch point of ``F`` at the origin,
  summed in ``_kernels.ml_asym_algebraic``;
* exponentially small or oscillating contributions from the singular points
  ``s0 = exp(+-i pi/rho)`` where ``s^rho + 1`` vanishes.  Near ``s0``,
  ``F(s) = (s - s0)^(-gam) g(s)``, and the Taylor coefficients ``a_k`` of
  ``g`` at ``s0`` (computed by FFT on a small circle) give
  ``e^(s0 t) sum_k a_k t^(gam-k-1) / Gamma(gam - k)``.

Only ``rho <= 2`` is handled; for larger ``rho`` the singular points lie in
the right half-plane and the expansion is not used.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .gamma_kernel import rgamma

_N_FFT = 64
_N_COEFFS = 28
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class _Singularity:
    s0: complex
    coeffs: tuple  # Taylor coefficients a_k of g at s0
    noise: tuple  # absolute uncertainty of each a_k
    paired: bool  # contributes 2 Re(...) for the conjugate point too


def _is_int(x: float) -> bool:
    return float(x).is_integer()


def _power(w: np.ndarray, p: float) -> np.ndarray:
    if _is_int(p):
        return w ** int(p)
    return np.exp(p * np.log(w))


def _g_on_circle(rho, mu, gam, s0, theta, r):
    w = s0 + r * np.exp(2j * np.pi * np.arange(_N_FFT) / _N_FFT)
    h = (_power(w, rho) + 1.0) / (w - s0)
    h0 = rho * cmath.exp(1j * (math.pi - theta))
    ratio = h / h0
    if np.max(np.abs(ratio - 1.0)) >= 0.9:
        return None
    log_h = complex(math.log(rho), math.pi - theta) + np.log(ratio)
    return _power(w, rho * gam - mu) * np.exp(-gam * log_h)


@lru_cache(maxsize=512)
def singularities(rho: float, mu: float, gam: float):
    """Singular points contributing to the expansion.

    Returns an empty tuple for ``rho < 1`` (nothing beyond the algebraic
    part), ``None`` when the contribution exists but is only bounded.
    """
    if rho < 1.0:
        return ()
    if rho > 2.0:
        return None
    expo = rho * gam - mu
    if rho == 1.0:
        if not _is_int(expo):
            return None
        # F(s) = s^expo (s + 1)^(-gam): g is a polynomial in (s + 1)
        k = int(expo)
        coeffs = [0j] * _N_COEFFS
        if k >= 0:
            for j in range(min(k, _N_COEFFS - 1) + 1):
                coeffs[j] = complex(math.comb(k, j) * (-1) ** (k - j))
            noise = (0.0,) * _N_COEFFS
        else:
            for j in range(_N_COEFFS):
                # (s+1-1)^k = (-1)^k (1 - u)^k, u = s + 1
                coeffs[j] = complex((-1) ** k * math.comb(-k + j - 1, j))
            noise = tuple(abs(c) * 4 * _EPS for c in coeffs)
        return (_Singularity(-1.0 + 0j, tuple(coeffs), noise, False),)
    theta = math.pi / rho
    s0 = cmath.exp(1j * theta)
    dist = 1.0 if math.cos(theta) >= 0.0 else math.sin(theta)
    r = 0.5 * min(1.0, 2.0 * math.sin(theta), dist)
    g = None
    while g is None and r > 1e-3:
        g = _g_on_circle(rho, mu, gam, s0, theta, r)
        if g is None:
            r *= 0.5
    if g is None:
        return None
    spec = np.fft.fft(g) / _N_FFT
    gmax = float(np.max(np.abs(g)))
    coeffs, noise = [], []
    for k in range(_N_COEFFS):
        coeffs.append(complex(spec[k]) / r**k)
        noise.append(10.0 * _EPS * _N_FFT * gmax / r**k)
    # aliasing: the FFT coefficient k also carries a_{k+N} r^N, negligible at r <= 1/2
    return (_Singularity(s0, tuple(coeffs), tuple(noise), True),)


def _contribution(sing: _Singularity, rho, mu, gam, t):
    """Value and error bound of one singular point's contribution at ``t``."""
    log_t = math.log(t)
    log_mag = (1.0 - mu) * log_t + t * sing.s0.real
    if log_mag < -745.0 + 60.0:
        return 0.0, 0.0
    phase = cmath.exp(1j * t * sing.s0.imag)
    total = 0j
    err = 0.0
    best = math.inf
    used = 0
    finite = _is_int(gam) and gam >= 1
    n_terms = int(gam) if finite else len(sing.coeffs)
    for k in range(min(n_terms, len(sing.coeffs))):
        rg = rgamma(gam - k)
        if rg == 0.0:
            continue
        scale = rg * math.exp(log_mag + (gam - k - 1.0) * log_t)
        term = sing.coeffs[k] * scale
        bound = (abs(sing.coeffs[k]) + sing.noise[k]) * abs(scale)
        if not finite and bound > best:
            break
        total += term
        err += sing.noise[k] * abs(scale)
        best = bound
        used += 1
    if not finite:
        if used < 3:
            # diverging from the start: the truncation bound means nothing
            return 0.0, math.inf
        err += 4.0 * best
    total *= phase
    # the phase argument t Im(s0) carries an absolute error of order t eps
    err += abs(total) * (8.0 + t) * _EPS
    if sing.paired:
        return 2.0 * total.real, 2.0 * err
    return total.real, err


def asymptotic(rho: float, mu: float, gam: float, x: float):
    """``(value, est_error)`` of the expansion at ``-x``, or ``None``.

    ``None`` means the expansion is unusable here (``rho > 2`` or the
    algebraic series diverges from its first term).
    """
    if rho > 2.0 or x <= 0.0:
        return None
    finite = _is_int(rho) and _is_int(mu - rho * gam)
    alg, trunc, round_err, _n, growing = _kernels.ml_asym_algebraic(rho, mu, gam, x, 400, finite)
    if growing:
        return None
    # the smallest-term rule is an estimate, not a bound; keep a margin
    alg_err = 10.0 * trunc + round_err + abs(alg) * 4 * _EPS
    sings = singularities(rho, mu, gam)
    t = x ** (1.0 / rho)
    value, err = alg, alg_err
    if sings is None:
        # only a bound on the exponentially small part
        g = rgamma(gam)
        bound = 10.0 * math.exp(min(700.0, (gam - mu) * math.log(t) - t * abs(math.cos(math.pi / rho))))
        err += bound * max(abs(g), 1.0)
    else:
        for s in sings:
            v, e = _contribution(s, rho, mu, gam, t)
            value += v
            err += e
    return value, err


def leading_behaviour(rho: float, mu: float, gam: float) -> dict:
    """Sign and rate of the dominant large-``x`` behaviour of ``E(-x)``."""
    out: dict = {}
    n0 = None
    for n in range(64):
        if rgamma(mu - rho * (gam + n)) != 0.0:
            n0 = n
            break
    alg_rate = None
    if n0 is not None:
        sign = (-1) ** n0 * math.copysign(1.0, rgamma(mu - rho * (gam + n0)))
        alg_rate = -(gam + n0)
        out["algebraic_sign"] = int(sign)
        out["algebraic_rate"] = alg_rate
    if rho > 2.0:
        out["oscillatory"] = "growing"
        out["dominant"] = "oscillatory"
    elif rho == 2.0:
        osc_rate = (gam - mu) / 2.0
        out["oscillatory"] = "undamped"
        out["oscillatory_rate"] = osc_rate
        out["dominant"] = "oscillatory" if alg_rate is None or osc_rate > alg_rate else "algebraic"
    else:
        out["oscillatory"] = "damped" if rho > 1.0 else "none"
        out["dominant"] = "algebraic" if alg_rate is not None else "exponential"
    return out
