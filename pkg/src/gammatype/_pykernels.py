"""Pure-Python hot kernels; ``_ckernels.pyx`` mirrors these line for line."""

from __future__ import annotations

import math

import numpy as np

_EPS = 2.220446049250313e-16
_LOG_TINY = -745.0


def _two_sum(s: float, c: float, x: float) -> tuple[float, float]:
    t = s + x
    if abs(s) >= abs(x):
        c += (s - t) + x
    else:
        c += (x - t) + s
    return t, c


def _log_rgamma(y: float) -> tuple[float, float]:
    """``(ln|1/Gamma(y)|, sign)``; sign 0 at a pole."""
    if y > 0.0:
        return -math.lgamma(y), 1.0
    if y == math.floor(y):
        return _LOG_TINY * 4, 0.0
    sn = math.sin(math.pi * math.fmod(y, 2.0))
    # 1/Gamma(y) = sin(pi y) Gamma(1-y) / pi
    return math.log(abs(sn)) + math.lgamma(1.0 - y) - math.log(math.pi), math.copysign(1.0, sn)


def ml_series(rho: float, mu: float, gam: float, z: float, max_terms: int):
    """Double-precision power series of the three-parameter Mittag-Leffler function.

    Returns ``(value, abs_sum, round_err, tail, n_terms)``.  Positive and
    negative terms go to separate compensated sums.
    """
    if z == 0.0:
        v = math.exp(-math.lgamma(mu))
        return v, v, v * 4 * _EPS, 0.0, 1
    logx = math.log(abs(z))
    neg = z < 0.0
    lg_gam = math.lgamma(gam)
    sp = cp = sn = cn = 0.0
    abs_sum = 0.0
    round_err = 0.0
    prev_L = -math.inf
    tail = math.inf
    n = 0
    while n < max_terms:
        g1, g2, g3 = math.lgamma(gam + n), math.lgamma(n + 1.0), math.lgamma(mu + rho * n)
        L = g1 - lg_gam - g2 - g3 + n * logx
        # each log-Gamma carries an absolute error of a few ulps of its size
        mag = abs(g1) + abs(lg_gam) + abs(g2) + abs(g3) + abs(n * logx)
        if L > 709.0:
            return math.inf, math.inf, math.inf, math.inf, n
        term = math.exp(L) if L > _LOG_TINY else 0.0
        abs_sum += term
        round_err += term * (2.0 * mag + 4.0) * _EPS
        if neg and n % 2 == 1:
            sn, cn = _two_sum(sn, cn, -term)
        else:
            sp, cp = _two_sum(sp, cp, term)
        n += 1
        if L < prev_L:
            total = abs((sp + cp) + (sn + cn))
            ratio = math.exp(L - prev_L)
            if ratio < 0.5 and (term <= 1e-17 * total or L <= _LOG_TINY):
                tail = term * ratio / (1.0 - ratio)
                break
        prev_L = L
    value = (sp + sn) + (cp + cn)
    return value, abs_sum, round_err, tail, n


def ml_asym_algebraic(rho: float, mu: float, gam: float, x: float, max_terms: int, finite: bool):
    """Algebraic part of the large-``x`` expansion of ``E(-x)``.

    Sums ``(-1)^n (gam)_n / n! x^(-gam-n) / Gamma(mu - rho (gam + n))`` up to
    the smallest term.  Truncation is decided on an envelope that drops the
    ``sin`` factor of the reflected Gamma, so near-integer arguments do not
    fake a small term.  With ``finite`` set the expansion terminates and every
    nonvanishing term is summed exactly.  Returns ``(value, trunc_err,
    round_err, n_used, growing)``; ``growing`` flags a first term that is
    already the smallest.
    """
    logx = math.log(x)
    lg_gam = math.lgamma(gam)
    log_pi = math.log(math.pi)
    s = c = 0.0
    prev_env = math.inf
    round_err = 0.0
    n = 0
    while n < max_terms:
        y = mu - rho * (gam + n)
        if finite and y <= 0.0:
            return s + c, 0.0, round_err, n, False
        g1, g2 = math.lgamma(gam + n), math.lgamma(n + 1.0)
        base = g1 - lg_gam - g2 - (gam + n) * logx
        env = base + (-math.lgamma(y) if y >= 1.0 else math.lgamma(1.0 - y) - log_pi)
        if not finite and env > prev_env:
            return s + c, math.exp(prev_env), round_err, n, n == 1
        if env <= _LOG_TINY:
            return s + c, 0.0, round_err, n, False
        lr, sg = _log_rgamma(y)
        if sg != 0.0:
            if n % 2 == 1:
                sg = -sg
            term = math.exp(base + lr)
            mag = abs(g1) + abs(lg_gam) + abs(g2) + abs((gam + n) * logx) + abs(lr)
            round_err += term * (2.0 * mag + 4.0) * _EPS
            s, c = _two_sum(s, c, sg * term)
        prev_env = env
        n += 1
    if finite:
        return s + c, 0.0, round_err, n, False
    return s + c, math.exp(prev_env), round_err, n, False


def wright_series(alpha: float, beta: float, z: float, max_terms: int):
    """Double-precision Wright series ``sum z^n / (n! Gamma(beta + alpha n))``.

    Returns ``(value, abs_sum, round_err, tail, n_terms)``.
    """
    if z == 0.0:
        lr, sg = _log_rgamma(beta)
        v = sg * math.exp(lr) if sg != 0.0 else 0.0
        return v, abs(v), abs(v) * 4 * _EPS, 0.0, 1
    logx = math.log(abs(z))
    neg = z < 0.0
    sp = cp = sn = cn = 0.0
    abs_sum = round_err = 0.0
    prev_L = -math.inf
    tail = math.inf
    n = 0
    # terms only decrease for good once n! dominates
    n_min = 2 + int(abs(z)) if alpha >= 0 else 2 + int(abs(z) ** (1.0 / (1.0 + alpha)))
    while n < max_terms:
        lr, sg = _log_rgamma(beta + alpha * n)
        g2 = math.lgamma(n + 1.0)
        L = lr - g2 + n * logx
        mag = abs(lr) + abs(g2) + abs(n * logx)
        if L > 709.0:
            return math.inf, math.inf, math.inf, math.inf, n
        term = math.exp(L) if (sg != 0.0 and L > _LOG_TINY) else 0.0
        if neg and n % 2 == 1:
            sg = -sg
        abs_sum += term
        round_err += term * (2.0 * mag + 4.0) * _EPS
        if sg * term > 0.0:
            sp, cp = _two_sum(sp, cp, term)
        elif term > 0.0:
            sn, cn = _two_sum(sn, cn, -term)
        n += 1
        if n > n_min and sg != 0.0 and L < prev_L:
            total = abs((sp + cp) + (sn + cn))
            ratio = math.exp(L - prev_L)
            if ratio < 0.5 and (term <= 1e-17 * total or L <= _LOG_TINY):
                tail = term * ratio / (1.0 - ratio)
                break
        if sg != 0.0:
            prev_L = L
    value = (sp + sn) + (cp + cn)
    return value, abs_sum, round_err, tail, n


_BERNOULLI_PLUS = (1.0, 0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0, 0.0, -1.0 / 30.0)


def _laurent_coeffs(alpha: float, beta: float) -> list[float]:
    """Coefficients ``c_j`` with ``exp(-alpha t)/(1-exp(-beta t)) = sum_j c_j t^(j-1)``."""
    out = []
    for j in range(len(_BERNOULLI_PLUS)):
        acc = 0.0
        for n in range(j + 1):
            m = j - n
            acc += (
                _BERNOULLI_PLUS[n] * beta**n / math.factorial(n) * (-alpha) ** m / math.factorial(m)
            )
        out.append(acc / beta)
    return out


def malmsten_kernel(A, a, B, b, t):
    """``sum_j e^{-t a_j/A_j}/(1-e^{-t/A_j}) - sum_k e^{-t b_k/B_k}/(1-e^{-t/B_k})``.

    Small ``t`` uses the Laurent expansion of each factor so that the
    ``1/t`` poles cancel analytically.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    pos = [(aj / Aj, 1.0 / Aj) for Aj, aj in zip(A, a)]
    negs = [(bk / Bk, 1.0 / Bk) for Bk, bk in zip(B, b)]
    scale = max([max(al, be) for al, be in pos + negs] + [1e-300])
    coeffs = np.zeros(len(_BERNOULLI_PLUS))
    for al, be in pos:
        coeffs += _laurent_coeffs(al, be)
    for al, be in negs:
        coeffs -= _laurent_coeffs(al, be)
    small = 0.02 / scale
    for i, ti in enumerate(t.flat):
        if ti < small:
            acc = 0.0
            for c in reversed(coeffs[1:]):
                acc = acc * ti + c
            out.flat[i] = coeffs[0] / ti + acc
        else:
            parts = [math.exp(-ti * al) / -math.expm1(-ti * be) for al, be in pos]
            parts += [-math.exp(-ti * al) / -math.expm1(-ti * be) for al, be in negs]
            out.flat[i] = math.fsum(parts)
    return out
