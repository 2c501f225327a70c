# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``; same signatures and results."""

from libc.math cimport lgamma, exp, log, sin, fmod, floor, fabs, copysign, expm1, INFINITY, M_PI

import numpy as np

cdef double _EPS = 2.220446049250313e-16
cdef double _LOG_TINY = -745.0


cdef inline void _two_sum(double *s, double *c, double x) nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


cdef inline double _log_rgamma(double y, double *sign) nogil:
    cdef double sn
    if y > 0.0:
        sign[0] = 1.0
        return -lgamma(y)
    if y == floor(y):
        sign[0] = 0.0
        return _LOG_TINY * 4
    sn = sin(M_PI * fmod(y, 2.0))
    sign[0] = copysign(1.0, sn)
    return log(fabs(sn)) + lgamma(1.0 - y) - log(M_PI)


def ml_series(double rho, double mu, double gam, double z, long max_terms):
    cdef double v, logx, lg_gam, L, term, total, ratio, g1, g2, g3, mag
    cdef double sp = 0.0, cp = 0.0, sn = 0.0, cn = 0.0
    cdef double abs_sum = 0.0, round_err = 0.0
    cdef double prev_L = -INFINITY, tail = INFINITY
    cdef long n = 0
    cdef bint neg = z < 0.0
    if z == 0.0:
        v = exp(-lgamma(mu))
        return v, v, v * 4 * _EPS, 0.0, 1
    logx = log(fabs(z))
    lg_gam = lgamma(gam)
    while n < max_terms:
        g1 = lgamma(gam + n)
        g2 = lgamma(n + 1.0)
        g3 = lgamma(mu + rho * n)
        L = g1 - lg_gam - g2 - g3 + n * logx
        mag = fabs(g1) + fabs(lg_gam) + fabs(g2) + fabs(g3) + fabs(n * logx)
        if L > 709.0:
            return INFINITY, INFINITY, INFINITY, INFINITY, n
        term = exp(L) if L > _LOG_TINY else 0.0
        abs_sum += term
        round_err += term * (2.0 * mag + 4.0) * _EPS
        if neg and n % 2 == 1:
            _two_sum(&sn, &cn, -term)
        else:
            _two_sum(&sp, &cp, term)
        n += 1
        if L < prev_L:
            total = fabs((sp + cp) + (sn + cn))
            ratio = exp(L - prev_L)
            if ratio < 0.5 and (term <= 1e-17 * total or L <= _LOG_TINY):
                tail = term * ratio / (1.0 - ratio)
                break
        prev_L = L
    return (sp + sn) + (cp + cn), abs_sum, round_err, tail, n


def ml_asym_algebraic(double rho, double mu, double gam, double x, long max_terms, bint finite):
    cdef double logx = log(x), lg_gam = lgamma(gam), log_pi = log(M_PI)
    cdef double s = 0.0, c = 0.0, prev_env = INFINITY, round_err = 0.0
    cdef double y, base, env, lr, sg, g1, g2, term, mag
    cdef long n = 0
    while n < max_terms:
        y = mu - rho * (gam + n)
        if finite and y <= 0.0:
            return s + c, 0.0, round_err, n, False
        g1 = lgamma(gam + n)
        g2 = lgamma(n + 1.0)
        base = g1 - lg_gam - g2 - (gam + n) * logx
        if y >= 1.0:
            env = base - lgamma(y)
        else:
            env = base + lgamma(1.0 - y) - log_pi
        if not finite and env > prev_env:
            return s + c, exp(prev_env), round_err, n, n == 1
        if env <= _LOG_TINY:
            return s + c, 0.0, round_err, n, False
        lr = _log_rgamma(y, &sg)
        if sg != 0.0:
            if n % 2 == 1:
                sg = -sg
            term = exp(base + lr)
            mag = fabs(g1) + fabs(lg_gam) + fabs(g2) + fabs((gam + n) * logx) + fabs(lr)
            round_err += term * (2.0 * mag + 4.0) * _EPS
            _two_sum(&s, &c, sg * term)
        prev_env = env
        n += 1
    if finite:
        return s + c, 0.0, round_err, n, False
    return s + c, exp(prev_env), round_err, n, False


def wright_series(double alpha, double beta, double z, long max_terms):
    cdef double lr, sg, v, logx, L, term, total, ratio, g2, mag
    cdef double sp = 0.0, cp = 0.0, sn = 0.0, cn = 0.0
    cdef double abs_sum = 0.0, round_err = 0.0
    cdef double prev_L = -INFINITY, tail = INFINITY
    cdef long n = 0, n_min
    cdef bint neg = z < 0.0
    if z == 0.0:
        lr = _log_rgamma(beta, &sg)
        v = sg * exp(lr) if sg != 0.0 else 0.0
        return v, fabs(v), fabs(v) * 4 * _EPS, 0.0, 1
    logx = log(fabs(z))
    if alpha >= 0:
        n_min = 2 + <long>fabs(z)
    else:
        n_min = 2 + <long>(fabs(z) ** (1.0 / (1.0 + alpha)))
    while n < max_terms:
        lr = _log_rgamma(beta + alpha * n, &sg)
        g2 = lgamma(n + 1.0)
        L = lr - g2 + n * logx
        mag = fabs(lr) + fabs(g2) + fabs(n * logx)
        if L > 709.0:
            return INFINITY, INFINITY, INFINITY, INFINITY, n
        term = exp(L) if (sg != 0.0 and L > _LOG_TINY) else 0.0
        if neg and n % 2 == 1:
            sg = -sg
        abs_sum += term
        round_err += term * (2.0 * mag + 4.0) * _EPS
        if sg * term > 0.0:
            _two_sum(&sp, &cp, term)
        elif term > 0.0:
            _two_sum(&sn, &cn, -term)
        n += 1
        if n > n_min and sg != 0.0 and L < prev_L:
            total = fabs((sp + cp) + (sn + cn))
            ratio = exp(L - prev_L)
            if ratio < 0.5 and (term <= 1e-17 * total or L <= _LOG_TINY):
                tail = term * ratio / (1.0 - ratio)
                break
        if sg != 0.0:
            prev_L = L
    return (sp + sn) + (cp + cn), abs_sum, round_err, tail, n


from ._pykernels import _laurent_coeffs


def malmsten_kernel(A, a, B, b, t):
    from math import fsum
    cdef double[::1] tv
    cdef double[::1] ov
    cdef double[::1] cv
    cdef Py_ssize_t i, j, m
    cdef double ti, acc, small, scale
    t = np.ascontiguousarray(t, dtype=float)
    shape = t.shape
    flat = t.reshape(-1)
    out = np.empty_like(flat)
    pos = [(aj / Aj, 1.0 / Aj) for Aj, aj in zip(A, a)]
    negs = [(bk / Bk, 1.0 / Bk) for Bk, bk in zip(B, b)]
    scale = max([max(al, be) for al, be in pos + negs] + [1e-300])
    coeffs = np.zeros(9)
    for al, be in pos:
        coeffs += _laurent_coeffs(al, be)
    for al, be in negs:
        coeffs -= _laurent_coeffs(al, be)
    tv = flat
    ov = out
    cv = coeffs
    m = cv.shape[0]
    small = 0.02 / scale
    for i in range(tv.shape[0]):
        ti = tv[i]
        if ti < small:
            acc = 0.0
            for j in range(m - 1, 0, -1):
                acc = acc * ti + cv[j]
            ov[i] = cv[0] / ti + acc
        else:
            parts = [exp(-ti * al) / -expm1(-ti * be) for al, be in pos]
            parts += [-exp(-ti * al) / -expm1(-ti * be) for al, be in negs]
            ov[i] = fsum(parts)
    return out.reshape(shape)
