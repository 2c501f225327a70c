"""Power series summed in MPFR arithmetic with a precision chosen from the
term magnitudes, for arguments where double-precision summation cancels."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

_LN2 = math.log(2.0)

#: Hard limits; beyond them the caller falls back to another branch.
MAX_BITS = 1 << 17
MAX_TERMS = 200_000
#: Bound on ``n_terms * bits``, a proxy for the cost of one summation.
MAX_WORK = 2e7


@dataclass
class ExtendedResult:
    value: float
    est_error: float
    precision: int
    n_terms: int


class SeriesCoefficients:
    """Coefficients ``c_n`` of a power series, in log-double and in MPFR."""

    def __init__(self):
        self._lock = threading.Lock()
        self._prec = 0
        self._cache: list = []

    def log_abs(self, n: int) -> float:
        raise NotImplementedError

    def _build(self, n_terms: int, prec: int) -> list:
        raise NotImplementedError

    def coefficients(self, n_terms: int, prec: int) -> list:
        with self._lock:
            if prec > self._prec or n_terms > len(self._cache):
                prec = max(prec, self._prec)
                if prec > self._prec:
                    # grow geometrically so scans do not rebuild at every step
                    prec = max(prec, min(2 * self._prec, MAX_BITS))
                n_build = max(n_terms, int(1.5 * len(self._cache)))
                with gmpy2.context(precision=prec + 32):
                    self._cache = self._build(n_build, prec + 32)
                self._prec = prec
            return self._cache[:n_terms]


def _is_int(x: float) -> bool:
    return float(x).is_integer()


class MLCoefficients(SeriesCoefficients):
    """``Gamma(gam + n) / (Gamma(gam) n! Gamma(mu + rho n))``."""

    def __init__(self, rho: float, mu: float, gam: float):
        super().__init__()
        self.rho, self.mu, self.gam = float(rho), float(mu), float(gam)
        self._lg_gam = math.lgamma(self.gam)

    def log_abs(self, n: int) -> float:
        return (
            math.lgamma(self.gam + n)
            - self._lg_gam
            - math.lgamma(n + 1.0)
            - math.lgamma(self.mu + self.rho * n)
        )

    def _build(self, n_terms: int, prec: int) -> list:
        mu, gam = mpfr(self.mu), mpfr(self.gam)
        frac = Fraction(self.rho).limit_denominator(64)
        if float(frac) == self.rho:
            # rho = p/q: 1/Gamma(mu + rho (n + q)) follows from 1/Gamma(mu + rho n)
            # by p divisions, so only q Gamma evaluations are needed
            p, q = frac.numerator, frac.denominator
            rg = [1 / gmpy2.gamma(mu + mpfr(p) * j / q) for j in range(min(q, n_terms))]
            for n in range(q, n_terms):
                base = mu + mpfr(p) * (n - q) / q
                g = rg[n - q]
                for j in range(p):
                    g = g / (base + j)
                rg.append(g)
        else:
            rho = mpfr(self.rho)
            rg = [1 / gmpy2.gamma(mu + rho * n) for n in range(n_terms)]
        out = []
        r = mpfr(1)
        for n in range(n_terms):
            out.append(r * rg[n])
            r = r * (gam + n) / (n + 1)
        return out


class WrightCoefficients(SeriesCoefficients):
    """``1 / (n! Gamma(beta + alpha n))``; zero where the Gamma has a pole."""

    def __init__(self, alpha: float, beta: float):
        super().__init__()
        self.alpha, self.beta = float(alpha), float(beta)

    def _arg_is_pole(self, n: int) -> bool:
        y = self.beta + self.alpha * n
        return y <= 0 and float(y).is_integer()

    def log_abs(self, n: int) -> float:
        y = self.beta + self.alpha * n
        if self._arg_is_pole(n):
            return -math.inf
        if y > 0:
            lg = math.lgamma(y)
        else:
            # |1/Gamma(y)| = |sin(pi y)| Gamma(1-y) / pi
            sn = abs(math.sin(math.pi * math.fmod(y, 2.0)))
            if sn == 0.0:
                return -math.inf
            lg = -(math.log(sn) + math.lgamma(1.0 - y) - math.log(math.pi))
        return -lg - math.lgamma(n + 1.0)

    def _build(self, n_terms: int, prec: int) -> list:
        alpha, beta = mpfr(self.alpha), mpfr(self.beta)
        out = []
        fact = mpfr(1)
        for n in range(n_terms):
            if n:
                fact = fact * n
            if self._arg_is_pole(n):
                out.append(mpfr(0))
            else:
                out.append(1 / (fact * gmpy2.gamma(beta + alpha * n)))
        return out


def _plan(coeffs: SeriesCoefficients, logx: float, floor_log: float):
    """Return ``(L_max, n_terms, tail_log)``: sum until the terms drop below
    ``floor_log`` for good."""
    L_max = -math.inf
    prev = -math.inf
    past_peak = 0
    n = 0
    while n < MAX_TERMS:
        L = coeffs.log_abs(n) + n * logx
        n += 1
        if L == -math.inf:
            continue
        if L > L_max:
            L_max = L
            past_peak = 0
        else:
            past_peak += 1
        # past the peak with a term ratio below 0.9 that only shrinks further
        if past_peak > 4 and L < floor_log and L < prev - 0.1:
            r = math.exp(L - prev)
            return L_max, n, L + math.log(r / (1.0 - r))
        prev = L
    return L_max, None, None


def sum_series(coeffs: SeriesCoefficients, z: float, rel_tol: float = 1e-13) -> ExtendedResult | None:
    """Sum ``sum c_n z^n`` with enough bits that the relative error is below ``rel_tol``.

    The working precision covers the gap between the largest term and the
    value; the value is not known in advance, so a guess is refined until the
    computed value confirms it.  Returns ``None`` when the hard limits on bits,
    terms or work are exceeded.
    """
    z = float(z)
    if z == 0.0:
        v = float(coeffs.coefficients(1, 64)[0])
        return ExtendedResult(v, 0.0, 64, 1)
    logx = math.log(abs(z))
    log_tol = math.log(rel_tol)
    log_v_guess = 0.0
    for _ in range(12):
        L_max, n_terms, tail_L = _plan(coeffs, logx, min(log_v_guess, 0.0) + log_tol - 8.0)
        if n_terms is None:
            return None
        log_v_guess = min(log_v_guess, L_max)
        bits = int(math.ceil((L_max - log_v_guess - log_tol) / _LN2)) + 64
        if bits > MAX_BITS or bits * n_terms > MAX_WORK:
            return None
        cs = coeffs.coefficients(n_terms, bits)
        with gmpy2.context(precision=bits):
            zz = mpfr(z)
            acc = mpfr(0)
            for c in reversed(cs):
                acc = acc * zz + c
            value = float(acc)
            log_v = float(gmpy2.log(abs(acc))) if acc != 0 else -math.inf
        noise_log = L_max + math.log(4.0 * n_terms) - bits * _LN2
        err_log = max(noise_log, tail_L) + _LN2
        if log_v - err_log >= -log_tol:
            err = math.exp(err_log) if err_log > -745.0 else 0.0
            # rounding to double
            err += abs(value) * 2.0**-53
            return ExtendedResult(value, err, bits, n_terms)
        if log_v > err_log + 10.0:
            # cancellation deeper than guessed, but the value is resolved
            log_v_guess = log_v - 4.0
        else:
            # nothing but noise survived: double the gap
            log_v_guess -= max(L_max - log_v_guess, 40.0)
    return None
