"""Independent numerical checks: Mellin quadrature, the density of ``1/X``,
non-negativity scans and an empirical estimate of the boundary ``f``.

Nothing here is used by the classifier; these routines exist to test it.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import integrate, optimize

from .classifier import L_bound, U_bound
from .errors import BracketError, DomainError, NumericalError
from .gamma_kernel import log_gamma, rgamma
from ._asymptotic import leading_behaviour
from .mittag_leffler import MLParams, ml3_eval, ml3_min_on_ray
from .reports import Certificate, ScanReport

__all__ = [
    "ScanReport",
    "Certificate",
    "QuadratureResult",
    "parallel_map",
    "ml3_tail_model",
    "density_X_inverse",
    "density_X_inverse_with_error",
    "density_tail_model",
    "mellin_quadrature",
    "mellin_quadrature_detail",
    "nonneg_scan",
    "oscillation_onset",
    "boundary_bracket",
]

MAX_PANELS = 2**20
SCAN_T_MAX = 1e4
SCAN_T_LIMIT = 1e7
RIGOROUS_MARGIN = 10.0


# ---------------------------------------------------------------------------
# deterministic parallel map


def _threads() -> int:
    try:
        n = int(os.environ.get("GAMMATYPE_THREADS", "1"))
    except ValueError:
        return 1
    return max(1, n)


def parallel_map(fn: Callable, items: Iterable, threads: int | None = None) -> list:
    """``[fn(x) for x in items]``, optionally on a thread pool; order is preserved."""
    items = list(items)
    n = _threads() if threads is None else max(1, int(threads))
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# densities


def _positive(**kw) -> list[float]:
    out = []
    for name, v in kw.items():
        v = float(v)
        if not (math.isfinite(v) and v > 0.0):
            raise DomainError(f"{name} must be positive, got {v!r}")
        out.append(v)
    return out


def _x_params(a, b, c, d):
    a, b, c, d = _positive(a=a, b=b, c=c, d=d)
    log_pref = log_gamma(a + b) + log_gamma(c) - log_gamma(a) - log_gamma(b)
    return a, b, MLParams(d, c + b * d, a + b), log_pref


def density_X_inverse_with_error(a, b, c, d, t: float) -> tuple[float, float]:
    """Density of ``1/X_{a,b,c,d}`` at ``t`` together with its error estimate."""
    (t,) = _positive(t=t)
    _a, b, p, log_pref = _x_params(a, b, c, d)
    r = ml3_eval(p, -t)
    if not math.isfinite(r.est_error):
        raise NumericalError(f"Mittag-Leffler evaluation failed at t={t!r}")
    scale = math.exp(log_pref + (b - 1.0) * math.log(t))
    return scale * r.value, scale * r.est_error


def density_X_inverse(a, b, c, d, t: float) -> float:
    """``Gamma(a+b) Gamma(c) / (Gamma(a) Gamma(b)) t^(b-1) E^{a+b}_{d, c+bd}(-t)``.

    Negative values are returned as they are: they show that no such ``X``
    exists.
    """
    return density_X_inverse_with_error(a, b, c, d, t)[0]


def ml3_tail_model(p: MLParams, n_terms: int = 12) -> list[tuple[float, float]]:
    """Algebraic large-``t`` terms of ``E^gam_{rho,mu}(-t)`` as ``(coef, exponent)`` pairs.

    ``sum (-1)^n (gam)_n / (n! Gamma(mu - rho (gam + n))) t^-(gam + n)``; the
    exponentially small and oscillating parts are left out, which is harmless
    for ``rho < 2``.
    """
    out = []
    for n in range(n_terms):
        lc = math.lgamma(p.gamma + n) - math.lgamma(p.gamma) - math.lgamma(n + 1.0)
        coef = (-1.0) ** n * math.exp(lc) * rgamma(p.mu - p.rho * (p.gamma + n))
        if coef != 0.0:
            out.append((coef, -(p.gamma + n)))
    return out


def density_tail_model(a, b, c, d, n_terms: int = 12) -> list[tuple[float, float]]:
    """Large-``t`` expansion of :func:`density_X_inverse` in the same format."""
    _a, b, p, log_pref = _x_params(a, b, c, d)
    pref = math.exp(log_pref)
    return [(pref * k, e + b - 1.0) for k, e in ml3_tail_model(p, n_terms)]


# ---------------------------------------------------------------------------
# Mellin quadrature


@dataclass
class QuadratureResult:
    value: float
    est_error: float
    body: float
    tail: float
    tail_error: float
    panels: int
    diagnostics: dict = field(default_factory=dict)


def _model_eval(model, t: float) -> float:
    return math.fsum(k * t**e for k, e in model)


def _model_tail(model, s: float, t_cut: float) -> tuple[float, float]:
    """``int_{t_cut}^inf t^(s-1) sum k t^e dt`` and the size of its last term."""
    parts = []
    for k, e in model:
        q = s + e
        if q >= 0.0:
            raise NumericalError(f"tail term t^{e:g} is not integrable against t^(s-1) with s={s:g}")
        parts.append(-k * t_cut**q / q)
    last = abs(parts[-1]) if parts else 0.0
    return math.fsum(parts), last


def _fitted_tail(f: Callable, s: float, t_cut: float) -> tuple[float, float]:
    """Tail integral of a power law through ``f(t_cut/2)`` and ``f(t_cut)``.

    Returns the integral and its error, judged by how well the same law
    predicts ``f(t_cut/4)``.
    """
    f1, f2, f0 = f(t_cut), f(t_cut / 2.0), f(t_cut / 4.0)
    if f1 == 0.0 and f2 == 0.0:
        return 0.0, 0.0
    if f1 == 0.0 or f2 == 0.0 or (f1 > 0) != (f2 > 0):
        raise NumericalError("tail is not monotone at t_cut; pass an explicit tail model")
    e = math.log(abs(f1 / f2)) / math.log(2.0)
    q = s + e
    if q >= 0.0:
        raise NumericalError(f"fitted tail t^{e:.3g} is not integrable against t^(s-1) with s={s:g}")
    tail = -f1 * t_cut**s / q
    # drift of the local exponent over the previous octave
    drift = abs(math.log(abs(f2 / f0)) / math.log(2.0) - e) if f0 != 0.0 and (f0 > 0) == (f2 > 0) else abs(q)
    return tail, abs(tail) * min(1.0, drift / abs(q))


def mellin_quadrature_detail(
    f: Callable[[float], float],
    s: float,
    t_cut: float,
    tol: float = 1e-8,
    tail: Sequence[tuple[float, float]] | None = None,
    small_t_exponent: float = 0.0,
    breakpoints: Sequence[float] = (),
) -> QuadratureResult:
    """``int_0^inf t^(s-1) f(t) dt`` split at ``t_cut``.

    The body is integrated adaptively on geometric panels.  On the first panel
    the factor ``t^(s - 1 + small_t_exponent)`` is handled as a quadrature
    weight, so ``f(t) ~ t^small_t_exponent`` near zero costs nothing extra.
    Beyond ``t_cut`` ``f`` is replaced by ``tail``, a list of ``(coef,
    exponent)`` power terms; without one a power law is fitted at ``t_cut``.
    """
    s, t_cut, tol = float(s), float(t_cut), float(tol)
    if not (t_cut > 0.0 and tol > 0.0):
        raise DomainError("t_cut and tol must be positive")
    beta = float(small_t_exponent)
    if s - 1.0 + beta <= -1.0:
        raise DomainError("t^(s-1) f(t) is not integrable at 0")

    t0 = min(1e-3, t_cut / 4.0)
    edges = list(np.geomspace(t0, t_cut, max(2, int(math.ceil(math.log2(t_cut / t0))) + 1)))
    for bp in sorted(float(x) for x in breakpoints):
        if t0 < bp < t_cut and bp not in edges:
            edges.append(bp)
    edges.sort()
    n_int = len(edges)
    eps_abs = tol / (2.0 * n_int)
    limit = 200
    panels = 0
    parts, errs = [], []

    def note(info):
        nonlocal panels
        panels += int(info.get("last", 1))
        if panels > MAX_PANELS:
            raise NumericalError(f"quadrature exceeded {MAX_PANELS} panels")

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        w = s - 1.0 + beta

        t_floor = t0 * 1e-15  # keeps t**beta away from underflow at the end point

        def g0(t):
            t = max(t, t_floor)
            return f(t) / t**beta if beta else f(t)
        v, e, info = integrate.quad(g0, 0.0, t0, weight="alg", wvar=(w, 0.0),
                                    epsabs=eps_abs, epsrel=1e-13, limit=limit, full_output=1)[:3]
        note(info)
        parts.append(v)
        errs.append(e)
        for lo, hi in zip(edges[:-1], edges[1:]):
            v, e, info = integrate.quad(lambda t: t ** (s - 1.0) * f(t), lo, hi,
                                        epsabs=eps_abs, epsrel=1e-13, limit=limit, full_output=1)[:3]
            note(info)
            parts.append(v)
            errs.append(e)
    body = math.fsum(parts)
    body_err = math.fsum(errs)

    diag = {}
    if tail is None:
        tail_v, tail_err = _fitted_tail(f, s, t_cut)
        diag["tail"] = "fitted"
    else:
        model = list(tail)
        tail_v, last = _model_tail(model, s, t_cut)
        ft = f(t_cut)
        rel_gap = abs(ft - _model_eval(model, t_cut)) / max(abs(ft), 1e-300)
        tail_err = last + abs(tail_v) * rel_gap
        diag["tail"] = "model"
        diag["model_gap_at_cut"] = rel_gap
    if not math.isfinite(tail_v):
        raise NumericalError("tail estimate did not converge")
    total = body + tail_v
    return QuadratureResult(total, body_err + tail_err, body, tail_v, tail_err, panels, diag)


def mellin_quadrature(f, s, t_cut, tol=1e-8, tail=None, small_t_exponent=0.0, breakpoints=()) -> float:
    """Value of :func:`mellin_quadrature_detail`."""
    return mellin_quadrature_detail(f, s, t_cut, tol, tail, small_t_exponent, breakpoints).value


# ---------------------------------------------------------------------------
# scans


def _eval_points(a, b, c, d, ts) -> list[tuple[float, float, float]]:
    def one(t):
        try:
            v, e = density_X_inverse_with_error(a, b, c, d, float(t))
        except NumericalError:
            return (float(t), math.nan, math.inf)
        return (float(t), v, e)

    return parallel_map(one, ts)


def oscillation_onset(a, b, c, d=2) -> float:
    """Where the undamped oscillation of ``E^{a+b}_{2, c+2b}(-t)`` overtakes its algebraic decay.

    Equates ``2^(1-g) t^((g-mu)/2) / Gamma(g)`` with ``|t^-g / Gamma(mu - 2g)|``;
    infinite when the oscillation never wins.
    """
    a, b, c, d = _positive(a=a, b=b, c=c, d=d)
    if d != 2.0:
        raise DomainError("only d = 2 has an undamped oscillation of power size")
    g, mu = a + b, c + 2.0 * b
    rate = (3.0 * g - mu) / 2.0
    if rate <= 0.0:
        return math.inf
    r = abs(rgamma(mu - 2.0 * g))
    if r == 0.0:
        return 0.0
    log_ratio = (g - 1.0) * math.log(2.0) + log_gamma(g) + math.log(r)
    return math.exp(max(log_ratio, 0.0) / rate)


def _refine(a, b, c, d, lo: float, hi: float):
    """Golden-section search for a lower value inside ``[lo, hi]``."""
    def g(u):
        try:
            return density_X_inverse(a, b, c, d, math.exp(u))
        except NumericalError:
            return math.inf

    r = optimize.minimize_scalar(g, bounds=(math.log(lo), math.log(hi)), method="bounded",
                                 options={"xatol": 1e-6})
    t = math.exp(r.x)
    try:
        v, e = density_X_inverse_with_error(a, b, c, d, t)
    except NumericalError:
        return None
    return (t, v, e)


def _certify(v: float, e: float) -> Certificate:
    if v < 0.0 and math.isfinite(e) and -v > RIGOROUS_MARGIN * e:
        return Certificate.RIGOROUS_NEGATIVE
    return Certificate.GRID_WITNESS


def nonneg_scan(a, b, c, d, t_max: float = SCAN_T_MAX, n_grid: int = 1200,
                t_limit: float = SCAN_T_LIMIT) -> ScanReport:
    """Sign scan of :func:`density_X_inverse` on a logarithmic grid ``[1e-3, t_max]``.

    When the minimum sits at the right edge the range is extended tenfold,
    up to ``t_limit``.  The minimum is polished by a local search between its
    grid neighbours.  ``RigorousNegative`` needs a negative value exceeding
    ten times its error estimate.
    """
    a, b, c, d = _positive(a=a, b=b, c=c, d=d)
    if not t_max > 1e-3 or n_grid < 2:
        raise DomainError("need t_max > 1e-3 and n_grid >= 2")
    t_min = 1e-3
    per_decade = n_grid / math.log10(t_max / t_min)
    ts = np.geomspace(t_min, t_max, int(n_grid))
    points = _eval_points(a, b, c, d, ts)
    # a dominant oscillation turns negative eventually, wherever the grid minimum is
    osc = leading_behaviour(d, c + b * d, a + b).get("dominant") == "oscillatory"
    hi = t_max
    extensions = 0
    while True:
        finite = [k for k, p in enumerate(points) if math.isfinite(p[1])]
        if not finite:
            raise NumericalError("no grid point could be evaluated")
        i = min(finite, key=lambda k: (points[k][1], k))
        at_edge = i == len(points) - 1
        if _certify(points[i][1], points[i][2]) is Certificate.RIGOROUS_NEGATIVE:
            break
        if not (at_edge or osc) or hi * 10.0 > t_limit * (1 + 1e-12):
            break
        new = np.geomspace(hi, hi * 10.0, int(per_decade) + 1)[1:]
        points += _eval_points(a, b, c, d, new)
        hi *= 10.0
        extensions += 1

    best = points[i]
    lo_t = points[max(i - 1, 0)][0]
    hi_t = points[min(i + 1, len(points) - 1)][0]
    unresolved = sum(1 for p in points if not math.isfinite(p[1]))
    if lo_t < hi_t:
        r = _refine(a, b, c, d, lo_t, hi_t)
        if r is not None and math.isfinite(r[1]) and r[1] < best[1]:
            best = r
            points.append(r)
            points.sort()
    return ScanReport(
        min_value=best[1],
        argmin=best[0],
        grid={"t_min": t_min, "t_max": hi, "n": len(points), "spacing": "log"},
        certified=_certify(best[1], best[2]),
        est_error=best[2],
        points=points,
        diagnostics={"extensions": extensions, "unresolved_points": unresolved,
                     "oscillation_dominant": osc},
    )


# ---------------------------------------------------------------------------
# boundary of the admissible domain


def _nonneg_ml2(rho: float, mu: float, t_max: float, n_grid: int) -> bool:
    rep = ml3_min_on_ray(MLParams(rho, mu, 1.0), t_max, n_grid)
    v = rep.min_value
    i = next(k for k, p in enumerate(rep.points) if p[0] == rep.argmin)
    lo = rep.points[max(i - 1, 0)][0]
    hi = rep.points[min(i + 1, len(rep.points) - 1)][0]
    if v >= 0.0 and lo < hi:
        p = MLParams(rho, mu, 1.0)
        r = optimize.minimize_scalar(lambda u: ml3_eval(p, -math.exp(u)).value,
                                     bounds=(math.log(lo), math.log(hi)), method="bounded",
                                     options={"xatol": 1e-8})
        v = min(v, float(r.fun))
    return v >= 0.0


def boundary_bracket(rho: float, mu_lo: float | None = None, mu_hi: float | None = None,
                     t_max: float = 1e4, tol_mu: float = 1e-3, n_grid: int = 1000) -> float:
    """Bisection estimate of the smallest ``mu`` with ``E_{rho,mu}(-t) >= 0`` on ``(0, t_max]``.

    The bracket defaults to ``[rho, 3.5]``.  Only ``gamma = 1`` is covered.
    """
    rho = float(rho)
    if not 1.0 < rho < 2.0:
        raise DomainError("rho must lie in (1, 2)")
    mu_lo = rho if mu_lo is None else float(mu_lo)
    mu_hi = 3.5 if mu_hi is None else float(mu_hi)
    if not (0.0 < mu_lo < mu_hi) or not tol_mu > 0.0:
        raise DomainError("need 0 < mu_lo < mu_hi and tol_mu > 0")
    lo_ok = _nonneg_ml2(rho, mu_lo, t_max, n_grid)
    hi_ok = _nonneg_ml2(rho, mu_hi, t_max, n_grid)
    if lo_ok == hi_ok:
        raise BracketError(
            f"non-negativity is {'true' if lo_ok else 'false'} at both ends of [{mu_lo}, {mu_hi}]"
        )
    if lo_ok:
        raise BracketError("non-negative below the bracket but not above it")
    while mu_hi - mu_lo > tol_mu:
        mid = 0.5 * (mu_lo + mu_hi)
        if _nonneg_ml2(rho, mid, t_max, n_grid):
            mu_hi = mid
        else:
            mu_lo = mid
    return 0.5 * (mu_lo + mu_hi)


def boundary_limits(rho: float) -> tuple[float, float]:
    """``(L(rho), U(rho))`` as floats, for comparison with :func:`boundary_bracket`."""
    return float(L_bound(rho)), float(U_bound(rho))
