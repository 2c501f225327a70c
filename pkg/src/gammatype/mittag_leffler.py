"""Real-line evaluation of Mittag-Leffler functions and the Wright function.

Three evaluation paths, tried in order of cost:

* the power series in double precision (compensated, with positive and
  negative terms summed apart so cancellation shows up in the error bound);
* for ``z < 0`` and ``rho <= 2``, the large-argument expansion: algebraic
  residue series truncated at its smallest term plus the exponential and
  oscillating contributions (see ``_asymptotic``);
* the power series in MPFR at a precision that absorbs the cancellation.

Each result carries ``est_error``; the cheaper paths are accepted only when
their estimate meets ``1e-12`` relative.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _asymptotic, _extended, _kernels
from .errors import DomainError
from .gamma_kernel import rgamma
from .reports import Certificate, ScanReport

#: Accuracy the cheaper branches must reach before they are trusted.
REL_TOL = 1e-12
#: Weaker contract every returned value meets unless ``est_error`` says otherwise.
CONTRACT_TOL = 1e-10
MAX_ABS_Z = 1e8
_SERIES_TERMS = 5000


class Branch(str, enum.Enum):
    SERIES = "Series"
    ASYMPTOTIC = "Asymptotic"


@dataclass(frozen=True)
class MLParams:
    rho: float
    mu: float
    gamma: float = 1.0

    def __post_init__(self):
        for name in ("rho", "mu", "gamma"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0.0):
                raise DomainError(f"{name} must be positive and finite, got {v!r}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class EvalResult:
    value: float
    branch: Branch
    est_error: float
    #: working precision in bits (53 for double-precision paths)
    precision: int = 53

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "branch": self.branch.value,
            "est_error": self.est_error,
            "precision": self.precision,
        }


def crossover(p: MLParams) -> float:
    """Argument size above which the large-argument expansion is preferred."""
    return max(10.0, (20.0 + p.mu + p.rho * p.gamma) ** p.rho)


def ml3_coefficient(p: MLParams, n: int) -> float:
    """``Gamma(gam + n) / (Gamma(gam) n! Gamma(mu + rho n))``."""
    log_c = math.lgamma(p.gamma + n) - math.lgamma(p.gamma) - math.lgamma(n + 1.0)
    return math.exp(log_c) * rgamma(p.mu + p.rho * n)


def ml3_coefficient_ratio(p: MLParams, n: int) -> float:
    """``c_{n+1} / c_n`` from the term recurrence."""
    a = p.mu + p.rho * n
    return (p.gamma + n) / (n + 1.0) * math.exp(math.lgamma(a) - math.lgamma(a + p.rho))


def _ok(value: float, err: float, tol: float) -> bool:
    return math.isfinite(err) and err <= tol * abs(value)


def ml3_series(p: MLParams, z: float) -> EvalResult:
    """Power series in double precision."""
    v, _abs, round_err, tail, _n = _kernels.ml_series(p.rho, p.mu, p.gamma, float(z), _SERIES_TERMS)
    if not math.isfinite(v):
        return EvalResult(math.nan, Branch.SERIES, math.inf)
    return EvalResult(v, Branch.SERIES, round_err + tail)


def ml3_asymptotic(p: MLParams, z: float) -> EvalResult:
    """Large-argument expansion at ``z < 0``; ``est_error`` is infinite when unusable."""
    if z >= 0.0:
        raise DomainError("the large-argument expansion needs z < 0")
    r = _asymptotic.asymptotic(p.rho, p.mu, p.gamma, -float(z))
    if r is None:
        return EvalResult(math.nan, Branch.ASYMPTOTIC, math.inf)
    return EvalResult(r[0], Branch.ASYMPTOTIC, r[1])


@lru_cache(maxsize=64)
def _ml_coeffs(rho: float, mu: float, gam: float) -> _extended.MLCoefficients:
    return _extended.MLCoefficients(rho, mu, gam)


def ml3_extended(p: MLParams, z: float, rel_tol: float = 1e-13) -> EvalResult | None:
    """Power series in MPFR arithmetic; ``None`` past the cost limits."""
    r = _extended.sum_series(_ml_coeffs(p.rho, p.mu, p.gamma), float(z), rel_tol)
    if r is None:
        return None
    return EvalResult(r.value, Branch.SERIES, r.est_error, r.precision)


def _check_z(z: float) -> float:
    z = float(z)
    if not math.isfinite(z) or abs(z) > MAX_ABS_Z:
        raise DomainError(f"|z| must be at most {MAX_ABS_Z:g}, got {z!r}")
    return z


def ml3_eval(p: MLParams, z: float) -> EvalResult:
    """``E^gamma_{rho,mu}(z)`` for real ``z``."""
    z = _check_z(z)
    if z == 0.0:
        return EvalResult(rgamma(p.mu), Branch.SERIES, 0.0)
    tried: list[EvalResult] = []
    x = -z
    large = z < 0.0 and x >= crossover(p)
    if not large:
        r = ml3_series(p, z)
        if _ok(r.value, r.est_error, REL_TOL):
            return r
        tried.append(r)
    if z < 0.0 and x >= 1.0 and p.rho <= 2.0:
        r = ml3_asymptotic(p, z)
        if _ok(r.value, r.est_error, REL_TOL):
            return r
        tried.append(r)
    r = ml3_extended(p, z)
    if r is not None:
        return r
    if large:
        tried.append(ml3_series(p, z))
    usable = [r for r in tried if math.isfinite(r.est_error)]
    if not usable:
        return EvalResult(math.nan, Branch.SERIES, math.inf)
    return min(usable, key=lambda r: r.est_error)


def ml2_eval(rho: float, mu: float, z: float) -> EvalResult:
    """``E_{rho,mu}(z)``."""
    return ml3_eval(MLParams(rho, mu, 1.0), z)


def ml1_eval(rho: float, z: float) -> EvalResult:
    """``E_rho(z)``."""
    return ml3_eval(MLParams(rho, 1.0, 1.0), z)


@lru_cache(maxsize=64)
def _wright_coeffs(alpha: float, beta: float) -> _extended.WrightCoefficients:
    return _extended.WrightCoefficients(alpha, beta)


def wright_eval(alpha: float, beta: float, z: float) -> EvalResult:
    """Wright function ``sum z^n / (n! Gamma(beta + alpha n))`` for ``alpha > -1``."""
    alpha, beta = float(alpha), float(beta)
    if not alpha > -1.0:
        raise DomainError(f"alpha must exceed -1, got {alpha!r}")
    z = _check_z(z)
    if alpha == 0.0:
        # every term carries 1/Gamma(beta), so the sum is exp(z)/Gamma(beta)
        v = math.exp(z) * rgamma(beta)
        return EvalResult(v, Branch.SERIES, 4e-16 * abs(v))
    v, _abs, round_err, tail, _n = _kernels.wright_series(alpha, beta, z, 20 * _SERIES_TERMS)
    if math.isfinite(v) and _ok(v, round_err + tail, REL_TOL):
        return EvalResult(v, Branch.SERIES, round_err + tail)
    r = _extended.sum_series(_wright_coeffs(alpha, beta), z)
    if r is not None:
        return EvalResult(r.value, Branch.SERIES, r.est_error, r.precision)
    if math.isfinite(v):
        return EvalResult(v, Branch.SERIES, round_err + tail)
    return EvalResult(math.nan, Branch.SERIES, math.inf)


def log_grid(t_max: float, n_grid: int, decades: float = 6.0) -> np.ndarray:
    """``n_grid`` log-uniform points ending at ``t_max``."""
    return np.geomspace(t_max * 10.0 ** (-decades), t_max, int(n_grid))


def ml3_min_on_ray(p: MLParams, t_max: float, n_grid: int = 2000) -> ScanReport:
    """Minimum of ``E(-t)`` over a logarithmic grid on ``(0, t_max]``."""
    if not t_max > 0.0:
        raise DomainError("t_max must be positive")
    if n_grid < 2:
        raise DomainError("n_grid must be at least 2")
    ts = log_grid(t_max, n_grid)
    points = []
    for t in ts:
        r = ml3_eval(p, -float(t))
        points.append((float(t), r.value, r.est_error))
    i = min(range(len(points)), key=lambda k: (points[k][1], k))
    t_star, v_star, e_star = points[i]
    cert = Certificate.GRID_WITNESS
    if v_star < 0.0 and math.isfinite(e_star) and -v_star > 10.0 * e_star:
        cert = Certificate.RIGOROUS_NEGATIVE
    return ScanReport(
        min_value=v_star,
        argmin=t_star,
        grid={"t_min": float(ts[0]), "t_max": float(ts[-1]), "n": len(ts), "spacing": "log"},
        certified=cert,
        est_error=e_star,
        points=points,
        diagnostics={"large_t": _asymptotic.leading_behaviour(p.rho, p.mu, p.gamma)},
    )
