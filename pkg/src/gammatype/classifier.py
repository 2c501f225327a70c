"""Decision procedures for the existence of laws with Gamma-type moments.

Every procedure returns a :class:`Verdict` with a tri-valued decision and a
tag naming the clause that fired.  Comparisons are exact: inputs are turned
into :class:`~fractions.Fraction` (floats convert exactly), so clauses that
differ only in strictness are told apart.

Tags
----
``X.I(k)`` / ``X.II(k)``
    non-existence / existence clauses for ``X_{a,b,c,d}``.
``ML3.I(k)`` / ``ML3.II(k)``
    the same clauses in Mittag-Leffler coordinates ``(rho, mu, gam)``.
``ML2.*``
    admissible domain of ``E_{rho,mu}``.
``D.*``, ``Y_MP.*``, ``M_FS.*``, ``B_Dufresne.*``, ``F_Bosch.*``, ``HCM``,
``gamma-mixture``
    the remaining families.

The boundary ``f`` of the admissible domain is known only through the
bracket ``L < f < U`` on ``(1, 2)`` and the endpoint values ``f(1) = 1`` and
``f(2) = 3``.  Non-existence clauses use ``L`` and existence clauses use
``U``, which keeps both sound.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

from .errors import DomainError
from .gamma_kernel import as_exact, log_gamma

Number = Union[int, float, Fraction]


class Decision(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


class FMode(str, enum.Enum):
    EXACT_ENDPOINT = "ExactEndpoint"
    LOWER_BOUND_L = "LowerBoundL"
    UPPER_BOUND_U = "UpperBoundU"
    EMPIRICAL_F_HAT = "EmpiricalFHat"


@dataclass(frozen=True)
class Verdict:
    decision: Decision
    condition: str
    #: how the boundary ``f`` entered the decision; ``None`` if it did not
    f_mode: FMode | None = None
    #: signed slack of the deciding inequalities (positive = satisfied)
    margins: dict = field(default_factory=dict)
    #: False only for decisions that rest on an empirical estimate of ``f``
    rigorous: bool = True
    extra: dict = field(default_factory=dict)

    @property
    def is_yes(self) -> bool:
        return self.decision is Decision.YES

    @property
    def is_no(self) -> bool:
        return self.decision is Decision.NO

    @property
    def decided(self) -> bool:
        return self.decision is not Decision.UNKNOWN

    def to_json(self) -> dict:
        out = {
            "decision": self.decision.value,
            "condition": self.condition,
            "f_mode": self.f_mode.value if self.f_mode else None,
            "margins": {k: float(v) for k, v in self.margins.items()},
            "rigorous": self.rigorous,
        }
        if self.extra:
            out["extra"] = {k: (float(v) if isinstance(v, Fraction) else v) for k, v in self.extra.items()}
        return out


def _yes(tag, f_mode=None, margins=None, **extra) -> Verdict:
    return Verdict(Decision.YES, tag, f_mode, dict(margins or {}), True, extra)


def _no(tag, f_mode=None, margins=None, **extra) -> Verdict:
    return Verdict(Decision.NO, tag, f_mode, dict(margins or {}), True, extra)


def _q(x: Number, name: str) -> Fraction:
    """Exact rational value of a finite real input."""
    if isinstance(x, bool):
        raise DomainError(f"{name} must be a number")
    v = as_exact(x)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {x!r}")
        v = Fraction(v)
    return Fraction(v)


def _positive(x: Number, name: str) -> Fraction:
    v = _q(x, name)
    if v <= 0:
        raise DomainError(f"{name} must be positive, got {x}")
    return v


# ---------------------------------------------------------------------------
# the boundary bracket

_THREE_HALVES = Fraction(3, 2)


def L_bound(rho: Number) -> Fraction:
    """Lower bound ``L(rho) < f(rho)`` for ``1 < rho < 2``.

    The quadratic branch is exact; in the exponential branch the excess over
    ``rho`` is the nearest double.
    """
    r = _q(rho, "rho")
    if not 1 < r < 2:
        raise DomainError(f"L is defined on (1, 2), got rho={rho!r}")
    if r < _THREE_HALVES:
        rf = float(r)
        # keep rho exact and add the (possibly tiny) excess separately, so
        # that L > rho survives even when the excess is below one ulp of rho
        return r + Fraction(math.exp(-math.pi / math.tan(math.pi * (1.0 - 1.0 / rf))))
    return 3 * (r - 1) + Fraction(7, 10) * (2 - r) ** 2


def U_bound(rho: Number) -> Fraction:
    """Upper bound ``f(rho) < U(rho)`` for ``1 < rho < 2``."""
    r = _q(rho, "rho")
    if not 1 < r < 2:
        raise DomainError(f"U is defined on (1, 2), got rho={rho!r}")
    if r < _THREE_HALVES:
        return Fraction(4, 3) * r
    return 2 * r - 1


F_ENDPOINTS = {Fraction(1): Fraction(1), Fraction(2): Fraction(3)}

FHat = Callable[[float], float]


def _f_for_no(rho: Fraction) -> tuple[Fraction, FMode]:
    if rho in F_ENDPOINTS:
        return F_ENDPOINTS[rho], FMode.EXACT_ENDPOINT
    return L_bound(rho), FMode.LOWER_BOUND_L


def _f_for_yes(rho: Fraction) -> tuple[Fraction, FMode]:
    if rho in F_ENDPOINTS:
        return F_ENDPOINTS[rho], FMode.EXACT_ENDPOINT
    return U_bound(rho), FMode.UPPER_BOUND_U


# ---------------------------------------------------------------------------
# clause evaluation in Mittag-Leffler coordinates
#
# X_{a,b,c,d} exists iff E^{a+b}_{d, c+bd}(-t) >= 0 for t > 0, so both
# families share one clause table written in (rho, mu, gam).


def _ml3_clauses(rho: Fraction, mu: Fraction, gam: Fraction):
    """Return ``(kind, index, f_mode, margins)`` for the first clause that fires.

    ``kind`` is ``"I"`` (negative values), ``"II"`` (non-negative) or ``None``.
    Within each kind, clauses that do not involve ``f`` are tried first.
    """
    in_band = 1 < rho <= 2
    if rho > 2:
        return "I", 1, None, {"rho-2": rho - 2}
    if mu < gam * rho:
        return "I", 2, None, {"gam*rho-mu": gam * rho - mu}
    if rho == 2 and mu < 3 * gam:
        return "I", 3, None, {"3gam-mu": 3 * gam - mu}
    if in_band and gam >= 1:
        f_lo, mode = _f_for_no(rho)
        thr = gam * rho + f_lo - rho
        if mu < thr:
            return "I", 4, mode, {"threshold-mu": thr - mu}
    if rho <= 1 and mu >= rho * gam:
        return "II", 1, None, {"mu-rho*gam": mu - rho * gam}
    if in_band:
        v = mu / rho - gam
        m1 = 2 * mu - 3 * gam * rho
        m2 = 2 * v * (v + Fraction(1, 2)) - gam
        if m1 >= 0 and m2 >= 0:
            return "II", 3, None, {"2mu-3gam*rho": m1, "quadratic": m2}
    if in_band and gam <= 1:
        f_hi, mode = _f_for_yes(rho)
        thr = gam * rho + f_hi - rho
        if mu >= thr:
            return "II", 2, mode, {"mu-threshold": mu - thr}
    return None, None, None, {}


def _ml3_unknown(rho, mu, gam, f_hat: FHat | None, prefix: str) -> Verdict:
    margins: dict = {}
    in_band = 1 < rho < 2
    if in_band:
        lo = gam * rho + L_bound(rho) - rho
        hi = gam * rho + U_bound(rho) - rho
        margins["to-No-threshold"] = mu - lo
        margins["to-Yes-threshold"] = hi - mu
        if f_hat is not None:
            thr = gam * rho + Fraction(float(f_hat(float(rho)))) - rho
            if (gam >= 1 and mu < thr) or (gam <= 1 and mu >= thr):
                kind, idx = ("I", 4) if mu < thr else ("II", 2)
                dec = Decision.NO if kind == "I" else Decision.YES
                return Verdict(
                    dec, f"{prefix}.{kind}({idx})", FMode.EMPIRICAL_F_HAT,
                    {"f_hat-threshold": mu - thr}, rigorous=False,
                )
        if lo <= mu < hi:
            return Verdict(Decision.UNKNOWN, "f-bracket-inconclusive", None, margins)
    if 1 < rho <= 2:
        margins["2mu-3gam*rho"] = 2 * mu - 3 * gam * rho
    return Verdict(Decision.UNKNOWN, "no-clause", None, margins)


def _ml3_verdict(rho, mu, gam, f_hat, prefix) -> Verdict:
    kind, idx, mode, margins = _ml3_clauses(rho, mu, gam)
    if kind is None:
        return _ml3_unknown(rho, mu, gam, f_hat, prefix)
    dec = Decision.NO if kind == "I" else Decision.YES
    return Verdict(dec, f"{prefix}.{kind}({idx})", mode, margins)


def classify_X(a: Number, b: Number, c: Number, d: Number, f_hat: FHat | None = None) -> Verdict:
    """Existence of ``X_{a,b,c,d}`` with ``E X^s = G(c) G(a+s) G(b-s) / (G(a) G(b) G(c+ds))``.

    ``f_hat`` optionally supplies an empirical boundary used only where the
    rigorous clauses are silent; such verdicts carry ``rigorous=False``.
    Negative ``d`` is handled by inverting first, see ``moment_spec.invert``.
    """
    a, b, c = _positive(a, "a"), _positive(b, "b"), _positive(c, "c")
    dq = _q(d, "d")
    if dq <= 0:
        raise DomainError("d must be positive; for d < 0 classify the inverse X_{b,a,c,-d}")
    return _ml3_verdict(dq, c + b * dq, a + b, f_hat, "X")


def classify_ml3_nonneg(rho: Number, mu: Number | None = None, gam: Number | None = None,
                        f_hat: FHat | None = None) -> Verdict:
    """Non-negativity of ``E^gam_{rho,mu}`` on the negative half-line.

    Accepts either three numbers or an object with ``rho``, ``mu`` and
    ``gamma`` attributes.
    """
    if mu is None and gam is None and hasattr(rho, "rho"):
        rho, mu, gam = rho.rho, rho.mu, rho.gamma
    if mu is None or gam is None:
        raise DomainError("rho, mu and gam are all required")
    return _ml3_verdict(_positive(rho, "rho"), _positive(mu, "mu"), _positive(gam, "gam"), f_hat, "ML3")


def classify_ml2_domain(rho: Number, mu: Number, f_hat: FHat | None = None) -> Verdict:
    """Whether ``(rho, mu)`` lies in the admissible domain of ``E_{rho,mu}``."""
    r, m = _positive(rho, "rho"), _positive(mu, "mu")
    if r > 2:
        return _no("ML2.rho>2", margins={"rho-2": r - 2})
    if m < r:
        return _no("ML2.mu<rho", margins={"rho-mu": r - m})
    if r <= 1:
        return _yes("ML2.rho<=1", margins={"mu-rho": m - r})
    if r == 2:
        if m >= 3:
            return _yes("ML2.f(2)=3", FMode.EXACT_ENDPOINT, {"mu-3": m - 3})
        return _no("ML2.f(2)=3", FMode.EXACT_ENDPOINT, {"3-mu": 3 - m})
    lo, hi = L_bound(r), U_bound(r)
    if m >= hi:
        return _yes("ML2.mu>=U", FMode.UPPER_BOUND_U, {"mu-U": m - hi})
    if m < lo:
        return _no("ML2.mu<L", FMode.LOWER_BOUND_L, {"L-mu": lo - m})
    margins = {"mu-L": m - lo, "U-mu": hi - m}
    if f_hat is not None:
        fh = Fraction(float(f_hat(float(r))))
        dec = Decision.YES if m >= fh else Decision.NO
        return Verdict(dec, "ML2.f_hat", FMode.EMPIRICAL_F_HAT, {"mu-f_hat": m - fh}, rigorous=False)
    return Verdict(Decision.UNKNOWN, "f-bracket-inconclusive", None, margins)


def classify_D(a: Number, b: Number, c: Number, d: Number) -> Verdict:
    """Existence of ``D`` with ``E D^s = G(c)G(d) G(a+s)G(b-s) / (G(a)G(b) G(c+s)G(d+s))``.

    Symmetric in ``(c, d)``.
    """
    a, b = _positive(a, "a"), _positive(b, "b")
    c, d = _positive(c, "c"), _positive(d, "d")
    sum_margin = c + d - (3 * a + b + Fraction(1, 2))
    if min(c, d) <= a:
        return _no("D.min(c,d)<=a", margins={"a-min(c,d)": a - min(c, d)})
    if sum_margin < 0:
        return _no("D.c+d<3a+b+1/2", margins={"3a+b+1/2-(c+d)": -sum_margin})
    quad = 2 * (c - a) * (d - a) - (a + b)
    if quad >= 0:
        return _yes("D.exists", margins={"c+d-(3a+b+1/2)": sum_margin, "quadratic": quad})
    return Verdict(Decision.UNKNOWN, "no-clause", None, {"quadratic": quad})


# ---------------------------------------------------------------------------
# known families


class Family(str, enum.Enum):
    Y_MP = "Y_MP"
    M_FS = "M_FS"
    B_DUFRESNE = "B_Dufresne"
    F_BOSCH = "F_Bosch"


_FAMILY_PARAMS = {
    Family.Y_MP: ("alpha", "r"),
    Family.M_FS: ("alpha", "beta"),
    Family.B_DUFRESNE: ("a", "b", "c", "d"),
    Family.F_BOSCH: ("alpha", "t"),
}


def family_params(family: Family | str) -> tuple[str, ...]:
    return _FAMILY_PARAMS[Family(family)]


def _catalog_y(alpha: Fraction, r: Fraction) -> Verdict:
    if not 0 < alpha < 1:
        raise DomainError("Y_MP needs 0 < alpha < 1")
    upper = -1 + 1 / alpha
    if -1 < r <= upper:
        return _yes("Y_MP.iff", margins={"r+1": r + 1, "upper-r": upper - r})
    return _no("Y_MP.iff", margins={"r+1": r + 1, "upper-r": upper - r})


def _catalog_m(alpha: Fraction, beta: Fraction) -> Verdict:
    if alpha + beta <= 0:
        raise DomainError("M_FS needs alpha + beta > 0 for the normalising constant")
    margins = {"alpha": alpha, "1-alpha": 1 - alpha, "beta": beta}
    if 0 <= alpha <= 1 and beta >= 0:
        return _yes("M_FS.iff", margins=margins)
    return _no("M_FS.iff", margins=margins)


def dufresne_point_mass(a: Number, b: Number, c: Number, d: Number) -> float:
    """Mass at 1 when ``b + d = 0``: ``G(a+b) G(c+d) / (G(a) G(c))``."""
    a, b, c, d = (float(x) for x in (a, b, c, d))
    return math.exp(log_gamma(a + b) + log_gamma(c + d) - log_gamma(a) - log_gamma(c))


def _catalog_dufresne(a, b, c, d) -> Verdict:
    if a <= 0 or c <= 0:
        raise DomainError("B_Dufresne needs a > 0 and c > 0")
    if a + b <= 0 or c + d <= 0:
        raise DomainError("B_Dufresne needs a + b > 0 and c + d > 0")
    margins = {"b+d": b + d, "min(a+b,c+d)-min(a,c)": min(a + b, c + d) - min(a, c)}
    if b + d >= 0 and min(a, c) <= min(a + b, c + d):
        extra = {}
        if b + d == 0:
            extra["point_mass_at_1"] = dufresne_point_mass(a, b, c, d)
        return _yes("B_Dufresne.iff", margins=margins, **extra)
    return _no("B_Dufresne.iff", margins=margins)


def _catalog_bosch(alpha: Fraction, t: Fraction) -> Verdict:
    if not 0 < alpha < 1:
        raise DomainError("F_Bosch needs 0 < alpha < 1")
    if t <= 0:
        raise DomainError("F_Bosch needs t > 0")
    half = Fraction(1, 2)
    if alpha == half:
        # F_{1/2,t} is X_{1/2,1/2,t,2t} to the power 1/(2t)
        v = classify_X(half, half, t, 2 * t)
        tag = "F_Bosch.alpha=1/2:" + v.condition
        return Verdict(v.decision, tag, v.f_mode, v.margins, v.rigorous, {"t_threshold": 0.5})
    if t >= 1:
        return _no("F_Bosch.t>=1", margins={"t-1": t - 1})
    if alpha <= half and t <= 1 - alpha:
        return _yes("F_Bosch.t<=1-alpha", margins={"1-alpha-t": 1 - alpha - t})
    return Verdict(Decision.UNKNOWN, "no-clause", None, {"1-t": 1 - t})


def classify_catalog(family: Family | str, **params: Number) -> Verdict:
    """Existence within the named families; ``params`` as in :func:`family_params`."""
    try:
        fam = Family(family)
    except ValueError:
        raise DomainError(f"unknown family {family!r}; expected one of {[f.value for f in Family]}") from None
    names = _FAMILY_PARAMS[fam]
    if set(params) != set(names):
        raise DomainError(f"{fam.value} takes parameters {names}, got {tuple(params)}")
    q = {k: _q(v, k) for k, v in params.items()}
    if fam is Family.Y_MP:
        return _catalog_y(q["alpha"], q["r"])
    if fam is Family.M_FS:
        return _catalog_m(q["alpha"], q["beta"])
    if fam is Family.B_DUFRESNE:
        return _catalog_dufresne(q["a"], q["b"], q["c"], q["d"])
    return _catalog_bosch(q["alpha"], q["t"])


def half_cauchy_threshold(alpha: Number, eps: int) -> Fraction:
    """Smallest ``p`` from which ``|C_alpha|^(eps p)`` is shown to be a Gamma mixture."""
    a = _q(alpha, "alpha")
    if a <= 1:
        raise DomainError("alpha must exceed 1")
    if eps == 1:
        return (a + 1) / 3 if a <= 2 else a / 2
    if eps == -1:
        return a / 2 if a <= 2 else (2 * a - 1) / 3
    raise DomainError(f"eps must be +1 or -1, got {eps!r}")


def classify_half_cauchy_id(alpha: Number, eps: int, p: Number) -> Verdict:
    """Infinite divisibility of ``|C_alpha|^(eps p)``.

    Never answers No: below the thresholds the question is open.
    """
    a = _q(alpha, "alpha")
    pq = _positive(p, "p")
    thr = half_cauchy_threshold(a, eps)
    if pq >= a:
        return _yes("HCM", margins={"p-alpha": pq - a})
    if pq >= thr:
        return _yes("gamma-mixture", margins={"p-threshold": pq - thr})
    return Verdict(Decision.UNKNOWN, "no-clause", None, {"p-threshold": pq - thr})
