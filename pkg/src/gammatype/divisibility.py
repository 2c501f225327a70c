"""Infinite divisibility and Hausdorff moment checks.

* :func:`malmsten_kernel_check` tests the exponential-kernel inequality that
  characterises infinite divisibility of ``log X`` for specs whose slopes and
  offsets are all positive.
* :func:`hausdorff_sufficient` is the prefix-sum majorization criterion for
  unit-slope specs; :func:`hausdorff_oracle` is the complete-monotonicity test
  run in exact arithmetic and serves as its independent check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import gmpy2
import numpy as np

from . import _kernels
from .errors import DomainError
from .gamma_kernel import as_exact, gauss_multiplication_expand, rising_factorial
from .moment_spec import GammaTypeSpec, make_spec, support_upper

# ---------------------------------------------------------------------------
# kernel condition


class KernelStatus(str, enum.Enum):
    NONNEGATIVE_ON_GRID = "NonnegativeOnGrid"
    NEGATIVE_AT = "NegativeAt"


@dataclass
class KernelCheck:
    status: KernelStatus
    #: witness abscissa and kernel value for ``NegativeAt``; grid minimum otherwise
    t: float
    value: float
    grid: dict = field(default_factory=dict)

    @property
    def negative(self) -> bool:
        return self.status is KernelStatus.NEGATIVE_AT

    def to_json(self) -> dict:
        return {"status": self.status.value, "t": self.t, "value": self.value, "grid": dict(self.grid)}


def _positive_parts(spec: GammaTypeSpec):
    for A, a in spec.num + spec.den:
        if not (A > 0 and a > 0):
            raise DomainError("the kernel condition needs all slopes and offsets positive")
    A = [float(x) for x, _ in spec.num]
    a = [float(x) for _, x in spec.num]
    B = [float(x) for x, _ in spec.den]
    b = [float(x) for _, x in spec.den]
    return A, a, B, b


def malmsten_kernel(spec: GammaTypeSpec, t) -> np.ndarray:
    """``sum_j e^{-t a_j/A_j}/(1-e^{-t/A_j}) - sum_k e^{-t b_k/B_k}/(1-e^{-t/B_k})``."""
    A, a, B, b = _positive_parts(spec)
    return _kernels.malmsten_kernel(A, a, B, b, np.asarray(t, dtype=float))


def _kernel_mpfr(A, a, B, b, t: float, bits: int = 256) -> float:
    with gmpy2.context(precision=bits):
        tt = gmpy2.mpfr(t)
        acc = gmpy2.mpfr(0)
        for Aj, aj in zip(A, a):
            acc += gmpy2.exp(-tt * aj / Aj) / -gmpy2.expm1(-tt / Aj)
        for Bk, bk in zip(B, b):
            acc -= gmpy2.exp(-tt * bk / Bk) / -gmpy2.expm1(-tt / Bk)
        return float(acc)


def default_t_max(spec: GammaTypeSpec) -> float:
    """Beyond this every kernel term is below ``e^-50`` of its size at ``t = 1``."""
    ratios = [float(A) / float(a) for A, a in spec.num + spec.den]
    return 50.0 * max(ratios + [1.0])


def malmsten_kernel_check(spec: GammaTypeSpec, t_max: float | None = None, n_grid: int = 4096) -> KernelCheck:
    """Sign of the kernel on a logarithmic grid over ``(0, t_max]``.

    A negative grid value is re-evaluated in 256-bit arithmetic before it is
    reported, so ``NegativeAt`` is a disproof; ``NonnegativeOnGrid`` is only
    a grid witness.
    """
    A, a, B, b = _positive_parts(spec)
    if t_max is None:
        t_max = default_t_max(spec)
    if not t_max > 0 or n_grid < 2:
        raise DomainError("need t_max > 0 and n_grid >= 2")
    ts = np.geomspace(t_max * 1e-6, t_max, int(n_grid))
    vals = _kernels.malmsten_kernel(A, a, B, b, ts)
    grid = {"t_min": float(ts[0]), "t_max": float(ts[-1]), "n": int(n_grid), "spacing": "log"}
    for t, v in zip(ts, vals):
        if v < 0.0:
            hv = _kernel_mpfr(A, a, B, b, float(t))
            if hv < 0.0:
                return KernelCheck(KernelStatus.NEGATIVE_AT, float(t), hv, grid)
    i = int(np.argmin(vals))
    return KernelCheck(KernelStatus.NONNEGATIVE_ON_GRID, float(ts[i]), float(vals[i]), grid)


# ---------------------------------------------------------------------------
# majorization criterion


class Sufficiency(str, enum.Enum):
    SUFFICIENT = "Sufficient"
    NOT_APPLICABLE = "NotApplicable"


def unit_slope_normalize(spec: GammaTypeSpec) -> GammaTypeSpec:
    """Rewrite integer-slope factors ``Gamma(m s + a)`` as ``m`` unit-slope factors.

    The ``m^(m s)`` factors move into ``D``; constant factors are dropped
    because the spec renormalises itself.
    """
    D = as_exact(spec.D)
    num, den = [], []
    for factors, out, sign in ((spec.num, num, 1), (spec.den, den, -1)):
        for A, a in factors:
            if not (isinstance(A, Fraction) and A.denominator == 1 and A > 0):
                raise DomainError("normalization needs positive integer slopes")
            g = gauss_multiplication_expand(int(A), a)
            out.extend((1, off) for off in g.offsets)
            D = D * Fraction(g.ratio) ** sign if isinstance(D, Fraction) else D * float(g.ratio) ** sign
    return make_spec(num, den, D=D)


def hausdorff_sufficient(spec: GammaTypeSpec) -> Sufficiency:
    """Prefix-sum majorization of sorted offsets for a unit-slope spec.

    Sufficient for ``s -> M(s)`` at integers to be a Hausdorff moment
    sequence; ``NotApplicable`` says nothing either way.
    """
    if len(spec.num) != len(spec.den):
        raise DomainError("needs as many numerator as denominator factors")
    if any(A != 1 for A, _ in spec.num + spec.den):
        raise DomainError("needs unit slopes; apply unit_slope_normalize first")
    a = sorted(as_exact(x) for _, x in spec.num)
    b = sorted(as_exact(x) for _, x in spec.den)
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa > sb:
            return Sufficiency.NOT_APPLICABLE
    return Sufficiency.SUFFICIENT


# ---------------------------------------------------------------------------
# exact sequences and the complete-monotonicity oracle


def _exact_rational(x, what: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise DomainError(f"{what} must be an exact rational, got {x!r}")
    return Fraction(x)


@dataclass(frozen=True)
class ExactSequence:
    terms: tuple
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        terms = tuple(_exact_rational(t, "sequence term") for t in self.terms)
        scale = _exact_rational(self.scale, "scale")
        if not terms or terms[0] <= 0:
            raise DomainError("the first term must be positive")
        if scale <= 0:
            raise DomainError("scale must be positive")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "scale", scale)

    def __len__(self) -> int:
        return len(self.terms)

    def normalized(self) -> list[Fraction]:
        """``m_n = (mu_n / mu_0) scale^-n``."""
        mu0 = self.terms[0]
        return [t / mu0 / self.scale**n for n, t in enumerate(self.terms)]

    def to_json(self) -> dict:
        return {
            "terms": [[str(t.numerator), str(t.denominator)] for t in self.terms],
            "scale": [str(self.scale.numerator), str(self.scale.denominator)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExactSequence":
        terms = [Fraction(int(p), int(q)) for p, q in obj["terms"]]
        p, q = obj.get("scale", ["1", "1"])
        return cls(tuple(terms), Fraction(int(p), int(q)))


def _gamma_ratio_step(A: int, a: Fraction, n: int) -> Fraction:
    """``Gamma(A n + a) / Gamma(a)`` for integer ``A``."""
    k = A * n
    if k >= 0:
        return rising_factorial(a, k)
    # Gamma(a - m) / Gamma(a) = 1 / ((a - m)_m)
    m = -k
    r = rising_factorial(a - m, m)
    if r == 0:
        raise DomainError(f"Gamma({a - m}) is at a pole")
    return 1 / r


def factorial_ratio_sequence(spec: GammaTypeSpec, N: int, scale=None) -> ExactSequence:
    """Exact ``mu_n / mu_0 = D^n prod (a_j)_{A_j n} / prod (b_k)_{B_k n}`` for ``n <= N``.

    ``scale`` defaults to the support end from :func:`moment_spec.support_upper`.
    """
    if N < 0:
        raise DomainError("N must be non-negative")
    D = as_exact(spec.D)
    if not isinstance(D, Fraction):
        raise DomainError("D must be rational")
    factors = []
    for group, sign in ((spec.num, 1), (spec.den, -1)):
        for A, a in group:
            A, a = as_exact(A), as_exact(a)
            if not (isinstance(A, Fraction) and A.denominator == 1 and isinstance(a, Fraction)):
                raise DomainError("needs integer slopes and rational offsets")
            factors.append((int(A), a, sign))
    terms = []
    for n in range(N + 1):
        v = Fraction(D) ** n
        for A, a, sign in factors:
            r = _gamma_ratio_step(A, a, n)
            if sign > 0:
                v *= r
            else:
                if r == 0:
                    raise DomainError(f"denominator factor vanishes at n={n}")
                v /= r
        terms.append(v)
    if scale is None:
        scale = support_upper(spec)
        if scale is None:
            raise DomainError("support end undefined for this spec; pass scale explicitly")
    scale = as_exact(scale)
    if not isinstance(scale, Fraction):
        raise DomainError("scale must be rational for exact arithmetic")
    return ExactSequence(tuple(terms), scale)


class HausdorffStatus(str, enum.Enum):
    MOMENT_SEQUENCE = "MomentSequence"
    VIOLATION_AT = "ViolationAt"


@dataclass(frozen=True)
class HausdorffResult:
    status: HausdorffStatus
    k: int | None = None
    n: int | None = None
    value: Fraction | None = None
    checked: tuple = (0, 0)  # (K, N)

    @property
    def ok(self) -> bool:
        return self.status is HausdorffStatus.MOMENT_SEQUENCE

    def to_json(self) -> dict:
        out = {"status": self.status.value, "K": self.checked[0], "N": self.checked[1]}
        if not self.ok:
            out.update(k=self.k, n=self.n, value=str(self.value))
        return out


def hausdorff_oracle(seq: ExactSequence | Sequence, K: int = 15, N: int | None = None) -> HausdorffResult:
    """Check ``(-1)^k Delta^k m_n >= 0`` for ``k <= K`` and ``n + k <= N`` exactly."""
    if not isinstance(seq, ExactSequence):
        seq = ExactSequence(tuple(seq))
    if N is None:
        N = len(seq) - 1
    if N > len(seq) - 1:
        raise DomainError(f"N={N} needs {N + 1} terms, have {len(seq)}")
    if len(seq) < K + 1 or N < K:
        raise DomainError(f"order K={K} needs at least {K + 1} terms")
    row = seq.normalized()[: N + 1]
    for k in range(K + 1):
        for n, v in enumerate(row):
            if v < 0:
                return HausdorffResult(HausdorffStatus.VIOLATION_AT, k, n, v, (K, N))
        # next row holds (-1)^(k+1) Delta^(k+1) m_n
        row = [row[i] - row[i + 1] for i in range(len(row) - 1)]
    return HausdorffResult(HausdorffStatus.MOMENT_SEQUENCE, checked=(K, N))

