"""Scalar Gamma-function kernels.

Real ``log_gamma`` wraps the C library ``lgamma``; the complex version is a
Stirling series applied after an upward argument shift.  ``digamma`` uses the
same shift-then-asymptotic scheme.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DomainError

#: Minimal distance to a pole of Gamma accepted by the kernels.
POLE_TOL = 1e-12

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# B_{2k} / (2k (2k-1)) for the Stirling series of log Gamma
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)

# B_{2k} / (2k) for the asymptotic series of digamma
_DIGAMMA_ASYM = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def _near_pole(x: float) -> bool:
    return x <= 0.0 and abs(x - round(x)) < POLE_TOL


def log_gamma(x: float) -> float:
    """Return ``ln Gamma(x)`` for ``x > 0``."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def log_abs_gamma(x: float) -> tuple[float, int]:
    """Return ``(ln|Gamma(x)|, sign Gamma(x))`` for real ``x`` off the poles."""
    x = float(x)
    if _near_pole(x):
        raise DomainError(f"Gamma has a pole at {x!r}")
    if x > 0.0:
        return math.lgamma(x), 1
    # Gamma is negative on (-1, 0), (-3, -2), ...
    sign = -1 if math.ceil(-x) % 2 == 1 else 1
    return math.lgamma(x), sign


def rgamma(x: float) -> float:
    """Reciprocal Gamma ``1/Gamma(x)``; exactly zero at the poles."""
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    if x > 0.0:
        lg = math.lgamma(x)
        return math.exp(-lg) if lg < 700.0 else 0.0
    # reflection keeps the sign and avoids lgamma near the poles
    sn = math.sin(math.pi * math.fmod(x, 2.0))
    if sn == 0.0:
        return 0.0
    logmag = math.log(abs(sn)) + math.lgamma(1.0 - x) - math.log(math.pi)
    if logmag > 709.0:
        return math.copysign(math.inf, sn)
    return math.copysign(math.exp(logmag), sn)


def _stirling(z: complex) -> complex:
    inv = 1.0 / z
    inv2 = inv * inv
    acc = 0.0j
    for c in reversed(_STIRLING):
        acc = acc * inv2 + c
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + acc * inv


def log_gamma_complex(z: complex) -> complex:
    """Principal-branch ``log Gamma(z)`` for complex ``z`` away from the poles.

    ``exp`` of the result reproduces ``Gamma(z)``.  The imaginary part is the
    continuous branch obtained by shifting ``z`` into ``Re z >= 15`` and
    subtracting the principal logarithms of the shift factors.
    """
    z = complex(z)
    if abs(z.imag) < POLE_TOL and _near_pole(z.real):
        raise DomainError(f"Gamma has a pole near {z!r}")
    if z.real >= 15.0:
        return _stirling(z)
    shift = int(math.ceil(15.0 - z.real))
    logs = [cmath.log(z + k) for k in range(shift)]
    re = math.fsum(w.real for w in logs)
    im = math.fsum(w.imag for w in logs)
    return _stirling(z + shift) - complex(re, im)


def digamma(x: float) -> float:
    """Return ``psi(x) = d/dx ln Gamma(x)`` for ``x > 0``."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"digamma requires x > 0, got {x!r}")
    shift = 0
    head = []
    while x + shift < 10.0:
        head.append(1.0 / (x + shift))
        shift += 1
    y = x + shift
    inv2 = 1.0 / (y * y)
    acc = 0.0
    for c in reversed(_DIGAMMA_ASYM):
        acc = acc * inv2 + c
    return math.log(y) - 0.5 / y - acc * inv2 - math.fsum(head)


def reflection_product(s: float) -> float:
    """``Gamma(s) Gamma(1-s) = pi / sin(pi s)`` for non-integer ``s``."""
    s = float(s)
    if s == math.floor(s):
        raise DomainError(f"reflection_product needs non-integer s, got {s!r}")
    # reduce before taking sin so large |s| keeps its accuracy
    r = math.fmod(s, 2.0)
    return math.pi / math.sin(math.pi * r)


def as_exact(x) -> Fraction | float:
    """Keep rationals exact, everything else becomes a float."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    return float(x)


def rising_factorial(a: Fraction | int, n: int) -> Fraction:
    """Exact Pochhammer symbol ``(a)_n = a (a+1) ... (a+n-1)``."""
    out = Fraction(1)
    a = Fraction(a)
    for k in range(n):
        out *= a + k
    return out


@dataclass(frozen=True)
class UnitSlopeFactorization:
    """``Gamma(m x + a) = scale * ratio**x * prod_i Gamma(x + offsets[i])``.

    ``ratio`` is ``m**m``; ``scale`` carries ``m**(a - 1/2) (2 pi)**((1-m)/2)``.
    """

    m: int
    a: Fraction | float
    scale: float
    ratio: int
    offsets: tuple

    def log_value(self, x: float) -> float:
        terms = [math.lgamma(x + float(o)) for o in self.offsets]
        return math.log(self.scale) + x * math.log(self.ratio) + math.fsum(terms)

    def value(self, x: float) -> float:
        return math.exp(self.log_value(x))


def gauss_multiplication_expand(m: int, a) -> UnitSlopeFactorization:
    """Rewrite ``Gamma(m x + a)`` as a product of unit-slope Gamma factors."""
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise DomainError(f"m must be a positive integer, got {m!r}")
    m = int(m)
    a = as_exact(a)
    offsets = tuple((a + i) / m for i in range(m))
    scale = math.exp((1 - m) * _HALF_LOG_2PI + (float(a) - 0.5) * math.log(m))
    return UnitSlopeFactorization(m=m, a=a, scale=scale, ratio=m**m, offsets=offsets)
