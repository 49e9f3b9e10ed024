"""
Scalar building blocks for the lattice Green's function kernels.

This module covers:
- HalfInt: exact numbers k/2, the only parameter values the hypergeometric
  representations ever need (½±n, (1±n₁±n₂)/2, ...).
- Exact and floating Pochhammer symbols.
- Digamma at integer and half-integer points via harmonic sums.
- Principal-branch sqrt/log with explicit cut rejection, and the factorised
  square root S(z) = √(−z)·√(4−z) used by the one-dimensional resolvent.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Union

from scipy.special import gammaln

from src.kernel.errors import RegionError

EULER_GAMMA = 0.57721566490153286
LOG2 = math.log(2.0)


@dataclass(frozen=True, order=True)
class HalfInt:
    """
    Exact number twice_value / 2.

    Parameters:
    -----------
    twice_value : int
        Twice the represented value, so HalfInt(1) is ½ and HalfInt(-4) is -2.
    """

    twice_value: int

    @classmethod
    def of(cls, x: Union["HalfInt", int, Fraction, float]) -> "HalfInt":
        """Build from an int, a Fraction with denominator 1 or 2, or an exact float."""
        if isinstance(x, HalfInt):
            return x
        if isinstance(x, bool):
            raise ValueError("bool is not a valid HalfInt source")
        if isinstance(x, int):
            return cls(2 * x)
        frac = Fraction(x)
        if frac.denominator not in (1, 2):
            raise ValueError(f"{x} is not a multiple of 1/2")
        return cls(int(frac * 2))

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    @property
    def is_nonpositive_integer(self) -> bool:
        return self.is_integer and self.twice_value <= 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def __float__(self) -> float:
        return self.twice_value / 2.0

    def __add__(self, other):
        if isinstance(other, HalfInt):
            return HalfInt(self.twice_value + other.twice_value)
        if isinstance(other, int) and not isinstance(other, bool):
            return HalfInt(self.twice_value + 2 * other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, HalfInt):
            return HalfInt(self.twice_value - other.twice_value)
        if isinstance(other, int) and not isinstance(other, bool):
            return HalfInt(self.twice_value - 2 * other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return HalfInt(2 * other - self.twice_value)
        return NotImplemented

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice_value)

    def __repr__(self) -> str:
        if self.is_integer:
            return f"HalfInt({self.twice_value // 2})"
        return f"HalfInt({self.twice_value}/2)"


Number = Union[HalfInt, int, Fraction]


def _exact(q: Number) -> Fraction:
    if isinstance(q, HalfInt):
        return q.as_fraction()
    return Fraction(q)


def pochhammer(q: Number, j: int) -> Fraction:
    """Rising factorial (q)_j = q(q+1)...(q+j-1), exactly. (q)_0 = 1."""
    if j < 0:
        raise ValueError(f"Pochhammer length must be nonnegative, got {j}")
    base = _exact(q)
    result = Fraction(1)
    for i in range(j):
        result *= base + i
        if result == 0:
            break
    return result


def pochhammer_f(q: complex, j: int) -> complex:
    """Floating rising factorial, accumulated term by term."""
    if j < 0:
        raise ValueError(f"Pochhammer length must be nonnegative, got {j}")
    q = complex(q)
    result = complex(1.0)
    for i in range(j):
        result *= q + i
        if result == 0:
            return result
        if not cmath.isfinite(result):
            raise OverflowError(f"({q})_{j} overflows double precision")
    return result


def harmonic(m: int) -> Fraction:
    """Σ_{k=1}^{m} 1/k."""
    return sum((Fraction(1, k) for k in range(1, m + 1)), Fraction(0))


def harmonic_odd(m: int) -> Fraction:
    """Σ_{k=1}^{m} 1/(2k-1)."""
    return sum((Fraction(1, 2 * k - 1) for k in range(1, m + 1)), Fraction(0))


def digamma(x: Union[HalfInt, int, Fraction]) -> float:
    """
    ψ(x) at integer or half-integer x.

    ψ(1+m) = -γ + Σ_{k≤m} 1/k,  ψ(½+m) = -γ - 2 log 2 + 2 Σ_{k≤m} 1/(2k-1),
    and ψ(½-m) = ψ(½+m) for negative half-integers (the reflection cotangent
    vanishes there).

    Raises:
    -------
    RegionError
        x is a nonpositive integer (pole).
    """
    h = HalfInt.of(x)
    if h.is_integer:
        value = h.twice_value // 2
        if value <= 0:
            raise RegionError(f"digamma has a pole at {value}")
        return -EULER_GAMMA + math.fsum(1.0 / k for k in range(1, value))
    if h.twice_value > 0:
        m = (h.twice_value - 1) // 2
    else:
        m = (1 - h.twice_value) // 2
    return -EULER_GAMMA - 2.0 * LOG2 + 2.0 * math.fsum(1.0 / (2 * k - 1) for k in range(1, m + 1))


def digamma_table(x: Union[HalfInt, int, Fraction], count: int) -> List[float]:
    """ψ(x+k) for k = 0..count-1 via ψ(y+1) = ψ(y) + 1/y."""
    h = HalfInt.of(x)
    if h.is_nonpositive_integer:
        raise RegionError(f"digamma has a pole at {float(h)}")
    values = [digamma(h)]
    y = float(h)
    for _ in range(1, count):
        values.append(values[-1] + 1.0 / y)
        y += 1.0
    return values


def _on_cut(w: complex) -> bool:
    return w.imag == 0.0 and w.real <= 0.0


def principal_sqrt(w: complex) -> complex:
    """√w with Re √w > 0; the closed cut (-∞, 0] is rejected."""
    w = complex(w)
    if _on_cut(w):
        raise RegionError(f"principal sqrt evaluated on its cut at {w}")
    return cmath.sqrt(w)


def principal_log(w: complex) -> complex:
    """log w with -π < Im log w < π; the closed cut (-∞, 0] is rejected."""
    w = complex(w)
    if _on_cut(w):
        raise RegionError(f"principal log evaluated on its cut at {w}")
    return cmath.log(w)


def resolvent_sqrt_1d(z: complex) -> complex:
    """
    S(z) = √(-z)·√(4-z), analytic on C \\ [0, 4].

    On (4, ∞) both factors sit on their cuts, but the product is continuous
    there and equals -√(z(z-4)).
    """
    z = complex(z)
    if z.imag == 0.0:
        x = z.real
        if 0.0 <= x <= 4.0:
            raise RegionError(f"z = {x} lies in [0, 4]")
        if x > 4.0:
            return complex(-math.sqrt(x * (x - 4.0)), 0.0)
        return complex(math.sqrt(-x) * math.sqrt(4.0 - x), 0.0)
    return cmath.sqrt(-z) * cmath.sqrt(4.0 - z)


def ln_factorial(k: int) -> float:
    """log(k!) to double precision."""
    if k < 0:
        raise ValueError(f"factorial of negative integer {k}")
    return float(gammaln(k + 1))
