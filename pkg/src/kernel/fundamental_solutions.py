"""
Closed-form fundamental solutions on Z².

- fundsol_h0:            E with H₀E = δ₀
- fundsol_embedded:      E₁(4, ·) with (H₀ - 4)E₁ = δ₀
- fundsol_dalembertian:  (-1)^{n₁} E₁, fundamental solution of □
- fundsol_h0_minus8:     -(-1)^{n₁+n₂} E, fundamental solution of H₀ - 8

Values are exact: rational + (1/π)·rational + ((log 2)/π)·rational, for the real and
the imaginary part separately. Stencils act on each channel on its own, so residual
checks are exact too.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Sequence, Tuple, Union

from src.kernel.hypergeometric import pfq_exact
from src.kernel.resolvent import LatticePoint, reduce_symmetry
from src.kernel.special_functions import LOG2, harmonic_odd

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Channels:
    """rational + inv_pi/π + log2_inv_pi·(log 2)/π."""

    rational: Fraction = Fraction(0)
    inv_pi: Fraction = Fraction(0)
    log2_inv_pi: Fraction = Fraction(0)

    def __add__(self, other: "Channels") -> "Channels":
        return Channels(self.rational + other.rational, self.inv_pi + other.inv_pi,
                        self.log2_inv_pi + other.log2_inv_pi)

    def __sub__(self, other: "Channels") -> "Channels":
        return self + (-other)

    def __neg__(self) -> "Channels":
        return Channels(-self.rational, -self.inv_pi, -self.log2_inv_pi)

    def __mul__(self, factor: Scalar) -> "Channels":
        f = Fraction(factor)
        return Channels(self.rational * f, self.inv_pi * f, self.log2_inv_pi * f)

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return self.rational == 0 and self.inv_pi == 0 and self.log2_inv_pi == 0

    def __float__(self) -> float:
        return math.fsum([float(self.rational), float(self.inv_pi) / math.pi,
                          float(self.log2_inv_pi) * LOG2 / math.pi])


ZERO = Channels()


@dataclass(frozen=True)
class FundSolValue:
    real: Channels = field(default_factory=Channels)
    imag: Channels = field(default_factory=Channels)

    def __add__(self, other: "FundSolValue") -> "FundSolValue":
        return FundSolValue(self.real + other.real, self.imag + other.imag)

    def __sub__(self, other: "FundSolValue") -> "FundSolValue":
        return FundSolValue(self.real - other.real, self.imag - other.imag)

    def __neg__(self) -> "FundSolValue":
        return FundSolValue(-self.real, -self.imag)

    def __mul__(self, factor: Scalar) -> "FundSolValue":
        return FundSolValue(self.real * factor, self.imag * factor)

    __rmul__ = __mul__

    @property
    def is_imaginary(self) -> bool:
        return not self.imag.is_zero

    @property
    def total(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def is_delta(self, at_origin: bool) -> bool:
        """True when the value is exactly 1 (origin) or exactly 0 (elsewhere) in every channel."""
        target = Channels(Fraction(1 if at_origin else 0))
        return self.real == target and self.imag.is_zero


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _coords(n) -> Tuple[int, int]:
    pt = LatticePoint.of(n)
    if pt.dim != 2:
        raise ValueError(f"fundamental solutions live on Z^2, got {pt.coords}")
    return pt.coords


HALF = Fraction(1, 2)
ONE = Fraction(1)
THREE_HALVES = Fraction(3, 2)


def _f43_at_one(upper: Sequence[Fraction], lower: Sequence[Fraction]) -> Fraction:
    # Every ₄F₃(...;1) below has an upper parameter in {0, -1, -2, ...}.
    return pfq_exact(upper, lower, Fraction(1))


def _odd_weight(k: int) -> Fraction:
    """Σ_{j<k} 2/(2j-1) + 1/(2k-1)."""
    return 2 * harmonic_odd(k - 1) + Fraction(1, 2 * k - 1)


@lru_cache(maxsize=None)
def _h0_reduced(n1: int, n2: int) -> Channels:
    a, b = n1 + n2, n1 - n2
    sign = _sign(n1)
    if a % 2 == 0:
        ha, hb = a // 2, b // 2
        rational = Fraction(0)
        if ha and hb:
            rational = -sign * ha * hb * _f43_at_one(
                [Fraction(2 + a, 2), Fraction(2 + b, 2), Fraction(2 - b, 2), Fraction(2 - a, 2)],
                [ONE, THREE_HALVES, THREE_HALVES])
        inv_pi = Fraction(0)
        for mu in range(1, ha + 1):
            inv_pi -= sign * _sign(mu) * _odd_weight(mu) * _f43_at_one(
                [Fraction(ha + 1 - mu), Fraction(mu - ha), Fraction(hb), Fraction(-hb)],
                [ONE, HALF, HALF])
        for nu in range(1, hb + 1):
            inv_pi -= sign * _sign(nu) * _odd_weight(nu) * _f43_at_one(
                [Fraction(ha), Fraction(-ha), Fraction(hb + 1 - nu), Fraction(nu - hb)],
                [ONE, HALF, HALF])
        return Channels(rational, inv_pi)

    rational = Fraction(sign, 4) * _f43_at_one(
        [Fraction(1 + a, 2), Fraction(1 + b, 2), Fraction(1 - b, 2), Fraction(1 - a, 2)],
        [ONE, HALF, HALF])
    inv_pi = Fraction(0)
    for mu in range(-(a - 1) // 2, (a - 1) // 2 + 1):
        k = abs(mu)
        inv_pi += sign * b * _sign(mu) * harmonic_odd(k) * _f43_at_one(
            [Fraction(1 + a, 2) - k, k + Fraction(1 - a, 2), Fraction(1 + b, 2), Fraction(1 - b, 2)],
            [ONE, HALF, THREE_HALVES])
    for nu in range(-(b - 1) // 2, (b - 1) // 2 + 1):
        k = abs(nu)
        inv_pi += sign * a * _sign(nu) * harmonic_odd(k) * _f43_at_one(
            [Fraction(1 + a, 2), Fraction(1 - a, 2), Fraction(1 + b, 2) - k, k + Fraction(1 - b, 2)],
            [ONE, HALF, THREE_HALVES])
    return Channels(rational, inv_pi)


def fundsol_h0(n) -> FundSolValue:
    """
    E[n], the fundamental solution of H₀ on Z² (E(0,0) = 0, E(1,0) = -1/4, E(1,1) = -1/π).

    Even and odd |n| use separate displays built from terminating ₄F₃(...; 1) sums,
    evaluated in exact rational arithmetic.
    """
    n1, n2 = reduce_symmetry(_coords(n)).coords
    return FundSolValue(_h0_reduced(n1, n2))


@lru_cache(maxsize=None)
def _embedded_reduced(n1: int, n2: int) -> FundSolValue:
    real = Channels(Fraction(_sign(n1) - _sign(n2), 8))
    c = _sign(n1) + _sign(n2)
    if c == 0:
        return FundSolValue(real)
    harmonic = harmonic_odd((n1 + n2) // 2) + harmonic_odd((n1 - n2) // 2)
    imag = Channels(Fraction(0), Fraction(-c, 2) * harmonic, Fraction(c, 2))
    return FundSolValue(real, imag)


def fundsol_embedded(n) -> FundSolValue:
    """
    E₁(4, n) = ((-1)^{max|n_j|} - (-1)^{min|n_j|})/8
               + i[(-1)^{n₁} + (-1)^{n₂}]/(2π) [log 2 - Σ_{k≤|n₁+n₂|/2} 1/(2k-1) - Σ_{k≤|n₁-n₂|/2} 1/(2k-1)].
    """
    n1, n2 = reduce_symmetry(_coords(n)).coords
    return _embedded_reduced(n1, n2)


def fundsol_dalembertian(n) -> FundSolValue:
    """(-1)^{n₁} E₁(4, n), a fundamental solution of the discrete d'Alembertian."""
    n1, _ = _coords(n)
    return _sign(n1) * fundsol_embedded(n)


def fundsol_h0_minus8(n) -> FundSolValue:
    """-(-1)^{n₁+n₂} E[n], a fundamental solution of H₀ - 8."""
    n1, n2 = _coords(n)
    return -_sign(n1 + n2) * fundsol_h0(n)


# --- Stencils ---

Grid = Callable[[Tuple[int, int]], FundSolValue]


def _neighbours(u: Grid, n1: int, n2: int) -> FundSolValue:
    return u((n1 + 1, n2)) + u((n1 - 1, n2)) + u((n1, n2 + 1)) + u((n1, n2 - 1))


def _shifted_laplacian(shift: int) -> Callable[[Grid, int, int], FundSolValue]:
    def apply(u: Grid, n1: int, n2: int) -> FundSolValue:
        return (4 - shift) * u((n1, n2)) - _neighbours(u, n1, n2)
    return apply


def _dalembertian(u: Grid, n1: int, n2: int) -> FundSolValue:
    return u((n1 + 1, n2)) + u((n1 - 1, n2)) - u((n1, n2 + 1)) - u((n1, n2 - 1))


@dataclass(frozen=True)
class Operator:
    name: str
    solution: Callable[..., FundSolValue]
    stencil: Callable[[Grid, int, int], FundSolValue]


OPERATORS: Dict[str, Operator] = {
    "h0": Operator("h0", fundsol_h0, _shifted_laplacian(0)),
    "h0-4": Operator("h0-4", fundsol_embedded, _shifted_laplacian(4)),
    "h0-8": Operator("h0-8", fundsol_h0_minus8, _shifted_laplacian(8)),
    "dalembertian": Operator("dalembertian", fundsol_dalembertian, _dalembertian),
}


def _operator(op: Union[str, Operator]) -> Operator:
    if isinstance(op, Operator):
        return op
    try:
        return OPERATORS[op]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}; choose from {sorted(OPERATORS)}") from None


def stencil_residual(op: Union[str, Operator], n) -> FundSolValue:
    """Apply the operator's stencil to its fundamental solution at n (exact)."""
    operator = _operator(op)
    n1, n2 = _coords(n)
    return operator.stencil(operator.solution, n1, n2)


def check_fundamental(op: Union[str, Operator], radius: int) -> List[Tuple[Tuple[int, int], FundSolValue]]:
    """
    Scan |n₁|, |n₂| <= radius and return every point where the residual is not δ₀.

    An empty list means the stencil identity holds exactly, channel by channel.
    """
    operator = _operator(op)
    cache: Dict[Tuple[int, int], FundSolValue] = {}

    def u(point: Tuple[int, int]) -> FundSolValue:
        if point not in cache:
            cache[point] = operator.solution(point)
        return cache[point]

    failures = []
    for n1 in range(-radius, radius + 1):
        for n2 in range(-radius, radius + 1):
            residual = operator.stencil(u, n1, n2)
            if not residual.is_delta(n1 == 0 and n2 == 0):
                failures.append(((n1, n2), residual))
    return failures


def fundsol_table(op: Union[str, Operator], radius: int) -> Iterator[Tuple[int, int, FundSolValue]]:
    """Rows (n₁, n₂, value) over 0 <= n₂ <= n₁ <= radius in row-major order."""
    operator = _operator(op)
    for n1 in range(radius + 1):
        for n2 in range(n1 + 1):
            yield n1, n2, operator.solution((n1, n2))
