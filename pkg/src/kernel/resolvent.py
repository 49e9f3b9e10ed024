"""
Representations of the lattice resolvent kernel G(z, n) of the discrete Laplacian.

Role:
- Laurent expansion outside the disk |2d - z| > 2d (any d), its F_C form, and the
  single-sum d = 2 reduction.
- d = 1 closed form and its expansions at the thresholds z = 0 and z = 4.
- d = 2 expansion at the embedded threshold z = 4 (digamma/log series).
- d = 2 endpoint representation: diagonal values P₀ plus finite ₄F₃ sums, and an
  independent dynamic-programming solution of the same recurrence.
- A region-aware dispatcher, green_auto.

Conventions:
- Every evaluator returns a GreenValue tagged with the representation that produced it.
- d = 2 formulas are evaluated on the representative n₁ >= n₂ >= 0 returned by
  reduce_symmetry; G is invariant under coordinate sign flips and swaps.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple, Union

from scipy.special import gammaln

from src import config
from src.kernel.errors import ConvergenceError, RegionError
from src.kernel.hypergeometric import (
    STOP_RUN,
    LauricellaParams,
    ShellConvolution,
    eval_lauricella_fc,
    pfq,
    sum_shells,
)
from src.kernel.special_functions import (
    HalfInt,
    digamma,
    pochhammer,
    principal_log,
    principal_sqrt,
    resolvent_sqrt_1d,
)
from src.utils.console import log_warning

HALF = HalfInt(1)
ONE = HalfInt(2)
THREE_HALVES = HalfInt(3)


# --- Domain types ---

@dataclass(frozen=True)
class LatticePoint:
    coords: Tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if not coords:
            raise ValueError("a lattice point needs at least one coordinate")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, n: Union["LatticePoint", int, Sequence[int]]) -> "LatticePoint":
        if isinstance(n, LatticePoint):
            return n
        if isinstance(n, int):
            return cls((n,))
        return cls(tuple(n))

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def norm1(self) -> int:
        return sum(abs(c) for c in self.coords)

    def reduced(self) -> "LatticePoint":
        return LatticePoint(tuple(sorted((abs(c) for c in self.coords), reverse=True)))

    def shifted(self, axis: int, step: int) -> "LatticePoint":
        coords = list(self.coords)
        coords[axis] += step
        return LatticePoint(tuple(coords))


@dataclass(frozen=True)
class SpectralPoint:
    """z together with its position relative to the spectrum [0, 4d] and its thresholds."""

    z: complex
    dim: int

    @property
    def region(self) -> str:
        z = complex(self.z)
        if abs(2 * self.dim - z) > 2 * self.dim:
            return "outside_disk"
        for q in range(self.dim + 1):
            if abs(z - 4 * q) < 4:
                return f"near_threshold:{q}"
        return "other"

    @property
    def on_spectrum(self) -> bool:
        z = complex(self.z)
        return z.imag == 0.0 and 0.0 <= z.real <= 4.0 * self.dim


@dataclass(frozen=True)
class GreenValue:
    value: complex
    representation: str
    terms_used: int = 1
    err_estimate: float = 0.0


def _point(n, dim: int) -> LatticePoint:
    pt = LatticePoint.of(n)
    if pt.dim != dim:
        raise ValueError(f"expected a point of Z^{dim}, got {pt.coords}")
    return pt


def _off_spectrum(z: complex, dim: int) -> complex:
    z = complex(z)
    if SpectralPoint(z, dim).on_spectrum:
        raise RegionError(f"z in [0, {4 * dim}]: the resolvent is not defined on the spectrum")
    return z


def reduce_symmetry(n) -> LatticePoint:
    """Coordinatewise absolute value, sorted descending."""
    return LatticePoint.of(n).reduced()


# --- Laurent expansion (|2d - z| > 2d) ---

def green_laurent(d: int, z: complex, n, tol: float = config.DEFAULT_TOL) -> GreenValue:
    """
    G(z,n) = Σ_α (2|α|+|n|)! / (α! Π_j (α_j+|n_j|)!) · (2d-z)^{-2|α|-|n|-1}.

    Summed by total-degree shells |α| = s; the per-coordinate factorial tables are
    convolved in log domain.
    """
    pt = _point(n, d)
    z = complex(z)
    base = 2 * d - z
    if abs(base) <= 2 * d:
        raise RegionError(f"Laurent expansion needs |{2 * d} - z| > {2 * d}, got {abs(base):.6g}")
    ns = [abs(c) for c in pt.coords]
    size = sum(ns)
    ratios = [lambda a, nj=nj: complex(-math.log(a + 1) - math.log(a + nj + 1)) for nj in ns]
    initial = [complex(-gammaln(nj + 1)) for nj in ns]
    conv = ShellConvolution(ratios, initial, config.MAX_TOTAL_DEGREE)
    log_base = cmath.log(base)

    def shell(s: int) -> complex:
        power = 2 * s + size
        return cmath.exp(float(gammaln(power + 1)) + conv.advance() - (power + 1) * log_base)

    series = sum_shells(shell, tol, config.MAX_TOTAL_DEGREE, label="Laurent expansion")
    return GreenValue(series.value, "laurent", series.terms_used, series.err_estimate)


def green_laurent_fc(d: int, z: complex, n, tol: float = config.DEFAULT_TOL) -> GreenValue:
    """
    Same expansion written as |n|!/Π|n_j|! (2d-z)^{-|n|-1}
    F_C((|n|+1)/2, (|n|+2)/2; |n_j|+1; 4/(z-2d)², ...).
    """
    pt = _point(n, d)
    z = complex(z)
    base = 2 * d - z
    if abs(base) <= 2 * d:
        raise RegionError(f"Laurent expansion needs |{2 * d} - z| > {2 * d}")
    ns = [abs(c) for c in pt.coords]
    size = sum(ns)
    multinomial = math.factorial(size)
    for nj in ns:
        multinomial //= math.factorial(nj)
    params = LauricellaParams.type_c(HalfInt(size + 1), HalfInt(size + 2), [HalfInt.of(nj + 1) for nj in ns])
    arg = 4.0 / (z - 2 * d) ** 2
    series = eval_lauricella_fc(params, [arg] * d, tol)
    value = float(multinomial) * base ** (-(size + 1)) * series.value
    return GreenValue(value, "laurent-fc", series.terms_used, series.err_estimate)


def green_laurent_2d(z: complex, n, tol: float = config.DEFAULT_TOL) -> GreenValue:
    """
    d = 2 single sum Σ_k ((2k+|n|)!)² / ((k+|n₁|)!(k+|n₂|)!(|n|+k)!k!) (4-z)^{-2k-|n|-1}.
    """
    n1, n2 = reduce_symmetry(_point(n, 2)).coords
    z = complex(z)
    base = 4 - z
    if abs(base) <= 4:
        raise RegionError(f"Laurent expansion needs |4 - z| > 4, got {abs(base):.6g}")
    size = n1 + n2
    log_base = cmath.log(base)

    def term(k: int) -> complex:
        log_coeff = (
            2.0 * gammaln(2 * k + size + 1)
            - gammaln(k + n1 + 1) - gammaln(k + n2 + 1) - gammaln(size + k + 1) - gammaln(k + 1)
        )
        return cmath.exp(float(log_coeff) - (2 * k + size + 1) * log_base)

    series = sum_shells(term, tol, config.MAX_SERIES_TERMS, label="d=2 Laurent sum")
    return GreenValue(series.value, "laurent2d", series.terms_used, series.err_estimate)


# --- d = 1 ---

def _abs_index(n) -> int:
    return abs(_point(n, 1).coords[0])


def green_1d(z: complex, n) -> GreenValue:
    """Closed form ((-z+2-S)/2)^{|n|} / S with S = √(-z)·√(4-z)."""
    m = _abs_index(n)
    z = complex(z)
    s = resolvent_sqrt_1d(z)
    return GreenValue(((-z + 2 - s) / 2) ** m / s, "closed1d")


def green_1d_threshold0(z: complex, n, tol: float = config.DEFAULT_TOL) -> GreenValue:
    """
    Expansion at z = 0:
    -(|n|/2) F(1+n,1-n; 3/2; z/4) + F(½+n,½-n; ½; z/4) / (2√(-z)).
    """
    m = _abs_index(n)
    z = complex(z)
    if z.imag == 0.0 and z.real >= 0.0:
        raise RegionError("threshold-0 expansion needs z in C \\ [0, inf)")
    if abs(z) >= 4:
        raise RegionError(f"threshold-0 expansion needs |z| < 4, got {abs(z):.6g}")
    w = z / 4
    analytic = 0j
    if m:
        analytic = -(m / 2) * pfq([1 + m, 1 - m], [THREE_HALVES], w, tol)
    singular = pfq([HalfInt(2 * m + 1), HalfInt(1 - 2 * m)], [HALF], w, tol) / (2 * principal_sqrt(-z))
    return GreenValue(analytic + singular, "thresh0-1d")


def green_1d_threshold4(z: complex, n, tol: float = config.DEFAULT_TOL) -> GreenValue:
    """
    Expansion at z = 4:
    -(-1)^{n+1}(|n|/2) F(1+n,1-n; 3/2; (4-z)/4) + (-1)^{n+1} F(½+n,½-n; ½; (4-z)/4) / (2√(z-4)).
    """
    m = _abs_index(n)
    z = complex(z)
    if z.imag == 0.0 and z.real <= 4.0:
        raise RegionError("threshold-4 expansion needs z in C \\ (-inf, 4]")
    if abs(z - 4) >= 4:
        raise RegionError(f"threshold-4 expansion needs |z - 4| < 4, got {abs(z - 4):.6g}")
    sign = -1.0 if m % 2 == 0 else 1.0
    w = (4 - z) / 4
    analytic = 0j
    if m:
        analytic = -sign * (m / 2) * pfq([1 + m, 1 - m], [THREE_HALVES], w, tol)
    singular = sign * pfq([HalfInt(2 * m + 1), HalfInt(1 - 2 * m)], [HALF], w, tol) / (2 * principal_sqrt(z - 4))
    return GreenValue(analytic + singular, "thresh4-1d")


# --- d = 2, digamma/log series ---

def _log_series(
    upper: Sequence[HalfInt],
    lower: Sequence[HalfInt],
    base: Sequence[Tuple[int, HalfInt]],
    x: complex,
    log_term: complex,
    tol: float,
) -> Tuple[complex, int, float]:
    """
    Σ_k Π(upper)_k / (k! Π(lower)_k) x^k [Σ c·ψ(b+k) - Σ ψ(upper+k) - log_term].

    base lists (c, b) pairs for the positive digamma terms. Digamma values are carried
    along with ψ(y+1) = ψ(y) + 1/y.
    """
    ups = [float(a) for a in upper]
    lows = [float(b) for b in lower]
    psi_up = [digamma(a) for a in upper]
    psi_base = [digamma(b) for _, b in base]
    base_pos = [float(b) for _, b in base]
    weights = [c for c, _ in base]

    coeff = complex(1.0)
    total = complex(0.0)
    quiet = 0
    term = complex(0.0)
    for k in range(config.MAX_SERIES_TERMS):
        bracket = sum(c * p for c, p in zip(weights, psi_base)) - sum(psi_up) - log_term
        term = coeff * bracket
        total += term
        if abs(term) <= tol * abs(total):
            quiet += 1
            if quiet >= STOP_RUN:
                return total, k + 1, abs(term)
        else:
            quiet = 0
        num = 1.0
        for i, a in enumerate(ups):
            num *= a + k
            psi_up[i] += 1.0 / (a + k)
        den = float(k + 1)
        for b in lows:
            den *= b + k
        for i, b in enumerate(base_pos):
            psi_base[i] += 1.0 / (b + k)
        coeff *= num / den * x
    raise ConvergenceError("digamma/log series did not converge", partial=total,
                           err_estimate=abs(term), terms_used=config.MAX_SERIES_TERMS)


def _parity_sign(k: int) -> int:
    return -1 if k % 2 else 1


def _embedded_value(u: complex, log_term: complex, n1: int, n2: int, tol: float) -> GreenValue:
    """Embedded-threshold formula for reduced (n1, n2), u = (z-4)/4, log_term = log(-u²)."""
    a, b = n1 + n2, n1 - n2
    sign = _parity_sign(n1)
    u2 = u * u
    if a % 2 == 0:
        analytic = 0j
        if a and b:
            analytic = sign * (a // 2) * (b // 2) * u * pfq(
                [HalfInt(2 + a), HalfInt(2 - a), HalfInt(2 + b), HalfInt(2 - b)],
                [ONE, THREE_HALVES, THREE_HALVES], u2, tol)
        upper = [HalfInt(1 + a), HalfInt(1 + b), HalfInt(1 - b), HalfInt(1 - a)]
        assert not any(p.is_integer for p in upper)
        series, terms, err = _log_series(upper, [ONE, HALF, HALF], [(2, ONE), (2, HALF)], u2, log_term, tol)
        value = analytic + 1j * sign / (4 * math.pi) * series
    else:
        analytic = sign / 4 * pfq(
            [HalfInt(1 + a), HalfInt(1 + b), HalfInt(1 - b), HalfInt(1 - a)],
            [ONE, HALF, HALF], u2, tol)
        upper = [HalfInt(2 + a), HalfInt(2 + b), HalfInt(2 - b), HalfInt(2 - a)]
        assert not any(p.is_integer for p in upper)
        series, terms, err = _log_series(upper, [ONE, THREE_HALVES, THREE_HALVES],
                                         [(2, ONE), (2, THREE_HALVES)], u2, log_term, tol)
        value = analytic + 1j * sign / math.pi * (a / 2) * (b / 2) * u * series
    return GreenValue(value, "embedded2d", terms, err)


def green_2d_embedded(
    z: complex, n, tol: float = config.DEFAULT_TOL, boundary_limit: bool = False
) -> GreenValue:
    """
    Expansion around the embedded threshold z = 4, valid for |z - 4| < 4, Im z != 0.

    Im z < 0 goes through G(z, n) = conj(G(conj z, n)). With boundary_limit=True, real
    z in (0, 8) is evaluated as the limit from the upper half-plane.
    """
    n1, n2 = reduce_symmetry(_point(n, 2)).coords
    z = complex(z)
    if boundary_limit:
        x = z.real
        if z.imag != 0.0 or not 0.0 < x < 8.0:
            raise RegionError("boundary limit needs real z in (0, 8)")
        if x == 4.0:
            if (n1 + n2) % 2 == 0:
                raise RegionError("G(4 + i0, n) diverges logarithmically for even |n|")
            return GreenValue(complex(_parity_sign(n1) / 4.0), "embedded2d-limit")
        u = complex((x - 4.0) / 4.0)
        log_term = complex(math.log(((x - 4.0) / 4.0) ** 2), math.pi if x < 4.0 else -math.pi)
        result = _embedded_value(u, log_term, n1, n2, tol)
        return GreenValue(result.value, "embedded2d-limit", result.terms_used, result.err_estimate)
    if abs(z - 4) >= 4:
        raise RegionError(f"embedded-threshold expansion needs |z - 4| < 4, got {abs(z - 4):.6g}")
    if z.imag == 0.0:
        raise RegionError("embedded-threshold expansion needs Im z != 0 (see boundary_limit)")
    if z.imag < 0:
        mirror = green_2d_embedded(z.conjugate(), (n1, n2), tol)
        return GreenValue(mirror.value.conjugate(), mirror.representation, mirror.terms_used, mirror.err_estimate)
    u = (z - 4) / 4
    return _embedded_value(u, principal_log(-u * u), n1, n2, tol)


# --- d = 2 diagonal values P₀(m) = (-1)^m G(z, m, m) ---

def _diag_threshold4(z: complex, m: int, tol: float, scale: float = 4.0) -> complex:
    if abs(z - 4) >= 4:
        raise RegionError("threshold-4 diagonal series needs |z - 4| < 4")
    if z.imag == 0.0:
        raise RegionError("threshold-4 diagonal series needs Im z != 0")
    if z.imag < 0:
        return _diag_threshold4(z.conjugate(), m, tol, scale).conjugate()
    u = (z - 4) / 4
    x = ((z - 4) / scale) ** 2
    series, _, _ = _log_series([HalfInt(1 + 2 * m), HalfInt(1 - 2 * m)], [ONE], [(2, ONE)],
                               x, principal_log(-u * u), tol)
    return 1j / (4 * math.pi) * series


def _diag_endpoint(z: complex, m: int, tol: float) -> complex:
    v = z * (8 - z) / 16
    if abs(v) >= 1:
        raise RegionError("endpoint diagonal series needs |z(8 - z)| < 16")
    re = (4 - z).real
    if re == 0.0:
        raise RegionError("endpoint diagonal series needs Re z != 4")
    sign = 1.0 if re > 0 else -1.0
    series, _, _ = _log_series([HalfInt(1 + 2 * m), HalfInt(1 - 2 * m)], [ONE], [(2, ONE)],
                               v, principal_log(z * (z - 8) / 16), tol)
    return sign * _parity_sign(m) / (4 * math.pi) * series


def _diag_laurent(z: complex, m: int, tol: float) -> complex:
    if abs(z - 4) <= 4:
        raise RegionError("Laurent diagonal form needs |z - 4| > 4")
    central = math.comb(2 * m, m)
    hyper = pfq([HalfInt(1 + 2 * m), HalfInt(1 + 2 * m)], [HalfInt(2 + 4 * m)], 16 / (z - 4) ** 2, tol)
    return _parity_sign(m) * central * (4 - z) ** (-2 * m - 1) * hyper


def _diag_rates(z: complex) -> Dict[str, float]:
    """Geometric convergence rate of every diagonal representation that covers z."""
    rates = {}
    if abs(z - 4) > 4:
        rates["laurent"] = (4 / abs(z - 4)) ** 2
    if abs(z * (8 - z)) < 16 and (4 - z).real != 0.0:
        rates["endpoint"] = abs(z * (8 - z)) / 16
    if abs(z - 4) < 4 and z.imag != 0.0:
        rates["threshold4"] = abs((z - 4) / 4) ** 2
    return rates


def diag_p0(z: complex, m: int, region_hint: str = "auto", tol: float = config.DEFAULT_TOL) -> complex:
    """
    Diagonal value P₀(m) = (-1)^m G(z, m, m) for d = 2.

    region_hint:
    - "threshold4": i/(4π) Σ (½+m)_k(½-m)_k/k!² ((z-4)/4)^{2k} [2ψ(1+k) - ψ(½+m+k) - ψ(½-m+k) - log(-(z-4)²/16)]
    - "endpoint":   ±(-1)^m/(4π) Σ (½+m)_k(½-m)_k/k!² (z(8-z)/16)^k [... - log(z(z-8)/16)], + when Re(4-z) > 0
    - "laurent":    (-1)^m C(2m,m) (4-z)^{-2m-1} ₂F₁(½+m, ½+m; 1+2m; 16/(z-4)²)
    - "auto":       fastest-converging form among those covering z
    """
    z = _off_spectrum(z, 2)
    m = abs(int(m))
    if region_hint == "auto":
        rates = _diag_rates(z)
        if not rates:
            raise RegionError(f"no diagonal representation covers z = {z}")
        region_hint = min(rates, key=rates.get)
    if region_hint == "threshold4":
        return _diag_threshold4(z, m, tol)
    if region_hint == "endpoint":
        return _diag_endpoint(z, m, tol)
    if region_hint == "laurent":
        return _diag_laurent(z, m, tol)
    raise ValueError(f"unknown region hint {region_hint!r}")


def diag_p0_literal_factor(z: complex, m: int, tol: float = config.DEFAULT_TOL) -> complex:
    """Threshold-4 diagonal series with the factor ((z-4)/16)^{2k}; kept for comparison only."""
    return _diag_threshold4(complex(z), abs(int(m)), tol, scale=16.0)


# --- d = 2 endpoint representation ---

def _rotated(n) -> Tuple[bool, int, int]:
    """
    Map reduced n to (is_even, m, l) with
    P(m,l) = (-1)^{m+l} G(z, m+l, m-l) and Q(m,l) = (-1)^{m+l} G(z, m+l+1, m-l).
    """
    n1, n2 = reduce_symmetry(_point(n, 2)).coords
    if (n1 + n2) % 2 == 0:
        return True, (n1 + n2) // 2, (n1 - n2) // 2
    m, l = (n1 + n2 - 1) // 2, (n1 - n2 - 1) // 2
    assert m >= 0 and l >= 0, "odd |n| must map into N0 x N0 after reduction"
    return False, m, l


def _endpoint_z(z: complex) -> complex:
    return _off_spectrum(z, 2)


def _f43(upper: Sequence, lower: Sequence, w: complex) -> complex:
    return pfq(upper, lower, w)


def endpoint_p(z: complex, m: int, l: int, p0: Sequence[complex]) -> complex:
    """P(m, l) from the finite ₄F₃ sums, given P₀(0..max(m, l))."""
    u = (z - 4) / 4
    w = u * u
    value = p0[0] * _f43([m, -m, l, -l], [ONE, HALF, HALF], w)
    if m and l:
        value += u * m * l * _f43([1 + m, 1 - m, 1 + l, 1 - l], [ONE, THREE_HALVES, THREE_HALVES], w)
    for mu in range(1, m + 1):
        value += (p0[mu] - p0[mu - 1]) * _f43([1 + m - mu, mu - m, l, -l], [ONE, HALF, HALF], w)
    for nu in range(1, l + 1):
        value += (p0[nu] - p0[nu - 1]) * _f43([m, -m, 1 + l - nu, nu - l], [ONE, HALF, HALF], w)
    return value


def endpoint_q(z: complex, m: int, l: int, p0: Sequence[complex]) -> complex:
    """Q(m, l) from the finite ₄F₃ sums, given P₀(0..max(m, l))."""
    u = (z - 4) / 4
    w = u * u
    value = -0.25 * _f43([1 + m, -m, 1 + l, -l], [ONE, HALF, HALF], w)
    value += u * (2 * m + 1) * (2 * l + 1) * p0[0] * _f43(
        [1 + m, -m, 1 + l, -l], [ONE, THREE_HALVES, THREE_HALVES], w)
    row = sum(p0[abs(mu)] * _f43([1 + m - abs(mu), abs(mu) - m, 1 + l, -l], [ONE, HALF, THREE_HALVES], w)
              for mu in range(-m, m + 1))
    col = sum(p0[abs(nu)] * _f43([1 + m, -m, 1 + l - abs(nu), abs(nu) - l], [ONE, HALF, THREE_HALVES], w)
              for nu in range(-l, l + 1))
    value -= u * (2 * l + 1) * row
    value -= u * (2 * m + 1) * col
    return value


def green_2d_endpoint(z: complex, n, tol: float = config.DEFAULT_TOL) -> GreenValue:
    """
    Endpoint representation on C \\ [0, 8].

    The diagonal values P₀(0..max(m,l)) come from diag_p0 with whichever diagonal
    form covers z; the off-diagonal values are finite ₄F₃ combinations of them.
    """
    z = _endpoint_z(z)
    even, m, l = _rotated(n)
    p0 = [diag_p0(z, k, "auto", tol) for k in range(max(m, l) + 1)]
    core = endpoint_p(z, m, l, p0) if even else endpoint_q(z, m, l, p0)
    return GreenValue(_parity_sign(m + l) * core, "endpoint2d", len(p0))


def recurrence_table(z: complex, m_max: int, l_max: int, p0: Sequence[complex]) -> List[List[complex]]:
    """
    P(a, b) for 0 <= a <= m_max, 0 <= b <= l_max from

    P(a,b) = ¼ab(z-4) - P₀(0) + P₀(a) + P₀(b) + ¼(z-4)² Σ_{|μ|<a} Σ_{|ν|<b} (a-|μ|)(b-|ν|) P(μ,ν).

    Weights vanish on |μ| = a and |ν| = b, so each entry only needs strictly smaller ones.
    """
    zeta = z - 4
    table = [[0j] * (l_max + 1) for _ in range(m_max + 1)]
    for a in range(m_max + 1):
        for b in range(l_max + 1):
            if a == 0 or b == 0:
                table[a][b] = p0[max(a, b)]
                continue
            acc = 0j
            for mu in range(a):
                wmu = (a - mu) * (1 if mu == 0 else 2)
                for nu in range(b):
                    wnu = (b - nu) * (1 if nu == 0 else 2)
                    acc += wmu * wnu * table[mu][nu]
            table[a][b] = 0.25 * a * b * zeta - p0[0] + p0[a] + p0[b] + 0.25 * zeta * zeta * acc
    return table


def green_2d_recurrence(z: complex, n, tol: float = config.DEFAULT_TOL) -> GreenValue:
    """Endpoint values by dynamic programming over the P/Q recurrences."""
    z = _endpoint_z(z)
    even, m, l = _rotated(n)
    p0 = [diag_p0(z, k, "auto", tol) for k in range(max(m, l) + 1)]
    table = recurrence_table(z, m, l, p0)
    if even:
        core = table[m][l]
    else:
        acc = 0j
        for mu in range(m + 1):
            for nu in range(l + 1):
                acc += (1 if mu == 0 else 2) * (1 if nu == 0 else 2) * table[mu][nu]
        core = -0.25 - (z - 4) / 4 * acc
    return GreenValue(_parity_sign(m + l) * core, "recurrence2d", len(p0))


def pochhammer_telescoping(p: int, q: int, r: Union[HalfInt, int, Fraction], k: int) -> Fraction:
    """Σ_{j=p}^{q} (j+r)_k = [(q+r)_{k+1} - (p+r-1)_{k+1}] / (k+1), evaluated from the right side."""
    if p > q:
        raise ValueError(f"need p <= q, got p={p}, q={q}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    base = r.as_fraction() if isinstance(r, HalfInt) else Fraction(r)
    return (pochhammer(base + q, k + 1) - pochhammer(base + p - 1, k + 1)) / (k + 1)


# --- Dispatcher ---

def _green_2d_quadrature(z: complex, pt: LatticePoint, tol: float) -> GreenValue:
    # resolvent is imported by the oracles module, so this import stays local
    from src.verification.oracles import quadrature_torus

    log_warning(f"no d=2 series covers z = {z} (|z-4| = 4), falling back to torus quadrature")
    return quadrature_torus(2, z, pt, tol=max(tol, 1e-13))


def green_auto(
    d: int, z: complex, n, tol: float = config.DEFAULT_TOL, boundary_limit: bool = False
) -> GreenValue:
    """
    Pick a representation by region.

    d = 1: closed form.
    d = 2: Laurent when |4 - z| > 4 (unless the endpoint series converges faster there),
           endpoint when |z(8-z)| < 16, embedded when |z - 4| < 4 and Im z != 0.
           The rest of the circle |z - 4| = 4 falls back to torus quadrature.
    d >= 3: Laurent only.
    """
    pt = _point(n, d)
    z = complex(z)
    if d == 1:
        if boundary_limit:
            raise ValueError("boundary-limit mode is only defined at the d = 2 embedded threshold")
        return green_1d(_off_spectrum(z, 1), pt)
    if d == 2:
        if boundary_limit:
            return green_2d_embedded(z, pt, tol, boundary_limit=True)
        z = _off_spectrum(z, 2)
        region = SpectralPoint(z, 2).region
        rates = _diag_rates(z)
        endpoint_rate = rates.get("endpoint")
        if region == "outside_disk" and (endpoint_rate is None or rates["laurent"] <= endpoint_rate):
            return green_laurent_2d(z, pt, tol)
        if endpoint_rate is not None:
            return green_2d_endpoint(z, pt, tol)
        if "threshold4" in rates:
            return green_2d_embedded(z, pt, tol)
        return _green_2d_quadrature(z, pt, tol)
    z = _off_spectrum(z, d)
    if SpectralPoint(z, d).region == "outside_disk":
        return green_laurent(d, z, pt, tol)
    raise RegionError(f"unsupported region for d={d}: only |{2 * d} - z| > {2 * d} is covered")


def helmholtz_residual(evaluator: Callable[[complex, LatticePoint], object], z: complex, n) -> complex:
    """
    (2d - z) G(z, n) - Σ_j [G(z, n+e_j) + G(z, n-e_j)], which equals δ₀[n].

    evaluator(z, point) may return a GreenValue or a bare complex.
    """
    pt = LatticePoint.of(n)
    z = complex(z)

    def value(p: LatticePoint) -> complex:
        result = evaluator(z, p)
        return complex(result.value if isinstance(result, GreenValue) else result)

    total = (2 * pt.dim - z) * value(pt)
    for axis in range(pt.dim):
        total -= value(pt.shifted(axis, 1)) + value(pt.shifted(axis, -1))
    return total


REPRESENTATIONS: Dict[str, Callable[..., GreenValue]] = {
    "auto": lambda d, z, n, tol: green_auto(d, z, n, tol),
    "laurent": lambda d, z, n, tol: green_laurent(d, z, n, tol),
    "closed1d": lambda d, z, n, tol: green_1d(z, _point(n, 1)),
    "thresh0-1d": lambda d, z, n, tol: green_1d_threshold0(z, _point(n, 1), tol),
    "thresh4-1d": lambda d, z, n, tol: green_1d_threshold4(z, _point(n, 1), tol),
    "embedded2d": lambda d, z, n, tol: green_2d_embedded(z, _point(n, 2), tol),
    "endpoint2d": lambda d, z, n, tol: green_2d_endpoint(z, _point(n, 2), tol),
    "recurrence2d": lambda d, z, n, tol: green_2d_recurrence(z, _point(n, 2), tol),
}
