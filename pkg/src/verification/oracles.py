"""
Brute-force evaluators used only to cross-check the series representations.

- quadrature_torus: equal-weight trapezoid rule on the torus [0, 2π)^d
- bessel_i / laplace_bessel: the Bessel-Laplace integral for Re z < 0
- laplace_closed_1d: closed Laplace transform of I_ν
- walk_prob_exact / walk_expectation: the killed simple random walk
- renormalized_limit: E(ε, n) - e(ε) extrapolated to ε -> 0
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate
from scipy.special import gammaln, ive, logsumexp

from src import config
from src.kernel.errors import ConvergenceError, RegionError
from src.kernel.fundamental_solutions import fundsol_h0
from src.kernel.resolvent import GreenValue, LatticePoint, SpectralPoint, green_auto
from src.kernel.special_functions import LOG2, principal_sqrt
from src.utils.console import log_info, log_warning

# Slices of a 3-d grid hold N² points; beyond this the memory cost is not worth it.
QUADRATURE_MAX_N_3D = 512


# --- Killed random walk ---

@dataclass(frozen=True)
class WalkConfig:
    """
    Simple random walk on Z^d that dies with probability eps at every step.

    Parameters:
    -----------
    dim : int
        Lattice dimension.
    eps : float
        Killing probability, 0 < eps < 1.
    kmax : int
        Last step included in the truncated expectation.
    """

    dim: int
    eps: float
    kmax: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be positive, got {self.dim}")
        if not 0.0 < self.eps < 1.0:
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")
        if self.kmax < 0:
            raise ValueError(f"kmax must be nonnegative, got {self.kmax}")

    @property
    def tail_bound(self) -> float:
        """Σ_{k>kmax} (1-ε)^k, an upper bound on the truncation error."""
        return (1.0 - self.eps) ** (self.kmax + 1) / self.eps

    @classmethod
    def for_tolerance(cls, dim: int, eps: float, tol: float) -> "WalkConfig":
        """Smallest kmax whose tail bound is at most tol."""
        if tol <= 0:
            raise ValueError("tol must be positive")
        kmax = max(0, math.ceil(math.log(tol * eps) / math.log(1.0 - eps)) - 1)
        cfg = cls(dim, eps, kmax)
        while cfg.tail_bound > tol:
            cfg = cls(dim, eps, cfg.kmax + 1)
        while cfg.kmax > 0 and cls(dim, eps, cfg.kmax - 1).tail_bound <= tol:
            cfg = cls(dim, eps, cfg.kmax - 1)
        return cfg


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def walk_prob_exact(d: int, k: int, n) -> Fraction:
    """
    P(X_k = n) = (2d)^{-k} Σ_{|α|=(k-|n|)/2} k! / Π_j α_j!(α_j+|n_j|)!, exactly.

    Zero when |n| > k or k - |n| is odd.
    """
    pt = LatticePoint.of(n)
    if pt.dim != d:
        raise ValueError(f"expected a point of Z^{d}, got {pt.coords}")
    if k < 0:
        raise ValueError(f"step count must be nonnegative, got {k}")
    size = pt.norm1
    if size > k or (k - size) % 2:
        return Fraction(0)
    half = (k - size) // 2
    ns = [abs(c) for c in pt.coords]
    k_fact = math.factorial(k)
    count = 0
    for alpha in _compositions(half, d):
        denom = 1
        for a, nj in zip(alpha, ns):
            denom *= math.factorial(a) * math.factorial(a + nj)
        count += k_fact // denom
    return Fraction(count, (2 * d) ** k)


def walk_distribution(d: int, k: int) -> Dict[Tuple[int, ...], Fraction]:
    """P(X_k = n) for every n reachable in exactly k steps."""
    dist = {}
    for coords in itertools.product(range(-k, k + 1), repeat=d):
        size = sum(abs(c) for c in coords)
        if size <= k and (k - size) % 2 == 0:
            dist[coords] = walk_prob_exact(d, k, coords)
    return dist


def walk_expectation(cfg: WalkConfig, n) -> float:
    """Σ_{k≤kmax} (1-ε)^k P(X_k = n): expected visits to n before the walk dies."""
    survive = 1.0 - cfg.eps
    terms = [survive ** k * float(walk_prob_exact(cfg.dim, k, n)) for k in range(cfg.kmax + 1)]
    return math.fsum(terms)


def walk_expectation_resolvent(d: int, eps: float, n, tol: float = config.DEFAULT_TOL) -> float:
    """(2d/(1-ε)) G(-2dε/(1-ε), n), the closed value of the killed-walk expectation."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    z = -2.0 * d * eps / (1.0 - eps)
    return (2.0 * d / (1.0 - eps)) * green_auto(d, z, n, tol).value.real


def _subtracted_term(d: int, eps: float) -> float:
    if d == 1:
        return (2.0 * eps) ** -0.5
    if d == 2:
        return -math.log(4.0 * eps) / math.pi
    raise ValueError(f"renormalization is only defined for d in (1, 2), got {d}")


def renormalized_limit(d: int, n, eps_sequence: Sequence[float], tol: float = config.DEFAULT_TOL) -> float:
    """
    lim_{ε->0} [E(ε, n) - e(ε)] by least squares on small ε.

    Model: L + a√ε + bε for d = 1 and L + bε + cε log ε for d = 2. Returns L.
    """
    eps = np.asarray(sorted(eps_sequence), dtype=float)
    if len(eps) < 3:
        raise ValueError("need at least three eps values for the extrapolation fit")
    gaps = np.array([walk_expectation_resolvent(d, e, n, tol) - _subtracted_term(d, e) for e in eps])
    if d == 1:
        design = np.column_stack([np.ones_like(eps), np.sqrt(eps), eps])
    else:
        design = np.column_stack([np.ones_like(eps), eps, eps * np.log(eps)])
    cond = np.linalg.cond(design)
    if cond > 1e12:
        log_warning(f"renormalized-limit fit is poorly conditioned (cond={cond:.3g})")
    coeffs, _, _, _ = np.linalg.lstsq(design, gaps, rcond=None)
    return float(coeffs[0])


def renormalized_target(d: int, n) -> float:
    """Exact value of the renormalized limit: -|n| for d = 1, 4E[n] + 5 log 2/π for d = 2."""
    pt = LatticePoint.of(n)
    if d == 1:
        return -float(pt.norm1)
    if d == 2:
        return 4.0 * fundsol_h0(pt).total.real + 5.0 * LOG2 / math.pi
    raise ValueError(f"renormalization is only defined for d in (1, 2), got {d}")


# --- Torus quadrature ---

def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _torus_mean(coords: Tuple[int, ...], z: complex, n_grid: int) -> complex:
    """Equal-weight mean of cos(n·θ) / (2d - 2Σcos θ_j - z), one slice of θ₁ at a time."""
    d = len(coords)
    theta = 2.0 * np.pi * np.arange(n_grid) / n_grid
    symbol = 2.0 - 2.0 * np.cos(theta)
    if d == 1:
        return complex(np.mean(np.cos(coords[0] * theta) / (symbol - z)))
    rest = np.meshgrid(*([theta] * (d - 1)), indexing="ij")
    phase_rest = sum(c * grid for c, grid in zip(coords[1:], rest))
    symbol_rest = sum(2.0 - 2.0 * np.cos(grid) for grid in rest)
    total = complex(0.0)
    for t, sym in zip(theta, symbol):
        total += complex(np.sum(np.cos(coords[0] * t + phase_rest) / (sym + symbol_rest - z)))
    return total / n_grid ** d


def quadrature_torus(
    d: int, z: complex, n, N_per_dim: Optional[int] = None, tol: float = config.DEFAULT_TOL
) -> GreenValue:
    """
    G(z, n) = (2π)^{-d} ∫ cos(n·θ) / (2d - 2Σcos θ_j - z) dθ on an equal-weight grid.

    The grid starts at N_per_dim (default QUADRATURE_START_N) points per dimension and
    doubles until two successive grids agree to tol·max(1, |Q|).

    Raises:
    -------
    RegionError
        z on the spectrum [0, 4d].
    ConvergenceError
        The grid cap is reached first (z too close to the spectrum for this tol).
    """
    pt = LatticePoint.of(n)
    if pt.dim != d:
        raise ValueError(f"expected a point of Z^{d}, got {pt.coords}")
    if d > 3:
        raise ValueError("torus quadrature is limited to d <= 3")
    z = complex(z)
    if SpectralPoint(z, d).on_spectrum:
        raise RegionError(f"z in [0, {4 * d}]: the defining integral is singular")
    n_grid = config.QUADRATURE_START_N if N_per_dim is None else int(N_per_dim)
    if not _is_power_of_two(n_grid):
        raise ValueError(f"grid size must be a power of two, got {n_grid}")
    cap = config.QUADRATURE_MAX_N if d < 3 else min(config.QUADRATURE_MAX_N, QUADRATURE_MAX_N_3D)
    cap = max(cap, n_grid)

    previous = _torus_mean(pt.coords, z, n_grid)
    err = None
    while n_grid < cap:
        n_grid *= 2
        current = _torus_mean(pt.coords, z, n_grid)
        err = abs(current - previous)
        if err < tol * max(1.0, abs(current)):
            log_info(f"quadrature d={d} z={z} n={pt.coords}: N={n_grid}, err={err:.2e}")
            return GreenValue(current, "quadrature", n_grid, err)
        previous = current
    log_warning(f"quadrature reached its grid cap N={cap} at z={z} without meeting tol={tol:g}")
    raise ConvergenceError(
        f"torus quadrature did not converge by N={cap}; z={z} is too close to the spectrum",
        partial=previous, err_estimate=err, terms_used=cap,
    )


# --- Bessel-Laplace ---

def bessel_i(nu: int, x: float) -> float:
    """Modified Bessel I_ν(x) for integer ν from Σ_k (x/2)^{2k+ν} / (k!(k+ν)!) in log domain."""
    nu = abs(int(nu))
    x = float(x)
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0
    sign = -1.0 if x < 0 and nu % 2 else 1.0
    log_half = math.log(abs(x) / 2.0)
    logs: List[float] = []
    running = -math.inf
    for k in range(config.MAX_SERIES_TERMS):
        log_term = float((2 * k + nu) * log_half - gammaln(k + 1) - gammaln(k + nu + 1))
        logs.append(log_term)
        running = float(np.logaddexp(running, log_term))
        # past the peak at k ~ |x|/2 the terms only shrink
        if k > abs(x) / 2 and log_term < running + math.log(1e-17):
            break
    return sign * float(np.exp(logsumexp(logs)))


def laplace_bessel(d: int, z: complex, n, tol: float = 1e-10) -> GreenValue:
    """
    G(z, n) = ∫_0^∞ e^{-t(2d-z)} Π_j I_{n_j}(2t) dt for Re z < 0.

    The integrand is evaluated as e^{tz} Π_j ive(n_j, 2t) and cut at
    T = log(1/(tol·|Re z|)) / |Re z|, where the tail is below tol.
    """
    pt = LatticePoint.of(n)
    if pt.dim != d:
        raise ValueError(f"expected a point of Z^{d}, got {pt.coords}")
    z = complex(z)
    if z.real >= 0.0:
        raise RegionError(f"Bessel-Laplace representation needs Re z < 0, got {z.real:g}")
    decay = abs(z.real)
    horizon = math.log(1.0 / (tol * decay)) / decay
    orders = [abs(c) for c in pt.coords]

    def bessel_part(t: float) -> float:
        product = 1.0
        for order in orders:
            product *= ive(order, 2.0 * t)
        return product

    def real_part(t: float) -> float:
        return math.exp(t * z.real) * math.cos(t * z.imag) * bessel_part(t)

    def imag_part(t: float) -> float:
        return math.exp(t * z.real) * math.sin(t * z.imag) * bessel_part(t)

    limit = 200
    re, re_err = integrate.quad(real_part, 0.0, horizon, epsabs=tol * 0.1, epsrel=tol, limit=limit)
    im, im_err = 0.0, 0.0
    if z.imag != 0.0:
        im, im_err = integrate.quad(imag_part, 0.0, horizon, epsabs=tol * 0.1, epsrel=tol, limit=limit)
    return GreenValue(complex(re, im), "bessel-laplace", limit, re_err + im_err + tol)


def laplace_closed_1d(s: complex, omega: float, nu: int) -> complex:
    """
    ∫_0^∞ e^{-st} I_ν(ωt) dt = (√(s+ω) - √(s-ω))^{2ν} / ((2ω)^ν √((s-ω)(s+ω)))  for Re s > |ω|.
    """
    s = complex(s)
    nu = abs(int(nu))
    if s.real <= abs(omega):
        raise RegionError(f"closed Laplace transform needs Re s > |omega|, got Re s = {s.real:g}")
    root_plus = principal_sqrt(s + omega)
    root_minus = principal_sqrt(s - omega)
    return (root_plus - root_minus) ** (2 * nu) / ((2 * omega) ** nu * root_minus * root_plus)
