"""
Checks for the combinatorial and hypergeometric identities behind the representations.

Exact checks (Fraction arithmetic, zero tolerance):
- check_binomial_convolution: the shell sum that collapses the d = 2 Laurent series
- check_threshold4_shell_identities: the even- and odd-shell Pochhammer identities
  that make the F_B singular part agree with the threshold-4 expansion

Numeric checks:
- check_endpoint_singular_identities: the two F_B^{(2)} versus ₂F₁·₄F₃ identities
- check_singular_part_1d / check_singular_part_2d: singular parts at the thresholds,
  and their cancellation of the jump across the cut
"""

import math
from fractions import Fraction
from typing import Callable, List, Sequence

from src import config
from src.kernel.errors import RegionError
from src.kernel.hypergeometric import LauricellaParams, eval_lauricella_fb, pfq
from src.kernel.resolvent import HALF, ONE, THREE_HALVES, GreenValue, LatticePoint, green_auto
from src.kernel.special_functions import HalfInt, pochhammer, principal_log, principal_sqrt


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _point2(n) -> LatticePoint:
    pt = LatticePoint.of(n)
    if pt.dim != 2:
        raise ValueError(f"expected a point of Z^2, got {pt.coords}")
    return pt


# --- Exact identities ---

def check_binomial_convolution(k: int, n) -> bool:
    """
    Σ_{|α|=k} (2|α|+|n|)! / (α₁!α₂!(α₁+|n₁|)!(α₂+|n₂|)!)
        = ((2k+|n|)!)² / ((k+|n₁|)!(k+|n₂|)!(|n|+k)!k!).
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    n1, n2 = (abs(c) for c in _point2(n).coords)
    size = n1 + n2
    f = math.factorial
    top = f(2 * k + size)
    lhs = sum(
        (Fraction(top, f(a1) * f(k - a1) * f(a1 + n1) * f(k - a1 + n2)) for a1 in range(k + 1)),
        Fraction(0),
    )
    rhs = Fraction(top * top, f(k + n1) * f(k + n2) * f(size + k) * f(k))
    return lhs == rhs


def _shell_sum(shell: int, n1: int, n2: int) -> Fraction:
    """Σ_{|α|=shell} (-1)^{α₁}/(α₁!α₂!) (½+n₁)_{α₁}(½+n₂)_{α₂}(½-n₁)_{α₁}(½-n₂)_{α₂}."""
    half = Fraction(1, 2)
    total = Fraction(0)
    for a1 in range(shell + 1):
        a2 = shell - a1
        term = (pochhammer(half + n1, a1) * pochhammer(half - n1, a1)
                * pochhammer(half + n2, a2) * pochhammer(half - n2, a2))
        total += _sign(a1) * term / (math.factorial(a1) * math.factorial(a2))
    return total


def check_threshold4_shell_identities(k: int, n) -> bool:
    """
    Even shell |α| = 2k:
        4^{2k}/(2k)! ((1+n₁+n₂)/2)_k ((1+n₁-n₂)/2)_k ((1-n₁+n₂)/2)_k ((1-n₁-n₂)/2)_k
    Odd shell |α| = 2k+1:
        4^{2k+1}/(2k+1)! ((n₁+n₂)/2)_{k+1} ((n₁-n₂)/2)_{k+1} ((2-n₁+n₂)/2)_k ((2-n₁-n₂)/2)_k
    Both are checked exactly.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    n1, n2 = _point2(n).coords
    even_rhs = (Fraction(4 ** (2 * k), math.factorial(2 * k))
                * pochhammer(Fraction(1 + n1 + n2, 2), k) * pochhammer(Fraction(1 + n1 - n2, 2), k)
                * pochhammer(Fraction(1 - n1 + n2, 2), k) * pochhammer(Fraction(1 - n1 - n2, 2), k))
    odd_rhs = (Fraction(4 ** (2 * k + 1), math.factorial(2 * k + 1))
               * pochhammer(Fraction(n1 + n2, 2), k + 1) * pochhammer(Fraction(n1 - n2, 2), k + 1)
               * pochhammer(Fraction(2 - n1 + n2, 2), k) * pochhammer(Fraction(2 - n1 - n2, 2), k))
    return _shell_sum(2 * k, n1, n2) == even_rhs and _shell_sum(2 * k + 1, n1, n2) == odd_rhs


check_cor_191020 = check_threshold4_shell_identities


# --- Endpoint identities (numeric) ---

def _fb2(a: Sequence[HalfInt], b: Sequence[HalfInt], w: float, tol: float) -> complex:
    params = LauricellaParams.type_b(a, b, ONE)
    return eval_lauricella_fb(params, [w, w], tol).value


def _endpoint_identity_sides(w: float, m: int, l: int, tol: float):
    """Both sides of the two endpoint identities at argument w."""
    x = w * (2.0 - w)
    v = (w - 1.0) ** 2

    def f21(mu: int) -> complex:
        return pfq([HalfInt(1 + 2 * mu), HalfInt(1 - 2 * mu)], [ONE], x, tol)

    f21_half = pfq([HALF, HALF], [ONE], x, tol)

    lhs1 = _sign(m + l) * _fb2(
        [HalfInt(1 + 2 * (m + l)), HalfInt(1 + 2 * (m - l))],
        [HalfInt(1 - 2 * (m + l)), HalfInt(1 - 2 * (m - l))], w, tol)
    rhs1 = f21_half * pfq([m, -m, l, -l], [ONE, HALF, HALF], v)
    for mu in range(1, m + 1):
        rhs1 += _sign(mu) * (f21(mu) + pfq([HalfInt(2 * mu - 1), HalfInt(3 - 2 * mu)], [ONE], x, tol)) * pfq(
            [1 + m - mu, mu - m, l, -l], [ONE, HALF, HALF], v)
    for nu in range(1, l + 1):
        rhs1 += _sign(nu) * (f21(nu) + pfq([HalfInt(2 * nu - 1), HalfInt(3 - 2 * nu)], [ONE], x, tol)) * pfq(
            [m, -m, 1 + l - nu, nu - l], [ONE, HALF, HALF], v)

    lhs2 = _sign(m + l) * _fb2(
        [HalfInt(3 + 2 * (m + l)), HalfInt(1 + 2 * (m - l))],
        [HalfInt(-1 - 2 * (m + l)), HalfInt(1 - 2 * (m - l))], w, tol)
    rhs2 = (2 * m + 1) * (2 * l + 1) * (w - 1) * f21_half * pfq(
        [1 + m, -m, 1 + l, -l], [ONE, THREE_HALVES, THREE_HALVES], v)
    row = sum(_sign(mu) * f21(mu) * pfq([1 + m - abs(mu), abs(mu) - m, 1 + l, -l], [ONE, HALF, THREE_HALVES], v)
              for mu in range(-m, m + 1))
    col = sum(_sign(nu) * f21(nu) * pfq([1 + m, -m, 1 + l - abs(nu), abs(nu) - l], [ONE, HALF, THREE_HALVES], v)
              for nu in range(-l, l + 1))
    rhs2 -= (2 * l + 1) * (w - 1) * row
    rhs2 -= (2 * m + 1) * (w - 1) * col
    return (lhs1, rhs1), (lhs2, rhs2)


def endpoint_identity_residuals(w: float, m: int, l: int, tol: float = config.DEFAULT_TOL) -> List[float]:
    """Relative residuals |lhs - rhs| / max(1, |lhs|) of both endpoint identities."""
    w = float(w)
    if abs(w) >= 1.0 or abs(w * (2.0 - w)) >= 1.0:
        raise RegionError(f"endpoint identities need |w| < 1 and |w(2-w)| < 1, got w = {w}")
    if m < 0 or l < 0:
        raise ValueError("m and l must be nonnegative")
    return [abs(lhs - rhs) / max(1.0, abs(lhs)) for lhs, rhs in _endpoint_identity_sides(w, m, l, tol)]


def check_endpoint_singular_identities(w: float, m: int, l: int, tol: float = 1e-9) -> bool:
    """Both F_B^{(2)} identities at (w, m, l) hold within tol."""
    series_tol = min(config.DEFAULT_TOL, tol * 1e-3)
    return all(r <= tol for r in endpoint_identity_residuals(w, m, l, series_tol))


check_cor_191021 = check_endpoint_singular_identities


# --- Singular parts ---

def _fb1(n: int, w: complex, tol: float) -> complex:
    params = LauricellaParams.type_b([HalfInt(1 + 2 * n)], [HalfInt(1 - 2 * n)], HALF)
    return eval_lauricella_fb(params, [w], tol).value


def check_singular_part_1d(z: complex, n: int, q: int, tol: float = config.DEFAULT_TOL) -> float:
    """
    |F_B^{(1)} singular part - ₂F₁ singular part| for d = 1 at threshold 4q.

    q = 0: 1/(2√(-z)) F_B^{(1)}(½+n; ½-n; ½; z/4), needs |z| < 4 and z off [0, ∞).
    q = 1: (-1)^{n+1}/(2√(z-4)) F_B^{(1)}(½+n; ½-n; ½; (4-z)/4), needs |z-4| < 4, z off (-∞, 4].
    """
    z = complex(z)
    m = abs(int(n))
    if q == 0:
        if abs(z) >= 4 or (z.imag == 0.0 and z.real >= 0.0):
            raise RegionError("q=0 singular part needs |z| < 4 and z off [0, inf)")
        prefactor = 1.0 / (2.0 * principal_sqrt(-z))
        w = z / 4
    elif q == 1:
        if abs(z - 4) >= 4 or (z.imag == 0.0 and z.real <= 4.0):
            raise RegionError("q=1 singular part needs |z - 4| < 4 and z off (-inf, 4]")
        prefactor = -_sign(m) / (2.0 * principal_sqrt(z - 4))
        w = (4 - z) / 4
    else:
        raise ValueError(f"d=1 has thresholds q in (0, 1), got {q}")
    lauricella = prefactor * _fb1(m, w, tol)
    gauss = prefactor * pfq([HalfInt(1 + 2 * m), HalfInt(1 - 2 * m)], [HALF], w, tol)
    return abs(lauricella - gauss)


def _fb_threshold(n1: int, n2: int, w1: complex, w2: complex, tol: float) -> complex:
    params = LauricellaParams.type_b([HalfInt(1 + 2 * n1), HalfInt(1 + 2 * n2)],
                                     [HalfInt(1 - 2 * n1), HalfInt(1 - 2 * n2)], ONE)
    return eval_lauricella_fb(params, [w1, w2], tol).value


def singular_part_2d(z: complex, n, q: int, tol: float = config.DEFAULT_TOL) -> complex:
    """
    Logarithmic singular part of G(z, n) at the d = 2 threshold 4q.

    q = 0: -(1/4π) log(-z) F_B(½+n₁,½+n₂; ½-n₁,½-n₂; 1; z/4, z/4)
    q = 1: -(i/8π) log(-(z-4)²/16) [(-1)^{n₂} F_B(...; (z-4)/4, (4-z)/4) + (-1)^{n₁} F_B(...; (4-z)/4, (z-4)/4)]
    q = 2: (-1)^{|n|}/(4π) log(z-8) F_B(...; (8-z)/4, (8-z)/4)
    """
    n1, n2 = _point2(n).coords
    z = complex(z)
    if q == 0:
        return -principal_log(-z) / (4 * math.pi) * _fb_threshold(n1, n2, z / 4, z / 4, tol)
    if q == 1:
        u = (z - 4) / 4
        bracket = (_sign(n2) * _fb_threshold(n1, n2, u, -u, tol)
                   + _sign(n1) * _fb_threshold(n1, n2, -u, u, tol))
        return -1j / (8 * math.pi) * principal_log(-u * u) * bracket
    if q == 2:
        w = (8 - z) / 4
        return _sign(n1 + n2) / (4 * math.pi) * principal_log(z - 8) * _fb_threshold(n1, n2, w, w, tol)
    raise ValueError(f"d=2 has thresholds q in (0, 1, 2), got {q}")


Evaluator = Callable[..., GreenValue]


def check_singular_part_2d(
    x: float,
    n,
    q: int,
    delta: float,
    subtract: bool = True,
    evaluator: Evaluator = green_auto,
    tol: float = config.DEFAULT_TOL,
) -> float:
    """
    |A(x+iδ) - A(x-iδ)| with A = G - singular part (or A = G when subtract=False).

    The jump shrinks like δ when the subtracted part carries the whole cut.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    x = float(x)
    if not abs(x - 4 * q) < 4 or not 0.0 < x < 8.0:
        raise RegionError(f"x = {x} is not inside the q={q} disk on the cut (0, 8)")
    pt = _point2(n)

    def side(sign: float) -> complex:
        z = complex(x, sign * delta)
        value = evaluator(2, z, pt, tol)
        g = value.value if isinstance(value, GreenValue) else complex(value)
        return g - singular_part_2d(z, pt, q, tol) if subtract else g

    return abs(side(1.0) - side(-1.0))


def jump_sequence(
    x: float, n, q: int, deltas: Sequence[float], subtract: bool = True, tol: float = config.DEFAULT_TOL
) -> List[float]:
    """Cut jumps for each δ in order; with subtract=True they should decrease with δ."""
    return [check_singular_part_2d(x, n, q, delta, subtract, tol=tol) for delta in deltas]


def decreasing(values: Sequence[float]) -> bool:
    return all(later < earlier for earlier, later in zip(values, values[1:]))


__all__ = [
    "check_binomial_convolution", "check_threshold4_shell_identities", "check_cor_191020",
    "check_endpoint_singular_identities", "check_cor_191021", "endpoint_identity_residuals",
    "check_singular_part_1d", "singular_part_2d", "check_singular_part_2d", "jump_sequence",
    "decreasing",
]
