"""
Series evaluators for ₚF_q and the Appell-Lauricella functions F_B^{(d)}, F_C^{(d)}.

Parameters are HalfInt, so termination (an upper parameter that is a nonpositive
integer) is decided exactly rather than by floating comparison. Multi-index series
are summed by total-degree shells; each shell is a convolution of per-variable
coefficient tables kept in the complex log domain, which keeps factorial-sized
intermediate magnitudes out of double-precision overflow.
"""

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from src import config
from src.kernel.errors import ConvergenceError, RegionError
from src.kernel.special_functions import HalfInt, pochhammer_f
from src.utils.console import log_warning

# Consecutive sub-tolerance terms (or shells) required before a series is cut off.
STOP_RUN = 3

NEG_INF = complex(-np.inf, 0.0)


@dataclass(frozen=True)
class SeriesValue:
    value: complex
    terms_used: int
    err_estimate: float
    converged: bool


@dataclass(frozen=True)
class PFQParams:
    """
    Upper (a₁..a_p) and lower (b₁..b_q) parameters of a generalized hypergeometric series.
    """

    upper: Tuple[HalfInt, ...]
    lower: Tuple[HalfInt, ...]

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(HalfInt.of(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(HalfInt.of(b) for b in self.lower))
        for b in self.lower:
            if b.is_nonpositive_integer:
                raise ValueError(f"lower parameter {b} is a pole of the series")

    @classmethod
    def of(cls, upper: Sequence, lower: Sequence) -> "PFQParams":
        return cls(tuple(upper), tuple(lower))

    @property
    def terminates(self) -> bool:
        return any(a.is_nonpositive_integer for a in self.upper)

    @property
    def degree(self) -> Optional[int]:
        """Index of the last nonzero term for a terminating series, else None."""
        stops = [-(a.twice_value // 2) for a in self.upper if a.is_nonpositive_integer]
        return min(stops) if stops else None


@dataclass(frozen=True)
class LauricellaParams:
    """
    Parameters of F_B^{(d)} (per-variable a, b; shared c) or F_C^{(d)}
    (shared a, b; per-variable c). Use type_b / type_c to build.
    """

    kind: str
    a: Tuple[HalfInt, ...]
    b: Tuple[HalfInt, ...]
    c: Tuple[HalfInt, ...]

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, tuple(HalfInt.of(x) for x in getattr(self, name)))
        if self.kind == "B":
            if len(self.a) != len(self.b) or len(self.c) != 1 or not self.a:
                raise ValueError("F_B needs equal-length a, b sequences and a single c")
        elif self.kind == "C":
            if len(self.a) != 1 or len(self.b) != 1 or not self.c:
                raise ValueError("F_C needs single a, b and a c-sequence")
        else:
            raise ValueError(f"unknown Lauricella kind {self.kind!r}")
        for c in self.c:
            if c.is_nonpositive_integer:
                raise ValueError(f"c-parameter {c} is a pole of the series")

    @classmethod
    def type_b(cls, a: Sequence, b: Sequence, c) -> "LauricellaParams":
        return cls("B", tuple(a), tuple(b), (c,))

    @classmethod
    def type_c(cls, a, b, c: Sequence) -> "LauricellaParams":
        return cls("C", (a,), (b,), tuple(c))

    @property
    def dim(self) -> int:
        return len(self.a) if self.kind == "B" else len(self.c)


def eval_pfq(
    p: PFQParams,
    w: complex,
    tol: float = config.DEFAULT_TOL,
    max_terms: int = config.MAX_SERIES_TERMS,
) -> SeriesValue:
    """
    Sum ₚF_q(a; b; w) by the term-ratio recurrence.

    Terminating series are summed in full (degree+1 terms) for any w. Otherwise the
    sum stops once STOP_RUN consecutive terms fall below tol·|partial sum|.

    Raises:
    -------
    RegionError
        Non-terminating series outside its disk of convergence.
    ConvergenceError
        max_terms reached before the stopping rule fired.
    """
    w = complex(w)
    upper = [float(a) for a in p.upper]
    lower = [float(b) for b in p.lower]

    def ratio(k: int) -> complex:
        num = 1.0
        for a in upper:
            num *= a + k
        den = float(k + 1)
        for b in lower:
            den *= b + k
        return num / den * w

    if p.terminates:
        total = term = complex(1.0)
        degree = p.degree
        for k in range(degree):
            term *= ratio(k)
            total += term
        return SeriesValue(total, degree + 1, 0.0, True)

    if w == 0:
        return SeriesValue(complex(1.0), 1, 0.0, True)
    if len(upper) > len(lower) + 1:
        raise RegionError(f"{len(upper)}F{len(lower)} diverges for every w != 0")
    if len(upper) == len(lower) + 1 and abs(w) >= 1.0:
        raise RegionError(f"|w| = {abs(w):.6g} >= 1 outside the disk of convergence")

    total = term = complex(1.0)
    quiet = 0
    for k in range(max_terms):
        term *= ratio(k)
        total += term
        if abs(term) <= tol * abs(total):
            quiet += 1
            if quiet >= STOP_RUN:
                return SeriesValue(total, k + 2, abs(term), True)
        else:
            quiet = 0
    raise ConvergenceError(
        f"pFq did not converge within {max_terms} terms", partial=total,
        err_estimate=abs(term), terms_used=max_terms,
    )


def pfq_exact(upper: Sequence, lower: Sequence, w: Fraction) -> Fraction:
    """
    Exact value of a terminating ₚF_q at rational w.

    Raises ValueError when no upper parameter is a nonpositive integer.
    """
    p = PFQParams.of(upper, lower)
    if not p.terminates:
        raise ValueError(f"series with upper parameters {p.upper} does not terminate")
    w = Fraction(w)
    ups = [a.as_fraction() for a in p.upper]
    lows = [b.as_fraction() for b in p.lower]
    total = term = Fraction(1)
    for k in range(p.degree):
        num = Fraction(1)
        for a in ups:
            num *= a + k
        den = Fraction(k + 1)
        for b in lows:
            den *= b + k
        term = term * num / den * w
        total += term
    return total


def _log_ratio(r: complex) -> complex:
    if r == 0:
        return NEG_INF
    return cmath.log(r)


def _log_dot(left: np.ndarray, right: np.ndarray) -> complex:
    """log Σ exp(left + right), stable for complex log-magnitudes."""
    combined = left + right
    finite = np.isfinite(combined.real)
    if not finite.any():
        return NEG_INF
    values = combined[finite]
    peak = values.real.max()
    total = np.exp(values - peak).sum()
    if total == 0:
        return NEG_INF
    return cmath.log(total) + peak


class ShellConvolution:
    """
    Log-domain coefficients of Π_j f_j(α_j) summed over |α| = s, one shell at a time.

    Parameters:
    -----------
    log_ratios : sequence of callables
        log_ratios[j](α) = log(f_j[α+1] / f_j[α]); NEG_INF marks a zero coefficient.
    log_initial : sequence of complex
        log f_j[0] for every variable.
    capacity : int
        Highest shell that may be requested.
    """

    def __init__(
        self,
        log_ratios: Sequence[Callable[[int], complex]],
        log_initial: Sequence[complex],
        capacity: int,
    ):
        self.dim = len(log_ratios)
        self.capacity = capacity
        self._ratios = list(log_ratios)
        self._initial = [complex(v) for v in log_initial]
        self._tables = np.full((self.dim, capacity + 1), NEG_INF, dtype=complex)
        self._partial = np.full((self.dim, capacity + 1), NEG_INF, dtype=complex)
        self.degree = -1

    def advance(self) -> complex:
        """Extend by one shell and return its log-coefficient."""
        s = self.degree + 1
        if s > self.capacity:
            raise ConvergenceError(f"shell capacity {self.capacity} exhausted")
        for j in range(self.dim):
            if s == 0:
                self._tables[j, 0] = self._initial[j]
            else:
                prev = self._tables[j, s - 1]
                self._tables[j, s] = NEG_INF if np.isinf(prev.real) else prev + self._ratios[j](s - 1)
        self._partial[0, s] = self._tables[0, s]
        for j in range(1, self.dim):
            self._partial[j, s] = _log_dot(self._partial[j - 1, : s + 1], self._tables[j, s::-1])
        self.degree = s
        return complex(self._partial[self.dim - 1, s])


def sum_shells(
    shells: Callable[[int], complex],
    tol: float,
    max_degree: int,
    last_degree: Optional[int] = None,
    label: str = "series",
) -> SeriesValue:
    """
    Accumulate shell values shells(0), shells(1), ...

    Stops after STOP_RUN consecutive shells below tol·|sum|, or after last_degree for a
    series known to be finite.
    """
    total = complex(0.0)
    quiet = 0
    shell = complex(0.0)
    limit = max_degree if last_degree is None else min(last_degree, max_degree)
    for s in range(limit + 1):
        shell = shells(s)
        total += shell
        if last_degree is not None:
            continue
        if abs(shell) <= tol * abs(total):
            quiet += 1
            if quiet >= STOP_RUN:
                return SeriesValue(total, s + 1, abs(shell), True)
        else:
            quiet = 0
    if last_degree is not None and last_degree <= max_degree:
        return SeriesValue(total, last_degree + 1, 0.0, True)
    log_warning(f"{label}: stopped at total degree {max_degree} without meeting tol={tol:g}")
    raise ConvergenceError(
        f"{label} exceeded max total degree {max_degree}", partial=total,
        err_estimate=abs(shell), terms_used=max_degree + 1,
    )


def _terminal_degree(params: Sequence[HalfInt]) -> Optional[int]:
    stops = [-(x.twice_value // 2) for x in params if x.is_nonpositive_integer]
    return min(stops) if stops else None


def eval_lauricella_fb(
    p: LauricellaParams,
    w: Sequence[complex],
    tol: float = config.DEFAULT_TOL,
    max_total_degree: int = config.MAX_TOTAL_DEGREE,
) -> SeriesValue:
    """
    F_B^{(d)}(a; b; c; w) = Σ_α Π_j (a_j)_{α_j}(b_j)_{α_j} w_j^{α_j}/α_j! / (c)_{|α|}.
    """
    if p.kind != "B":
        raise ValueError("eval_lauricella_fb needs type-B parameters")
    w = [complex(x) for x in w]
    if len(w) != p.dim:
        raise ValueError(f"expected {p.dim} arguments, got {len(w)}")

    per_index = [_terminal_degree((a, b)) for a, b in zip(p.a, p.b)]
    for deg, wj in zip(per_index, w):
        if deg is None and wj != 0 and abs(wj) >= 1.0:
            raise RegionError(f"F_B needs |w_j| < 1, got |w| = {abs(wj):.6g}")
    last = sum(per_index) if all(d is not None for d in per_index) else None

    ratios = []
    for a, b, wj in zip(p.a, p.b, w):
        af, bf = float(a), float(b)
        ratios.append(lambda k, af=af, bf=bf, wj=wj: _log_ratio((af + k) * (bf + k) * wj / (k + 1)))
    conv = ShellConvolution(ratios, [0j] * p.dim, max_total_degree)
    cf = float(p.c[0])
    log_c = [0j]

    def shell(s: int) -> complex:
        if s > 0:
            log_c.append(log_c[-1] + cmath.log(cf + s - 1))
        coeff = conv.advance()
        if np.isinf(coeff.real):
            return complex(0.0)
        return cmath.exp(coeff - log_c[s])

    return sum_shells(shell, tol, max_total_degree, last, label="F_B")


def eval_lauricella_fc(
    p: LauricellaParams,
    w: Sequence[complex],
    tol: float = config.DEFAULT_TOL,
    max_total_degree: int = config.MAX_TOTAL_DEGREE,
) -> SeriesValue:
    """
    F_C^{(d)}(a, b; c; w) = Σ_α (a)_{|α|}(b)_{|α|} Π_j w_j^{α_j}/((c_j)_{α_j} α_j!).

    The convergence domain is enforced through the sufficient condition Σ√|w_j| < 1.
    """
    if p.kind != "C":
        raise ValueError("eval_lauricella_fc needs type-C parameters")
    w = [complex(x) for x in w]
    if len(w) != p.dim:
        raise ValueError(f"expected {p.dim} arguments, got {len(w)}")

    last = _terminal_degree((p.a[0], p.b[0]))
    if last is None and sum(abs(x) ** 0.5 for x in w) >= 1.0:
        raise RegionError("F_C needs Σ sqrt|w_j| < 1")

    ratios = []
    for c, wj in zip(p.c, w):
        cf = float(c)
        ratios.append(lambda k, cf=cf, wj=wj: _log_ratio(wj / ((cf + k) * (k + 1))))
    conv = ShellConvolution(ratios, [0j] * p.dim, max_total_degree)
    af, bf = float(p.a[0]), float(p.b[0])
    log_ab = [0j]

    def shell(s: int) -> complex:
        if s > 0:
            log_ab.append(log_ab[-1] + _log_ratio((af + s - 1) * (bf + s - 1)))
        coeff = conv.advance()
        if np.isinf(coeff.real) or np.isinf(log_ab[s].real):
            return complex(0.0)
        return cmath.exp(coeff + log_ab[s])

    return sum_shells(shell, tol, max_total_degree, last, label="F_C")


def brute_force_multisum(p: LauricellaParams, w: Sequence[complex], max_index: int) -> complex:
    """Row-by-row sum over the box 0 <= α_j <= max_index, straight from the definition."""
    w = [complex(x) for x in w]
    total = complex(0.0)
    for alpha in itertools.product(range(max_index + 1), repeat=p.dim):
        size = sum(alpha)
        term = complex(1.0)
        if p.kind == "B":
            for a, b, wj, k in zip(p.a, p.b, w, alpha):
                term *= pochhammer_f(float(a), k) * pochhammer_f(float(b), k) * wj ** k / pochhammer_f(1.0, k)
            term /= pochhammer_f(float(p.c[0]), size)
        else:
            term *= pochhammer_f(float(p.a[0]), size) * pochhammer_f(float(p.b[0]), size)
            for c, wj, k in zip(p.c, w, alpha):
                term *= wj ** k / (pochhammer_f(float(c), k) * pochhammer_f(1.0, k))
        total += term
    return total


def pfq(upper: Sequence, lower: Sequence, w: complex, tol: float = config.DEFAULT_TOL) -> complex:
    """Shorthand used inside the resolvent formulas: value of ₚF_q only."""
    return eval_pfq(PFQParams.of(upper, lower), w, tol).value


__all__: List[str] = [
    "SeriesValue", "PFQParams", "LauricellaParams", "ShellConvolution", "NEG_INF",
    "eval_pfq", "pfq_exact", "pfq", "eval_lauricella_fb", "eval_lauricella_fc",
    "brute_force_multisum", "sum_shells",
]
