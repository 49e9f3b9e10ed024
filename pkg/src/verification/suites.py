"""
Verification suites run by `lattice_green.py verify`.

Each suite evaluates a fixed list of cases in a fixed order and returns a SuiteReport;
nothing here is random, so two runs print identical residuals.
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from src.kernel.errors import RegionError
from src.kernel.resolvent import (
    REPRESENTATIONS,
    diag_p0,
    diag_p0_literal_factor,
    green_1d,
    green_1d_threshold0,
    green_1d_threshold4,
    green_2d_embedded,
    green_2d_endpoint,
    green_2d_recurrence,
    green_laurent,
    green_laurent_2d,
    helmholtz_residual,
)
from src.utils.console import log_info
from src.verification.identity_checks import (
    check_binomial_convolution,
    check_singular_part_1d,
    check_threshold4_shell_identities,
    decreasing,
    endpoint_identity_residuals,
    jump_sequence,
)
from src.verification.oracles import (
    WalkConfig,
    laplace_bessel,
    laplace_closed_1d,
    quadrature_torus,
    walk_distribution,
    walk_expectation,
    walk_expectation_resolvent,
)


@dataclass(frozen=True)
class SuiteCase:
    label: str
    residual: float
    tolerance: float
    passed: bool


@dataclass
class SuiteReport:
    name: str
    cases: List[SuiteCase] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(case.passed for case in self.cases)

    @property
    def failures(self) -> List[SuiteCase]:
        return [case for case in self.cases if not case.passed]

    def record(self, label: str, residual: float, tolerance: float) -> None:
        self.cases.append(SuiteCase(label, float(residual), float(tolerance), bool(residual <= tolerance)))

    def expect(self, label: str, ok: bool) -> None:
        """Record an exact check: residual 0 when it holds, 1 otherwise."""
        self.cases.append(SuiteCase(label, 0.0 if ok else 1.0, 0.0, bool(ok)))


def _grid(radius: int, dim: int) -> Iterable[Tuple[int, ...]]:
    return itertools.product(range(-radius, radius + 1), repeat=dim)


def _memo(evaluator: Callable[[complex, object], object]) -> Callable[[complex, object], complex]:
    cache: Dict[Tuple[complex, Tuple[int, ...]], complex] = {}

    def value(z: complex, point) -> complex:
        key = (z, tuple(point.coords))
        if key not in cache:
            result = evaluator(z, point)
            cache[key] = complex(getattr(result, "value", result))
        return cache[key]

    return value


# --- helmholtz ---

HELMHOLTZ_CASES_1D = [
    ("closed1d", -2.0, lambda z, p: green_1d(z, p)),
    ("closed1d", 5.0 + 1.0j, lambda z, p: green_1d(z, p)),
    ("thresh0-1d", -1.0, lambda z, p: green_1d_threshold0(z, p)),
    ("thresh4-1d", 5.0, lambda z, p: green_1d_threshold4(z, p)),
]

HELMHOLTZ_CASES_2D = [
    ("laurent2d", -4.0, lambda z, p: green_laurent_2d(z, p)),
    ("laurent", -4.0, lambda z, p: green_laurent(2, z, p)),
    ("endpoint2d", -0.5, lambda z, p: green_2d_endpoint(z, p)),
    ("recurrence2d", -0.5, lambda z, p: green_2d_recurrence(z, p)),
    ("embedded2d", 4.0 + 0.5j, lambda z, p: green_2d_embedded(z, p)),
]


def suite_helmholtz(tol: float = 1e-9, radius: int = 6) -> SuiteReport:
    """(2d - z)G(n) - Σ neighbours = δ₀[n] for every representation inside its region."""
    report = SuiteReport("helmholtz")
    for name, z, evaluator in HELMHOLTZ_CASES_1D:
        cached = _memo(evaluator)
        for (n,) in _grid(radius, 1):
            residual = helmholtz_residual(cached, z, (n,)) - (1.0 if n == 0 else 0.0)
            report.record(f"{name} z={z} n={n}", abs(residual), tol)
    for name, z, evaluator in HELMHOLTZ_CASES_2D:
        log_info(f"helmholtz: {name} at z={z}")
        cached = _memo(evaluator)
        for n in _grid(radius, 2):
            residual = helmholtz_residual(cached, z, n) - (1.0 if n == (0, 0) else 0.0)
            report.record(f"{name} z={z} n={n}", abs(residual), tol)
    return report


# --- oracle ---

ORACLE_POINTS_1D = [-2.0, -0.5, 4.5, 6.0, 2.0 + 1.0j, 1.0 - 0.5j, 5.0 + 2.0j, -1.0 + 1.0j, 3.0 + 3.0j, 9.0]
ORACLE_POINTS_2D = [-4.0, -0.5, -1.0 + 1.0j, 4.0 + 0.5j, 4.0 - 0.5j, 2.0 + 1.0j, 6.0 + 1.0j, 9.0, 10.0, 8.5 + 0.5j]
ORACLE_N_1D = [(0,), (1,), (-2,), (3,), (4,)]
ORACLE_N_2D = [(0, 0), (1, 0), (2, 1), (-3, 3), (4, 2)]


def suite_oracle(tol: float = 1e-9) -> SuiteReport:
    """Every representation covering z against torus quadrature, |rep - quad| <= tol·max(1, |quad|)."""
    report = SuiteReport("oracle")
    quad_tol = min(1e-12, tol * 1e-2)
    for d, points, ns in ((1, ORACLE_POINTS_1D, ORACLE_N_1D), (2, ORACLE_POINTS_2D, ORACLE_N_2D)):
        for z in points:
            for n in ns:
                reference = quadrature_torus(d, z, n, tol=quad_tol).value
                for name, evaluator in REPRESENTATIONS.items():
                    try:
                        value = evaluator(d, z, n, quad_tol).value
                    except (RegionError, ValueError):
                        continue
                    residual = abs(value - reference) / max(1.0, abs(reference))
                    report.record(f"{name} d={d} z={z} n={n}", residual, tol)
    return report


# --- overlap ---

def suite_overlap(tol: float = 1e-10, radius: int = 6) -> SuiteReport:
    """Pairs of representations on the regions where both converge."""
    report = SuiteReport("overlap")
    for n1 in range(radius + 1):
        for n2 in range(n1 + 1):
            laurent = green_laurent_2d(-0.5, (n1, n2)).value
            endpoint = green_2d_endpoint(-0.5, (n1, n2)).value
            report.record(f"laurent2d vs endpoint2d z=-0.5 n={(n1, n2)}", abs(laurent - endpoint), tol)
    for z in (-0.5, 2.0 + 1.0j):
        for n1 in range(radius + 1):
            for n2 in range(n1 + 1):
                endpoint = green_2d_endpoint(z, (n1, n2)).value
                recurrence = green_2d_recurrence(z, (n1, n2)).value
                report.record(f"endpoint2d vs recurrence2d z={z} n={(n1, n2)}", abs(endpoint - recurrence), tol)
    for n in range(radius + 1):
        report.record(f"closed1d vs thresh0-1d z=-1 n={n}",
                      abs(green_1d(-1.0, n).value - green_1d_threshold0(-1.0, n).value), tol)
        for z in (5.0, 5.0 + 1.0j):
            report.record(f"closed1d vs thresh4-1d z={z} n={n}",
                          abs(green_1d(z, n).value - green_1d_threshold4(z, n).value), tol)
    z = 4.0 + 0.5j
    for m in range(5):
        diagonal = (-1) ** m * green_2d_embedded(z, (m, m)).value
        report.record(f"diag threshold4 vs embedded2d m={m}", abs(diag_p0(z, m, "threshold4") - diagonal), 1e-9)
        literal_gap = abs(diag_p0_literal_factor(z, m) - diagonal)
        report.cases.append(SuiteCase(f"literal ((z-4)/16) factor differs m={m}", literal_gap, 1e-6,
                                      bool(literal_gap > 1e-6)))
    return report


# --- identities ---

ENDPOINT_W_GRID = [-0.3, 0.0, 0.2, 0.3, 0.5]


def suite_identities(tol: float = 1e-9) -> SuiteReport:
    report = SuiteReport("identities")
    for k in range(11):
        for n1, n2 in _grid(6, 2):
            report.expect(f"binomial convolution k={k} n={(n1, n2)}", check_binomial_convolution(k, (n1, n2)))
    for k in range(9):
        for n1, n2 in _grid(8, 2):
            report.expect(f"shell identities k={k} n={(n1, n2)}", check_threshold4_shell_identities(k, (n1, n2)))
    for w in ENDPOINT_W_GRID:
        for m in range(4):
            for l in range(4):
                first, second = endpoint_identity_residuals(w, m, l)
                report.record(f"endpoint identity 1 w={w} m={m} l={l}", first, tol)
                report.record(f"endpoint identity 2 w={w} m={m} l={l}", second, tol)
    for n in range(5):
        report.record(f"1d singular part q=0 z=-1 n={n}", check_singular_part_1d(-1.0, n, 0), 1e-12)
        report.record(f"1d singular part q=1 z=5 n={n}", check_singular_part_1d(5.0, n, 1), 1e-12)
    for x, q, n in ((0.5, 0, (0, 0)), (0.5, 0, (1, 0)), (7.5, 2, (1, 1)), (7.5, 2, (0, 0))):
        raw = jump_sequence(x, n, q, [1e-2, 1e-3], subtract=False)
        cut = jump_sequence(x, n, q, [1e-2, 5e-3, 2.5e-3, 1.25e-3, 1e-3, 5e-4, 2.5e-4, 1e-4])
        ratio = raw[1] / cut[4] if cut[4] > 0 else math.inf
        report.cases.append(SuiteCase(f"cut reduction q={q} x={x} n={n} delta=1e-3", 1.0 / ratio, 0.1,
                                      bool(ratio >= 10.0)))
        report.expect(f"cut jump decreasing q={q} x={x} n={n}", decreasing(cut))
    return report


# --- walk ---

def suite_walk(tol: float = 1e-10) -> SuiteReport:
    report = SuiteReport("walk")
    for d in (1, 2, 3):
        for k in range(13):
            report.expect(f"sum P(X_k = n) = 1 d={d} k={k}", sum(walk_distribution(d, k).values()) == 1)
    for d in (1, 2):
        for eps in (0.25, 0.5, 0.75):
            cfg = WalkConfig.for_tolerance(d, eps, tol * 1e-2)
            for n in _grid(3, d):
                truncated = walk_expectation(cfg, n)
                closed = walk_expectation_resolvent(d, eps, n)
                report.record(f"walk expectation d={d} eps={eps} n={n}", abs(truncated - closed), tol + cfg.tail_bound)
    laplace_points = [(1, -1.0, (0,)), (1, -2.0, (2,)), (1, -0.5 + 1.0j, (1,)), (1, -3.0 - 2.0j, (3,)),
                      (1, -1.5 + 0.5j, (0,)), (2, -1.0, (1, 1)), (2, -4.0, (0, 0)), (2, -0.5 + 0.5j, (1, 0)),
                      (2, -2.0 + 3.0j, (2, 1)), (2, -3.0, (2, 0))]
    for d, z, n in laplace_points:
        laplace = laplace_bessel(d, z, n, tol=1e-11).value
        reference = quadrature_torus(d, z, n, tol=1e-12).value
        report.record(f"bessel-laplace vs quadrature d={d} z={z} n={n}", abs(laplace - reference), 1e-8)
    for nu in range(5):
        laplace = laplace_bessel(1, -2.0, (nu,), tol=1e-13).value
        report.record(f"bessel-laplace vs closed transform nu={nu}",
                      abs(laplace - laplace_closed_1d(4.0, 2.0, nu)), tol)
    return report


SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "helmholtz": suite_helmholtz,
    "oracle": suite_oracle,
    "overlap": suite_overlap,
    "identities": suite_identities,
    "walk": suite_walk,
}


def run_suite(name: str, tol: Optional[float] = None) -> SuiteReport:
    """Run one suite by name; tol overrides the suite's default tolerance."""
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {list(SUITES)}") from None
    log_info(f"running suite {name}")
    return suite() if tol is None else suite(tol=tol)
