"""
Oracles Test: quadrature, Bessel-Laplace, the killed walk and its renormalized limit

This test validates that:
1. Exact walk probabilities are correct and sum to 1
2. The truncated walk expectation matches (2d/(1-ε)) G(-2dε/(1-ε), n)
3. Torus quadrature and the Bessel-Laplace integral reproduce closed values
4. The renormalized limits land on -|n| (d = 1) and 4E[n] + 5 log 2/π (d = 2)

Run: python tests/test_oracles.py
"""

import math
import sys
from fractions import Fraction
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from scipy.special import iv  # noqa: E402

from src.kernel.errors import ConvergenceError, RegionError  # noqa: E402
from src.kernel.resolvent import green_1d  # noqa: E402
from src.verification.oracles import (  # noqa: E402
    WalkConfig,
    bessel_i,
    laplace_bessel,
    laplace_closed_1d,
    quadrature_torus,
    renormalized_limit,
    renormalized_target,
    walk_distribution,
    walk_expectation,
    walk_expectation_resolvent,
    walk_prob_exact,
)

SMALL_EPS = [1e-4, 5e-5, 2.5e-5, 1.25e-5, 6.25e-6]


def test_walk_config():
    print("🚶 Testing WalkConfig...")
    cfg = WalkConfig.for_tolerance(2, 0.5, 1e-6)
    assert cfg.kmax == 20
    assert cfg.tail_bound <= 1e-6 < WalkConfig(2, 0.5, 19).tail_bound
    for args in ((0, 0.5, 3), (2, 0.0, 3), (2, 1.0, 3), (2, 0.5, -1)):
        try:
            WalkConfig(*args)
            assert False, f"{args} must be rejected"
        except ValueError:
            pass
    print("  ✅ kmax = 20 for ε = ½ at 1e-6")


def test_walk_probabilities():
    print("🚶 Testing exact walk probabilities...")
    assert walk_prob_exact(1, 2, 0) == Fraction(1, 2)
    assert walk_prob_exact(2, 2, (0, 0)) == Fraction(1, 4)
    assert walk_prob_exact(2, 1, (1, 0)) == Fraction(1, 4)
    assert walk_prob_exact(2, 3, (0, 0)) == 0
    assert walk_prob_exact(1, 2, 3) == 0
    for d in (1, 2, 3):
        for k in range(7):
            assert sum(walk_distribution(d, k).values()) == 1, (d, k)
    print("  ✅ P(X_k = n) exact, Σ_n P = 1")


def test_walk_matches_resolvent():
    print("🚶 Testing the walk expectation against the resolvent...")
    for d, eps in ((2, 0.5), (1, 0.25), (2, 0.75)):
        cfg = WalkConfig.for_tolerance(d, eps, 1e-12)
        for n in ((0,) * d, (1,) + (0,) * (d - 1), (2,) + (-1,) * (d - 1)):
            truncated = walk_expectation(cfg, n)
            closed = walk_expectation_resolvent(d, eps, n)
            assert abs(truncated - closed) < 1e-10, (d, eps, n, truncated, closed)
    print("  ✅ Σ (1-ε)^k P(X_k = n) = (2d/(1-ε)) G")


def test_quadrature():
    print("📏 Testing torus quadrature...")
    sqrt3 = math.sqrt(3)
    result = quadrature_torus(1, -2.0, (1,))
    assert result.representation == "quadrature"
    assert abs(result.value - (2 - sqrt3) / (2 * sqrt3)) < 1e-12
    assert abs(quadrature_torus(1, -2.0, (0,), N_per_dim=8).value - 1 / (2 * sqrt3)) < 1e-12
    print("  ✅ d=1 closed values reproduced")


def test_quadrature_errors():
    print("🚧 Testing quadrature errors...")
    try:
        quadrature_torus(2, 3.0, (0, 0))
        assert False, "z on the spectrum"
    except RegionError:
        pass
    for call in (lambda: quadrature_torus(4, -1.0, (0, 0, 0, 0)),
                 lambda: quadrature_torus(1, -1.0, (0,), N_per_dim=100)):
        try:
            call()
            assert False, "must raise ValueError"
        except ValueError:
            pass
    try:
        quadrature_torus(1, 2.0 + 1e-6j, (0,))
        assert False, "z this close to the spectrum cannot converge"
    except ConvergenceError as e:
        assert e.partial is not None
    print("  ✅ spectrum, d > 3, bad grid and grid cap")


def test_bessel_i():
    print("〰️  Testing the Bessel series...")
    for nu in range(4):
        for x in (0.5, 3.0, 20.0):
            expected = float(iv(nu, x))
            assert abs(bessel_i(nu, x) - expected) < 1e-12 * expected, (nu, x)
    assert abs(bessel_i(1, -2.0) + float(iv(1, 2.0))) < 1e-13
    assert bessel_i(0, 0.0) == 1.0 and bessel_i(2, 0.0) == 0.0
    print("  ✅ agrees with scipy.special.iv")


def test_laplace_bessel():
    print("〰️  Testing the Bessel-Laplace integral...")
    value = laplace_bessel(2, -1.0, (1, 1))
    assert value.representation == "bessel-laplace"
    reference = quadrature_torus(2, -1.0, (1, 1)).value
    assert abs(value.value - reference) < 1e-8
    shifted = laplace_bessel(1, -1.0 + 0.5j, (2,))
    assert abs(shifted.value - green_1d(-1.0 + 0.5j, 2).value) < 1e-8
    try:
        laplace_bessel(2, 0.5, (0, 0))
        assert False, "Re z >= 0 must raise"
    except RegionError:
        pass
    print("  ✅ matches quadrature and the d=1 closed form")


def test_laplace_closed_1d():
    """s = 2 - z with ω = 2: z = -2 corresponds to s = 4."""
    print("〰️  Testing the closed Laplace transform...")
    for nu in range(5):
        assert abs(laplace_closed_1d(4.0, 2.0, nu) - green_1d(-2.0, nu).value) < 1e-14
    try:
        laplace_closed_1d(1.0, 2.0, 0)
        assert False, "Re s <= |ω| must raise"
    except RegionError:
        pass
    print("  ✅ equals G(-2, ν)")


def test_renormalized_limits():
    print("📉 Testing renormalized limits...")
    assert renormalized_target(1, (3,)) == -3.0
    assert abs(renormalized_limit(1, (1,), SMALL_EPS) + 1.0) < 1e-5
    assert abs(renormalized_limit(1, (0,), SMALL_EPS)) < 1e-5
    for n in ((1, 1), (0, 0), (2, 0)):
        limit = renormalized_limit(2, n, SMALL_EPS)
        target = renormalized_target(2, n)
        assert abs(limit - target) < 1e-5, (n, limit, target)
    assert abs(renormalized_target(2, (0, 0)) - 5 * math.log(2) / math.pi) < 1e-15
    try:
        renormalized_limit(3, (0, 0, 0), SMALL_EPS)
        assert False, "d = 3 has no renormalized limit"
    except ValueError:
        pass
    print("  ✅ d=1 -> -|n|, d=2 -> 4E[n] + 5 log 2/π")


def main():
    """Run all oracle tests."""
    print("=" * 60)
    print("lattice-green Oracles Test Suite")
    print("=" * 60)
    print()

    tests = [
        test_walk_config,
        test_walk_probabilities,
        test_walk_matches_resolvent,
        test_quadrature,
        test_quadrature_errors,
        test_bessel_i,
        test_laplace_bessel,
        test_laplace_closed_1d,
        test_renormalized_limits,
    ]
    try:
        for test in tests:
            test()
        print("=" * 60)
        print("✅ All tests passed!")
        print("=" * 60)
        return True
    except Exception as e:
        print(f"\n❌ Test failed with error: {e}")
        import traceback
        traceback.print_exc()
        return False


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
