"""
Special Functions Test: HalfInt, Pochhammer, digamma and principal branches

This test validates that:
1. HalfInt arithmetic stays exact
2. Pochhammer symbols and harmonic sums are exact rationals
3. Digamma matches scipy at integers and half-integers (including ψ(½-m) = ψ(½+m))
4. Branch functions reject their cuts and S(z) has the documented sign
5. Recurrences and round trips hold across whole grids, not just single points

Run: python tests/test_special_functions.py
"""

import cmath
import math
import sys
from fractions import Fraction
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from scipy.special import digamma as scipy_digamma  # noqa: E402

from src.kernel.errors import RegionError  # noqa: E402
from src.kernel.special_functions import (  # noqa: E402
    EULER_GAMMA,
    HalfInt,
    digamma,
    digamma_table,
    harmonic,
    harmonic_odd,
    ln_factorial,
    pochhammer,
    pochhammer_f,
    principal_log,
    principal_sqrt,
    resolvent_sqrt_1d,
)


def test_halfint_arithmetic():
    """HalfInt sums, differences and flags."""
    print("🔢 Testing HalfInt arithmetic...")
    half = HalfInt(1)
    assert half + 1 == HalfInt(3)
    assert 1 - half == HalfInt(1)
    assert half - HalfInt(3) == HalfInt(-2)
    assert -half == HalfInt(-1)
    assert HalfInt.of(Fraction(-3, 2)) == HalfInt(-3)
    assert HalfInt.of(2) == HalfInt(4)
    assert HalfInt(-4).is_nonpositive_integer
    assert not HalfInt(-3).is_nonpositive_integer
    assert HalfInt(1) < HalfInt(2)
    assert float(HalfInt(5)) == 2.5
    try:
        HalfInt.of(Fraction(1, 3))
        assert False, "1/3 is not a half-integer"
    except ValueError:
        pass
    print("  ✅ HalfInt is exact")


def test_pochhammer_exact():
    print("🔢 Testing exact Pochhammer symbols...")
    assert pochhammer(HalfInt(1), 3) == Fraction(15, 8)
    assert pochhammer(-2, 3) == 0
    assert pochhammer(Fraction(7, 3), 0) == 1
    assert pochhammer(1, 5) == 120
    try:
        pochhammer(1, -1)
        assert False, "negative length must be rejected"
    except ValueError:
        pass
    assert abs(pochhammer_f(0.5, 3) - 1.875) < 1e-15
    try:
        pochhammer_f(1e300, 3)
        assert False, "overflow must be reported"
    except OverflowError:
        pass
    print("  ✅ (½)_3 = 15/8, (-2)_3 = 0, overflow reported")


def test_harmonic_sums():
    print("🔢 Testing harmonic sums...")
    assert harmonic(4) == Fraction(25, 12)
    assert harmonic_odd(3) == Fraction(23, 15)
    assert harmonic_odd(0) == 0
    assert abs(ln_factorial(10) - math.log(3628800)) < 1e-12
    print("  ✅ H_4 = 25/12, odd harmonic sum to 5 = 23/15")


def test_digamma_matches_scipy():
    """ψ at integers and half-integers, both signs."""
    print("📈 Testing digamma against scipy...")
    assert abs(digamma(1) + EULER_GAMMA) < 1e-15
    assert abs(digamma(HalfInt(1)) - (-EULER_GAMMA - 2 * math.log(2))) < 1e-14
    for twice in (1, 3, 5, 9, 2, 4, 10, -1, -3, -7):
        x = twice / 2
        expected = float(scipy_digamma(x))
        got = digamma(HalfInt(twice))
        assert abs(got - expected) < 1e-12 * max(1.0, abs(expected)), (x, got, expected)
    # reflection at negative half-integers
    for m in range(1, 5):
        assert abs(digamma(HalfInt(1 - 2 * m)) - digamma(HalfInt(1 + 2 * m))) < 1e-14
    print("  ✅ digamma agrees with scipy, ψ(½-m) = ψ(½+m)")


def test_digamma_poles():
    print("📈 Testing digamma poles...")
    for bad in (0, -1, HalfInt(-4)):
        try:
            digamma(bad)
            assert False, f"pole at {bad} must raise"
        except RegionError:
            pass
    table = digamma_table(HalfInt(1), 6)
    for k, value in enumerate(table):
        assert abs(value - float(scipy_digamma(0.5 + k))) < 1e-13
    print("  ✅ poles raise RegionError, digamma_table follows the recurrence")


def test_branch_functions():
    print("🌿 Testing principal branches...")
    assert principal_sqrt(4.0) == 2.0
    assert abs(principal_log(-1.0 + 1e-300j).imag - math.pi) < 1e-12
    for fn in (principal_sqrt, principal_log):
        for bad in (0.0, -1.0):
            try:
                fn(bad)
                assert False, f"{fn.__name__} must reject {bad}"
            except RegionError:
                pass
    print("  ✅ cuts are rejected")


def test_pochhammer_recurrence():
    """(q)_{j+1} = (q)_j·(q+j), exactly, for j up to 50."""
    print("🔢 Testing the Pochhammer recurrence...")
    for q in (Fraction(1, 2), Fraction(-7, 2), Fraction(2, 3), Fraction(3), Fraction(-4), Fraction(0)):
        for j in range(51):
            assert pochhammer(q, j + 1) == pochhammer(q, j) * (q + j), (q, j)
    print("  ✅ (q)_{j+1} = (q)_j (q+j) for j <= 50")


def test_digamma_recurrence():
    print("📈 Testing ψ(x+1) = ψ(x) + 1/x at half-integers...")
    for m in range(31):
        x = m + 0.5
        gap = digamma(HalfInt(2 * m + 3)) - digamma(HalfInt(2 * m + 1)) - 1.0 / x
        assert abs(gap) < 1e-14, (m, gap)
    print("  ✅ recurrence holds for m <= 30")


def test_branch_round_trips():
    """principal_sqrt(w)² = w and principal_log(exp w) = w for |Im w| < π."""
    print("🌿 Testing branch round trips...")
    re_grid = [-2.5, -1.0, -0.1, 0.0, 0.3, 1.0, 4.0]
    im_grid = [-3.1, -2.0, -0.5, 0.25, 1.0, 2.5, 3.1]
    for x in re_grid:
        for y in im_grid:
            w = complex(x, y)
            root = principal_sqrt(w)
            assert root.real > 0
            assert abs(root * root - w) < 1e-13 * max(1.0, abs(w)), w
            assert abs(principal_log(cmath.exp(w)) - w) < 1e-13, w
    for x in (0.5, 2.0, 9.0):
        assert abs(principal_sqrt(x) ** 2 - x) < 1e-13 * x
    print("  ✅ √w squared and log(exp w) return w")


def test_resolvent_sqrt():
    """S(z) = √(-z)·√(4-z): positive for z < 0, -√(z(z-4)) on (4, ∞)."""
    print("🌿 Testing S(z)...")
    assert abs(resolvent_sqrt_1d(-2.0) - 2 * math.sqrt(3)) < 1e-14
    assert abs(resolvent_sqrt_1d(5.0) + math.sqrt(5)) < 1e-14
    # continuous across (4, ∞)
    assert abs(resolvent_sqrt_1d(5.0 + 1e-10j) + math.sqrt(5)) < 1e-8
    assert abs(resolvent_sqrt_1d(5.0 - 1e-10j) + math.sqrt(5)) < 1e-8
    for bad in (0.0, 2.0, 4.0):
        try:
            resolvent_sqrt_1d(bad)
            assert False, f"S({bad}) is on the cut"
        except RegionError:
            pass
    # Schwarz reflection off [0, 4]
    for x in (-6.0, -1.0, -0.25, 0.5, 2.0, 3.75, 4.5, 7.0, 12.0):
        for y in (0.01, 0.5, 2.0, 6.0):
            z = complex(x, y)
            gap = abs(resolvent_sqrt_1d(z.conjugate()) - resolvent_sqrt_1d(z).conjugate())
            assert gap < 1e-14 * max(1.0, abs(z)), (z, gap)
    for x in (-3.0, 5.0, 10.0):
        assert resolvent_sqrt_1d(x).imag == 0.0
    print("  ✅ S(-2) = 2√3, S(5) = -√5, S(z̄) = conj S(z), [0, 4] rejected")


def main():
    """Run all special function tests."""
    print("=" * 60)
    print("lattice-green Special Functions Test Suite")
    print("=" * 60)
    print()

    tests = [
        test_halfint_arithmetic,
        test_pochhammer_exact,
        test_harmonic_sums,
        test_digamma_matches_scipy,
        test_digamma_poles,
        test_pochhammer_recurrence,
        test_digamma_recurrence,
        test_branch_functions,
        test_branch_round_trips,
        test_resolvent_sqrt,
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
