"""
Resolvent Test: every representation of G(z, n)

This test validates that:
1. The d = 1 closed form and its threshold expansions agree with known values
2. The Laurent forms (shell sum, F_C form, d = 2 single sum) agree with each other
3. The d = 2 embedded, endpoint and recurrence forms match torus quadrature
4. The dispatcher picks the expected representation and rejects uncovered z
5. The Helmholtz stencil identity holds
6. G(z̄, n) = conj G(z, n) and Im G(z, 0) > 0 for Im z > 0

Run: python tests/test_resolvent.py
"""

import math
import sys
from fractions import Fraction
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.kernel.errors import RegionError  # noqa: E402
from src.kernel.resolvent import (  # noqa: E402
    LatticePoint,
    SpectralPoint,
    diag_p0,
    diag_p0_literal_factor,
    green_1d,
    green_1d_threshold0,
    green_1d_threshold4,
    green_2d_embedded,
    green_2d_endpoint,
    green_2d_recurrence,
    green_auto,
    green_laurent,
    green_laurent_2d,
    green_laurent_fc,
    helmholtz_residual,
    pochhammer_telescoping,
    reduce_symmetry,
)
from src.kernel.special_functions import HalfInt, pochhammer  # noqa: E402
from src.verification.oracles import quadrature_torus  # noqa: E402


def test_lattice_types():
    print("📍 Testing lattice and spectral types...")
    assert reduce_symmetry((-1, 3)).coords == (3, 1)
    assert LatticePoint.of(-2).coords == (-2,)
    assert LatticePoint((1, -2, 0)).norm1 == 3
    assert SpectralPoint(-4.0, 2).region == "outside_disk"
    assert SpectralPoint(4.0 + 0.5j, 2).region == "near_threshold:1"
    assert SpectralPoint(3.0, 1).on_spectrum
    assert not SpectralPoint(3.0 + 1e-3j, 1).on_spectrum
    print("  ✅ reduction and region labels")


def test_green_1d_closed_form():
    print("1️⃣  Testing the d=1 closed form...")
    sqrt3 = math.sqrt(3)
    assert abs(green_1d(-2.0, 0).value - 1 / (2 * sqrt3)) < 1e-15
    assert abs(green_1d(-2.0, 1).value - (2 - sqrt3) / (2 * sqrt3)) < 1e-15
    assert abs(green_1d(-2.0, -1).value - green_1d(-2.0, 1).value) < 1e-16
    # z = 8: S = -√32, G(8, 0) = -1/√32
    assert abs(green_1d(8.0, 0).value + 1 / math.sqrt(32)) < 1e-15
    for bad in (0.0, 2.0, 4.0):
        try:
            green_1d(bad, 0)
            assert False, f"z={bad} is on the spectrum"
        except RegionError:
            pass
    print("  ✅ G(-2,0) = 1/(2√3), G(-2,1) = (2-√3)/(2√3)")


def test_green_1d_thresholds():
    print("1️⃣  Testing the d=1 threshold expansions...")
    for n in range(6):
        assert abs(green_1d_threshold0(-1.0, n).value - green_1d(-1.0, n).value) < 1e-12
        assert abs(green_1d_threshold0(1.0 + 1.0j, n).value - green_1d(1.0 + 1.0j, n).value) < 1e-12
        assert abs(green_1d_threshold4(5.0, n).value - green_1d(5.0, n).value) < 1e-12
        assert abs(green_1d_threshold4(3.0 - 1.0j, n).value - green_1d(3.0 - 1.0j, n).value) < 1e-12
    try:
        green_1d_threshold0(-5.0, 0)
        assert False, "|z| >= 4 is outside the threshold-0 disk"
    except RegionError:
        pass
    print("  ✅ both expansions reproduce the closed form")


def test_laurent_forms_agree():
    print("🌀 Testing Laurent forms...")
    z = -4.0
    reference = quadrature_torus(2, z, (0, 0)).value
    value = green_laurent_2d(z, (0, 0))
    assert value.representation == "laurent2d"
    assert abs(value.value - reference) < 1e-10
    assert abs(value.value - 0.134150) < 1e-6
    for n in ((0, 0), (1, 0), (2, 1), (3, -3)):
        single = green_laurent_2d(z, n).value
        shells = green_laurent(2, z, n).value
        fc = green_laurent_fc(2, z, n).value
        assert abs(single - shells) < 1e-12, n
        assert abs(single - fc) < 1e-12, n
    assert abs(green_laurent(1, -2.0, (1,)).value - green_1d(-2.0, 1).value) < 1e-12
    try:
        green_laurent(2, 2.0 + 1.0j, (0, 0))
        assert False, "|4 - z| <= 4 must raise"
    except RegionError:
        pass
    print("  ✅ shell sum, F_C form and single sum agree; G(-4,0) ≈ 0.134150")


def test_laurent_3d():
    print("🌀 Testing d=3 Laurent against quadrature...")
    value = green_auto(3, -1.0, (0, 0, 0))
    assert value.representation == "laurent"
    reference = quadrature_torus(3, -1.0, (0, 0, 0)).value
    assert abs(value.value - reference) < 1e-8
    try:
        green_auto(3, 2.0 + 1.0j, (0, 0, 0))
        assert False, "d=3 inside the disk is not covered"
    except RegionError:
        pass
    print("  ✅ d=3 outside the disk matches, inside raises")


def test_embedded_threshold():
    print("🎯 Testing the embedded-threshold expansion...")
    z = 4.0 + 0.5j
    for n in ((0, 0), (2, 1), (1, 0), (3, 1)):
        value = green_2d_embedded(z, n)
        reference = quadrature_torus(2, z, n).value
        assert abs(value.value - reference) < 1e-9, (n, value.value, reference)
    origin = (4 - z) * green_2d_embedded(z, (0, 0)).value - 4 * green_2d_embedded(z, (1, 0)).value
    assert abs(origin - 1.0) < 1e-9
    lower = green_2d_embedded(z.conjugate(), (2, 1)).value
    assert abs(lower - green_2d_embedded(z, (2, 1)).value.conjugate()) < 1e-14
    for bad in (4.5, 9.0 + 1.0j):
        try:
            green_2d_embedded(bad, (0, 0))
            assert False, f"z={bad} must raise"
        except RegionError:
            pass
    print("  ✅ matches quadrature, Helmholtz at the origin, conjugate symmetry")


def test_boundary_limit():
    print("🎯 Testing the boundary limit z -> x + i0...")
    assert green_2d_embedded(4.0, (1, 0), boundary_limit=True).value == -0.25
    assert green_2d_embedded(4.0, (2, 1), boundary_limit=True).value == 0.25
    try:
        green_2d_embedded(4.0, (1, 1), boundary_limit=True)
        assert False, "even |n| diverges at x = 4"
    except RegionError:
        pass
    for x in (3.0, 5.0):
        limit = green_2d_embedded(x, (1, 0), boundary_limit=True).value
        nearby = green_2d_embedded(complex(x, 1e-8), (1, 0)).value
        assert abs(limit - nearby) < 1e-6, (x, limit, nearby)
    print("  ✅ odd |n| tends to (-1)^{n₁}/4, real x approached from above")


def test_diagonal_values():
    print("↗️  Testing diagonal values P₀(m)...")
    p0 = diag_p0(-0.5, 0, "endpoint")
    assert abs(p0 - quadrature_torus(2, -0.5, (0, 0)).value) < 1e-10
    assert abs(p0.real - 0.316) < 1e-3
    for m in range(4):
        laurent = diag_p0(-4.0, m, "laurent")
        assert abs(laurent - (-1) ** m * green_laurent_2d(-4.0, (m, m)).value) < 1e-12
    z = 4.0 + 0.5j
    for m in range(4):
        embedded = (-1) ** m * green_2d_embedded(z, (m, m)).value
        assert abs(diag_p0(z, m, "threshold4") - embedded) < 1e-9
        assert abs(diag_p0(z, m) - embedded) < 1e-9
        # the ((z-4)/16)^{2k} factor is not the diagonal of the embedded expansion
        assert abs(diag_p0_literal_factor(z, m) - embedded) > 1e-6
    print("  ✅ endpoint, Laurent and threshold-4 diagonal forms")


def test_endpoint_and_recurrence():
    print("🧱 Testing the endpoint representation...")
    z = -0.5
    for n in ((2, 1), (0, 0), (3, 0), (2, 2)):
        endpoint = green_2d_endpoint(z, n).value
        reference = quadrature_torus(2, z, n).value
        assert abs(endpoint - reference) < 1e-9, (n, endpoint, reference)
    for z in (-0.5, 2.0 + 1.0j):
        for n in ((0, 0), (1, 0), (3, 2), (4, 1)):
            endpoint = green_2d_endpoint(z, n).value
            recurrence = green_2d_recurrence(z, n).value
            assert abs(endpoint - recurrence) < 1e-10, (z, n)
    for n in ((0, 0), (2, 1), (4, 4)):
        assert abs(green_2d_endpoint(-0.5, n).value - green_laurent_2d(-0.5, n).value) < 1e-10
    print("  ✅ endpoint = quadrature = recurrence = Laurent on overlaps")


def test_dispatcher():
    print("🧭 Testing the dispatcher...")
    assert green_auto(2, -4.0, (1, 1)).representation == "laurent2d"
    assert abs(green_auto(2, -4.0, (1, 1)).value - quadrature_torus(2, -4.0, (1, 1)).value) < 1e-10
    assert green_auto(2, -0.5, (0, 0)).representation == "endpoint2d"
    assert green_auto(2, 4.0 + 3.5j, (0, 0)).representation == "embedded2d"
    # labelled near threshold 0, but only the embedded expansion converges at 2 + 3i
    assert SpectralPoint(2.0 + 3.0j, 2).region == "near_threshold:0"
    assert green_auto(2, 2.0 + 3.0j, (0, 0)).representation == "embedded2d"
    assert green_auto(1, -2.0, (0,)).representation == "closed1d"
    # |z - 4| = 4 away from the endpoint disks: no series converges there
    for z in (4.0 + 4.0j, 4.0 - 4.0j):
        value = green_auto(2, z, (1, 0))
        assert value.representation == "quadrature", z
        residual = helmholtz_residual(lambda w, p: green_auto(2, w, p), z, (0, 0))
        assert abs(residual - 1.0) < 1e-10, (z, residual)
    for d, z in ((2, 3.0), (1, 2.0), (2, 8.0)):
        try:
            green_auto(d, z, (0,) * d)
            assert False, f"z={z} is on the d={d} spectrum"
        except RegionError:
            pass
    print("  ✅ region-based choice and spectrum rejection")


def test_helmholtz_identity():
    print("🔁 Testing the Helmholtz identity...")
    cases = [
        (lambda z, p: green_1d(z, p), -2.0, 1),
        (lambda z, p: green_1d_threshold4(z, p), 5.0, 1),
        (lambda z, p: green_laurent_2d(z, p), -4.0, 2),
        (lambda z, p: green_2d_endpoint(z, p), -0.5, 2),
        (lambda z, p: green_2d_embedded(z, p), 4.0 + 0.5j, 2),
    ]
    for evaluator, z, d in cases:
        for n in ((0,) * d, (1,) + (0,) * (d - 1), (2,) + (-1,) * (d - 1)):
            residual = helmholtz_residual(evaluator, z, n)
            expected = 1.0 if not any(n) else 0.0
            assert abs(residual - expected) < 1e-9, (z, n, residual)
    print("  ✅ (2d - z)G - Σ neighbours = δ₀")


UPPER_HALF_PLANE = [complex(x, y) for y in (0.5, 1.5) for x in (-3.0, 1.0, 3.0, 5.0, 7.0, 9.0, 12.0)]

# (name, evaluator, d, points inside the region, all with Im z > 0)
CONJUGATE_CASES = [
    ("closed1d", lambda z, n: green_1d(z, n), 1, UPPER_HALF_PLANE),
    ("thresh0-1d", lambda z, n: green_1d_threshold0(z, n), 1, [1.0 + 0.5j, -1.0 + 1.5j, 2.0 + 1.0j]),
    ("thresh4-1d", lambda z, n: green_1d_threshold4(z, n), 1, [5.0 + 0.5j, 3.0 + 1.5j, 7.0 + 0.5j]),
    ("laurent", lambda z, n: green_laurent(2, z, n), 2, [-3.0 + 0.5j, 9.0 + 1.5j, 12.0 + 0.5j]),
    ("laurent-3d", lambda z, n: green_laurent(3, z, n), 3, [-3.0 + 1.0j, 13.0 + 0.5j]),
    ("laurent-fc", lambda z, n: green_laurent_fc(2, z, n), 2, [-3.0 + 0.5j, 12.0 + 0.5j]),
    ("laurent2d", lambda z, n: green_laurent_2d(z, n), 2, [-3.0 + 0.5j, 9.0 + 1.5j]),
    ("endpoint2d", lambda z, n: green_2d_endpoint(z, n), 2, [-0.5 + 0.5j, 1.0 + 0.5j, 7.0 + 0.5j]),
    ("recurrence2d", lambda z, n: green_2d_recurrence(z, n), 2, [-0.5 + 0.5j, 1.0 + 0.5j]),
    ("embedded2d", lambda z, n: green_2d_embedded(z, n), 2, [3.0 + 1.5j, 5.0 + 0.5j]),
    ("auto-1d", lambda z, n: green_auto(1, z, n), 1, UPPER_HALF_PLANE),
    ("auto-2d", lambda z, n: green_auto(2, z, n), 2, UPPER_HALF_PLANE),
]


def test_conjugate_symmetry():
    """G(z̄, n) = conj G(z, n) for every representation inside its region."""
    print("🪞 Testing conjugate symmetry...")
    for name, evaluator, d, points in CONJUGATE_CASES:
        ns = ((0,) * d, (2,) + (1,) * (d - 1), (1,) + (-3,) * (d - 1))
        for z in points:
            for n in ns:
                upper = evaluator(z, n).value
                lower = evaluator(z.conjugate(), n).value
                gap = abs(lower - upper.conjugate())
                assert gap < 1e-12 * max(1.0, abs(upper)), (name, z, n, gap)
    print("  ✅ G(z̄, n) = conj G(z, n)")


def test_herglotz_sign():
    """Im G(z, 0) > 0 above the real axis."""
    print("🪞 Testing the sign of Im G(z, 0)...")
    count = 0
    for d in (1, 2):
        for z in UPPER_HALF_PLANE:
            value = green_auto(d, z, (0,) * d).value
            assert value.imag > 0, (d, z, value)
            count += 1
    for z in (-3.0 + 1.0j, 13.0 + 0.5j, 6.0 + 7.0j):
        assert green_auto(3, z, (0, 0, 0)).value.imag > 0, z
        count += 1
    assert count >= 20
    print(f"  ✅ Im G(z, 0) > 0 at {count} points")


def test_pochhammer_telescoping():
    print("🔢 Testing the telescoping sum...")
    assert pochhammer_telescoping(1, 3, 0, 2) == 20
    assert pochhammer_telescoping(0, 2, HalfInt(1), 1) == Fraction(9, 2)
    assert pochhammer_telescoping(0, 0, 1, 0) == 1
    for r in (0, 1, -2, HalfInt(1), HalfInt(-3), Fraction(1, 3)):
        shift = r.as_fraction() if isinstance(r, HalfInt) else Fraction(r)
        for p in range(-3, 3):
            for q in range(p, 5):
                for k in range(6):
                    direct = sum(pochhammer(shift + j, k) for j in range(p, q + 1))
                    assert pochhammer_telescoping(p, q, r, k) == direct, (p, q, r, k)
    try:
        pochhammer_telescoping(3, 1, 0, 2)
        assert False, "p > q must raise"
    except ValueError:
        pass
    print("  ✅ telescoped sums equal the direct sums")


def main():
    """Run all resolvent tests."""
    print("=" * 60)
    print("lattice-green Resolvent Test Suite")
    print("=" * 60)
    print()

    tests = [
        test_lattice_types,
        test_green_1d_closed_form,
        test_green_1d_thresholds,
        test_laurent_forms_agree,
        test_laurent_3d,
        test_embedded_threshold,
        test_boundary_limit,
        test_diagonal_values,
        test_endpoint_and_recurrence,
        test_dispatcher,
        test_helmholtz_identity,
        test_conjugate_symmetry,
        test_herglotz_sign,
        test_pochhammer_telescoping,
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
