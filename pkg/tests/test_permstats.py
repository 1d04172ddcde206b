from math import comb, factorial

import pytest

from eulab.errors import OutOfRangeError, SizeLimitError
from eulab.exactalg import Poly
from eulab.permstats import (
    asc_suc_counts,
    diaconis_profile,
    eulerian_poly_from_triangle,
    perm_poly,
    perms,
    second_order_poly_from_triangle,
    stats,
    triangle,
)
from eulab.series import egf_build

x, y, s = Poly.var("x"), Poly.var("y"), Poly.var("s")


class TestStats:
    def test_single_descent(self):
        st = stats((2, 1))
        assert (st.des, st.asc, st.basc, st.suc) == (1, 0, 0, 0)

    def test_identity_permutation(self):
        n = 6
        st = stats(tuple(range(1, n + 1)))
        assert st.des == 0
        assert st.asc == n - 1
        assert st.suc == n - 1
        assert st.basc == 0
        assert st.fix == n

    def test_succession_and_fixed_sets(self):
        st = stats((2, 3, 1))
        assert st.suc_set == frozenset({1})
        assert st.fix_set_restricted == frozenset()

    def test_double_descent_boundary(self):
        # final positions count: 321 has a double descent at index 2
        assert stats((3, 2, 1)).ddes == 2
        assert stats((1, 3, 2)).ddes == 1
        assert stats((2, 1, 3)).ddes == 0

    def test_interior_peaks(self):
        assert stats((1, 3, 2)).ipk == 1
        assert stats((3, 1, 2)).ipk == 0

    def test_validation(self):
        with pytest.raises(ValueError):
            stats((1, 1, 2))

    def test_decomposition_identities(self):
        for n in range(1, 9):
            for p in perms(n):
                st = stats(p)
                assert st.asc == st.suc + st.basc
                assert st.asc + st.des == n - 1
                assert st.exc + st.aexc + st.fix == n


class TestPermPoly:
    def test_trivariate_closed_list(self):
        expected = {
            0: Poly.one(),
            1: Poly.one(),
            2: s + y,
            3: (s + y) ** 2 + 2 * x * y,
            4: (s + y) ** 3 + 6 * x * y * (s + y) + 2 * x * y * (x + y),
            5: (s + y) ** 4
            + 12 * x * y * (s + y) ** 2
            + 8 * x * y * (s + y) * (x + y)
            + 2 * x * y * (x + y) ** 2
            + 16 * x**2 * y**2,
        }
        for n, value in expected.items():
            assert perm_poly(n, "trivariate") == value

    def test_small_sizes_per_family(self):
        assert perm_poly(1, "eulerian") == Poly.one()
        assert perm_poly(1, "trivariate") == Poly.one()
        assert perm_poly(1, "fixpoint") == s
        assert perm_poly(1, "bivariate") == y
        assert perm_poly(1, "derangement").is_zero()
        assert perm_poly(1, "no-succession-first-not-1").is_zero()

    def test_derangements_of_three(self):
        # oracle: 231 has excedances at 1, 2; 312 has one at 1
        assert stats((2, 3, 1)).exc == 2
        assert stats((3, 1, 2)).exc == 1
        assert perm_poly(3, "derangement") == x + x**2

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            perm_poly(3, "nope")

    def test_factorial_guard(self):
        with pytest.raises(SizeLimitError):
            perm_poly(11, "eulerian")

    def test_eulerian_specializations(self):
        for n in range(8):
            a = perm_poly(n, "eulerian")
            tv = perm_poly(n, "trivariate")
            assert tv.subst({"y": 1, "s": x}) == a
            assert tv.subst({"x": 1, "y": x, "s": 1}) == a

    def test_eulerian_matches_triangle(self):
        for n in range(9):
            assert perm_poly(n, "eulerian") == eulerian_poly_from_triangle(n)

    def test_no_succession_equals_derangement_polynomial(self):
        for n in range(8):
            assert perm_poly(n, "no-succession-first-not-1") == perm_poly(n, "derangement")

    def test_families_against_their_egfs(self):
        for name, family in (
            ("bivariate", "bivariate"),
            ("fixpoint", "fixpoint"),
            ("derangement", "derangement"),
        ):
            series = egf_build(name, 6)
            for n in range(7):
                assert series.egf_coefficient(n) == perm_poly(n, family), (name, n)


class TestFrobeniusAndGammaInterpretations:
    def test_frobenius_identity(self):
        for n in range(1, 9):
            lhs = x * perm_poly(n, "eulerian")
            rhs = Poly.zero()
            for k in range(1, n + 1):
                rhs = rhs + triangle("surjection", n, k) * x**k * (1 - x) ** (n - k)
            assert lhs == rhs

    def test_no_double_descent_counts_for_small_n(self):
        # oracle: the double-descent-free permutations of [3] are 123, 213, 312
        free = [p for p in perms(3) if stats(p).ddes == 0]
        assert sorted(free) == [(1, 2, 3), (2, 1, 3), (3, 1, 2)]
        assert perm_poly(3, "gamma-eulerian-no-ddes") == 1 + 2 * x

    def test_stembridge_identity(self):
        for n in range(1, 9):
            lhs = perm_poly(n, "eulerian").scale(2 ** (n - 1))
            rhs = Poly.zero()
            for mono, c in perm_poly(n, "peak").items():
                i = dict(mono).get("x", 0)
                rhs = rhs + c * 4**i * x**i * (1 + x) ** (n - 1 - 2 * i)
            assert lhs == rhs


class TestTriangles:
    def test_values(self):
        assert triangle("second-order-eulerian", 3, 2) == 8
        assert triangle("stirling2", 7, 7) == 1
        assert triangle("stirling2", 4, 2) == 7
        assert triangle("surjection", 4, 3) == factorial(3) * triangle("stirling2", 4, 3)
        assert triangle("eulerian", 4, 1) == 11

    def test_second_order_closed_form(self):
        for n in range(2, 21):
            assert triangle("second-order-eulerian", n, 2) == 2 ** (n + 1) - 2 * (n + 1)

    def test_second_order_row_five(self):
        assert [triangle("second-order-eulerian", 5, j) for j in range(1, 6)] == [
            1,
            52,
            328,
            444,
            120,
        ]

    def test_polynomial_assembly(self):
        assert second_order_poly_from_triangle(2) == x + 2 * x**2
        assert eulerian_poly_from_triangle(3) == 1 + 4 * x + x**2

    def test_out_of_range(self):
        with pytest.raises(OutOfRangeError):
            triangle("stirling2", 61, 3)
        with pytest.raises(OutOfRangeError):
            triangle("stirling2", 4, 5)
        with pytest.raises(ValueError):
            triangle("nope", 3, 1)


class TestProfilesAndJointCounts:
    def test_diaconis_profile_small(self):
        by_suc, by_fix = diaconis_profile(3)
        expected = {
            frozenset(): 3,
            frozenset({1}): 1,
            frozenset({2}): 1,
            frozenset({1, 2}): 1,
        }
        assert by_suc == expected
        assert by_fix == expected

    def test_diaconis_profile_trivial(self):
        by_suc, by_fix = diaconis_profile(1)
        assert by_suc == {frozenset(): 1}
        assert by_fix == {frozenset(): 1}

    def test_diaconis_profiles_equal(self):
        for n in range(1, 7):
            by_suc, by_fix = diaconis_profile(n)
            assert by_suc == by_fix

    def test_profile_guard(self):
        with pytest.raises(SizeLimitError):
            diaconis_profile(10)

    def test_roselle_relation(self):
        for n in range(1, 8):
            counts = asc_suc_counts(n)
            for r in range(n):
                for sc in range(1, n):
                    lhs = counts.get((r, sc), 0)
                    rhs = 0
                    if r - sc >= 0:
                        rhs = comb(n - 1, sc) * asc_suc_counts(n - sc).get((r - sc, 0), 0)
                    assert lhs == rhs, (n, r, sc)
