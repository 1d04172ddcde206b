import itertools

import pytest
from hypothesis import given

from conftest import polys
from eulab import permstats, stirlingperm, trees
from eulab.exactalg import Poly
from eulab.grammar import (
    catalog,
    e_exponent_table,
    g1,
    g3,
    g4,
    g5,
    g6,
    g7,
    g9,
    g10,
    stirling_vars,
    symmetric_expansion_map,
    transform_catalog,
    transform_check,
)

x, y, s, u, v, t = (Poly.var(c) for c in "xysuvt")
L, M, I = Poly.var("L"), Poly.var("M"), Poly.var("I")


class TestDerive:
    def test_eulerian_grammar_step(self):
        assert g1().derive(x) == x * y

    def test_constant_derives_to_zero(self):
        for g in (g1(), g5(), g9(2)):
            assert g.derive(Poly.const(5)).is_zero()

    def test_marker_product_step(self):
        assert g5().derive(L * M) == L * M * (s + y)

    def test_iterate_zero_times(self):
        seed = x**2 + y
        assert g1().iterate(seed, 0) == seed

    def test_iterate_negative_rejected(self):
        with pytest.raises(ValueError):
            g1().iterate(x, -1)

    @given(polys(), polys())
    def test_derivation_satisfies_leibniz(self, p, q):
        g = g5()
        assert g.derive(p * q) == g.derive(p) * q + p * g.derive(q)


class TestIterate:
    def test_partial_gamma_grammar_cube(self):
        assert g6().iterate(I, 3) == I * (t**3 + 3 * t * u + u * v)

    def test_e_alphabet_fourth_power(self):
        for k in range(3, 5):
            e = [Poly.var(f"e_{i}") for i in range(k + 2)]
            got = g10(k).iterate(Poly.var("x_1"), 4)
            expected = (
                e[k] ** 3 * e[k + 1]
                + 8 * e[k - 1] * e[k] * e[k + 1] ** 2
                + 6 * e[k - 2] * e[k + 1] ** 3
            )
            assert got == expected, k

    def test_eulerian_iterate_matches_descent_counts(self):
        # oracle first: descent distribution of S_3 is 1, 4, 1
        counts = {}
        for p in itertools.permutations(range(1, 4)):
            d = sum(1 for i in range(2) if p[i] > p[i + 1])
            counts[d] = counts.get(d, 0) + 1
        assert counts == {0: 1, 1: 4, 2: 1}
        expected = x * sum(
            (counts[k] * x**k * y ** (3 - k) for k in range(3)), Poly.zero()
        )
        assert g1().iterate(x, 3) == expected


class TestTransformChecks:
    def test_catalog_entries_have_expected_outcomes(self):
        for name, old, defs, new, expected in transform_catalog(4):
            assert transform_check(old, defs, new) == expected, name

    def test_plane_vs_nonplane_insertion_multiplicity(self):
        # u=xy pairs with v -> 2u; u=2xy pairs with v -> u; crossing them fails
        assert transform_check(g1(), {"u": x * y, "v": x + y}, catalog("G2"))
        assert not transform_check(g1(), {"u": x * y, "v": x + y}, g4())

    def test_wrong_map_fails(self):
        assert not transform_check(g7(), {"u": x, "v": y, "w": x * y}, catalog("G8"))


class TestCrossRoutes:
    def test_eulerian_triangle_route(self):
        for n in range(1, 8):
            expected = x * sum(
                (
                    permstats.triangle("eulerian", n, k) * x**k * y ** (n - k)
                    for k in range(n)
                ),
                Poly.zero(),
            )
            assert g1().iterate(x, n) == expected

    def test_surjection_triangle_route(self):
        for n in range(1, 8):
            expected = (u + x) * sum(
                (
                    permstats.triangle("surjection", n, k) * x**k * u ** (n - k)
                    for k in range(1, n + 1)
                ),
                Poly.zero(),
            )
            assert g3().iterate(x, n) == expected

    def test_andre_route(self):
        for n in range(8):
            assert g4().iterate(u, n) == trees.tree_weight_poly(n, "andre")

    def test_marker_grammar_vs_enumeration(self):
        lm = L * M
        current = lm
        for n in range(8):
            assert current.divexact(lm) == permstats.perm_poly(n + 1, "trivariate")
            current = g5().derive(current)

    def test_substitution_coherence_partial_gamma(self):
        mapping = {"I": L * M, "t": s + y, "u": 2 * x * y, "v": x + y}
        for n in range(9):
            assert g6().iterate(I, n).subst(mapping) == g5().iterate(L * M, n)

    def test_second_order_route(self):
        for n in range(1, 7):
            assert g7().iterate(x, n) == stirlingperm.trivariate_second_order(n)

    def test_stirling_grammar_route(self):
        for k in range(1, 5):
            for n in range(1, 7):
                if stirlingperm.word_count(n, k) > 10**6:
                    continue
                assert g9(k).iterate(Poly.var("x_1"), n) == stirlingperm.kth_order_poly(n, k)

    def test_symmetric_transformation_coherence(self):
        for k in range(1, 5):
            mapping = symmetric_expansion_map(k)
            for n in range(k + 3):
                lhs = g10(k).iterate(Poly.var("x_1"), n).subst(mapping)
                rhs = g9(k).iterate(Poly.var("x_1"), n)
                assert lhs == rhs, (k, n)


class TestCatalogLookup:
    def test_names(self):
        assert catalog("G1").rules.keys() == {"x", "y"}
        assert catalog("G9:3").rules.keys() == set(stirling_vars(3))
        assert "e_4" in catalog("G10:3").rules

    def test_bad_names(self):
        with pytest.raises(ValueError):
            catalog("G11")
        with pytest.raises(ValueError):
            catalog("G9:x")

    def test_e_exponent_table_rejects_foreign_letters(self):
        with pytest.raises(ValueError):
            e_exponent_table(x + 1, 2)
