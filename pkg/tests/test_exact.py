from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from schubreal.exact import (
    INFINITY, Mat, NotAPerfectSquare, Poly, RankAmbiguous, canonical_projective, det_exact,
    format_rational, nullspace_exact, parse_rational, poly_derivative, poly_divmod, poly_exact_sqrt,
    poly_root_multiplicity, poly_shift, rank, rref, scalar,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(rationals, min_size=1, max_size=7).map(Poly)


def P(*c):
    return Poly(list(c))


class TestDerivative:
    def test_constant(self):
        assert poly_derivative(P(1)).is_zero()

    def test_power(self):
        assert poly_derivative(P(0, 0, 0, 1)) == P(0, 0, 3)

    def test_linear(self):
        assert poly_derivative(P(1, 0, 0, 2)) == P(0, 0, 6)

    def test_keeps_bound(self):
        assert poly_derivative(Poly([1, 2], 4)).degree_bound == 4

    @given(polys, polys)
    def test_product_rule(self, f, g):
        assert poly_derivative(f * g) == poly_derivative(f) * g + f * poly_derivative(g)


class TestShift:
    def test_examples(self):
        assert poly_shift(P(0, 1), 1) == P(1, 1)
        assert poly_shift(P(0, 0, 1), -1) == P(1, -2, 1)

    @given(polys, rationals)
    def test_inverse(self, f, a):
        assert poly_shift(poly_shift(f, a), -a) == f

    @given(polys, rationals, rationals)
    def test_composition(self, f, a, b):
        assert poly_shift(poly_shift(f, a), b) == poly_shift(f, a + b)

    @given(polys, rationals, rationals)
    def test_evaluation(self, f, a, z):
        assert poly_shift(f, a)(z) == f(z + a)


class TestRank:
    def test_examples(self):
        assert rank(Mat.identity(3)) == 3
        assert rank(Mat.zeros(2, 4)) == 0
        assert rank([[1, 2], [2, 4]]) == 1

    def test_numeric_mode(self):
        assert rank([[1 + 0j, 2 + 0j], [2 + 0j, 4 + 0j]]) == 1
        assert rank([[1.0 + 0j, 0j], [0j, 0.5 + 0j]]) == 2

    def test_ambiguous_singular_value(self):
        with pytest.raises(RankAmbiguous):
            rank([[1 + 0j, 0j], [0j, 1e-8 + 0j]])

    def test_mixed_kinds_rejected(self):
        with pytest.raises(TypeError):
            rank([[1, 0.5 + 0j]])

    @given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=4),
           st.integers(-3, 3).filter(bool), st.integers(-3, 3))
    def test_row_operation_invariance(self, rows, c, t):
        r0 = rank(rows)
        moved = [list(r) for r in rows]
        moved[0] = [c * v for v in moved[0]]
        if len(moved) > 1:
            moved[1] = [u + t * v for u, v in zip(moved[1], moved[0])]
        assert rank(moved) == r0

    @given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3))
    def test_agrees_with_det_and_nullspace(self, rows):
        r = rank(rows)
        assert (det_exact(rows) != 0) == (r == 3)
        assert len(nullspace_exact(rows, 3)) == 3 - r
        red, piv = rref(rows)
        assert len(piv) == r


class TestSqrt:
    def test_examples(self):
        assert poly_exact_sqrt(P(1, 0, 0, -2, 0, 0, 1)) == P(1, 0, 0, -1)
        assert poly_exact_sqrt(P(0, 0, 0, 0, 1)) == P(0, 0, 1)

    def test_not_square(self):
        with pytest.raises(NotAPerfectSquare):
            poly_exact_sqrt(P(1, 0, 0, 0, 1))
        with pytest.raises(NotAPerfectSquare):
            poly_exact_sqrt(P(0, 1))

    def test_irrational_leading_coefficient(self):
        with pytest.raises(NotAPerfectSquare):
            poly_exact_sqrt(P(2))

    @given(polys.filter(lambda f: not f.is_zero()))
    def test_square_roundtrip(self, f):
        root = poly_exact_sqrt(f * f)
        assert root * root == f * f
        assert root == f or root == -f


class TestMultiplicity:
    def test_examples(self):
        h = P(0, 0, 1, 1)
        assert poly_root_multiplicity(h, 0) == 2
        # (z + a) convention: a = 1 names the factor z + 1
        assert poly_root_multiplicity(h, 1) == 1
        assert poly_root_multiplicity(h, -1) == 0
        assert poly_root_multiplicity(Poly([0, 2], 4), INFINITY) == 3

    @given(rationals, st.integers(0, 4), polys.filter(lambda f: not f.is_zero()))
    def test_factor_power(self, a, k, g):
        h = Poly([a, 1]) ** k * g
        extra = poly_root_multiplicity(g, a)
        assert poly_root_multiplicity(h, a) == k + extra


class TestScalars:
    def test_parse_format(self):
        assert parse_rational("-3/2") == Q(-3, 2)
        assert format_rational(Q(6, 4)) == "3/2"
        assert format_rational(Q(5)) == "5"

    @pytest.mark.parametrize("bad", ["abc", "1/0", "", "1.5.2"])
    def test_parse_errors(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    def test_non_finite(self):
        with pytest.raises(ArithmeticError):
            scalar(float("nan"))

    def test_degree_bound(self):
        with pytest.raises(ValueError):
            Poly([1, 2, 3], 1)
        assert Poly([]).is_zero()

    def test_canonical_projective(self):
        assert canonical_projective(P(0, 3, 6)) == P(0, 1, 2)

    @given(polys, polys.filter(lambda g: not g.is_zero()))
    def test_divmod(self, f, g):
        q, r = poly_divmod(f, g)
        assert q * g + r == f
        assert r.is_zero() or r.degree < g.degree
