import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from schubreal.exact import INFINITY, Poly, poly_derivative, poly_shift, rank
from schubreal.osculating import (
    bilinear_form, check_orthogonal_flag, check_skew_derivative, check_translation_invariance,
    flag_basis, flag_basis_from_curve, form_gram, format_point, parse_point,
)

rationals = st.fractions(min_value=-9, max_value=9, max_denominator=7)


def vec(*c, size):
    return [Q(v) for v in c] + [Q(0)] * (size - len(c))


class TestFlagBasis:
    def test_examples(self):
        assert flag_basis(0, 1, 5).to_rows() == [vec(0, 0, 0, 0, 1, size=5)]
        assert flag_basis(INFINITY, 2, 5).to_rows() == [vec(1, size=5), vec(0, 1, size=5)]
        assert flag_basis(1, 1, 3).to_rows() == [vec(1, 2, 1, size=3)]

    def test_bounds(self):
        assert flag_basis(0, 0, 3).rows == 0
        with pytest.raises(ValueError):
            flag_basis(0, 4, 3)

    @given(rationals, st.integers(2, 9))
    def test_nesting(self, a, m):
        for i in range(1, m):
            small, big = flag_basis(a, i, m), flag_basis(a, i + 1, m)
            assert rank(big) == i + 1
            assert rank(small.vstack(big)) == i + 1

    @given(rationals, st.integers(1, 7), st.data())
    def test_curve_description(self, a, m, data):
        i = data.draw(st.integers(0, m))
        A, B = flag_basis(a, i, m), flag_basis_from_curve(a, i, m)
        assert rank(A) == rank(B) == i
        if i:
            assert rank(A.vstack(B)) == i

    def test_divisibility(self):
        a, m = Q(-2, 3), 6
        for i in range(m + 1):
            for row in flag_basis(a, i, m).to_rows():
                f = Poly(row)
                # (z + a)^(m - i) divides each basis vector
                assert all(poly_shift(f, -a).coeff(k) == 0 for k in range(m - i))

    def test_point_parsing(self):
        assert parse_point("infinity") is INFINITY
        assert parse_point("-3/2") == Q(-3, 2)
        assert format_point(Q(5, 7)) == "5/7"
        with pytest.raises(ValueError):
            parse_point("abc")


class TestForm:
    def test_examples(self):
        assert bilinear_form(vec(1, size=5), vec(0, 0, 0, 0, Q(1, 24), size=5), 2) == 1
        assert bilinear_form(vec(0, 1, size=5), vec(0, 1, size=5), 2) == 0
        assert bilinear_form(vec(0, 0, Q(1, 2), size=5), vec(0, 0, Q(1, 2), size=5), 2) == 1

    def test_degree_check(self):
        with pytest.raises(ValueError):
            bilinear_form([1] * 6, [1], 2)

    @given(st.integers(1, 4), st.data())
    def test_symmetric_bilinear(self, n, data):
        v = st.lists(rationals, min_size=2 * n + 1, max_size=2 * n + 1)
        f, g, h = data.draw(v), data.draw(v), data.draw(v)
        c = data.draw(rationals)
        assert bilinear_form(f, g, n) == bilinear_form(g, f, n)
        fg = [x + c * y for x, y in zip(f, g)]
        assert bilinear_form(fg, h, n) == bilinear_form(f, h, n) + c * bilinear_form(g, h, n)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_nondegenerate(self, n):
        assert rank(form_gram(n)) == 2 * n + 1

    @given(st.integers(1, 3), rationals, st.data())
    def test_translation_is_orthogonal(self, n, a, data):
        v = st.lists(rationals, min_size=2 * n + 1, max_size=2 * n + 1)
        f, g = Poly(data.draw(v)), Poly(data.draw(v))
        assert bilinear_form(poly_shift(f, a), poly_shift(g, a), n) == bilinear_form(f, g, n)


class TestOrthogonalFlag:
    @pytest.mark.parametrize("a,n", [(0, 2), (INFINITY, 3), (Q(5, 7), 2), (Q(-3, 2), 4), (1, 1)])
    def test_examples(self, a, n):
        report = check_orthogonal_flag(a, n)
        assert report.passed
        assert [c.i for c in report.checks] == list(range(2 * n + 2))
        assert all(c.perp_dimension == 2 * n + 1 - c.i for c in report.checks)

    def test_random_points(self):
        rng = random.Random(3)
        for _ in range(5):
            a = Q(rng.randint(-30, 30), rng.randint(1, 9))
            assert check_orthogonal_flag(a, 3).passed

    def test_other_index_is_not_complement(self):
        # F_i(a) is not orthogonal to F_{2n+2-i}(a): the pairing of the two is nondegenerate somewhere
        n, m = 2, 5
        A, B = flag_basis(0, 2, m), flag_basis(0, 4, m)
        assert any(bilinear_form(list(A.row(r)), list(B.row(s)), n) != 0
                   for r in range(A.rows) for s in range(B.rows))


class TestIdentities:
    def test_skew_constant(self):
        g = Poly([Q(1), Q(2), Q(3), Q(-1), Q(5)])
        assert bilinear_form(poly_derivative(Poly([1], 4)), g, 2) == 0
        assert bilinear_form(Poly([1]), poly_derivative(g), 2) == 0

    def test_skew_monomials(self):
        f, g = Poly([0, 0, Q(1, 2)]), Poly([0, 0, 0, Q(1, 6)])
        lhs = bilinear_form(poly_derivative(f), g, 2)
        rhs = -bilinear_form(f, poly_derivative(g), 2)
        assert lhs == rhs != 0

    def test_skew_batch(self):
        report = check_skew_derivative(3, 100, seed=42)
        assert report.passed and report.trials == 100

    def test_translation_examples(self):
        assert check_translation_invariance(0, 2, 10).passed
        f = Poly([0, 0, 1])
        assert bilinear_form(poly_shift(f, 1), poly_shift(f, 1), 2) == bilinear_form(f, f, 2)
        assert check_translation_invariance(Q(-3, 2), 3, 100, seed=7).passed
