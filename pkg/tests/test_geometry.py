import random
from fractions import Fraction as Q

import numpy as np
import pytest
from hypothesis import given, strategies as st

from schubreal.exact import INFINITY, Mat, NotAPerfectSquare, Poly, poly_exact_sqrt
from schubreal.geometry import (
    NotIsotropic, SubspacePoint, cell_identify, float_isotropy_residual, float_x_membership,
    intersection_dims, isotropy_check, move_from_infinity, numeric_poly_sqrt, numeric_wronskian,
    p_map, projective_distance, sample_grassmannian, sample_isotropic, strict_cell_identify,
    vanishing_order_matches_membership, wronskian, wronskian_plucker, x_membership, y_membership,
)
from schubreal.partitions import StrictPartition, all_strict, enumerate_box, tilde_partition, weight


def span(*polys, m):
    return SubspacePoint.from_rows([list(p) + [0] * (m - len(p)) for p in polys], m)


Z23 = span([0, 0, 1], [0, 0, 0, 1], m=4)
ONE_Z4 = span([1], [0, 1], m=4)
Y_EX = span([1, 0, 0, 2], [0, 1, 0, 0, Q(1, 2)], m=5)


class TestSubspacePoint:
    def test_canonical_basis(self):
        a = span([1, 1], [0, 1], m=3)
        b = span([1], [0, 2], m=3)
        assert a == b

    def test_dependent_rows(self):
        with pytest.raises(ValueError):
            span([1, 2], [2, 4], m=3)

    def test_json_roundtrip(self):
        y = sample_isotropic(2, 1, seed=5)[0]
        data = y.to_json()
        assert all(isinstance(v, str) for r in data["rows"] for v in r)
        assert SubspacePoint.from_json(data) == y


class TestIntersection:
    def test_examples(self):
        assert intersection_dims(Z23, 0) == (0, 1, 2, 2, 2)
        assert intersection_dims(ONE_Z4, 0) == (0, 0, 0, 1, 2)

    @given(st.integers(0, 50))
    def test_unit_steps(self, seed):
        x = sample_grassmannian(2, 5, 1, seed=seed)[0]
        rng = random.Random(seed)
        for a in (INFINITY, Q(rng.randint(-9, 9), rng.randint(1, 4))):
            dims = intersection_dims(x, a)
            assert dims[0] == 0 and dims[-1] == x.d
            assert all(dims[k + 1] - dims[k] in (0, 1) for k in range(len(dims) - 1))

    def test_membership_examples(self):
        assert x_membership(Z23, (), 0)
        assert x_membership(ONE_Z4, (), 5)
        assert x_membership(Z23, (2, 2), 0)
        assert not x_membership(ONE_Z4, (1,), 0)

    def test_cell_examples(self):
        assert cell_identify(Z23, 0).parts == (2, 2)
        assert cell_identify(ONE_Z4, 0).parts == ()
        assert cell_identify(ONE_Z4, INFINITY).parts == (2, 2)
        for x in sample_grassmannian(2, 4, 5, seed=1):
            assert cell_identify(x, Q(17, 3)).parts == ()

    @pytest.mark.parametrize("d,m", [(2, 4), (2, 5), (3, 6)])
    def test_cell_membership_agree(self, d, m):
        # x lies in X_mu(a) exactly when mu fits inside its cell partition
        for seed, lam in enumerate(p for k in range(d * (m - d) + 1) for p in enumerate_box(d, m - d, k)):
            x = sample_grassmannian(d, m, 1, seed=seed, lam=lam.parts, point=Q(2, 3))[0]
            assert cell_identify(x, Q(2, 3)) == lam
            for mu in enumerate_box(d, m - d, 1) + enumerate_box(d, m - d, 2):
                inside = all(mu[i] <= lam[i] for i in range(1, d + 1))
                assert x_membership(x, mu, Q(2, 3)) == inside


class TestIsotropy:
    def test_examples(self):
        assert isotropy_check(span([1], [0, 1], m=5), 2)
        assert not isotropy_check(span([1], [0, 0, 1], m=5), 2)
        assert isotropy_check(Y_EX, 2)

    def test_shape_check(self):
        with pytest.raises(ValueError):
            isotropy_check(ONE_Z4, 2)

    def test_y_membership_examples(self):
        y = span([1], [0, 1], m=5)
        assert y_membership(y, (), 0)
        assert not y_membership(y, (1,), 0)
        assert tilde_partition(StrictPartition((1,), 2)).full() == (2, 0)
        assert not x_membership(y, (2,), 0)
        top = span([0, 0, 0, 1], [0, 0, 0, 0, 1], m=5)
        assert isotropy_check(top, 2)
        assert y_membership(top, (2, 1), 0)

    def test_not_isotropic(self):
        with pytest.raises(NotIsotropic):
            y_membership(span([1], [0, 0, 1], m=5), (1,), 0)
        with pytest.raises(NotIsotropic):
            p_map(span([1], [0, 0, 1], m=5), 2)

    @pytest.mark.parametrize("n", [2, 3])
    def test_membership_equivalence(self, n):
        rng = random.Random(n)
        strict = list(all_strict(n))
        for t in range(40):
            cell = rng.choice(strict)
            a = Q(rng.randint(-8, 8), rng.randint(1, 3))
            y = sample_isotropic(n, 1, seed=t, sigma=cell.parts, point=a)[0]
            probe = a if rng.random() < 0.7 else Q(rng.randint(-8, 8), 5)
            sigma = rng.choice(strict)
            # y_membership itself raises on disagreement with the X-side test
            got = y_membership(y, sigma, probe)
            assert got == x_membership(y, tilde_partition(sigma), probe)
            if probe == a:
                assert got == all(sigma[i] <= cell[i] for i in range(1, n + 1))


class TestWronskian:
    def test_examples(self):
        assert wronskian(span([1], [0, 1], m=2)) == Poly([1], 0)
        assert wronskian(span([1], [0, 0, 1], m=4)) == Poly([0, 1])
        assert wronskian(Z23) == Poly([0, 0, 0, 0, 1])

    def test_degree_bound(self):
        assert wronskian(Z23).degree_bound == 4

    @given(st.integers(0, 40), st.integers(-3, 3).filter(bool), st.integers(-3, 3))
    def test_gl_invariance(self, seed, c, t):
        x = sample_grassmannian(3, 6, 1, seed=seed)[0]
        rows = x.rows()
        rows[0] = [c * v for v in rows[0]]
        rows[2] = [u + t * v for u, v in zip(rows[2], rows[1])]
        rows = [rows[1], rows[0], rows[2]]
        raw = SubspacePoint(3, 6, Mat.from_rows(rows, 6))
        assert wronskian(raw) == wronskian(x)

    @given(st.integers(0, 40))
    def test_plucker_formula(self, seed):
        x = sample_grassmannian(2, 5, 1, seed=seed)[0]
        w = wronskian(x)
        alt = Poly(wronskian_plucker(x.rows()))
        k = next(i for i, v in enumerate(alt.coeffs) if v != 0)
        assert [v / alt.coeffs[k] for v in alt.coeffs] == list(w.coeffs)

    def test_numeric_matches_exact(self):
        x = sample_grassmannian(2, 5, 1, seed=3)[0]
        num = numeric_wronskian(x.to_numpy().astype(complex))
        exact = np.array([complex(v) for v in wronskian(x).padded(7)])
        assert projective_distance(num, exact) < 1e-12


class TestPMap:
    def test_examples(self):
        assert p_map(span([1], [0, 1], m=5), 2) == Poly([1], 3)
        assert p_map(Y_EX, 2) == Poly([1, 0, 0, -1])
        top = span([0, 0, 0, 1], [0, 0, 0, 0, 1], m=5)
        assert wronskian(top) == Poly([0] * 6 + [1])
        assert p_map(top, 2) == Poly([0, 0, 0, 1])

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_square_on_samples(self, n):
        for y in sample_isotropic(n, 15, seed=n):
            p = p_map(y, n)
            assert p * p == wronskian(y)

    def test_non_isotropic_wronskian_need_not_be_square(self):
        with pytest.raises(NotAPerfectSquare):
            poly_exact_sqrt(wronskian(span([1], [0, 0, 1], m=5)))

    def test_numeric_sqrt(self):
        p = np.array([1, 2 - 1j, 0, 3])
        assert projective_distance(numeric_poly_sqrt(np.convolve(p, p)), p) < 1e-12


class TestVanishing:
    def test_examples(self):
        r = vanishing_order_matches_membership(span([1], [0, 0, 1], m=4), 0)
        assert r.passed and r.wr_multiplicity == 1 and r.cell.parts == (1,)
        r = vanishing_order_matches_membership(Z23, 0)
        assert r.passed and r.wr_multiplicity == 4
        r = vanishing_order_matches_membership(span([1], [0, 0, 1], m=4), INFINITY)
        assert r.passed and r.wr_multiplicity == 3 and weight(r.cell) == 3

    @pytest.mark.parametrize("seed", range(6))
    def test_sampled_cells(self, seed):
        rng = random.Random(seed)
        strict = list(all_strict(3))
        sigma = rng.choice(strict)
        a = rng.choice([INFINITY, Q(rng.randint(-5, 5), 2)])
        y = sample_isotropic(3, 1, seed=seed, sigma=sigma.parts, point=a)[0]
        r = vanishing_order_matches_membership(y, a, orthogonal=True)
        assert r.passed and r.strict_cell == sigma
        assert r.p_multiplicity == weight(sigma)
        x = sample_grassmannian(2, 5, 1, seed=seed, lam=(2, 1), point=a)[0]
        assert vanishing_order_matches_membership(x, a).passed


class TestSamplers:
    def test_deterministic(self):
        assert sample_isotropic(3, 4, seed=7) == sample_isotropic(3, 4, seed=7)
        assert sample_isotropic(3, 4, seed=7) != sample_isotropic(3, 4, seed=8)

    def test_many_isotropic(self):
        pts = sample_isotropic(3, 100, seed=7)
        assert len(pts) == 100 and all(isotropy_check(y, 3) for y in pts)

    def test_rank_one(self):
        for y in sample_isotropic(1, 5, seed=0):
            assert y.d == 1 and y.m == 3 and isotropy_check(y, 1)

    def test_orthogonal_move(self):
        y = sample_isotropic(2, 1, seed=2, point=INFINITY)[0]
        assert isotropy_check(move_from_infinity(y, Q(-7, 3)), 2)


class TestFloatChecks:
    def test_membership_and_isotropy(self):
        X = Z23.to_numpy().astype(complex)
        ok, worst = float_x_membership(X, (2, 2), 0)
        assert ok and worst < 1e-12
        ok, worst = float_x_membership(ONE_Z4.to_numpy().astype(complex), (1,), 0)
        assert not ok and worst > 0.1
        assert float_isotropy_residual(Y_EX.to_numpy().astype(complex), 2) < 1e-15
        assert float_isotropy_residual(span([1], [0, 0, 1], m=5).to_numpy().astype(complex), 2) > 0.1
