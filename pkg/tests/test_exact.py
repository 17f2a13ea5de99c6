from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridlift import (
    GeometryError,
    bracket,
    creasing,
    creasing_by_heights,
    height_on_hyperplane,
    project,
    stress_of_ridge,
)

F = Fraction


def rationals(max_num=30, max_den=7):
    return st.builds(
        F,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def point_lists(k, dim):
    return st.lists(
        st.tuples(*[rationals() for _ in range(dim)]), min_size=k, max_size=k
    )


class TestBracket:
    def test_triangle(self):
        assert bracket([(0, 0), (2, 0), (0, 2)]) == 4

    def test_swap_negates(self):
        assert bracket([(2, 0), (0, 0), (0, 2)]) == -4

    def test_collinear_is_zero(self):
        assert bracket([(0, 0), (1, 1), (2, 2)]) == 0

    def test_rational_input(self):
        assert bracket([(F(1, 2), 0), (F(3, 2), 0), (F(1, 2), 1)]) == 1

    def test_arity_mismatch(self):
        with pytest.raises(GeometryError):
            bracket([(0, 0), (1, 0)])
        with pytest.raises(GeometryError):
            bracket([(0, 0, 0), (1, 0, 0), (0, 1, 0)])

    def test_four_points(self):
        # natural axis order is negatively oriented at four points
        assert bracket([(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2)]) == -8
        assert bracket([(0, 0, 0), (0, 2, 0), (2, 0, 0), (0, 0, 2)]) == 8

    @given(point_lists(3, 2), st.permutations(range(3)))
    def test_permutation_sign(self, pts, perm):
        b = bracket(pts)
        # parity of the permutation flips or keeps the sign
        inversions = sum(
            1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j]
        )
        expected = b if inversions % 2 == 0 else -b
        assert bracket([pts[i] for i in perm]) == expected

    @given(point_lists(4, 3), st.tuples(rationals(), rationals(), rationals()))
    @settings(max_examples=50)
    def test_translation_invariance(self, pts, shift):
        moved = [tuple(c + s for c, s in zip(p, shift)) for p in pts]
        assert bracket(moved) == bracket(pts)


class TestProjectAndHeight:
    def test_project(self):
        assert project((1, 2, 3)) == (1, 2)
        with pytest.raises(GeometryError):
            project((1,))

    def test_standard_basis_plane(self):
        facet = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        assert height_on_hyperplane(facet, (0, 0)) == 1

    def test_horizontal_plane(self):
        facet = [(0, 0, 7), (1, 0, 7), (0, 1, 7)]
        assert height_on_hyperplane(facet, (F(3, 5), F(-2, 9))) == 7

    def test_on_facet_points(self):
        facet = [(0, 0, 1), (4, 0, 3), (0, 4, 5)]
        for p in facet:
            assert height_on_hyperplane(facet, p[:-1]) == p[-1]

    def test_affine_in_p(self):
        facet = [(0, 0, 1), (4, 0, 3), (0, 4, 5)]
        a, b = (F(1), F(2)), (F(3), F(1, 2))
        t = F(2, 7)
        mid = tuple(t * x + (1 - t) * y for x, y in zip(a, b))
        za = height_on_hyperplane(facet, a)
        zb = height_on_hyperplane(facet, b)
        assert height_on_hyperplane(facet, mid) == t * za + (1 - t) * zb

    def test_vertical_plane_rejected(self):
        facet = [(0, 0, 0), (1, 1, 0), (2, 2, 5)]
        with pytest.raises(GeometryError):
            height_on_hyperplane(facet, (1, 0))

    def test_cached_shadow(self):
        facet = [(0, 0, 1), (4, 0, 3), (0, 4, 5)]
        shadow = bracket([p[:-1] for p in facet])
        assert height_on_hyperplane(facet, (1, 1), shadow) == height_on_hyperplane(
            facet, (1, 1)
        )


def ridge_pairs_3d():
    """Two facets sharing a ridge, all shadows nondegenerate."""

    def build(x1, x2, s, t):
        return (list(x1), list(x2), list(s), list(t))

    pts = st.tuples(rationals(), rationals(), rationals())
    return (
        st.tuples(pts, pts, pts, pts)
        .map(lambda q: (list(q[0]), list(q[1]), list(q[2]), list(q[3])))
        .filter(
            lambda q: bracket([q[0][:2], q[1][:2], q[2][:2]]) != 0
            and bracket([q[0][:2], q[1][:2], q[3][:2]]) != 0
        )
        .map(lambda q: ([tuple(q[0]), tuple(q[1])], tuple(q[2]), tuple(q[3])))
    )


class TestCreasing:
    def setup_method(self):
        self.X = [(0, 0, 0), (2, 0, 0)]
        self.S = self.X + [(0, 2, 0)]
        self.T = self.X + [(0, -2, 2)]

    def test_two_routes_agree(self):
        assert creasing(self.S, self.T) == creasing_by_heights(self.S, self.T)

    def test_antisymmetry(self):
        assert creasing(self.S, self.T) == -creasing(self.T, self.S)

    @given(ridge_pairs_3d())
    @settings(max_examples=60)
    def test_routes_agree_random(self, q):
        X, s, t = q
        S, T = X + [s], X + [t]
        assert creasing(S, T) == creasing_by_heights(S, T)
        assert creasing(S, T) == -creasing(T, S)

    @given(ridge_pairs_3d(), rationals(), rationals())
    @settings(max_examples=60)
    def test_representative_independence(self, q, lam, mu_raw):
        # replace S's extra point by an affine combination on S's plane
        X, s, t = q
        mu = mu_raw if mu_raw != 0 else F(1)
        S, T = X + [s], X + [t]
        lam2 = 1 - lam - mu
        s2 = tuple(
            lam * a + lam2 * b + mu * c for a, b, c in zip(X[0], X[1], s)
        )
        S2 = X + [s2]
        if bracket([p[:-1] for p in S2]) == 0:
            return
        assert creasing(S2, T) == creasing(S, T)

    def test_prefix_mismatch(self):
        with pytest.raises(GeometryError):
            creasing(self.S, [(0, 0, 0), (3, 0, 0), (0, -2, 2)])


class TestStressOfRidge:
    """Hand-built lifted tetrahedron: base at z=0, apex above."""

    base = [(0, 0, 0), (2, 0, 0), (0, 2, 0)]
    apex = (F(2, 3), F(2, 3), F(16, 9))

    def interior_ridge_args(self):
        X = [self.base[0], self.apex]
        S = X + [self.base[1]]
        T = X + [self.base[2]]
        return X, S, T

    def test_interior_value(self):
        X, S, T = self.interior_ridge_args()
        assert stress_of_ridge(X, S, T) == 4

    def test_base_value(self):
        X = [self.base[0], self.base[1]]
        S = X + [self.base[2]]
        T = X + [self.apex]
        assert stress_of_ridge(X, S, T, base_flag=True) == F(-4, 3)

    def test_facet_swap_invariance(self):
        X, S, T = self.interior_ridge_args()
        assert stress_of_ridge(X, S, T) == stress_of_ridge(X, T, S)

    def test_ridge_reorder_invariance(self):
        X, S, T = self.interior_ridge_args()
        X2 = [X[1], X[0]]
        S2 = X2 + [S[-1]]
        T2 = X2 + [T[-1]]
        assert stress_of_ridge(X2, S2, T2) == stress_of_ridge(X, S, T)

    def test_base_flag_required_consistency(self):
        X = [self.base[0], self.base[1]]
        S = X + [self.base[2]]
        T = X + [self.apex]
        # without the flag both facets project to the same side
        with pytest.raises(GeometryError):
            stress_of_ridge(X, S, T, base_flag=False)

    def test_base_flag_needs_flat_facet(self):
        X, S, T = self.interior_ridge_args()
        with pytest.raises(GeometryError):
            stress_of_ridge(X, S, T, base_flag=True)

    def test_facets_must_extend_ridge(self):
        X, S, T = self.interior_ridge_args()
        with pytest.raises(GeometryError):
            stress_of_ridge(X, [S[1], S[0], S[2]], T)

    def test_flat_degeneracy(self):
        X = [(0, 0, 0), (2, 0, 0)]
        S = X + [(1, 0, 5)]  # extra point over the ridge line
        T = X + [(0, 2, 0)]
        with pytest.raises(GeometryError):
            stress_of_ridge(X, S, T)
