import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropibayes import (
    GeometryError,
    convex_hull,
    minkowski_sum,
    normal_fan,
    relative_interior_contains,
    simplicial_refine,
)
from tropibayes.linalg import det_int, dot
from tropibayes.rational_geometry import RationalCone

from oracles import lp_vertex_filter

PENTAGON_POINTS = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]


class TestConvexHull:
    def test_single_point(self):
        P = convex_hull([(2, 1)])
        assert P.vertices == ((2, 1),)
        assert P.dim == 0

    def test_cubic_support_is_a_segment(self):
        P = convex_hull([(3, 0), (2, 1), (1, 2), (0, 3)])
        assert set(P.vertices) == {(3, 0), (0, 3)}
        assert P.dim == 1

    def test_random_3d_hull_matches_lp_filter(self):
        random.seed(7)
        pts = [tuple(random.randint(-10, 10) for _ in range(3)) for _ in range(50)]
        P = convex_hull(pts)
        assert list(P.vertices) == lp_vertex_filter(set(pts))

    def test_idempotent(self):
        random.seed(3)
        for _ in range(10):
            pts = [tuple(random.randint(-6, 6) for _ in range(3)) for _ in range(12)]
            P = convex_hull(pts)
            Q = convex_hull(P.vertices)
            assert Q.vertices == P.vertices and Q.dim == P.dim

    @given(st.lists(st.tuples(st.integers(-8, 8), st.integers(-8, 8)),
                    min_size=1, max_size=12))
    @settings(max_examples=60, deadline=None)
    def test_all_points_inside_hull(self, pts):
        P = convex_hull(pts)
        for p in pts:
            assert P.contains(p)
        assert convex_hull(P.vertices).vertices == P.vertices

    def test_euler_relation_3d(self):
        random.seed(11)
        pts = [tuple(random.randint(-9, 9) for _ in range(3)) for _ in range(40)]
        P = convex_hull(pts)
        assert P.vertex_count() - P.edge_count() + P.facet_count() == 2


class TestMinkowskiSum:
    def test_origin_is_identity(self):
        A = convex_hull([(3, 0), (0, 3)])
        O = convex_hull([(0, 0)])
        assert minkowski_sum(A, O).vertices == A.vertices

    def test_translation_by_a_point(self):
        A = convex_hull([(3, 0), (0, 3)])
        T = minkowski_sum(A, convex_hull([(2, 1)]))
        assert set(T.vertices) == {(5, 1), (2, 4)}

    def test_dimension_mismatch(self):
        with pytest.raises(GeometryError):
            minkowski_sum(convex_hull([(1, 0)]), convex_hull([(1, 0, 0)]))


class TestNormalFan:
    def test_unit_square_gives_orthants(self):
        F = normal_fan(convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)]))
        assert set(F.rays) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
        assert len(F.maximal_cones) == 4
        assert sorted(F.maximal_cones) == [(0, 1), (0, 2), (1, 3), (2, 3)]

    def test_pentagon_rays_are_outer_normals(self):
        # Max convention: one cone per vertex where that vertex maximizes, so
        # rays are the outer facet normals (the negated toric ray matrix).
        F = normal_fan(convex_hull(PENTAGON_POINTS))
        inner = {(1, 0), (1, -1), (-1, -1), (-1, 1), (0, 1)}
        assert set(F.rays) == {tuple(-x for x in v) for v in inner}
        assert len(F.maximal_cones) == 5

    def test_cone_count_equals_vertex_count(self):
        random.seed(5)
        for _ in range(8):
            pts = [tuple(random.randint(-7, 7) for _ in range(2)) for _ in range(15)]
            P = convex_hull(pts)
            if P.dim != 2:
                continue
            assert len(normal_fan(P).maximal_cones) == P.vertex_count()

    def test_rejects_lower_dimensional(self):
        with pytest.raises(GeometryError):
            normal_fan(convex_hull([(0, 0), (1, 1)]))
        with pytest.raises(GeometryError):
            normal_fan(convex_hull([(2, 2)]))


def _cross_section_volumes(fan, cone_ids, functional):
    """Total determinant volume of the listed simplicial cones' cross-sections
    against a fixed positive functional."""
    from tropibayes.linalg import det_fraction
    total = Fraction(0)
    for ci in cone_ids:
        rays = [fan.rays[i] for i in fan.maximal_cones[ci]]
        weights = [dot(functional, r) for r in rays]
        assert all(w > 0 for w in weights)
        scaled = [[Fraction(x, w) for x in r] for r, w in zip(rays, weights)]
        total += abs(det_fraction(scaled))
    return total


class TestSimplicialRefine:
    def test_simplicial_fan_is_fixed_point(self):
        F = normal_fan(convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)]))
        assert simplicial_refine(F).maximal_cones == F.maximal_cones

    def test_octahedron_fan_splits_in_two(self):
        octa = convex_hull([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0),
                            (0, 0, 1), (0, 0, -1)])
        F = normal_fan(octa)
        R = simplicial_refine(F)
        assert len(F.maximal_cones) == 6
        assert len(R.maximal_cones) == 12
        assert R.is_simplicial()
        assert R.rays == F.rays

    def test_refined_cones_have_nonzero_determinant(self):
        random.seed(2)
        pts = [tuple(random.randint(-6, 6) for _ in range(3)) for _ in range(25)]
        F = normal_fan(convex_hull(pts))
        R = simplicial_refine(F)
        for cone_ids in R.maximal_cones:
            rays = [R.rays[i] for i in cone_ids]
            assert len(rays) == 3
            assert det_int(rays) != 0

    def test_volume_conservation_against_revlex(self):
        # The two placing orders triangulate differently but tile the same
        # cones: cross-section determinant volumes agree cone by cone.
        random.seed(13)
        pts = [tuple(random.randint(-6, 6) for _ in range(3)) for _ in range(25)]
        F = normal_fan(convex_hull(pts))
        A = simplicial_refine(F, placing_order="lex")
        B = simplicial_refine(F, placing_order="revlex")
        for parent in range(len(F.maximal_cones)):
            functional = RationalCone(
                tuple(F.rays[i] for i in F.maximal_cones[parent]))._facet_normals()
            c = tuple(sum(col) for col in zip(*functional))
            ids_a = [i for i, p in enumerate(A.parent_cones) if p == parent]
            ids_b = [i for i, p in enumerate(B.parent_cones) if p == parent]
            va = _cross_section_volumes(A, ids_a, c)
            vb = _cross_section_volumes(B, ids_b, c)
            assert va == vb

    def test_point_location_respects_parents(self):
        octa = convex_hull([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0),
                            (0, 0, 1), (0, 0, -1)])
        F = normal_fan(octa)
        R = simplicial_refine(F)
        random.seed(17)
        for _ in range(1000):
            y = tuple(random.randint(-20, 20) for _ in range(3))
            hits = R.locate(y)
            assert hits
            for i in hits:
                assert F.cone(R.parent_cones[i]).contains(y)


class TestRelativeInteriorContains:
    def test_equal_polytopes_share_boundary(self):
        seg = convex_hull([(3, 0), (0, 3)])
        assert not relative_interior_contains(seg, seg)

    def test_point_inside_segment(self):
        seg = convex_hull([(3, 0), (0, 3)])
        assert relative_interior_contains(seg, convex_hull([(2, 1)]))
        assert not relative_interior_contains(seg, convex_hull([(3, 0)]))
        assert not relative_interior_contains(seg, convex_hull([(1, 1)]))

    def test_pentagon_example_triangle_in_quadrilateral(self, pentagon,
                                                        pentagon_pair):
        from tropibayes import dehomogenized_newton
        f, g = pentagon_pair
        nf = dehomogenized_newton(f, pentagon)
        ng = dehomogenized_newton(g, pentagon)
        assert nf.vertex_count() == 3
        assert ng.vertex_count() == 4
        assert relative_interior_contains(ng, nf)
        assert not relative_interior_contains(nf, ng)
