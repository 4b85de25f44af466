import json
import random
from fractions import Fraction

import pytest

from tropibayes import (
    PositivePolynomial,
    ToricData,
    ToricError,
    cauchy_binet_check,
    check_same_degree,
    degree_of_monomial,
    dehomogenize,
    grading_matrix,
    homogenize_pair,
    p1_power,
    pentagon_surface,
    projective_space,
)
from tropibayes.linalg import mat_vec

W_PAPER = ((0, 1, 0, 1, 0), (1, 0, 1, 0, 1), (2, 0, 1, 1, 0))


class TestGradingMatrix:
    def test_projective_line(self):
        assert grading_matrix(((1, -1),)) == ((1, 1),)

    def test_pentagon_annihilates_rays(self, pentagon):
        W = grading_matrix(pentagon.V)
        for row in W:
            assert mat_vec(pentagon.V, row) == (0, 0)
        assert len(W) == 3

    def test_cube_fan_pairs_opposite_rays(self):
        cube = p1_power(3)
        # degree of z0_j equals degree of z1_j for each line factor
        for j in range(3):
            e0 = tuple(1 if i == 2 * j else 0 for i in range(6))
            e1 = tuple(1 if i == 2 * j + 1 else 0 for i in range(6))
            assert cube.degree(e0) == cube.degree(e1)

    def test_rank_deficient_rejected(self):
        with pytest.raises(ToricError):
            grading_matrix(((1, 2), (2, 4)))


class TestDegree:
    def test_zero_exponent(self):
        assert degree_of_monomial((0, 0, 0, 0, 0), W_PAPER) == (0, 0, 0)

    def test_single_variable(self):
        # x2 maps to the second column of the grading matrix
        assert degree_of_monomial((0, 1, 0, 0, 0), W_PAPER) == (1, 0, 0)

    def test_pentagon_example_degree(self):
        assert degree_of_monomial((3, 3, 2, 0, 3), W_PAPER) == (3, 8, 8)

    def test_length_mismatch(self):
        with pytest.raises(ToricError):
            degree_of_monomial((1, 0), W_PAPER)


class TestCheckSameDegree:
    def test_equal_polynomials(self, pentagon, pentagon_pair):
        f, _ = pentagon_pair
        assert check_same_degree(f, f, pentagon)

    def test_pentagon_pair_is_homogeneous(self, pentagon, pentagon_pair):
        f, g = pentagon_pair
        assert check_same_degree(f, g, pentagon)
        for _, e in g.terms:
            assert degree_of_monomial(e, W_PAPER) == (3, 8, 8)

    def test_different_degrees_on_p1(self, p1):
        f = PositivePolynomial(2, [(1, (1, 0))])
        g = PositivePolynomial(2, [(1, (2, 0))])
        assert not check_same_degree(f, g, p1)

    def test_invariant_under_column_permutation(self, pentagon, pentagon_pair):
        f, g = pentagon_pair
        perm = (2, 0, 4, 1, 3)
        V = tuple(tuple(row[i] for i in perm) for row in pentagon.V)
        cones = [tuple(sorted(perm.index(i) for i in c))
                 for c in pentagon.maximal_cones]
        permuted = ToricData(V, cones)
        fp = PositivePolynomial(5, [(c, tuple(e[i] for i in perm))
                                    for c, e in f.terms])
        gp = PositivePolynomial(5, [(c, tuple(e[i] for i in perm))
                                    for c, e in g.terms])
        assert check_same_degree(fp, gp, permuted)


class TestDehomogenize:
    def test_kernel_monomial_becomes_constant(self, p1):
        f = PositivePolynomial(2, [(3, (2, 2))])
        dehom = dehomogenize(f, p1)
        assert dehom.terms == ((Fraction(3), (0,)),)

    def test_segment_cubic_denominator(self, p1, segment_pair):
        _, g = segment_pair
        dehom = dehomogenize(g, p1)
        assert dehom.terms == ((Fraction(3), (-3,)), (Fraction(19), (-1,)),
                               (Fraction(21), (1,)), (Fraction(5), (3,)))

    def test_coin_denominator_pattern(self):
        cube = p1_power(3)
        pairs = []
        for j in range(3):
            e0 = tuple(1 if i == 2 * j else 0 for i in range(6))
            e1 = tuple(1 if i == 2 * j + 1 else 0 for i in range(6))
            pairs.append(PositivePolynomial(6, [(1, e0), (1, e1)]))
        den = pairs[0].multiply(pairs[1]).multiply(pairs[2])
        dehom = dehomogenize(den, cube)
        # (t1 + 1/t1)(t2 + 1/t2)(t3 + 1/t3): all sign patterns, unit coefficients
        assert len(dehom.terms) == 8
        assert {e for _, e in dehom.terms} == {
            (a, b, c) for a in (-1, 1) for b in (-1, 1) for c in (-1, 1)}

    def test_merges_colliding_terms(self, p1):
        f = PositivePolynomial(2, [(1, (1, 0)), (2, (0, 1))])  # not homogeneous
        dehom = dehomogenize(f, p1)
        assert dehom.terms == ((Fraction(1), (-1,)), (Fraction(1), (1,)))

    def test_ratio_consistency_at_random_points(self, pentagon, pentagon_pair):
        # f/g evaluated through the column monomial map agrees with the
        # dehomogenized ratio, exactly.
        f, g = pentagon_pair
        fh = dehomogenize(f, pentagon)
        gh = dehomogenize(g, pentagon)
        random.seed(23)
        for _ in range(100):
            t = tuple(Fraction(random.randint(1, 20), random.randint(1, 20))
                      for _ in range(2))
            x = tuple(t[0] ** pentagon.V[0][i] * t[1] ** pentagon.V[1][i]
                      for i in range(5))
            assert f.evaluate(x) * gh.evaluate(t) == g.evaluate(x) * fh.evaluate(t)


class TestHomogenizePair:
    def test_unit_cube_prior_lift(self):
        cube = p1_power(3)
        num = [(Fraction(1), (1, 1, 1))]
        den = []
        for a in range(3):
            for b in range(3):
                for c in range(3):
                    from math import comb
                    den.append((Fraction(comb(2, a) * comb(2, b) * comb(2, c)),
                                (a, b, c)))
        f, g = homogenize_pair(num, den, cube)
        assert f.terms == ((Fraction(1), (1, 1, 1, 1, 1, 1)),)
        assert g.sum_coefficients() == 64
        assert check_same_degree(f, g, cube)


class TestCauchyBinet:
    def test_gram_identity(self, pentagon):
        Vt = tuple(zip(*pentagon.V))
        assert cauchy_binet_check(pentagon.V, Vt)

    def test_sector_generator_matrices(self, pentagon_table, pentagon):
        for sector in pentagon_table.sectors:
            Wsigma = tuple(zip(*sector.lifted_generators))
            assert cauchy_binet_check(pentagon.V, Wsigma)

    def test_random_matrices(self):
        random.seed(31)
        for _ in range(100):
            V = tuple(tuple(random.randint(-5, 5) for _ in range(5))
                      for _ in range(2))
            W = tuple(tuple(random.randint(-5, 5) for _ in range(2))
                      for _ in range(5))
            assert cauchy_binet_check(V, W)


class TestToricDataJson:
    def test_round_trip(self, pentagon):
        data = json.loads(json.dumps(pentagon.to_json()))
        back = ToricData.from_json(data)
        assert back.V == pentagon.V
        assert back.maximal_cones == pentagon.maximal_cones
        assert back.W == pentagon.W

    def test_projective_space_cones_are_simplicial(self):
        for n in (1, 2, 3):
            toric = projective_space(n)
            assert toric.k == n + 1
            assert len(toric.maximal_cones) == n + 1
