import math
import random
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from divgeom import LogPairY
from kfano.exceptions import DomainError
from polyforms import parse_poly
from valuations import (
    LAMBDA_0,
    LAMBDA_1,
    MonomialValuation,
    SlabPolytope,
    a_invariant_valuation,
    beta_valuation,
    enumerate_vertices,
    futaki_vanishing_check,
    integral_linear_over_slab,
    layer_cake_integral,
    s_invariant_valuation,
    scaling_check,
    slice_volume,
    slice_volume_function,
    vol_ray_valuation,
    volume_integral_valuation,
)

Q = SlabPolytope(1, 0, (3, 0, 1))
P = SlabPolytope(4, 2, (3, 0, 1))


def cusp_pair(c):
    return LogPairY(c, parse_poly("x*y*w^2 + z^3*w"))


def random_slab(rng):
    d = Fraction(rng.randint(2, 12), rng.randint(1, 3))
    m = d * Fraction(rng.randint(0, 4), 5)
    ell = (0, 0, 0)
    while not any(ell):
        ell = tuple(rng.randint(0, 4) for _ in range(3))
    return SlabPolytope(d, m, ell)


class MonomialValuationTests(SimpleTestCase):

    def test_log_discrepancy(self):
        self.assertEqual(LAMBDA_0.log_discrepancy, 4)
        self.assertEqual(str(LAMBDA_0), "(3,0,1)")

    def test_induced_by_one_parameter_subgroup(self):
        self.assertEqual(MonomialValuation.induced_by((3, 0, 1, 0)), LAMBDA_0)
        self.assertEqual(MonomialValuation.induced_by((4, 1, 2, 1)), LAMBDA_0)
        self.assertEqual(MonomialValuation.induced_by((0, 3, 1, 0)), LAMBDA_1)
        with self.assertRaises(DomainError):
            MonomialValuation.induced_by((0, 0, 0, 1))

    def test_invalid_weights(self):
        for weights in [(0, 0, 0), (1, 2), (-1, 1, 1)]:
            with self.subTest(weights=weights):
                with self.assertRaises(DomainError):
                    MonomialValuation(weights)


class SlabPolytopeTests(SimpleTestCase):

    def test_vertices_of_unit_simplex(self):
        vertices = {v.coordinates for v in enumerate_vertices(Q)}
        self.assertEqual(vertices, {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)})

    def test_slab_validation(self):
        with self.assertRaises(DomainError):
            SlabPolytope(2, 3, (1, 1, 1))
        with self.assertRaises(DomainError):
            SlabPolytope(2, 1, (1, -1, 1))
        with self.assertRaises(DomainError):
            slice_volume(Q, -1)

    def test_unit_simplex_slices(self):
        self.assertEqual(slice_volume(Q, 0), Fraction(1, 6))
        self.assertEqual(slice_volume(Q, Fraction(1, 2)), Fraction(29, 216))
        self.assertEqual(slice_volume(Q, 1), Fraction(2, 27))
        self.assertEqual(slice_volume(Q, 2), Fraction(1, 108))
        self.assertEqual(slice_volume(Q, 3), 0)
        self.assertEqual(slice_volume(Q, 4), 0)

    def test_published_cubic_on_unit_simplex(self):
        f = slice_volume_function(Q)
        for k in range(31):
            t = Fraction(k, 10)
            if t <= 1:
                expected = Fraction(1, 6) - t ** 2 / 6 + 2 * t ** 3 / 27
            else:
                expected = (3 - t) ** 3 / 108
            self.assertEqual(f(t), expected)

    def test_full_slab(self):
        self.assertEqual(slice_volume(P, 0), Fraction(56, 6))
        self.assertEqual(P.euclidean_volume, Fraction(56, 6))
        self.assertEqual(P.critical_values(), [0, 2, 4, 6, 12])

    def test_linear_integrals(self):
        self.assertEqual(integral_linear_over_slab(Q), Fraction(1, 6))
        self.assertEqual(integral_linear_over_slab(P), 40)
        self.assertEqual(integral_linear_over_slab(SlabPolytope(4, 2, (0, 0, 0))), 0)
        self.assertEqual(integral_linear_over_slab(SlabPolytope(4, 2, (1, 1, 1))), 30)

    def test_zero_functional_has_no_volume_function(self):
        with self.assertRaises(DomainError):
            slice_volume_function(SlabPolytope(4, 2, (0, 0, 0)))

    def test_layer_cake_identity(self):
        rng = random.Random(99)
        for _ in range(20):
            slab = random_slab(rng)
            with self.subTest(slab=slab):
                self.assertEqual(integral_linear_over_slab(slab, verify=False), layer_cake_integral(slab))

    def test_slice_volume_is_piecewise_cubic_and_nonincreasing(self):
        rng = random.Random(7)
        for _ in range(5):
            slab = random_slab(rng)
            values = slab.critical_values()
            for left, right in zip(values, values[1:]):
                step = (right - left) / 4
                samples = [slice_volume(slab, left + k * step) for k in range(5)]
                fourth_difference = samples[4] - 4 * samples[3] + 6 * samples[2] - 4 * samples[1] + samples[0]
                self.assertEqual(fourth_difference, 0)
                self.assertTrue(all(a >= b for a, b in zip(samples, samples[1:])))
            self.assertEqual(slice_volume(slab, slab.max_functional + 1), 0)

    def test_scaling_identity(self):
        direct, scaled = scaling_check(4, 2, 5, (3, 0, 1))
        self.assertEqual(direct, scaled)
        self.assertEqual(scaling_check(4, 2, 0, (3, 0, 1)), (Fraction(56, 6), Fraction(56, 6)))
        self.assertEqual(scaling_check(4, 2, 12, (3, 0, 1)), (0, 0))
        rng = random.Random(20)
        for _ in range(20):
            t = Fraction(rng.randint(0, 1200), 100)
            direct, scaled = scaling_check(4, 2, t, (3, 0, 1))
            self.assertEqual(direct, scaled)
        with self.assertRaises(DomainError):
            scaling_check(4, 0, 1, (3, 0, 1))


class MonteCarloOracleTests(SimpleTestCase):
    """Rejection sampling against the exact slice volumes"""

    SAMPLES = 10 ** 6

    def estimate(self, slab, t, seed):
        rng = np.random.default_rng(seed)
        d = float(slab.d)
        points = rng.random((self.SAMPLES, 3)) * d
        total = points.sum(axis=1)
        ell = np.array([float(c) for c in slab.ell])
        inside = (total >= float(slab.m)) & (total <= d) & (points @ ell >= float(t))
        p = inside.mean()
        box = d ** 3
        return box * p, box * math.sqrt(p * (1 - p) / self.SAMPLES)

    def test_agrees_within_three_standard_errors(self):
        rng = random.Random(2024)
        cases = []
        for seed in range(1, 4):
            slab = random_slab(rng)
            t = slab.max_functional * Fraction(rng.randint(0, 40), 100)
            cases.append((slab, t, seed))
        for slab, t, seed in cases:
            with self.subTest(slab=slab, t=t):
                exact = float(slice_volume(slab, t))
                estimate, error = self.estimate(slab, t, seed)
                self.assertLessEqual(abs(estimate - exact), 3 * error)


class ValuationInvariantTests(SimpleTestCase):

    def setUp(self):
        self.pair = cusp_pair(Fraction(2, 9))

    def test_published_invariants(self):
        self.assertEqual(a_invariant_valuation(self.pair, LAMBDA_0), Fraction(10, 3))
        self.assertEqual(volume_integral_valuation(LAMBDA_0), 240)
        self.assertEqual(s_invariant_valuation(self.pair, LAMBDA_0), Fraction(10, 3))
        self.assertEqual(beta_valuation(self.pair, LAMBDA_0), 0)

    def test_symmetric_weights(self):
        self.assertEqual(a_invariant_valuation(self.pair, LAMBDA_1), a_invariant_valuation(self.pair, LAMBDA_0))
        self.assertEqual(s_invariant_valuation(self.pair, LAMBDA_1), s_invariant_valuation(self.pair, LAMBDA_0))
        self.assertEqual(beta_valuation(self.pair, LAMBDA_1), 0)

    def test_plain_pair(self):
        plain = cusp_pair(0)
        self.assertEqual(s_invariant_valuation(plain, LAMBDA_0), Fraction(30, 7))
        self.assertEqual(a_invariant_valuation(plain, MonomialValuation((1, 1, 1))), 3)

    def test_ordinary_blowup_valuation(self):
        v = MonomialValuation((1, 1, 1))
        self.assertEqual(a_invariant_valuation(self.pair, v), Fraction(23, 9))
        self.assertEqual(volume_integral_valuation(v), 180)
        self.assertEqual(s_invariant_valuation(cusp_pair(0), v), Fraction(45, 14))
        self.assertEqual(beta_valuation(self.pair, v), Fraction(1, 18))

    def test_volume_ray(self):
        ray = vol_ray_valuation(LAMBDA_0)
        self.assertEqual(ray(0), 56)
        self.assertEqual(ray.domain, (0, 12))
        self.assertEqual(ray.integrate(), 240)


class FutakiTests(SimpleTestCase):

    def test_vanishes_at_two_ninths(self):
        report = futaki_vanishing_check(cusp_pair(Fraction(2, 9)))
        self.assertTrue(report.passed)
        self.assertEqual(report.betas, (0, 0))

    def test_fails_at_one_half(self):
        report = futaki_vanishing_check(cusp_pair(Fraction(1, 2)))
        self.assertFalse(report.passed)
        self.assertEqual(report.betas, (Fraction(5, 14), Fraction(5, 14)))
        self.assertEqual(report.values[0].a, Fraction(5, 2))
        self.assertEqual(report.values[0].s, Fraction(15, 7))
