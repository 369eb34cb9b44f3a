import random
from fractions import Fraction

from django.test import SimpleTestCase

from divgeom import (
    ANTICANONICAL,
    DivisorClass,
    DivisorOnY,
    LogPairY,
    beta_divisor,
    cube,
    invariant_divisors,
    is_big,
    is_nef,
    is_pseff,
    log_discrepancy,
    s_invariant,
    torus_surface,
    vol_ray,
    volume,
    zariski_positive_part,
)
from exactnum import UniPoly
from kfano.exceptions import DomainError, NonPositiveLogDiscrepancyError
from polyforms import parse_poly

E = DivisorClass(0, 1)
H_W = DivisorClass(1, 0)
H_X = DivisorClass(1, -1)
T_S = DivisorClass(3, -2)


def cusp_pair(c):
    return LogPairY(c, parse_poly("x*y*w^2 + z^3*w"))


class ConeTests(SimpleTestCase):

    def test_cube_form(self):
        self.assertEqual(cube(ANTICANONICAL), 56)
        self.assertEqual(cube(H_W), 1)
        self.assertEqual(cube(H_X), 0)

    def test_cube_is_homogeneous(self):
        rng = random.Random(8)
        for _ in range(30):
            D = DivisorClass(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
            scale = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
            self.assertEqual(cube(D * scale), scale ** 3 * cube(D))

    def test_nef_and_pseudoeffective_cones(self):
        self.assertTrue(is_nef(ANTICANONICAL))
        self.assertFalse(is_nef(E))
        self.assertFalse(is_nef(DivisorClass(4, -5)))
        self.assertTrue(is_pseff(E))
        self.assertFalse(is_pseff(DivisorClass(-1, 0)))
        self.assertTrue(is_pseff(DivisorClass(2, -2)))
        self.assertTrue(is_big(ANTICANONICAL))
        self.assertFalse(is_big(H_X))
        self.assertFalse(is_big(E))

    def test_zariski_positive_part(self):
        self.assertEqual(zariski_positive_part(DivisorClass(1, 1)), DivisorClass(1, 0))
        self.assertEqual(zariski_positive_part(ANTICANONICAL), ANTICANONICAL)
        self.assertEqual(zariski_positive_part(E), DivisorClass(0, 0))
        self.assertIsNone(zariski_positive_part(DivisorClass(-1, 0)))

    def test_volume(self):
        self.assertEqual(volume(ANTICANONICAL), 56)
        self.assertEqual(volume(H_X), 0)
        self.assertEqual(volume(DivisorClass(-1, 3)), 0)
        t = Fraction(6, 5)
        self.assertEqual(volume(DivisorClass(4 - 3 * t, -(2 - 2 * t))), Fraction(8, 125))


class VolumeRayTests(SimpleTestCase):

    def test_exceptional_divisor(self):
        ray = vol_ray(E)
        self.assertEqual(ray.breakpoints, (0, 2))
        self.assertEqual(ray.pieces, (UniPoly.constant(64) - UniPoly.linear(2, 1) ** 3,))

    def test_plane_through_p(self):
        ray = vol_ray(H_X)
        self.assertEqual(ray.breakpoints, (0, 2, 4))
        four_minus_t = UniPoly.linear(4, -1)
        self.assertEqual(ray.pieces[0], four_minus_t ** 3 - UniPoly.linear(2, -1) ** 3)
        self.assertEqual(ray.pieces[1], four_minus_t ** 3)

    def test_cubic_surface_class(self):
        ray = vol_ray(T_S)
        self.assertEqual(ray.breakpoints, (0, 1, Fraction(4, 3)))
        self.assertEqual(ray.pieces[1], UniPoly.linear(4, -3) ** 3)

    def test_agrees_with_volume_pointwise(self):
        for F in (E, H_W, H_X, T_S, ANTICANONICAL, DivisorClass(2, -1)):
            ray = vol_ray(F)
            lo, hi = ray.domain
            for k in range(100):
                t = lo + (hi - lo) * Fraction(k, 99)
                with self.subTest(F=str(F), t=t):
                    self.assertEqual(ray(t), volume(ANTICANONICAL - t * F))

    def test_rejects_non_pseudoeffective(self):
        with self.assertRaises(DomainError):
            vol_ray(DivisorClass(-1, 0))
        with self.assertRaises(DomainError):
            vol_ray(DivisorClass(0, 0))


class SInvariantTests(SimpleTestCase):

    def test_published_values(self):
        plain = cusp_pair(0)
        self.assertEqual(s_invariant(plain, E), Fraction(17, 14))
        self.assertEqual(s_invariant(plain, H_W), Fraction(11, 14))
        self.assertEqual(s_invariant(plain, H_X), Fraction(15, 14))
        self.assertEqual(s_invariant(plain, T_S), Fraction(29, 84))
        self.assertEqual(s_invariant(cusp_pair(Fraction(2, 9)), E), Fraction(17, 18))

    def test_anticanonical_class(self):
        for c in (0, Fraction(1, 3), Fraction(5, 7)):
            self.assertEqual(s_invariant(cusp_pair(c), ANTICANONICAL), (1 - Fraction(c)) / 4)

    def test_scales_with_one_minus_c(self):
        rng = random.Random(41)
        for _ in range(20):
            c = Fraction(rng.randint(0, 19), 20)
            for F in (E, H_W, H_X, T_S):
                self.assertEqual(s_invariant(cusp_pair(c), F), (1 - c) * s_invariant(cusp_pair(0), F))

    def test_inverse_homogeneity(self):
        for scale in (Fraction(1, 2), 2, Fraction(7, 3)):
            for F in (E, H_X, T_S):
                self.assertEqual(s_invariant(cusp_pair(0), F * scale), s_invariant(cusp_pair(0), F) / scale)


class DivisorTests(SimpleTestCase):

    def test_classes_from_equations(self):
        self.assertEqual(DivisorOnY.from_equation("H_w", "w").cls, H_W)
        self.assertEqual(DivisorOnY.from_equation("H_x", "x").cls, H_X)
        self.assertEqual(DivisorOnY.from_equation("T_5", torus_surface(5)).cls, T_S)
        self.assertEqual(DivisorOnY.exceptional().cls, E)

    def test_torus_surfaces(self):
        self.assertEqual(torus_surface(1), parse_poly("x*y*w + z^3"))
        self.assertEqual(torus_surface(-2), parse_poly("x*y*w - 2*z^3"))

    def test_invariant_divisors(self):
        labels = [divisor.label for divisor in invariant_divisors()]
        self.assertEqual(labels, ["E", "H_w", "H_x", "H_y", "H_z", "T_1", "T_2"])
        with self.assertRaises(DomainError):
            invariant_divisors(1)
        with self.assertRaises(DomainError):
            invariant_divisors(0)

    def test_log_pair_validation(self):
        with self.assertRaises(DomainError):
            LogPairY(1, parse_poly("x*y*w^2 + z^3*w"))
        with self.assertRaises(DomainError):
            LogPairY(Fraction(1, 2), parse_poly("x^4 + y^4"))
        with self.assertRaises(DomainError):
            LogPairY(Fraction(1, 2), parse_poly("x*y*w"))
        self.assertEqual(cusp_pair(Fraction(1, 2)).boundary_class, ANTICANONICAL)


class BetaTests(SimpleTestCase):

    def setUp(self):
        self.pair = cusp_pair(Fraction(2, 9))
        self.divisors = {divisor.label: divisor for divisor in invariant_divisors(2)}

    def test_published_betas(self):
        expected = {
            "E": Fraction(1, 18),
            "H_w": Fraction(1, 6),
            "H_x": Fraction(1, 6),
            "H_y": Fraction(1, 6),
            "H_z": Fraction(1, 6),
            "T_1": Fraction(55, 108),
            "T_2": Fraction(79, 108),
        }
        for label, value in expected.items():
            with self.subTest(label=label):
                self.assertEqual(beta_divisor(self.pair, self.divisors[label]), value)

    def test_log_discrepancies(self):
        self.assertEqual(log_discrepancy(self.pair, self.divisors["E"]), 1)
        self.assertEqual(log_discrepancy(self.pair, self.divisors["H_w"]), Fraction(7, 9))
        self.assertEqual(log_discrepancy(self.pair, self.divisors["T_1"]), Fraction(7, 9))
        self.assertEqual(log_discrepancy(self.pair, self.divisors["T_2"]), 1)

    def test_all_vertical_betas_positive(self):
        for divisor in invariant_divisors(Fraction(-3, 2)):
            self.assertGreater(beta_divisor(self.pair, divisor), 0)

    def test_non_positive_log_discrepancy(self):
        pair = LogPairY(Fraction(1, 2), parse_poly("x^2*w^2 + y^2*w^2 + z^2*w^2"))
        with self.assertRaises(NonPositiveLogDiscrepancyError):
            beta_divisor(pair, DivisorOnY.from_equation("H_w", "w"))
