import random
from fractions import Fraction

from django.test import SimpleTestCase

from exactnum import PiecewisePoly, UniPoly, as_rational, format_rational, integrate_piecewise, poly_eval
from kfano.exceptions import ConsistencyError, DomainError


def random_rational(rng, bound=20):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_poly(rng, degree=3):
    return UniPoly(tuple(random_rational(rng) for _ in range(degree + 1)))


class AsRationalTests(SimpleTestCase):

    def test_accepts_ints_fractions_and_text(self):
        self.assertEqual(as_rational(3), Fraction(3))
        self.assertEqual(as_rational(Fraction(2, 9)), Fraction(2, 9))
        self.assertEqual(as_rational("3/17"), Fraction(3, 17))
        self.assertEqual(as_rational(" -4 "), Fraction(-4))

    def test_rejects_floats_and_malformed_text(self):
        for value in (0.5, "0.5", "1e3", True, "abc", "", "1/0", None):
            with self.subTest(value=value):
                with self.assertRaises(DomainError):
                    as_rational(value)

    def test_format_always_has_a_slash(self):
        self.assertEqual(format_rational(1), "1/1")
        self.assertEqual(format_rational(Fraction(-3, 4)), "-3/4")
        self.assertEqual(format_rational("10/4"), "5/2")


class UniPolyTests(SimpleTestCase):

    def test_evaluation_and_calculus(self):
        p = UniPoly((1, 2, 3))
        self.assertEqual(p(2), 17)
        self.assertEqual(p.degree, 2)
        self.assertEqual(p.derivative(), UniPoly((2, 6)))
        self.assertEqual(p.integrate(0, 1), 3)
        self.assertEqual(str(p), "3*t^2 + 2*t + 1")

    def test_trailing_zeros_are_dropped(self):
        self.assertEqual(UniPoly((1, 0, 0)), UniPoly.constant(1))
        self.assertTrue(UniPoly((0, 0)).is_zero())
        self.assertEqual(str(UniPoly()), "0")

    def test_binomial_cube(self):
        self.assertEqual(UniPoly.linear(-1, 1) ** 3, UniPoly((-1, 3, -3, 1)))

    def test_negative_power_rejected(self):
        with self.assertRaises(DomainError):
            UniPoly.linear(0, 1) ** -1

    def test_arithmetic_agrees_with_evaluation(self):
        rng = random.Random(17)
        for _ in range(50):
            p, q = random_poly(rng), random_poly(rng, degree=2)
            t = random_rational(rng)
            self.assertEqual((p * q)(t), p(t) * q(t))
            self.assertEqual((p + q)(t), p(t) + q(t))
            self.assertEqual((p - q)(t), p(t) - q(t))
            self.assertEqual(poly_eval(p, t), p(t))

    def test_antiderivative_inverts_derivative(self):
        rng = random.Random(3)
        for _ in range(20):
            p = random_poly(rng)
            self.assertEqual(p.antiderivative().derivative(), p)


class PiecewisePolyTests(SimpleTestCase):

    def setUp(self):
        # 1 on [0, 1], t on [1, 2]
        self.f = PiecewisePoly((0, 1, 2), (UniPoly.constant(1), UniPoly.linear(0, 1)))

    def test_left_piece_wins_at_interior_breakpoints(self):
        self.assertEqual(self.f.piece_index(1), 0)
        self.assertEqual(self.f(Fraction(3, 2)), Fraction(3, 2))
        self.assertEqual(self.f.domain, (0, 2))

    def test_integral(self):
        self.assertEqual(self.f.integrate(), Fraction(5, 2))
        self.assertEqual(self.f.integrate(Fraction(1, 2), Fraction(3, 2)), Fraction(1, 2) + Fraction(5, 8))
        self.assertEqual(self.f.scaled(2).integrate(), 5)

    def test_outside_domain(self):
        with self.assertRaises(DomainError):
            self.f(3)
        with self.assertRaises(DomainError):
            integrate_piecewise(self.f, 0, 3)
        with self.assertRaises(DomainError):
            integrate_piecewise(self.f, 2, 1)

    def test_continuity(self):
        self.assertTrue(self.f.is_continuous())
        jump = PiecewisePoly((0, 1, 2), (UniPoly.constant(1), UniPoly.constant(2)))
        self.assertFalse(jump.is_continuous())
        with self.assertRaises(ConsistencyError):
            jump.assert_continuous()

    def test_invalid_breakpoints(self):
        with self.assertRaises(DomainError):
            PiecewisePoly((0, 0, 1), (UniPoly(), UniPoly()))
        with self.assertRaises(DomainError):
            PiecewisePoly((0, 1), (UniPoly(), UniPoly()))
        with self.assertRaises(DomainError):
            PiecewisePoly((0,), ())

    def test_exceptional_divisor_volume_integral(self):
        ray = PiecewisePoly((0, 2), (UniPoly.constant(64) - UniPoly.linear(2, 1) ** 3,))
        self.assertEqual(ray.integrate() / 56, Fraction(17, 14))


class InterpolationTests(SimpleTestCase):

    def test_recovers_truncated_cube(self):
        def func(t):
            return max(Fraction(0), 1 - t) ** 3

        f = PiecewisePoly.interpolate(func, [0, 1, 2])
        self.assertEqual(f.pieces[0], UniPoly.linear(1, -1) ** 3)
        self.assertTrue(f.pieces[1].is_zero())
        self.assertEqual(f.integrate(), Fraction(1, 4))

    def test_rejects_higher_degree(self):
        with self.assertRaises(ConsistencyError):
            PiecewisePoly.interpolate(lambda t: t ** 4, [0, 1], degree=3)

    def test_duplicate_breakpoints_are_merged(self):
        f = PiecewisePoly.interpolate(lambda t: 2 * t, [0, 1, 1, Fraction(1, 1)], degree=1)
        self.assertEqual(f.breakpoints, (0, 1))
