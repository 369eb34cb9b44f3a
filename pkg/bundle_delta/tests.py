import random
from fractions import Fraction

import sympy as sp
from django.test import SimpleTestCase

from bundle_delta import (
    BundleDeltaInput,
    delta_bundle,
    delta_conic_pair,
    family_a_closed_forms,
    family_a_terms,
    find_balanced_c,
    mean_coefficient_check,
)
from kfano.exceptions import DomainError, HypothesisError


class DeltaBundleTests(SimpleTestCase):

    def test_projective_line_bundle_regression(self):
        inp = BundleDeltaInput(n=1, r=2, a=0, b=0, delta_base=1)
        self.assertEqual((inp.A, inp.B), (1, 3))
        breakdown = delta_bundle(inp)
        self.assertEqual(breakdown.mean_M, Fraction(13, 6))
        self.assertEqual(breakdown.terms, (Fraction(12, 13), Fraction(6, 7), Fraction(6, 5)))
        self.assertEqual(breakdown.delta, Fraction(6, 7))

    def test_hypothesis_names_the_inequality(self):
        with self.assertRaises(HypothesisError) as ctx:
            BundleDeltaInput(n=1, r=1, a=0, b=0, delta_base=1)
        self.assertEqual(ctx.exception.inequality, "1 - r < a < 1")
        self.assertIn("1 - r < a < 1", str(ctx.exception))

    def test_other_hypotheses(self):
        cases = [
            (dict(n=0, r=2, a=0, b=0, delta_base=1), "n >= 1"),
            (dict(n=1, r=0, a=0, b=0, delta_base=1), "r > 0"),
            (dict(n=1, r=2, a=Fraction(-1, 2), b=0, delta_base=1), "0 <= a < 1"),
            (dict(n=1, r=2, a=0, b=1, delta_base=1), "0 <= b < 1"),
            (dict(n=1, r=2, a=0, b=0, delta_base=0), "delta(V, Delta) > 0"),
        ]
        for kwargs, inequality in cases:
            with self.subTest(inequality=inequality):
                with self.assertRaises(HypothesisError) as ctx:
                    BundleDeltaInput(**kwargs)
                self.assertEqual(ctx.exception.inequality, inequality)

    def test_small_r_with_positive_a(self):
        breakdown = delta_bundle(BundleDeltaInput(n=1, r=Fraction(1, 2), a=Fraction(3, 4), b=0, delta_base=1))
        self.assertGreater(breakdown.delta, 0)

    def test_mean_lies_strictly_between_a_and_b(self):
        rng = random.Random(13)
        for _ in range(200):
            r = Fraction(rng.randint(1, 40), rng.randint(1, 10))
            if r > 1:
                a = Fraction(rng.randint(0, 9), 10)
            else:
                a = 1 - r + r * Fraction(rng.randint(1, 9), 10)
            inp = BundleDeltaInput(
                n=rng.randint(1, 5),
                r=r,
                a=a,
                b=Fraction(rng.randint(0, 9), 10),
                delta_base=Fraction(rng.randint(1, 10), rng.randint(1, 10)),
            )
            with self.subTest(inp=inp):
                breakdown = delta_bundle(inp)
                self.assertLess(inp.A, breakdown.mean_M)
                self.assertLess(breakdown.mean_M, inp.B)
                self.assertEqual(breakdown.delta, min(breakdown.terms))


class ConicPairTests(SimpleTestCase):

    def test_threshold(self):
        self.assertEqual(delta_conic_pair(Fraction(1, 2)), 1)
        self.assertIsNone(delta_conic_pair(Fraction(3, 4)))
        self.assertIsNone(delta_conic_pair(Fraction(9, 10)))
        for c in (0, 1, Fraction(-1, 3)):
            with self.assertRaises(DomainError):
                delta_conic_pair(c)


class FamilyATests(SimpleTestCase):

    def test_balanced_coefficient(self):
        self.assertEqual(family_a_terms(Fraction(3, 17)).terms, (1, 1, 1))
        self.assertEqual(family_a_terms(Fraction(3, 17)).delta, 1)
        self.assertEqual(find_balanced_c(), Fraction(3, 17))

    def test_delta_peaks_at_balanced_coefficient(self):
        balanced = Fraction(3, 17)
        for k in range(1, 500):
            c = Fraction(k, 1000)
            with self.subTest(c=c):
                self.assertLess(family_a_terms(c).delta, 1)
        self.assertEqual(family_a_terms(balanced).delta, 1)

    def test_terms_split_off_balance(self):
        terms = family_a_terms(Fraction(3, 17) + Fraction(1, 1000)).terms
        self.assertGreater(len(set(terms)), 1)
        self.assertLess(min(terms), 1)

    def test_quarter(self):
        breakdown = family_a_terms(Fraction(1, 4))
        self.assertEqual(breakdown.terms, (Fraction(28, 27), Fraction(56, 51), Fraction(28, 33)))
        self.assertEqual(breakdown.delta, Fraction(28, 33))

    def test_closed_forms_at_zero(self):
        self.assertEqual(family_a_closed_forms(0), (Fraction(14, 15), Fraction(14, 17), Fraction(14, 11)))

    def test_outside_range(self):
        for c in (0, Fraction(1, 2), Fraction(3, 5)):
            with self.subTest(c=c):
                with self.assertRaises(HypothesisError):
                    family_a_terms(c)

    def test_terms_match_closed_forms(self):
        rng = random.Random(50)
        for _ in range(50):
            c = Fraction(rng.randint(1, 999), 2000)
            with self.subTest(c=c):
                self.assertEqual(family_a_terms(c).terms, family_a_closed_forms(c))

    def test_closed_forms_symbolically(self):
        c = sp.symbols("c")
        A = 2 - 2 * c
        B = 2 * A
        M = sp.Rational(3, 4) * (B ** 4 - A ** 4) / (B ** 3 - A ** 3)
        formula = ((3 - 2 * c) / M, 1 / (M - A), (1 - 2 * c) / (B - M))
        printed = (
            28 * (3 - 2 * c) / (45 * A),
            sp.Integer(28) / (17 * A),
            28 * (1 - 2 * c) / (11 * A),
        )
        for term, closed in zip(formula, printed):
            self.assertEqual(sp.simplify(term - closed), 0)


class MeanCoefficientTests(SimpleTestCase):

    def test_detects_printed_inconsistency(self):
        with self.assertLogs("bundle_delta.formula", level="WARNING"):
            check = mean_coefficient_check()
        self.assertEqual(check.published, Fraction(15, 7))
        self.assertEqual(check.computed, Fraction(45, 28))
        self.assertFalse(check.consistent)
        self.assertTrue(check.computed_reproduces_terms)
        self.assertFalse(check.published_reproduces_terms)
