import random
from fractions import Fraction

import sympy as sp
from django.test import SimpleTestCase

from kfano.exceptions import (
    DomainError,
    EmptyPolynomialError,
    NonHomogeneousError,
    NonNormalizedFormError,
    NotInFamilyError,
    PolynomialSyntaxError,
    UnknownVariableError,
)
from polyforms import (
    CONE_WEIGHTS,
    CUSP_WEIGHTS,
    HomogPoly,
    SingularityTag,
    SparsePoly,
    classify_singularity,
    collect_by_w,
    cusp_model,
    format_poly,
    limit_1ps,
    monomial_value,
    multiplicity,
    normalize_cusp_limit,
    order_at_p,
    parse_poly,
    parse_sparse,
    quadratic_rank,
    rational_cube_root,
    rescale_variable,
)

S0_PRIME = "x*y*w^2 + z^3*w"
A1_EXAMPLE = "x^2*w^2+y^2*w^2+z^2*w^2 + z^3*w + x^4+y^4+z^4"
A2_EXAMPLE = "x*y*w^2 + z^3*w + x^4+y^4+z^4"
DEGENERATE_EXAMPLE = "x*y*w^2 + (x^3+y^3)*w + x^4"

SYMBOLS = sp.symbols("x y z w")


def random_exponents(rng, degree):
    cuts = sorted(rng.randint(0, degree) for _ in range(3))
    bounds = [0] + cuts + [degree]
    return tuple(bounds[i + 1] - bounds[i] for i in range(4))


def random_form(rng, degree, terms=4):
    coefficients = {}
    for _ in range(terms):
        coefficients[random_exponents(rng, degree)] = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 4))
    return HomogPoly(coefficients, degree=degree)


def cas_terms(text):
    """Coefficients of text expanded by sympy"""
    expr = sp.sympify(text.replace("^", "**"), locals=dict(zip("xyzw", SYMBOLS)))
    return {
        tuple(int(e) for e in exponents): Fraction(int(c.p), int(c.q))
        for exponents, c in sp.Poly(expr, *SYMBOLS).as_dict().items()
    }


class ParserTests(SimpleTestCase):

    def test_cusp_model(self):
        S = parse_poly(S0_PRIME)
        self.assertEqual(S.degree, 4)
        self.assertEqual(dict(S.terms), {(1, 1, 0, 2): 1, (0, 0, 3, 1): 1})
        self.assertEqual(format_poly(S), S0_PRIME)

    def test_implicit_multiplication_and_groups(self):
        self.assertEqual(parse_poly("2xyw^2"), parse_poly("2*x*y*w^2"))
        self.assertEqual(
            parse_poly("(x+y)^2*w^2"),
            parse_poly("x^2*w^2 + 2*x*y*w^2 + y^2*w^2"),
        )
        self.assertEqual(parse_poly(DEGENERATE_EXAMPLE), parse_poly("x*y*w^2 + x^3*w + y^3*w + x^4"))

    def test_rational_coefficients_and_leading_sign(self):
        S = parse_poly("3/2*x^4 - 1/2*y^4")
        self.assertEqual(format_poly(S), "3/2*x^4 - 1/2*y^4")
        self.assertEqual(format_poly(parse_poly("-x^4 + y^4")), "-x^4 + y^4")

    def test_like_terms_combine(self):
        self.assertEqual(format_poly(parse_poly("x^4 + x^4 - y^4 + y^4 + z^4")), "2*x^4 + z^4")

    def test_unknown_variable_reports_position(self):
        with self.assertRaises(UnknownVariableError) as ctx:
            parse_poly("x^4 + q^4")
        self.assertEqual(ctx.exception.position, 6)

    def test_errors(self):
        with self.assertRaises(NonHomogeneousError):
            parse_poly("x^4 + y^3")
        with self.assertRaises(EmptyPolynomialError):
            parse_poly("x^4 - x^4")
        with self.assertRaises(PolynomialSyntaxError):
            parse_poly("x^4 +")
        with self.assertRaises(PolynomialSyntaxError):
            parse_poly("x^4 + 1/0*y^4")
        with self.assertRaises(PolynomialSyntaxError):
            parse_poly("(x + y")

    def test_parse_sparse_allows_mixed_degrees(self):
        poly = parse_sparse("x^2 + y")
        self.assertEqual(poly.degrees(), {1, 2})
        self.assertFalse(poly.is_homogeneous())

    def test_round_trip_corpus(self):
        rng = random.Random(2024)
        corpus = [
            S0_PRIME,
            A1_EXAMPLE,
            A2_EXAMPLE,
            DEGENERATE_EXAMPLE,
            "x*y*w + z^3",
            "x*y*w + 2*z^3",
            "w",
            "-7/3*x*z^2*w",
        ]
        while len(corpus) < 50:
            form = random_form(rng, rng.randint(1, 4))
            if not form.is_zero():
                corpus.append(format_poly(form))
        for text in corpus:
            with self.subTest(text=text):
                parsed = parse_poly(text)
                printed = format_poly(parsed)
                self.assertEqual(parse_poly(printed), parsed)
                self.assertEqual(format_poly(parse_poly(printed)), printed)

    def test_agrees_with_cas_expansion(self):
        for text in [
            "(x + 2*y - z)^2*w^2 + (x - w)*(y + w)*(z^2)",
            "(x*y - 1/3*z^2)^2",
            "(x + y + z + w)^4",
            A1_EXAMPLE,
            DEGENERATE_EXAMPLE,
        ]:
            with self.subTest(text=text):
                self.assertEqual(dict(parse_poly(text).terms), cas_terms(text))


class SparsePolyTests(SimpleTestCase):

    def test_exact_quotient(self):
        S = parse_poly(S0_PRIME)
        self.assertEqual(S.exact_quotient(parse_poly("w")), parse_sparse("x*y*w + z^3"))
        self.assertIsNone(S.exact_quotient(parse_poly("x")))
        with self.assertRaises(DomainError):
            S.exact_quotient(SparsePoly())

    def test_homog_poly_rejects_mixed_degrees(self):
        with self.assertRaises(NonHomogeneousError):
            HomogPoly({(1, 0, 0, 0): 1, (2, 0, 0, 0): 1})
        with self.assertRaises(NonHomogeneousError):
            HomogPoly({(1, 0, 0, 0): 1}, degree=2)

    def test_zero_forms_compare_by_degree(self):
        self.assertEqual(HomogPoly(degree=2), HomogPoly(degree=2))
        self.assertNotEqual(HomogPoly(degree=2), HomogPoly(degree=3))


class FormTests(SimpleTestCase):

    def test_collect_by_w(self):
        f2, f3, f4 = collect_by_w(parse_poly(A2_EXAMPLE))
        self.assertEqual(f2, parse_poly("x*y"))
        self.assertEqual(f3, parse_poly("z^3"))
        self.assertEqual(f4, parse_poly("x^4 + y^4 + z^4"))

    def test_collect_by_w_rejects_points_of_low_multiplicity(self):
        with self.assertRaises(NotInFamilyError):
            collect_by_w(parse_poly("x*w^3 + y^4"))
        with self.assertRaises(NotInFamilyError):
            collect_by_w(parse_poly("x*y*w"))

    def test_quadratic_rank(self):
        self.assertEqual(quadratic_rank(parse_poly("x^2 + y^2 + z^2")), 3)
        self.assertEqual(quadratic_rank(parse_poly("x*y")), 2)
        self.assertEqual(quadratic_rank(parse_poly("(x + y)^2")), 1)
        self.assertEqual(quadratic_rank(HomogPoly(degree=2)), 0)

    def test_classification(self):
        self.assertEqual(classify_singularity(parse_poly(A1_EXAMPLE)).tag, SingularityTag.A1)
        self.assertEqual(classify_singularity(parse_poly(A2_EXAMPLE)).tag, SingularityTag.A2)
        degenerate = classify_singularity(parse_poly(DEGENERATE_EXAMPLE))
        self.assertEqual(degenerate.tag, SingularityTag.DEGENERATE)
        self.assertIn("z^3", degenerate.detail)
        self.assertEqual(
            classify_singularity(parse_poly("x^2*w^2 + z^3*w + y^4")).tag,
            SingularityTag.DEGENERATE,
        )

    def test_rank_two_form_must_be_normalized(self):
        with self.assertRaises(NonNormalizedFormError):
            classify_singularity(parse_poly("x^2*w^2 - y^2*w^2 + z^3*w + x^4"))

    def test_limits(self):
        self.assertEqual(limit_1ps(parse_poly(A2_EXAMPLE), CUSP_WEIGHTS), parse_poly(S0_PRIME))
        self.assertEqual(
            limit_1ps(parse_poly(A1_EXAMPLE), CONE_WEIGHTS),
            parse_poly("x^2*w^2 + y^2*w^2 + z^2*w^2"),
        )

    def test_limit_is_idempotent_and_trivial_for_zero_weights(self):
        rng = random.Random(5)
        for _ in range(20):
            S = random_form(rng, 4, terms=6)
            if S.is_zero():
                continue
            weights = tuple(rng.randint(0, 3) for _ in range(4))
            once = limit_1ps(S, weights)
            self.assertEqual(limit_1ps(once, weights), once)
            self.assertEqual(limit_1ps(S, (0, 0, 0, 0)), S)

    def test_multiplicity(self):
        S = parse_poly(S0_PRIME)
        self.assertEqual(multiplicity(parse_poly("w"), S), 1)
        self.assertEqual(multiplicity(parse_poly("x"), S), 0)
        self.assertEqual(multiplicity(parse_poly("x*y*w + z^3"), S), 1)
        self.assertEqual(multiplicity(parse_poly("x*y*w + 2*z^3"), S), 0)
        with self.assertRaises(DomainError):
            multiplicity(parse_poly("3"), S)

    def test_multiplicity_of_products(self):
        rng = random.Random(11)
        for _ in range(20):
            d = random_form(rng, 1, terms=2)
            g = random_form(rng, 2, terms=3)
            if d.is_zero() or g.is_zero():
                continue
            self.assertEqual(multiplicity(d, d * g), 1 + multiplicity(d, g))

    def test_monomial_value(self):
        S = parse_poly(S0_PRIME)
        self.assertEqual(monomial_value((3, 0, 1), S), 3)
        self.assertEqual(monomial_value((0, 3, 1), S), 3)
        self.assertEqual(monomial_value((1, 1, 1), S), 2)

    def test_monomial_value_is_additive_on_products(self):
        rng = random.Random(23)
        for _ in range(20):
            f = random_form(rng, 2, terms=3)
            g = random_form(rng, 3, terms=3)
            if f.is_zero() or g.is_zero():
                continue
            weights = tuple(rng.randint(0, 4) for _ in range(3))
            self.assertEqual(
                monomial_value(weights, f * g),
                monomial_value(weights, f) + monomial_value(weights, g),
            )

    def test_order_and_rescaling(self):
        self.assertEqual(order_at_p(parse_poly(S0_PRIME)), 2)
        self.assertEqual(order_at_p(parse_poly("w")), 0)
        self.assertEqual(rescale_variable(parse_poly("z^3*w"), 2, 2), parse_poly("8*z^3*w"))

    def test_rational_cube_root(self):
        self.assertEqual(rational_cube_root(Fraction(27, 8)), Fraction(3, 2))
        self.assertEqual(rational_cube_root(-8), -2)
        self.assertIsNone(rational_cube_root(2))


class CuspNormalizationTests(SimpleTestCase):

    def test_rational_cube_rescaling(self):
        normalization = normalize_cusp_limit(parse_poly("2*x*y*w^2 + 16*z^3*w + x^4"))
        self.assertEqual(normalization.gamma, 8)
        self.assertEqual(normalization.cube_root, 2)
        self.assertTrue(normalization.rational_rescaling)
        self.assertEqual(normalization.raw_limit, parse_poly("2*x*y*w^2 + 16*z^3*w"))
        self.assertEqual(normalization.model, cusp_model())

    def test_irrational_cube_is_tracked(self):
        with self.assertLogs("polyforms.forms", level="WARNING"):
            normalization = normalize_cusp_limit(parse_poly("x*y*w^2 + 2*z^3*w + y^4"))
        self.assertIsNone(normalization.cube_root)
        self.assertFalse(normalization.rational_rescaling)
        self.assertEqual(normalization.model, parse_poly(S0_PRIME))
