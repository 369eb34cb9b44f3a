"""
Parser for polynomial text.

Grammar (whitespace insignificant):

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*'? factor)*
    factor := rational | var ('^' int)? | '(' expr ')' ('^' int)?
    var    := x | y | z | w
    rational := int ('/' int)?

The leading sign is an extension so that printed polynomials with a negative
first coefficient read back.
"""

import logging
from fractions import Fraction

import pyparsing as pp

from kfano.exceptions import (
    EmptyPolynomialError,
    NonHomogeneousError,
    PolynomialSyntaxError,
    UnknownVariableError,
)

from .polynomials import VARIABLES, HomogPoly, SparsePoly

logger = logging.getLogger(__name__)


def _number_action(s, loc, toks):
    numerator, _, denominator = toks[0].partition("/")
    if denominator and int(denominator) == 0:
        raise PolynomialSyntaxError("zero denominator in coefficient", position=loc)
    return SparsePoly.constant(Fraction(int(numerator), int(denominator or 1)))


def _variable_action(s, loc, toks):
    name = toks[0]
    if name not in VARIABLES:
        raise UnknownVariableError(
            f"unknown variable {name!r}; only {', '.join(VARIABLES)} are allowed", position=loc
        )
    exponent = int(toks[1]) if len(toks) > 1 else 1
    return SparsePoly.variable(name) ** exponent


def _group_action(s, loc, toks):
    exponent = int(toks[1]) if len(toks) > 1 else 1
    return toks[0] ** exponent


def _product_action(s, loc, toks):
    result = SparsePoly.constant(1)
    for factor in toks:
        result = result * factor
    return result


def _sum_action(s, loc, toks):
    tokens = list(toks)
    if not isinstance(tokens[0], str):
        tokens.insert(0, "+")
    result = SparsePoly()
    for sign, term in zip(tokens[0::2], tokens[1::2]):
        result = result + term if sign == "+" else result - term
    return result


def _build_grammar():
    expr = pp.Forward()
    integer = pp.Word(pp.nums)
    power = pp.Opt(pp.Suppress("^") + integer)
    number = pp.Regex(r"\d+(?:/\d+)?").set_parse_action(_number_action)
    variable = (pp.Char(pp.alphas) + power).set_parse_action(_variable_action)
    group = (pp.Suppress("(") + expr + pp.Suppress(")") + power).set_parse_action(_group_action)
    factor = number | variable | group
    term = (factor + pp.ZeroOrMore(pp.Opt(pp.Suppress("*")) + factor)).set_parse_action(_product_action)
    sign = pp.one_of("+ -")
    expr <<= (pp.Opt(sign) + term + pp.ZeroOrMore(sign + term)).set_parse_action(_sum_action)
    return expr


_GRAMMAR = _build_grammar()


def parse_sparse(text):
    """Parse without any homogeneity requirement"""
    try:
        return _GRAMMAR.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise PolynomialSyntaxError(f"syntax error: {exc.msg}", position=exc.loc) from exc


def parse_poly(text):
    """
    Parse a homogeneous polynomial in x, y, z, w.

    Like terms are combined and zero terms dropped; an input that cancels to
    zero is rejected.
    """
    poly = parse_sparse(text)
    if poly.is_zero():
        raise EmptyPolynomialError(f"empty polynomial: {text!r} cancels to zero")
    if not poly.is_homogeneous():
        raise NonHomogeneousError(
            f"polynomial is not homogeneous: degrees {sorted(poly.degrees())} in {text!r}"
        )
    result = HomogPoly.of(poly)
    logger.debug(f"Parsed {text!r} as degree-{result.degree} form with {len(result.terms)} terms")
    return result
