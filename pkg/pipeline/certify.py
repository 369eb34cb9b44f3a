"""
End-to-end certification of a quartic S in P^3 with a double point at
p = [0:0:0:1].

    A1 at p:  S degenerates to f2*w^2; the bundle formula gives delta = 1 for
              (Y, 3/17 * S_0).
    A2 at p:  S degenerates to x*y*w^2 + z^3*w; beta > 0 on every vertical
              torus-invariant divisor and the Futaki invariant vanishes at
              c = 2/9.

Either way the remaining steps (openness, the K-stable endpoint,
interpolation and the double cover) are cited, not computed.
"""

import asyncio
import json
import logging
from dataclasses import dataclass, replace
from fractions import Fraction

from asgiref.sync import async_to_sync, sync_to_async
from django.conf import settings
from rest_framework.renderers import JSONRenderer

from bundle_delta import family_a_terms, mean_coefficient_check
from divgeom import LogPairY, beta_divisor, invariant_divisors, log_discrepancy, s_invariant
from exactnum import as_rational, format_rational
from kfano.exceptions import DomainError
from polyforms import (
    CONE_WEIGHTS,
    CUSP_WEIGHTS,
    SingularityTag,
    classify_singularity,
    format_poly,
    limit_1ps,
    normalize_cusp_limit,
    parse_poly,
)
from valuations import (
    LAMBDA_0,
    LAMBDA_1,
    FutakiReport,
    futaki_value,
    volume_integral_valuation,
)

from .report import (
    CertificationReport,
    CheckStatus,
    ChecklistItem,
    Computation,
    Deduction,
    DeductionKind,
    Degeneration,
    Verdict,
    verdict_for,
)
from .serializers import CertificationReportSerializer

logger = logging.getLogger(__name__)

FAMILY_A_C = Fraction(3, 17)
FAMILY_B_C = Fraction(2, 9)

COMPUTED = DeductionKind.COMPUTED
CITED = DeductionKind.CITED

DIVISOR_ANCHORS = {
    "E": "§3(i)",
    "H_w": "§3(ii)",
    "H_x": "§3(iii)",
    "H_y": "§3(iii)",
    "H_z": "§3(iii)",
}
TORUS_SURFACE_ANCHOR = "§3(iv)"


def divisor_anchor(label):
    if label.startswith("T_"):
        return TORUS_SURFACE_ANCHOR
    return DIVISOR_ANCHORS[label]


def validate_coefficient(value, source="c"):
    c = as_rational(value)
    if not 0 < c < Fraction(1, 2):
        raise DomainError(f"the coefficient {source} = {c} must lie in (0, 1/2)")
    return c


@dataclass(frozen=True)
class CertificationOptions:
    c: Fraction | None = None
    generic_s: Fraction = Fraction(2)
    allow_singular: bool = False
    concurrent: bool = True

    def __post_init__(self):
        if self.c is not None:
            object.__setattr__(self, "c", validate_coefficient(self.c))
        object.__setattr__(self, "generic_s", as_rational(self.generic_s))

    @classmethod
    def from_settings(cls, **overrides):
        config = getattr(settings, "KFANO", {})
        values = {
            "generic_s": config.get("GENERIC_S", "2"),
            "concurrent": config.get("CONCURRENT", True),
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


def _configured_c(key, default):
    value = getattr(settings, "KFANO", {}).get(key, format_rational(default))
    return validate_coefficient(value, f"KFANO[{key!r}]")


def _chosen_c(options, key, default):
    if options.c is not None:
        if options.c != default:
            logger.warning(f"coefficient overridden: c = {options.c} instead of {default}")
        return options.c
    return _configured_c(key, default)


def run_calls(calls, concurrent=True):
    """
    Evaluate (function, *args) tuples and return results in input order.

    With concurrent=True the calls run on worker threads and are gathered.
    """
    if not concurrent:
        return [fn(*args) for fn, *args in calls]

    async def gather():
        return await asyncio.gather(
            *(sync_to_async(fn, thread_sensitive=False)(*args) for fn, *args in calls)
        )

    return async_to_sync(gather)()


def _weights(weights):
    return tuple(Fraction(w) for w in weights)


def _weights_text(weights):
    return "(" + ",".join(str(w) for w in weights) + ")"


def closing_deductions(c):
    """Cited steps shared by both subfamilies"""
    return [
        Deduction(
            f"the special degeneration and openness of K-semistability give (Y, {c}*S) K-semistable",
            CITED,
            "BLX19, Xu19",
        ),
        Deduction("(Y, (1-eps)*S) is K-stable for 0 < eps << 1", CITED, "ADL21 Theorem 2.10; JMR16 Corollary 1"),
        Deduction(
            f"interpolation between c = {c} and c = 1 - eps gives (Y, 1/2*S) K-stable",
            CITED,
            "ADL19 Proposition 2.13",
        ),
        Deduction(
            "the double cover X of Y branched in S is K-stable, since Aut(X) is finite",
            CITED,
            "Der16 Theorem 1.3; LZ22 Theorem 1.2; Zhu20 Corollary 4.13; CPS19 Lemma 12.4",
        ),
    ]


def _smoothness_assumption(options):
    if options.allow_singular:
        return ChecklistItem("S may be singular away from p (singular members allowed)", CheckStatus.RECORDED)
    return ChecklistItem("S is smooth away from p (input assumption)", CheckStatus.RECORDED)


def _degenerate_report(text, classification, options):
    logger.info(f"Degenerate input: {classification.detail}")
    return CertificationReport(
        input_surface=text,
        subfamily=classification.tag,
        degeneration=None,
        chosen_c=None,
        computations=(),
        checklist=(
            ChecklistItem("the double point at p is of type A1 or A2", CheckStatus.FAIL),
            _smoothness_assumption(options),
        ),
        deductions=(Deduction(classification.detail, COMPUTED, "classification"),),
        verdict=Verdict.DEGENERATE_INPUT,
    )


def _certify_family_a(text, surface, options):
    c = _chosen_c(options, "FAMILY_A_C", FAMILY_A_C)
    limit = limit_1ps(surface, CONE_WEIGHTS)
    breakdown = family_a_terms(c)
    mean = mean_coefficient_check()
    computations = [
        Computation("delta(P^2, c*C_0)", Fraction(1), "§2"),
        Computation("M/A", mean.computed, "Eq. (delta-2)"),
        Computation("M", breakdown.mean_M, "Eq. (delta-2)"),
        Computation("delta term (base)", breakdown.term_base, "Eq. (delta-3)"),
        Computation("delta term (V_0)", breakdown.term_zero, "Eq. (delta-3)"),
        Computation("delta term (V_inf)", breakdown.term_infty, "Eq. (delta-3)"),
        Computation("delta(Y, c*S_0)", breakdown.delta, "Prop. 2.8a"),
    ]
    checklist = [
        ChecklistItem("f2 has full rank: the double point at p is of type A1", CheckStatus.PASS),
        ChecklistItem(
            "delta(Y, c*S_0) >= 1",
            CheckStatus.PASS if breakdown.delta >= 1 else CheckStatus.FAIL,
        ),
        _smoothness_assumption(options),
    ]
    deductions = [
        Deduction(
            f"the 1-PS with weights {_weights_text(CONE_WEIGHTS)} degenerates S to S_0 = {format_poly(limit)}",
            COMPUTED,
            "§2",
        ),
        Deduction("(P^2, c*C_0) is K-polystable for c < 3/4, so delta(P^2, c*C_0) = 1", CITED, "LS14 Theorem 1.5; Fuj20"),
        Deduction(
            f"Y is the P^1-bundle P(O(-1) + O) over P^2 and the bundle formula gives delta(Y, {c}*S_0) = {breakdown.delta}",
            COMPUTED,
            "ZZ22 Theorem 1.3",
        ),
        Deduction(
            f"the mean coefficient M/A for B = 2A is {mean.computed}; the closed forms follow from it",
            COMPUTED,
            "Eq. (delta-2)",
        ),
        Deduction(f"delta >= 1 gives (Y, {c}*S_0) K-semistable", CITED, "FO16, BJ17"),
    ]
    deductions += closing_deductions(c)
    return CertificationReport(
        input_surface=text,
        subfamily=SingularityTag.A1,
        degeneration=Degeneration(_weights(CONE_WEIGHTS), format_poly(limit)),
        chosen_c=c,
        computations=computations,
        checklist=checklist,
        deductions=deductions,
        verdict=verdict_for(checklist),
    )


def divisor_profile(pair, divisor):
    """(S_Y, A, beta) of a divisor on Y for the pair"""
    s_plain = s_invariant(replace(pair, c=Fraction(0)), divisor.cls)
    return s_plain, log_discrepancy(pair, divisor), beta_divisor(pair, divisor)


def _certify_family_b(text, surface, options):
    c = _chosen_c(options, "FAMILY_B_C", FAMILY_B_C)
    normalization = normalize_cusp_limit(surface)
    pair = LogPairY(c, normalization.model)
    divisors = invariant_divisors(options.generic_s)
    basis = (LAMBDA_0, LAMBDA_1)

    calls = [(divisor_profile, pair, divisor) for divisor in divisors]
    calls += [(futaki_value, pair, v) for v in basis]
    calls += [(volume_integral_valuation, v) for v in basis]
    results = run_calls(calls, options.concurrent)
    profiles = results[:len(divisors)]
    futaki_values = tuple(results[len(divisors):len(divisors) + len(basis)])
    integrals = results[len(divisors) + len(basis):]
    futaki = FutakiReport(passed=all(value.beta == 0 for value in futaki_values), values=futaki_values)

    computations = []
    for divisor, (s_plain, a, beta) in zip(divisors, profiles):
        anchor = divisor_anchor(divisor.label)
        computations += [
            Computation(f"S_Y({divisor.label})", s_plain, anchor),
            Computation(f"A({divisor.label})", a, anchor),
            Computation(f"beta({divisor.label})", beta, anchor),
        ]
    for value, integral in zip(futaki.values, integrals):
        computations += [
            Computation(f"A(v{value.valuation})", value.a, "eq:Av"),
            Computation(f"int vol(-K_Y - t*v{value.valuation}) dt", integral, "eq:Sv"),
            Computation(f"S(v{value.valuation})", value.s, "eq:Sv"),
            Computation(f"beta(v{value.valuation})", value.beta, "Prop. 2.8b"),
        ]

    betas_positive = all(beta > 0 for _, _, beta in profiles)
    checklist = [
        ChecklistItem("f2 = x*y and f3 has a nonzero z^3 term: the double point at p is of type A2", CheckStatus.PASS),
        ChecklistItem(
            "beta(F) > 0 for every vertical T-invariant prime divisor F",
            CheckStatus.PASS if betas_positive else CheckStatus.FAIL,
        ),
        ChecklistItem(
            "beta(F) = 0 for every horizontal T-invariant prime divisor F "
            "(no horizontal T-invariant prime divisors: all of them are vertical)",
            CheckStatus.RECORDED,
        ),
        ChecklistItem(
            "Fut(lambda) = 0 on the cocharacter lattice, checked on lambda_0 and lambda_1",
            CheckStatus.PASS if futaki.passed else CheckStatus.FAIL,
        ),
        _smoothness_assumption(options),
    ]

    if normalization.rational_rescaling:
        rescaling = f"rescaling z by {normalization.cube_root} gives x*y*w^2 + z^3*w exactly"
    else:
        rescaling = (
            f"rescaling z by the cube root of {normalization.gamma} (not rational) "
            "gives the projectively equivalent x*y*w^2 + z^3*w"
        )
    deductions = [
        Deduction(
            f"the 1-PS with weights {_weights_text(CUSP_WEIGHTS)} degenerates S to "
            f"{format_poly(normalization.raw_limit)}",
            COMPUTED,
            "§3",
        ),
        Deduction(rescaling, COMPUTED, "§3"),
        Deduction(
            f"S-invariants of (Y, {c}*S_0') scale as (1 - c) times those of Y; "
            f"the T_s family is sampled at s = 1 and s = {options.generic_s}, "
            "their S-invariants agree",
            COMPUTED,
            "BJ17 Lemma 3.7(i)",
        ),
        Deduction(
            "the Futaki invariant of a 1-PS equals beta of its induced valuation",
            COMPUTED,
            "Fuj16 Theorem 5.1",
        ),
        Deduction(
            f"the complexity-one criterion gives (Y, {c}*S_0') K-polystable, hence K-semistable",
            CITED,
            "ACC+ Theorem 1.3.9; IS17",
        ),
    ]
    deductions += closing_deductions(c)
    return CertificationReport(
        input_surface=text,
        subfamily=SingularityTag.A2,
        degeneration=Degeneration(_weights(CUSP_WEIGHTS), format_poly(normalization.model)),
        chosen_c=c,
        computations=computations,
        checklist=checklist,
        deductions=deductions,
        verdict=verdict_for(checklist),
    )


def certify(surface_text, options=None):
    """
    Classify the double point of the quartic at p and run the matching suite.

    Parse and family errors propagate; a degenerate double point gives a
    DEGENERATE_INPUT report.
    """
    if options is None:
        options = CertificationOptions.from_settings()
    surface = parse_poly(surface_text)
    text = format_poly(surface)
    classification = classify_singularity(surface)
    logger.info(f"Classified {text} as {classification.tag.value}")
    if classification.tag == SingularityTag.DEGENERATE:
        report = _degenerate_report(text, classification, options)
    elif classification.tag == SingularityTag.A1:
        report = _certify_family_a(text, surface, options)
    else:
        report = _certify_family_b(text, surface, options)
    logger.info(f"Verdict for {text}: {report.verdict.value}")
    return report


def emit_report(report, format="json"):
    """Serialize a report deterministically to bytes"""
    if format == "json":
        data = CertificationReportSerializer(report).data
        return JSONRenderer().render(data, renderer_context={"indent": 2}) + b"\n"
    if format == "text":
        return render_text(report).encode("utf-8")
    raise DomainError(f"unknown report format: {format!r}")


def render_text(report):
    lines = [
        f"input: {report.input_surface}",
        f"subfamily: {report.subfamily.value}",
    ]
    if report.degeneration is not None:
        lines.append(
            f"degeneration: weights {_weights_text(report.degeneration.weights)} -> {report.degeneration.limit}"
        )
    if report.chosen_c is not None:
        lines.append(f"c: {format_rational(report.chosen_c)}")
    lines.append("")
    lines.append("computations:")
    for computation in report.computations:
        lines.append(f"  {computation.name} = {format_rational(computation.value)}  [{computation.anchor}]")
    lines.append("")
    lines.append("checklist:")
    for item in report.checklist:
        lines.append(f"  [{item.status.value}] {item.condition}")
    lines.append("")
    lines.append("deductions:")
    for number, deduction in enumerate(report.deductions, start=1):
        lines.append(f"  {number}. ({deduction.kind.value}) {deduction.step}  {{{deduction.citation}}}")
    lines.append("")
    lines.append(f"verdict: {report.verdict.value}")
    return "\n".join(lines) + "\n"


def parse_report(payload):
    """Rebuild a report from its JSON serialization"""
    serializer = CertificationReportSerializer(data=json.loads(payload))
    serializer.is_valid(raise_exception=True)
    return serializer.save()
