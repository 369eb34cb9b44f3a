import json
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings

from kfano.__main__ import main, normalize_argv
from kfano.exceptions import DomainError, NonNormalizedFormError, PolynomialSyntaxError
from pipeline.certify import CertificationOptions, certify, emit_report, parse_report, run_calls
from pipeline.models import CertificationRun
from pipeline.report import CheckStatus, DeductionKind, Verdict
from pipeline.suite import run_paper_suite
from polyforms import SingularityTag

A1_EXAMPLE = "x^2*w^2+y^2*w^2+z^2*w^2 + z^3*w + x^4+y^4+z^4"
A2_EXAMPLE = "x*y*w^2 + z^3*w + x^4+y^4+z^4"
DEGENERATE_EXAMPLE = "x*y*w^2 + (x^3+y^3)*w + x^4"


def statuses(report):
    return [item.status for item in report.checklist]


class CertifyTests(SimpleTestCase):

    def test_family_a(self):
        report = certify(A1_EXAMPLE)
        self.assertEqual(report.subfamily, SingularityTag.A1)
        self.assertEqual(report.chosen_c, Fraction(3, 17))
        self.assertEqual(report.degeneration.weights, (0, 0, 0, 1))
        self.assertEqual(report.degeneration.limit, "x^2*w^2 + y^2*w^2 + z^2*w^2")
        for name in ("delta term (base)", "delta term (V_0)", "delta term (V_inf)", "delta(Y, c*S_0)"):
            self.assertEqual(report.value_of(name), 1)
        self.assertEqual(report.value_of("M/A"), Fraction(45, 28))
        self.assertEqual(report.verdict, Verdict.CERTIFIED)

    def test_family_b(self):
        report = certify(A2_EXAMPLE)
        self.assertEqual(report.subfamily, SingularityTag.A2)
        self.assertEqual(report.chosen_c, Fraction(2, 9))
        self.assertEqual(report.degeneration.weights, (0, 0, 1, 3))
        self.assertEqual(report.degeneration.limit, "x*y*w^2 + z^3*w")
        first = report.computations[0]
        self.assertEqual((first.name, first.value, first.anchor), ("S_Y(E)", Fraction(17, 14), "§3(i)"))
        expected = {
            "beta(E)": Fraction(1, 18),
            "beta(H_w)": Fraction(1, 6),
            "beta(H_x)": Fraction(1, 6),
            "beta(T_1)": Fraction(55, 108),
            "beta(T_2)": Fraction(79, 108),
            "A(v(3,0,1))": Fraction(10, 3),
            "int vol(-K_Y - t*v(3,0,1)) dt": 240,
            "S(v(3,0,1))": Fraction(10, 3),
            "beta(v(3,0,1))": 0,
            "beta(v(0,3,1))": 0,
        }
        for name, value in expected.items():
            with self.subTest(name=name):
                self.assertEqual(report.value_of(name), value)
        self.assertIn(CheckStatus.RECORDED, statuses(report))
        self.assertNotIn(CheckStatus.FAIL, statuses(report))
        self.assertEqual(report.verdict, Verdict.CERTIFIED)

    def test_computation_anchors(self):
        anchors = {computation.name: computation.anchor for computation in certify(A2_EXAMPLE).computations}
        self.assertEqual(anchors["S_Y(E)"], "§3(i)")
        self.assertEqual(anchors["beta(H_w)"], "§3(ii)")
        self.assertEqual(anchors["beta(H_z)"], "§3(iii)")
        self.assertEqual(anchors["beta(T_2)"], "§3(iv)")
        self.assertEqual(anchors["A(v(3,0,1))"], "eq:Av")
        self.assertEqual(anchors["S(v(0,3,1))"], "eq:Sv")
        anchors = {computation.name: computation.anchor for computation in certify(A1_EXAMPLE).computations}
        self.assertEqual(anchors["delta term (V_0)"], "Eq. (delta-3)")
        self.assertEqual(anchors["delta(Y, c*S_0)"], "Prop. 2.8a")

    def test_configured_coefficient_is_validated(self):
        for key, text, value in (("FAMILY_B_C", A2_EXAMPLE, "1/2"), ("FAMILY_A_C", A1_EXAMPLE, "0")):
            config = dict(settings.KFANO, **{key: value})
            with self.subTest(key=key), override_settings(KFANO=config):
                with self.assertRaises(DomainError) as ctx:
                    certify(text)
                self.assertIn(key, str(ctx.exception))

    def test_degenerate_input(self):
        report = certify(DEGENERATE_EXAMPLE)
        self.assertEqual(report.subfamily, SingularityTag.DEGENERATE)
        self.assertEqual(report.verdict, Verdict.DEGENERATE_INPUT)
        self.assertIsNone(report.degeneration)
        self.assertIsNone(report.chosen_c)
        self.assertIn("z^3", report.deductions[0].step)

    def test_deduction_chain_shape(self):
        for text in (A1_EXAMPLE, A2_EXAMPLE):
            report = certify(text)
            kinds = [deduction.kind for deduction in report.deductions]
            self.assertEqual(kinds[-4:], [DeductionKind.CITED] * 4)
            self.assertIn("ADL19", report.deductions[-2].citation)
            self.assertTrue(all(deduction.citation for deduction in report.deductions))

    def test_overridden_c_can_fail(self):
        report = certify(A2_EXAMPLE, CertificationOptions(c=Fraction(1, 4)))
        self.assertEqual(report.verdict, Verdict.NOT_APPLICABLE)
        self.assertIn(CheckStatus.FAIL, statuses(report))
        report = certify(A1_EXAMPLE, CertificationOptions(c=Fraction(1, 4)))
        self.assertEqual(report.value_of("delta(Y, c*S_0)"), Fraction(28, 33))
        self.assertEqual(report.verdict, Verdict.NOT_APPLICABLE)

    def test_coefficient_range(self):
        for c in (0, Fraction(1, 2), Fraction(2, 3)):
            with self.assertRaises(DomainError):
                CertificationOptions(c=c)

    def test_allow_singular_only_changes_assumptions(self):
        plain = certify(A2_EXAMPLE)
        relaxed = certify(A2_EXAMPLE, CertificationOptions(allow_singular=True))
        self.assertEqual(plain.computations, relaxed.computations)
        self.assertEqual(plain.verdict, relaxed.verdict)
        self.assertNotEqual(plain.checklist, relaxed.checklist)

    def test_concurrent_and_serial_agree(self):
        self.assertEqual(
            certify(A2_EXAMPLE, CertificationOptions(concurrent=True)),
            certify(A2_EXAMPLE, CertificationOptions(concurrent=False)),
        )

    def test_run_calls_keeps_order(self):
        calls = [(pow, k, 2) for k in range(8)]
        self.assertEqual(run_calls(calls), [k * k for k in range(8)])
        self.assertEqual(run_calls(calls, concurrent=False), [k * k for k in range(8)])

    def test_errors_propagate(self):
        with self.assertRaises(PolynomialSyntaxError):
            certify("x^4 + q^4")
        with self.assertRaises(NonNormalizedFormError):
            certify("x^2*w^2 - y^2*w^2 + z^3*w + x^4")


class ReportSerializationTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.report = certify(A2_EXAMPLE)

    def test_json_schema(self):
        data = json.loads(emit_report(self.report))
        self.assertEqual(
            list(data),
            ["input", "subfamily", "degeneration", "c", "computations", "checklist", "deductions", "verdict"],
        )
        self.assertEqual(data["computations"][0], {"name": "S_Y(E)", "value": "17/14", "anchor": "§3(i)"})
        self.assertEqual(data["c"], "2/9")
        self.assertEqual(data["degeneration"]["weights"], ["0/1", "0/1", "1/1", "3/1"])
        self.assertEqual(data["verdict"], "K_SEMISTABLE_PAIR_CERTIFIED")
        self.assertEqual({d["kind"] for d in data["deductions"]}, {"computed", "cited"})

    def test_round_trip(self):
        self.assertEqual(parse_report(emit_report(self.report)), self.report)
        degenerate = certify(DEGENERATE_EXAMPLE)
        self.assertEqual(parse_report(emit_report(degenerate)), degenerate)

    def test_deterministic_bytes(self):
        self.assertEqual(emit_report(self.report), emit_report(certify(A2_EXAMPLE)))
        self.assertEqual(emit_report(self.report, "text"), emit_report(certify(A2_EXAMPLE), "text"))

    def test_text_form(self):
        text = emit_report(self.report, "text").decode()
        self.assertTrue(text.startswith("input: x^4 + x*y*w^2 + y^4 + z^4 + z^3*w\n"))
        self.assertIn("  S_Y(E) = 17/14  [§3(i)]\n", text)
        self.assertTrue(text.endswith("verdict: K_SEMISTABLE_PAIR_CERTIFIED\n"))

    def test_unknown_format(self):
        with self.assertRaises(DomainError):
            emit_report(self.report, "xml")


class SuiteTests(SimpleTestCase):

    def test_all_published_constants(self):
        summary = run_paper_suite()
        self.assertTrue(summary.passed, [case.name for case in summary.failed_cases()])
        self.assertGreaterEqual(summary.total, 20)

    def test_perturbed_coefficient_fails(self):
        summary = run_paper_suite(perturb_c=Fraction(2, 9) + Fraction(1, 100))
        self.assertFalse(summary.passed)
        failed = {case.name for case in summary.failed_cases()}
        self.assertIn("Futaki check", failed)
        self.assertIn("certify A2 example", failed)
        self.assertNotIn("S_Y(E)", failed)


class CommandTests(SimpleTestCase):

    def call(self, *args, **options):
        out = StringIO()
        call_command(*args, stdout=out, stderr=StringIO(), **options)
        return out.getvalue()

    def assertExitCode(self, code, *args, **options):
        with self.assertRaises(CommandError) as ctx:
            self.call(*args, **options)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception

    def test_certify_json_is_deterministic(self):
        first = self.call("certify", surface=A2_EXAMPLE)
        second = self.call("certify", surface=A2_EXAMPLE)
        self.assertEqual(first, second)
        self.assertEqual(json.loads(first)["verdict"], "K_SEMISTABLE_PAIR_CERTIFIED")

    def test_certify_text_and_out(self):
        self.assertIn("verdict: K_SEMISTABLE_PAIR_CERTIFIED", self.call("certify", surface=A1_EXAMPLE, format="text"))
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "report.json"
            self.call("certify", surface=A1_EXAMPLE, out=str(path))
            self.assertEqual(path.read_bytes(), emit_report(certify(A1_EXAMPLE)))

    def test_certify_exit_codes(self):
        self.assertExitCode(1, "certify", surface=DEGENERATE_EXAMPLE)
        self.assertExitCode(1, "certify", surface=A2_EXAMPLE, c="1/4")
        self.assertExitCode(2, "certify", surface="x^4 + q^4")
        self.assertExitCode(2, "certify", surface=A2_EXAMPLE, c="1/2")
        self.assertExitCode(2, "certify", surface=A2_EXAMPLE, c="0.3")
        self.assertExitCode(2, "certify", surface="x*w^3 + y^4")

    def test_classify(self):
        self.assertIn("A2", self.call("classify", surface=A2_EXAMPLE))
        self.assertIn("A1", self.call("classify", surface=A1_EXAMPLE))
        self.assertExitCode(1, "classify", surface=DEGENERATE_EXAMPLE)

    def test_suite(self):
        output = self.call("suite")
        self.assertIn("cases passed", output)
        data = json.loads(self.call("suite", json=True))
        self.assertTrue(data["passed"])
        self.assertEqual(data["failures"], 0)
        self.assertExitCode(1, "suite", perturb_c="229/900")

    def test_delta_bundle(self):
        output = self.call("delta_bundle", n=1, r="2", a="0", b="0", delta_base="1")
        self.assertIn("M = 13/6", output)
        self.assertIn("delta = 6/7", output)
        data = json.loads(self.call("delta_bundle", n=2, r="45/17", a="0", b="6/17", delta_base="1", json=True))
        self.assertEqual(data["delta"], "1/1")
        error = self.assertExitCode(2, "delta_bundle", n=1, r="1", a="0", b="0", delta_base="1")
        self.assertIn("1 - r < a < 1", str(error))

    def test_slab(self):
        output = self.call("slab", d="4", m="2", weights="3,0,1")
        self.assertIn("volume = 28/3", output)
        self.assertIn("integral of ell = 40/1", output)
        output = self.call("slab", d="1", m="0", weights="3,0,1", t="1/2")
        self.assertIn("slice volume at t = 1/2: 29/216", output)
        output = self.call("slab", d="4", m="2", weights="3,0,1", t="5")
        self.assertIn("scaling check", output)
        self.assertExitCode(2, "slab", d="4", m="2", weights="3,0")
        self.assertExitCode(2, "slab", d="2", m="4", weights="1,1,1")

    def test_configured_coefficient_exit_code(self):
        with override_settings(KFANO=dict(settings.KFANO, FAMILY_B_C="1/2")):
            self.assertExitCode(2, "certify", surface=A2_EXAMPLE)

    def test_entry_point_dispatch(self):
        out = StringIO()
        with redirect_stdout(out), redirect_stderr(StringIO()):
            main(["manage.py", "delta-bundle", "--n", "1", "--r", "2", "--a", "0", "--b", "0", "--delta-base", "1"])
        self.assertIn("delta = 6/7", out.getvalue())
        with redirect_stdout(StringIO()), redirect_stderr(StringIO()):
            with self.assertRaises(SystemExit) as ctx:
                main(["manage.py", "certify", "--surface", "x^4 + q^4"])
        self.assertEqual(ctx.exception.code, 2)

    def test_hyphenated_command_names(self):
        self.assertEqual(normalize_argv(["kfano", "delta-bundle", "--n", "1"]), ["kfano", "delta_bundle", "--n", "1"])
        self.assertEqual(normalize_argv(["kfano", "--help"]), ["kfano", "--help"])


class RunHistoryTests(TestCase):

    def test_saved_runs(self):
        call_command("certify", surface=A2_EXAMPLE, save=True, stdout=StringIO(), stderr=StringIO())
        self.assertEqual(CertificationRun.objects.count(), 1)
        run = CertificationRun.objects.get()
        self.assertEqual(run.verdict, "K_SEMISTABLE_PAIR_CERTIFIED")
        self.assertEqual(run.chosen_c, "2/9")
        self.assertEqual(run.to_report(), certify(A2_EXAMPLE))

        out = StringIO()
        call_command("runs", stdout=out)
        self.assertIn("K_SEMISTABLE_PAIR_CERTIFIED A2 c=2/9", out.getvalue())

    def test_failed_runs_are_stored_too(self):
        with self.assertRaises(CommandError):
            call_command("certify", surface=DEGENERATE_EXAMPLE, save=True, stdout=StringIO(), stderr=StringIO())
        run = CertificationRun.objects.get()
        self.assertEqual(run.subfamily, "DEGENERATE")
        self.assertEqual(run.chosen_c, "")
        self.assertIsNone(run.to_report().chosen_c)

    def test_empty_history(self):
        out = StringIO()
        call_command("runs", stdout=out)
        self.assertIn("No stored runs.", out.getvalue())
