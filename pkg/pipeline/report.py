"""
Data model of a certification report.

The report records what was computed, which checklist conditions held and the
chain of inference steps, computed or cited, that leads to the verdict.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from polyforms import SingularityTag


class Verdict(str, Enum):
    CERTIFIED = "K_SEMISTABLE_PAIR_CERTIFIED"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    DEGENERATE_INPUT = "DEGENERATE_INPUT"


class CheckStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    # taken as an input assumption, not verified
    RECORDED = "RECORDED"


class DeductionKind(str, Enum):
    COMPUTED = "computed"
    CITED = "cited"


@dataclass(frozen=True)
class Degeneration:
    weights: tuple
    limit: str


@dataclass(frozen=True)
class Computation:
    name: str
    value: Fraction
    anchor: str


@dataclass(frozen=True)
class ChecklistItem:
    condition: str
    status: CheckStatus


@dataclass(frozen=True)
class Deduction:
    step: str
    kind: DeductionKind
    citation: str


@dataclass(frozen=True)
class CertificationReport:
    input_surface: str
    subfamily: SingularityTag
    degeneration: Degeneration | None
    chosen_c: Fraction | None
    computations: tuple
    checklist: tuple
    deductions: tuple
    verdict: Verdict

    def __post_init__(self):
        for name in ("computations", "checklist", "deductions"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def certified(self):
        return self.verdict == Verdict.CERTIFIED

    def value_of(self, name):
        """Value of the named computation; KeyError when it was not run"""
        for computation in self.computations:
            if computation.name == name:
                return computation.value
        raise KeyError(name)


def verdict_for(checklist):
    if all(item.status in (CheckStatus.PASS, CheckStatus.RECORDED) for item in checklist):
        return Verdict.CERTIFIED
    return Verdict.NOT_APPLICABLE
