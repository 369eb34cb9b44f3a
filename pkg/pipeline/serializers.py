from rest_framework import serializers

from bundle_delta import DeltaBreakdown
from exactnum import as_rational, format_rational
from kfano.exceptions import DomainError
from polyforms import SingularityTag

from .report import (
    CertificationReport,
    CheckStatus,
    ChecklistItem,
    Computation,
    Deduction,
    DeductionKind,
    Degeneration,
    Verdict,
)


class RationalField(serializers.Field):
    """Exact rational written as "p/q", always with a slash"""

    default_error_messages = {
        'invalid': 'Expected a rational number written as "p/q" or an integer.',
    }

    def to_representation(self, value):
        return format_rational(value)

    def to_internal_value(self, data):
        try:
            return as_rational(data)
        except DomainError:
            self.fail('invalid')


class EnumField(serializers.ChoiceField):
    """Choice field that reads and writes the value of an Enum member"""

    def __init__(self, enum_class, **kwargs):
        self.enum_class = enum_class
        super().__init__(choices=[member.value for member in enum_class], **kwargs)

    def to_representation(self, value):
        return self.enum_class(value).value

    def to_internal_value(self, data):
        return self.enum_class(super().to_internal_value(data))


class DegenerationSerializer(serializers.Serializer):
    weights = serializers.ListField(child=RationalField())
    limit = serializers.CharField()


class ComputationSerializer(serializers.Serializer):
    name = serializers.CharField()
    value = RationalField()
    anchor = serializers.CharField()


class ChecklistItemSerializer(serializers.Serializer):
    condition = serializers.CharField()
    status = EnumField(CheckStatus)


class DeductionSerializer(serializers.Serializer):
    step = serializers.CharField()
    kind = EnumField(DeductionKind)
    citation = serializers.CharField(allow_blank=True)


class CertificationReportSerializer(serializers.Serializer):
    """Stable JSON schema of a certification report"""

    input = serializers.CharField(source='input_surface')
    subfamily = EnumField(SingularityTag)
    degeneration = DegenerationSerializer(allow_null=True)
    c = RationalField(source='chosen_c', allow_null=True)
    computations = ComputationSerializer(many=True)
    checklist = ChecklistItemSerializer(many=True)
    deductions = DeductionSerializer(many=True)
    verdict = EnumField(Verdict)

    def create(self, validated_data):
        degeneration = validated_data['degeneration']
        return CertificationReport(
            input_surface=validated_data['input_surface'],
            subfamily=validated_data['subfamily'],
            degeneration=Degeneration(tuple(degeneration['weights']), degeneration['limit']) if degeneration else None,
            chosen_c=validated_data['chosen_c'],
            computations=[Computation(**item) for item in validated_data['computations']],
            checklist=[ChecklistItem(**item) for item in validated_data['checklist']],
            deductions=[Deduction(**item) for item in validated_data['deductions']],
            verdict=validated_data['verdict'],
        )


class SuiteCaseSerializer(serializers.Serializer):
    name = serializers.CharField()
    expected = serializers.CharField()
    actual = serializers.CharField()
    passed = serializers.BooleanField()


class SuiteSummarySerializer(serializers.Serializer):
    passed = serializers.BooleanField()
    total = serializers.IntegerField()
    failures = serializers.IntegerField()
    perturbed_c = RationalField(allow_null=True)
    cases = SuiteCaseSerializer(many=True)


class DeltaBreakdownSerializer(serializers.Serializer):
    mean_M = RationalField()
    term_base = RationalField()
    term_zero = RationalField()
    term_infty = RationalField()
    delta = RationalField()

    def create(self, validated_data):
        return DeltaBreakdown(**validated_data)
