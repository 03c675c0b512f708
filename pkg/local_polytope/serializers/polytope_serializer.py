from rest_framework import serializers

from behaviors.models import Scenario
from behaviors.serializers.behavior_serializer import LocalModelSerializer, ScenarioSerializer
from behaviors.serializers.fields import RationalField, convert_table, render_table
from behaviors.utils.rational import format_number, format_rational
from core.exceptions import BellKitError
from nosignalling.serializers import NoSignallingReportSerializer

from ..models.bell_functional_model import BellFunctional


class BellFunctionalSerializer(serializers.Serializer):
    """
    {"scenario": ..., "c": [x][y][a][b], "bound": "2"}. An incoming bound is
    optional and checked against the recomputed one.
    """
    scenario = ScenarioSerializer()
    c = serializers.ListField()
    bound = RationalField(required=False)

    def validate(self, attrs):
        scenario = Scenario(**attrs['scenario'])
        coefficients = convert_table(attrs['c'], 4, RationalField().run_validation, path='c')
        try:
            attrs['functional'] = BellFunctional(scenario, coefficients, attrs.get('bound'))
        except BellKitError as exc:
            raise serializers.ValidationError({'c': [str(exc)]})
        return attrs

    def create(self, validated_data):
        return validated_data['functional']

    def to_representation(self, instance):
        return {
            'scenario': ScenarioSerializer(instance.scenario).data,
            'c': render_table(instance.coefficients, 4, format_rational),
            'bound': format_rational(instance.local_bound),
        }


class MembershipResultSerializer(serializers.Serializer):
    def to_representation(self, instance):
        data = {'status': str(instance.status), 'method': str(instance.method)}
        if instance.is_member:
            data['model'] = LocalModelSerializer(instance.model).data if instance.model else None
        else:
            certificate = BellFunctionalSerializer(instance.certificate).data
            certificate['value'] = format_number(instance.value)
            data['certificate'] = certificate
        if instance.value is not None and instance.is_member:
            data['value'] = format_number(instance.value)
        if instance.warning:
            data['warning'] = instance.warning
        return data


class ChshSummarySerializer(serializers.Serializer):
    """{"values": [8 numbers], "argmax": k, "max": S}"""

    def to_representation(self, instance):
        return {
            'values': [format_number(v) for v in instance.values],
            'argmax': instance.argmax,
            'max': format_number(instance.maximum),
        }


class ClassificationSerializer(serializers.Serializer):
    def to_representation(self, instance):
        return {
            'verdict': str(instance.verdict),
            'no_signalling': NoSignallingReportSerializer(instance.no_signalling).data,
            'membership': (
                MembershipResultSerializer(instance.membership).data
                if instance.membership is not None else None
            ),
        }
