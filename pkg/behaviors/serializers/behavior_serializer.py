from rest_framework import serializers

from core.exceptions import BellKitError

from ..models import Behavior, LocalModel, NumericMode, Scenario
from ..utils.rational import format_number, format_rational
from .fields import RationalField, convert_table, render_table


class ScenarioSerializer(serializers.Serializer):
    """
    {"alice": [outcome_count, ...], "bob": [outcome_count, ...]}
    """
    alice = serializers.ListField(
        child=serializers.IntegerField(min_value=1), min_length=1, source='alice_outcomes'
    )
    bob = serializers.ListField(
        child=serializers.IntegerField(min_value=1), min_length=1, source='bob_outcomes'
    )

    def create(self, validated_data):
        return Scenario(**validated_data)

    def to_representation(self, instance):
        return {
            'alice': list(instance.alice_outcomes),
            'bob': list(instance.bob_outcomes),
        }


class BehaviorSerializer(serializers.Serializer):
    """
    {"scenario": ..., "mode": "exact"|"float", "p": [x][y][a][b]}
    """
    scenario = ScenarioSerializer()
    mode = serializers.ChoiceField(choices=NumericMode.choices, default=NumericMode.EXACT)
    p = serializers.ListField()

    def validate(self, attrs):
        scenario = Scenario(**attrs['scenario'])
        if attrs['mode'] == NumericMode.EXACT:
            convert = RationalField().run_validation
        else:
            convert = serializers.FloatField().run_validation
        entries = convert_table(attrs['p'], 4, convert)
        try:
            attrs['behavior'] = Behavior(scenario, entries, attrs['mode'])
        except BellKitError as exc:
            raise serializers.ValidationError({'p': [str(exc)]})
        return attrs

    def create(self, validated_data):
        return validated_data['behavior']

    def to_representation(self, instance):
        return {
            'scenario': ScenarioSerializer(instance.scenario).data,
            'mode': str(instance.mode),
            'p': render_table(instance.entries, 4, format_number),
        }


class ModelComponentSerializer(serializers.Serializer):
    weight = RationalField()
    alice = serializers.ListField(child=serializers.ListField(child=RationalField()))
    bob = serializers.ListField(child=serializers.ListField(child=RationalField()))

    def to_representation(self, instance):
        return {
            'weight': format_rational(instance.weight),
            'alice': render_table(instance.alice, 2, format_rational),
            'bob': render_table(instance.bob, 2, format_rational),
        }


class LocalModelSerializer(serializers.Serializer):
    """
    {"scenario": ..., "components": [{"weight": "1/2", "alice": [[...]], "bob": [[...]]}, ...]}
    """
    scenario = ScenarioSerializer()
    components = ModelComponentSerializer(many=True, allow_empty=False)

    def validate(self, attrs):
        scenario = Scenario(**attrs['scenario'])
        components = [(c['weight'], c['alice'], c['bob']) for c in attrs['components']]
        try:
            attrs['model'] = LocalModel(scenario, components)
        except BellKitError as exc:
            raise serializers.ValidationError({'components': [str(exc)]})
        return attrs

    def create(self, validated_data):
        return validated_data['model']

    def to_representation(self, instance):
        return {
            'scenario': ScenarioSerializer(instance.scenario).data,
            'components': ModelComponentSerializer(instance.components, many=True).data,
        }
