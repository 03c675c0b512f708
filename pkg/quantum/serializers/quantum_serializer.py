from rest_framework import serializers

from core.exceptions import BellKitError

from ..models import MeasurementAssemblage, QuantumState
from ..utils.linalg import ComplexMatrix


class ComplexMatrixField(serializers.Field):
    """
    Matrix as nested rows of [re, im] pairs. A bare number is accepted for a
    real entry.
    """
    default_error_messages = {
        'invalid': 'Expected a matrix of [re, im] pairs.',
        'ragged': 'Matrix rows have different lengths.',
    }

    def to_internal_value(self, data):
        if not isinstance(data, list) or not data or not all(isinstance(row, list) for row in data):
            self.fail('invalid')
        if len({len(row) for row in data}) != 1:
            self.fail('ragged')
        try:
            return ComplexMatrix([[self._entry(value) for value in row] for row in data])
        except (TypeError, ValueError, BellKitError):
            self.fail('invalid')

    @staticmethod
    def _entry(value):
        if isinstance(value, bool):
            raise TypeError('boolean matrix entry')
        if isinstance(value, (int, float)):
            return complex(value)
        if isinstance(value, list) and len(value) == 2:
            real, imag = value
            if isinstance(real, bool) or isinstance(imag, bool):
                raise TypeError('boolean matrix entry')
            return complex(float(real), float(imag))
        raise TypeError(f'bad matrix entry {value!r}')

    def to_representation(self, value):
        return [[[float(z.real), float(z.imag)] for z in row] for row in value.entries]


class QuantumStateSerializer(serializers.Serializer):
    """{"dims": [dim_a, dim_b], "rho": [[[re, im], ...], ...]}"""
    dims = serializers.ListField(child=serializers.IntegerField(min_value=1), min_length=2, max_length=2)
    rho = ComplexMatrixField()

    def validate(self, attrs):
        dim_a, dim_b = attrs['dims']
        try:
            attrs['state'] = QuantumState(dim_a, dim_b, attrs['rho'])
        except BellKitError as exc:
            raise serializers.ValidationError({'rho': [str(exc)]})
        return attrs

    def create(self, validated_data):
        return validated_data['state']

    def to_representation(self, instance):
        return {
            'dims': [instance.dim_a, instance.dim_b],
            'rho': ComplexMatrixField().to_representation(instance.rho),
        }


class MeasurementAssemblageSerializer(serializers.Serializer):
    """{"alice": [[effect, ...] per setting], "bob": [...]}"""
    alice = serializers.ListField(child=serializers.ListField(child=ComplexMatrixField(), min_length=1), min_length=1)
    bob = serializers.ListField(child=serializers.ListField(child=ComplexMatrixField(), min_length=1), min_length=1)

    def validate(self, attrs):
        try:
            attrs['assemblage'] = MeasurementAssemblage(attrs['alice'], attrs['bob'])
        except BellKitError as exc:
            raise serializers.ValidationError({'measurements': [str(exc)]})
        return attrs

    def create(self, validated_data):
        return validated_data['assemblage']

    def to_representation(self, instance):
        field = ComplexMatrixField()
        return {
            'alice': [[field.to_representation(e) for e in effects] for effects in instance.alice],
            'bob': [[field.to_representation(e) for e in effects] for effects in instance.bob],
        }


class QuantumSetupSerializer(serializers.Serializer):
    """{"state": ..., "measurements": ...}, the input of the quantum command."""
    state = QuantumStateSerializer()
    measurements = MeasurementAssemblageSerializer()

    def validate(self, attrs):
        state, assemblage = attrs['state']['state'], attrs['measurements']['assemblage']
        if (state.dim_a, state.dim_b) != (assemblage.dim_a, assemblage.dim_b):
            raise serializers.ValidationError('state and measurement dimensions differ')
        attrs['setup'] = (state, assemblage)
        return attrs

    def create(self, validated_data):
        return validated_data['setup']

    def to_representation(self, instance):
        state, assemblage = instance
        return {
            'state': QuantumStateSerializer(state).data,
            'measurements': MeasurementAssemblageSerializer(assemblage).data,
        }
