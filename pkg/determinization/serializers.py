from rest_framework import serializers

from behaviors.utils.rational import format_rational

from .services import alice_atoms, bob_atoms


class IntervalAtomSerializer(serializers.Serializer):
    """{"lower": "0", "upper": "1/4", "assignment": [0, 1]}"""

    def to_representation(self, instance):
        return {
            'lower': format_rational(instance.lower),
            'upper': format_rational(instance.upper),
            'assignment': list(instance.assignment),
        }


class ComponentAtomsSerializer(serializers.Serializer):
    """The alice and bob atom partitions of one model component."""

    def to_representation(self, instance):
        return {
            'weight': format_rational(instance.weight),
            'alice': IntervalAtomSerializer(alice_atoms(instance), many=True).data,
            'bob': IntervalAtomSerializer(bob_atoms(instance), many=True).data,
        }
