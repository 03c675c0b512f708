from rest_framework import serializers

from behaviors.utils.rational import format_number


class SignallingWitnessSerializer(serializers.Serializer):
    party = serializers.CharField()
    setting = serializers.IntegerField()
    outcome = serializers.IntegerField()
    pair = serializers.ListField(child=serializers.IntegerField())
    discrepancy = serializers.SerializerMethodField()

    def get_discrepancy(self, obj):
        return format_number(obj.discrepancy)


class NoSignallingReportSerializer(serializers.Serializer):
    """
    {"ok": bool, "worst": "num/den"|float, "witnesses": [...]}
    """
    ok = serializers.BooleanField()
    worst = serializers.SerializerMethodField()
    witnesses = SignallingWitnessSerializer(many=True)

    def get_worst(self, obj):
        return format_number(obj.worst_violation)
