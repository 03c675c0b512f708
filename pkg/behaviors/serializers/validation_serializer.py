from rest_framework import serializers


class ViolationSerializer(serializers.Serializer):
    kind = serializers.CharField()
    location = serializers.DictField(child=serializers.CharField())
    message = serializers.CharField()

    def to_representation(self, instance):
        return {'kind': instance.kind, 'location': instance.location, 'message': instance.message}


class ValidationReportSerializer(serializers.Serializer):
    """{"ok": bool, "violations": [{"kind": ..., "location": {...}, "message": ...}]}"""

    def to_representation(self, instance):
        return {
            'ok': instance.ok,
            'violations': ViolationSerializer(instance.violations, many=True).data,
        }
