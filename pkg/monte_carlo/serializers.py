from rest_framework import serializers

from behaviors.serializers.behavior_serializer import BehaviorSerializer


class CellComparisonSerializer(serializers.Serializer):
    direction = serializers.CharField()
    x = serializers.IntegerField()
    y = serializers.IntegerField()
    max_deviation = serializers.FloatField()
    z_scores = serializers.SerializerMethodField()
    exact_mismatches = serializers.SerializerMethodField()

    def get_z_scores(self, obj):
        return [list(row) for row in obj.z_scores]

    def get_exact_mismatches(self, obj):
        return [list(pair) for pair in obj.exact_mismatches]


class ComparisonReportSerializer(serializers.Serializer):
    """{"pass": bool, "samples": N, "seed": s, "threshold": t, "max_abs_z": z, "cells": [...]}"""

    def to_representation(self, instance):
        return {
            'pass': instance.passed,
            'samples': instance.sample_count,
            'seed': instance.seed,
            'threshold': instance.threshold,
            'max_abs_z': instance.max_abs_z,
            'cells': CellComparisonSerializer(instance.cells, many=True).data,
        }


class EmpiricalBehaviorSerializer(serializers.Serializer):
    """An empirical behavior plus the counts it was built from."""

    def to_representation(self, instance):
        behavior, counts = instance
        data = BehaviorSerializer(behavior).data
        data['counts'] = counts
        return data
