"""
Dataset serializers module.

This module validates the JSON-lines sample format: a graph document
plus target labels, an optional query mask and the generator provenance.
"""
from rest_framework import serializers

from apps.hypergraph.serializers import GraphSerializer


class TargetSerializer(serializers.Serializer):
    """Labels at one arity, as nested 0/1 lists (a bare 0/1 for arity 0)."""
    arity = serializers.IntegerField(min_value=0, max_value=2)
    labels = serializers.JSONField()


class SampleSerializer(GraphSerializer):
    """Validate one dataset line."""
    target = TargetSerializer()
    mask = serializers.JSONField(allow_null=True, default=None)
    provenance = serializers.DictField(default=dict)
