"""
Relational network serializers module.

This module validates model files:

    {"version": 1, "config": {...}, "config_hash": "...",
     "weights": {name: {"shape": [...], "data": base64}}}

"data" is the base64 of the array's little-endian float64 bytes.
"""
from rest_framework import serializers


class WeightArraySerializer(serializers.Serializer):
    """One named weight array."""
    shape = serializers.ListField(child=serializers.IntegerField(min_value=0))
    data = serializers.CharField(allow_blank=True, trim_whitespace=False)


class ModelFileSerializer(serializers.Serializer):
    """Validate the top-level layout of a model file."""
    version = serializers.IntegerField(min_value=1)
    config = serializers.DictField()
    config_hash = serializers.CharField(required=False)
    weights = serializers.DictField(child=WeightArraySerializer())
