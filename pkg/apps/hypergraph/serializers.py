"""
Hypergraph serializers module.

This module defines the graph JSON format:

    {"n": int, "directed": bool, "edges": [[u, v], ...],
     "colors": {"red": [ids], ...}, "relations": {"father": [[u, v], ...]},
     "queries": [[u, v], ...]}

"relations" and "queries" are optional. When "relations" is present its
predicates are stored in addition to "edges" (if any). Every color listed
gets a channel, including colors with no nodes.
"""
from typing import Any, Dict

from rest_framework import serializers

from apps.hypergraph.exceptions import InvalidGraphError
from apps.hypergraph.services.representation import (
    EDGE,
    HypergraphRepr,
    from_relations,
)


class PairField(serializers.ListField):
    """A [u, v] pair of node ids."""

    def __init__(self, **kwargs):
        super().__init__(
            child=serializers.IntegerField(),
            min_length=2,
            max_length=2,
            **kwargs
        )


class GraphSerializer(serializers.Serializer):
    """
    Validate graph JSON documents.

    Range and duplicate checks happen when the representation is built,
    so their errors carry the offending edge position.
    """
    n = serializers.IntegerField(min_value=0)
    directed = serializers.BooleanField(default=False)
    edges = serializers.ListField(child=PairField(), default=list)
    colors = serializers.DictField(
        child=serializers.ListField(child=serializers.IntegerField()),
        default=dict,
    )
    relations = serializers.DictField(
        child=serializers.ListField(child=PairField()),
        required=False,
    )
    queries = serializers.ListField(child=PairField(), required=False)

    def validate_relations(self, value):
        if EDGE in value:
            raise serializers.ValidationError(
                f"'{EDGE}' belongs in \"edges\", not in \"relations\""
            )
        return value


def graph_from_json(data: Dict[str, Any]) -> HypergraphRepr:
    """
    Build a representation from a graph JSON document.

    Raises:
        InvalidGraphError: If the document fails validation.
    """
    serializer = GraphSerializer(data=data)
    if not serializer.is_valid():
        raise InvalidGraphError(f"invalid graph document: {dict(serializer.errors)}")
    document = serializer.validated_data

    binary = {}
    if document['edges'] or 'relations' not in document:
        binary[EDGE] = [tuple(pair) for pair in document['edges']]
    for name, pairs in sorted(document.get('relations', {}).items()):
        binary[name] = [tuple(pair) for pair in pairs]

    colors = document['colors']
    return from_relations(
        document['n'],
        binary,
        colors=colors,
        directed=document['directed'],
        color_names=list(colors),
    )


def graph_to_json(g: HypergraphRepr, queries=None) -> Dict[str, Any]:
    """Serialize a representation to the graph JSON format (integers only)."""
    document = {
        'n': g.n,
        'directed': g.directed,
        'edges': [list(pair) for pair in g.relation_pairs(EDGE)] if EDGE in g.binary_names else [],
        'colors': g.colors(),
    }
    extra = [name for name in g.binary_names if name != EDGE]
    if extra:
        document['relations'] = {
            name: [list(pair) for pair in g.relation_pairs(name)] for name in extra
        }
    if queries is not None:
        document['queries'] = [[int(u), int(v)] for u, v in queries]
    return document
