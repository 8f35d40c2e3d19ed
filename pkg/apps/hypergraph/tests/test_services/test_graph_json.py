"""Tests for the graph JSON format."""
from django.test import SimpleTestCase

from apps.hypergraph.exceptions import InvalidGraphError
from apps.hypergraph.serializers import GraphSerializer, graph_from_json, graph_to_json
from apps.hypergraph.tests.fixtures.sample_graphs import (
    COLORED_JSON,
    HEXAGON_JSON,
    KINSHIP_JSON,
)


class TestGraphJson(SimpleTestCase):
    """Test graph_from_json and graph_to_json."""

    def test_round_trip_is_exact(self):
        """Integers only, so decode then encode returns the document."""
        for document in (HEXAGON_JSON, COLORED_JSON, KINSHIP_JSON):
            with self.subTest(n=document['n']):
                queries = document.get('queries')
                self.assertEqual(graph_to_json(graph_from_json(document), queries), document)

    def test_empty_color_keeps_channel(self):
        """"green" has no nodes but still gets a channel."""
        g = graph_from_json(COLORED_JSON)

        self.assertEqual(g.predicates[1], ('blue', 'green', 'red'))

    def test_relations_build_named_predicates(self):
        g = graph_from_json(KINSHIP_JSON)

        self.assertEqual(g.predicates[2], ('father', 'mother', 'eq'))
        self.assertTrue(g.directed)

    def test_defaults(self):
        """directed, edges and colors are optional."""
        serializer = GraphSerializer(data={'n': 2})

        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertFalse(serializer.validated_data['directed'])
        self.assertEqual(serializer.validated_data['edges'], [])

    def test_malformed_pair_rejected(self):
        with self.assertRaises(InvalidGraphError):
            graph_from_json({'n': 3, 'edges': [[0, 1, 2]]})

    def test_out_of_range_rejected_with_position(self):
        with self.assertRaises(InvalidGraphError) as ctx:
            graph_from_json({'n': 3, 'edges': [[0, 1], [0, 5]]})

        self.assertEqual(ctx.exception.position, 1)
