"""Tests for counterexample pairs."""
from django.test import SimpleTestCase

from apps.hypergraph.services.representation import degree_sequence, from_edge_list
from apps.oracles.exceptions import OracleError
from apps.oracles.services.connectivity import st_connectivity_oracle
from apps.oracles.services.constructions import (
    CounterexamplePair,
    chain_counterexample,
    regular_pair,
)


class TestChainCounterexample(SimpleTestCase):
    """Test chain_counterexample."""

    def test_shape(self):
        pair = chain_counterexample(3)

        self.assertEqual(pair.first.n, 6)
        self.assertEqual(len(pair.first.edge_list()), 4)
        self.assertEqual(pair.first.colored('S'), [0])
        self.assertEqual(pair.first.colored('T'), [2])
        self.assertEqual(pair.second.colored('T'), [5])

    def test_same_underlying_graph(self):
        pair = chain_counterexample(5)

        self.assertEqual(pair.first.edge_list(), pair.second.edge_list())
        self.assertEqual(degree_sequence(pair.first), degree_sequence(pair.second))

    def test_labels_differ(self):
        pair = chain_counterexample(4)

        self.assertTrue(st_connectivity_oracle(pair.first))
        self.assertFalse(st_connectivity_oracle(pair.second))

    def test_too_short(self):
        with self.assertRaises(OracleError):
            chain_counterexample(1)


class TestRegularPair(SimpleTestCase):
    """Test regular_pair."""

    def test_both_two_regular(self):
        pair = regular_pair()

        self.assertEqual(degree_sequence(pair.first), (2,) * 6)
        self.assertEqual(degree_sequence(pair.second), (2,) * 6)
        self.assertIn('C6', pair.provenance)

    def test_sizes_must_match(self):
        with self.assertRaises(OracleError):
            CounterexamplePair(from_edge_list(2, []), from_edge_list(3, []), 'bad')
