"""Tests for node permutations."""
import numpy as np
from django.test import SimpleTestCase

from apps.hypergraph.exceptions import PermutationError
from apps.hypergraph.services.permutation import (
    NodePermutation,
    apply_node_permutation,
    compose,
    invert,
    permute_tensor,
    random_permutation,
)
from apps.hypergraph.services.representation import edge_list, from_edge_list


class TestNodePermutation(SimpleTestCase):
    """Test NodePermutation and apply_node_permutation."""

    def test_identity_leaves_graph_unchanged(self):
        g = from_edge_list(4, [(0, 1), (2, 3)], colors={'red': [1]})

        self.assertTrue(apply_node_permutation(g, NodePermutation.identity(4)).same_as(g))

    def test_swap_moves_edge(self):
        """swap(0,1) sends edge (0,2) to (1,2)."""
        g = from_edge_list(3, [(0, 2)])

        permuted = apply_node_permutation(g, (1, 0, 2))

        self.assertEqual(edge_list(permuted), [(1, 2)])

    def test_inverse_restores_graph(self):
        """Applying p then p^-1 returns g entrywise."""
        rng = np.random.default_rng(0)
        g = from_edge_list(6, [(0, 1), (1, 4), (2, 5), (3, 4)], colors={'S': [2], 'T': [5]})

        for _ in range(10):
            p = random_permutation(6, rng)
            restored = apply_node_permutation(apply_node_permutation(g, p), invert(p))
            self.assertTrue(restored.same_as(g))

    def test_group_action_composes(self):
        """Applying p then q equals applying compose(p, q)."""
        rng = np.random.default_rng(1)
        g = from_edge_list(5, [(0, 1), (1, 2), (3, 4)], colors=['a', 'b', None, 'a', 'b'])
        p = random_permutation(5, rng)
        q = random_permutation(5, rng)

        stepwise = apply_node_permutation(apply_node_permutation(g, p), q)
        composed = apply_node_permutation(g, compose(p, q))

        self.assertTrue(stepwise.same_as(composed))

    def test_colors_follow_nodes(self):
        """Node v's color moves to p(v)."""
        g = from_edge_list(3, [], colors={'red': [0]})

        permuted = apply_node_permutation(g, (2, 0, 1))

        self.assertEqual(permuted.colored('red'), [2])

    def test_length_mismatch(self):
        g = from_edge_list(3, [])

        with self.assertRaises(PermutationError):
            apply_node_permutation(g, (1, 0))

    def test_not_a_bijection(self):
        with self.assertRaises(PermutationError):
            NodePermutation((0, 0, 1))


class TestPermuteTensor(SimpleTestCase):
    """Test permute_tensor on feature tensors."""

    def test_channel_axis_untouched(self):
        """Only node axes move."""
        t = np.arange(2 * 2 * 3, dtype=float).reshape(2, 2, 3)

        out = permute_tensor(t, NodePermutation((1, 0)), arity=2)

        np.testing.assert_array_equal(out[1, 0], t[0, 1])
        np.testing.assert_array_equal(out[0, 0], t[1, 1])

    def test_arity_three(self):
        t = np.random.default_rng(2).normal(size=(4, 4, 4, 2))
        p = NodePermutation((3, 1, 0, 2))

        out = permute_tensor(t, p, arity=3)

        np.testing.assert_array_equal(out[p(0), p(1), p(2)], t[0, 1, 2])
