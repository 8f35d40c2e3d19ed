"""Tests for NLM and HO-GNN forward passes and readout."""
import numpy as np
from django.test import SimpleTestCase

from apps.hypergraph.services.permutation import (
    apply_node_permutation,
    permute_tensor,
    random_permutation,
)
from apps.hypergraph.services.representation import from_edge_list
from apps.hypergraph.tests.fixtures.sample_graphs import PATH3_EDGES, STAR4_EDGES
from apps.relnn.exceptions import ArityError, ConfigMismatchError
from apps.relnn.services.config import ModelConfig
from apps.relnn.services.model import forward, hognn_forward, nlm_forward, predict
from apps.relnn.services.params import ModelParams, init_params
from apps.relnn.services.readout import pair_state, pair_state_backward, readout
from apps.relnn.tests.fixtures.hand_built import MAX_DEGREE_CONFIG, max_degree_params


def _random_graph(rng, n, colors=False):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
    labels = None
    if colors:
        labels = {'red': [v for v in range(n) if rng.random() < 0.5], 'blue': []}
    return from_edge_list(n, pairs, colors=labels)


class TestForwardShapes(SimpleTestCase):
    """Shape contracts of both families."""

    def test_nlm_shapes(self):
        """n=5, B=2, W=8, D=4."""
        cfg = ModelConfig(family='nlm', max_arity=2, depth=4, width=8)
        g = from_edge_list(5, [(0, 1), (1, 2), (3, 4)])

        state = nlm_forward(cfg, init_params(cfg, 0), g)

        self.assertEqual(state[2].shape, (5, 5, 8))
        self.assertEqual(state[1].shape, (5, 8))
        self.assertEqual(state[0].shape, (8,))

    def test_nlm_arity_three(self):
        cfg = ModelConfig(family='nlm', max_arity=3, depth=2, width=4)

        state = nlm_forward(cfg, init_params(cfg, 0), from_edge_list(4, [(0, 1)]))

        self.assertEqual(state[3].shape, (4, 4, 4, 4))

    def test_hognn_shapes(self):
        """n=6, B=2, W=8, depth 4."""
        cfg = ModelConfig(family='hognn', max_arity=2, depth=4, width=8)
        g = from_edge_list(6, [(0, 1), (2, 3), (4, 5)])

        state = hognn_forward(cfg, init_params(cfg, 0), g)

        self.assertEqual(state[2].shape, (6, 6, 8))
        self.assertEqual(state[0].shape, (8,))

    def test_channel_mismatch(self):
        """A colored graph does not fit an uncolored model."""
        cfg = ModelConfig(family='nlm', max_arity=2, depth=1, width=2)
        g = from_edge_list(3, [], colors={'red': [0]})

        with self.assertRaises(ConfigMismatchError):
            nlm_forward(cfg, init_params(cfg, 0), g)

    def test_params_for_other_config(self):
        cfg = ModelConfig(family='nlm', max_arity=2, depth=2, width=2)
        other = ModelConfig(family='nlm', max_arity=2, depth=3, width=2)

        with self.assertRaises(ConfigMismatchError):
            nlm_forward(cfg, init_params(other, 0), from_edge_list(3, []))

    def test_unshared_depth_is_fixed(self):
        cfg = ModelConfig(family='nlm', max_arity=2, depth=2, width=2)

        with self.assertRaises(ConfigMismatchError):
            nlm_forward(cfg, init_params(cfg, 0), from_edge_list(3, []), depth=3)


class TestHandBuiltMaxDegree(SimpleTestCase):
    """Sum-then-max NLM[2, 2] computes the maximum degree."""

    def test_path(self):
        state = nlm_forward(MAX_DEGREE_CONFIG, max_degree_params(), from_edge_list(3, PATH3_EDGES))

        self.assertEqual(state[0][0], 2.0)

    def test_star(self):
        state = nlm_forward(MAX_DEGREE_CONFIG, max_degree_params(), from_edge_list(5, STAR4_EDGES))

        self.assertEqual(state[0][0], 4.0)

    def test_matches_degree_count(self):
        """Agrees with a direct degree count on random graphs."""
        rng = np.random.default_rng(0)
        params = max_degree_params()

        for _ in range(20):
            g = _random_graph(rng, int(rng.integers(2, 10)))
            degrees = [sum(1 for u, v in g.edge_list() if node in (u, v)) for node in range(g.n)]
            self.assertEqual(nlm_forward(MAX_DEGREE_CONFIG, params, g)[0][0], max(degrees))


class TestEquivariance(SimpleTestCase):
    """Permuting inputs permutes outputs bit for bit."""

    CONFIGS = [
        ModelConfig(family='nlm', max_arity=2, depth=3, width=6, aggregator='sum'),
        ModelConfig(family='nlm', max_arity=3, depth=2, width=4, aggregator='max'),
        ModelConfig(family='nlm', max_arity=2, depth=2, width=4, aggregator='fpmean', quant_bits=3),
        ModelConfig(family='hognn', max_arity=1, depth=3, width=6, aggregator='sum'),
        ModelConfig(family='hognn', max_arity=1, depth=2, width=4, aggregator='max', target_arity=2),
        ModelConfig(family='hognn', max_arity=2, depth=2, width=4, aggregator='max'),
        ModelConfig(family='hognn', max_arity=2, depth=2, width=4, aggregator='sum', quant_bits=2),
    ]

    def _check(self, cfg, seed):
        rng = np.random.default_rng(seed)
        cfg = ModelConfig.from_dict({**cfg.to_dict(), 'input_channels': [1, 2, 2]})
        params = init_params(cfg, seed)
        g = _random_graph(rng, int(rng.integers(2, 9)), colors=True)
        p = random_permutation(g.n, rng)

        state = forward(cfg, params, g)
        permuted_state = forward(cfg, params, apply_node_permutation(g, p))

        for arity, tensor in state.items():
            np.testing.assert_array_equal(permuted_state[arity], permute_tensor(tensor, p, arity))

    def test_twenty_triples_per_family(self):
        for family in ('nlm', 'hognn'):
            configs = [cfg for cfg in self.CONFIGS if cfg.family == family]
            for trial in range(20):
                cfg = configs[trial % len(configs)]
                with self.subTest(family=family, trial=trial):
                    self._check(cfg, 1000 + trial)


class TestWeightSharing(SimpleTestCase):
    """A shared model equals an unshared one with identical layer weights."""

    def test_shared_equals_unshared_copies(self):
        shared_cfg = ModelConfig(family='nlm', max_arity=2, depth=4, width=5, weight_sharing=True)
        unshared_cfg = ModelConfig(family='nlm', max_arity=2, depth=4, width=5)
        shared = init_params(shared_cfg, 3)
        networks = {}
        for name, network in shared.networks.items():
            group, role = name.split('.')
            if group == 'layer1':
                networks[name] = network
            else:
                for layer in (2, 3, 4):
                    networks[f'layer{layer}.{role}'] = network
        unshared = ModelParams(config=unshared_cfg, networks=networks, head=shared.head)
        g = from_edge_list(6, [(0, 1), (1, 2), (2, 3), (4, 5)])

        a = nlm_forward(shared_cfg, shared, g)
        b = nlm_forward(unshared_cfg, unshared, g)

        for arity in a:
            np.testing.assert_array_equal(a[arity], b[arity])

    def test_recurrent_depth_follows_graph_size(self):
        cfg = ModelConfig(
            family='hognn', max_arity=1, depth=2, width=3,
            weight_sharing=True, depth_policy='recurrent', target_arity=0,
        )
        params = init_params(cfg, 0)
        g = from_edge_list(10, [(i, i + 1) for i in range(9)])

        np.testing.assert_array_equal(
            hognn_forward(cfg, params, g)[1], hognn_forward(cfg, params, g, depth=9)[1]
        )


class TestReadout(SimpleTestCase):
    """Test readout heads."""

    def setUp(self):
        self.cfg = ModelConfig(family='nlm', max_arity=2, depth=2, width=3, target_arity=2)
        self.params = init_params(self.cfg, 0)
        self.state = nlm_forward(self.cfg, self.params, from_edge_list(4, [(0, 1), (2, 3)]))

    def test_zero_head_gives_one_half(self):
        head = self.params.head.with_arrays(
            {'head.w0': np.zeros((3, 1)), 'head.b0': np.zeros(1)}, 'head'
        )

        np.testing.assert_array_equal(readout(self.state, 2, head), np.full((4, 4), 0.5))

    def test_monotone_in_positive_feature(self):
        head = self.params.head.with_arrays(
            {'head.w0': np.array([[0.5], [0.0], [0.0]]), 'head.b0': np.zeros(1)}, 'head'
        )
        low = {0: np.array([0.1, 0.0, 0.0])}
        high = {0: np.array([0.9, 0.0, 0.0])}

        self.assertGreater(readout(high, 0, head), readout(low, 0, head))

    def test_graph_level_head_is_scalar(self):
        cfg = ModelConfig(family='hognn', max_arity=2, depth=1, width=3, target_arity=0)

        probability = predict(init_params(cfg, 0), from_edge_list(4, [(0, 1)]))

        self.assertEqual(probability.shape, ())
        self.assertTrue(0.0 < float(probability) < 1.0)

    def test_missing_arity(self):
        with self.assertRaises(ArityError):
            readout({0: np.zeros(3)}, 2, self.params.head)

    def test_pair_state_concatenates_endpoints_and_inputs(self):
        h = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
        pairs = np.zeros((3, 3, 1))
        pairs[0, 2, 0] = 1.0

        state = pair_state(h, pairs)

        self.assertEqual(state.shape, (3, 3, 5))
        np.testing.assert_array_equal(state[0, 2], [1.0, 2.0, 5.0, 6.0, 1.0])
        np.testing.assert_array_equal(state[2, 0], [5.0, 6.0, 1.0, 2.0, 0.0])

    def test_pair_state_backward_sums_both_endpoints(self):
        d_pairs = np.ones((3, 3, 5))

        np.testing.assert_array_equal(pair_state_backward(d_pairs, 2), np.full((3, 2), 6.0))

    def test_unary_gnn_labels_pairs(self):
        cfg = ModelConfig(family='hognn', max_arity=1, depth=2, width=3, target_arity=2)
        g = from_edge_list(4, [(0, 1), (1, 2)])

        probabilities = predict(init_params(cfg, 0), g)

        self.assertEqual(probabilities.shape, (4, 4))
        self.assertTrue(np.all((probabilities > 0.0) & (probabilities < 1.0)))
