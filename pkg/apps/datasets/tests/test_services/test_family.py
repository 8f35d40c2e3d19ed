"""Tests for family trees and kinship samples."""
from unittest.mock import patch

import numpy as np
from django.test import SimpleTestCase

from apps.datasets.exceptions import DatasetError
from apps.datasets.services.family import (
    birth_probability,
    family_from_graph,
    family_graph,
    gen_family_tree,
    gen_kinship_sample,
)
from apps.oracles.services.kinship import kinship_oracle, validate_family
from apps.relnn.services.inputs import graph_channels


class TestBirthProbability(SimpleTestCase):
    """Test birth_probability thresholds."""

    def test_thresholds(self):
        self.assertEqual(birth_probability(5, 10), 0.7)
        self.assertEqual(birth_probability(4, 10), 0.5)
        self.assertEqual(birth_probability(2, 10), 0.5)
        self.assertEqual(birth_probability(1, 10), 0.3)
        self.assertEqual(birth_probability(0, 0), 0.7)


class TestGenFamilyTree(SimpleTestCase):
    """Test gen_family_tree."""

    def test_two_people_are_unrelated(self):
        for seed in range(10):
            family = gen_family_tree(2, seed)
            self.assertEqual(family.parent_links, ())

    def test_at_most_one_mother_and_father(self):
        for seed in range(50):
            family = gen_family_tree(20, seed)
            parents = validate_family(family)
            self.assertTrue(all(len(of_child) <= 2 for of_child in parents.values()))

    def test_grandparents_and_uncles_occur(self):
        grandparents = uncles = 0
        for seed in range(100):
            family = gen_family_tree(30, seed)
            grandparents += int(kinship_oracle('grandparent', family).sum())
            uncles += int(kinship_oracle('uncle', family).sum())

        self.assertGreater(grandparents, 0)
        self.assertGreater(uncles, 0)

    def test_no_couple_means_unrelated_newcomers(self):
        with patch('apps.datasets.services.family.birth_probability', return_value=1.0), \
                patch('apps.datasets.services.family._find_couple', return_value=None):
            with self.assertLogs('apps.datasets.services.family', level='INFO') as logs:
                family = gen_family_tree(6, 3)

        self.assertEqual(family.parent_links, ())
        self.assertEqual(family.marriages, ())
        self.assertEqual(len(logs.output), 6)

    def test_uncles_need_siblings_from_married_couples(self):
        """Every uncle is a brother, so some couple has two or more children."""
        for seed in range(100):
            family = gen_family_tree(30, seed)
            if not kinship_oracle('uncle', family).any():
                continue
            children = {}
            for parent, child, _ in family.parent_links:
                children.setdefault(parent, set()).add(child)
            self.assertTrue(any(len(kids) >= 2 for kids in children.values()))

    def test_deterministic(self):
        self.assertEqual(gen_family_tree(15, 4), gen_family_tree(15, 4))

    def test_too_small(self):
        with self.assertRaises(DatasetError):
            gen_family_tree(1, 0)


class TestKinshipSamples(SimpleTestCase):
    """Test family_graph and gen_kinship_sample."""

    def test_graph_round_trip(self):
        family = gen_family_tree(20, 11)

        restored = family_from_graph(family_graph(family))

        self.assertEqual(restored.genders, family.genders)
        self.assertEqual(restored.parent_links, tuple(sorted(family.parent_links)))

    def test_sample_channels_and_labels(self):
        sample = gen_kinship_sample('grandparent', 20, 11)
        g = sample.input

        self.assertTrue(g.directed)
        self.assertEqual(g.binary_names, ('father', 'mother'))
        self.assertEqual(graph_channels(g), (1, 2, 3))
        np.testing.assert_array_equal(
            sample.target.labels,
            kinship_oracle('grandparent', gen_family_tree(20, 11)).astype(int),
        )

    def test_unknown_relation(self):
        with self.assertRaises(DatasetError):
            gen_kinship_sample('cousin', 10, 0)
