"""Tests for the hypergraph app."""
