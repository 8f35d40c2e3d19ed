"""Tests for the experiments app."""
