"""Tests for the oracles app."""
