"""Tests for the datasets app."""
