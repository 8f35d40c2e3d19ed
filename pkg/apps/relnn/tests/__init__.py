"""Tests for the relnn app."""
