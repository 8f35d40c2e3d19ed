"""Test fixtures for model tests."""
