"""Test fixtures for oracle tests."""
