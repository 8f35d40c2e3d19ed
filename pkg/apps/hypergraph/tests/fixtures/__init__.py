"""Test fixtures and sample graphs."""
