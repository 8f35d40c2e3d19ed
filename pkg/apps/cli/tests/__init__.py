"""Tests for the cli app."""
