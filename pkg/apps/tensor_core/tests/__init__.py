"""Tests for the tensor_core app."""
