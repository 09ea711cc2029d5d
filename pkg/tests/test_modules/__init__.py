"""Test package for core modules."""
