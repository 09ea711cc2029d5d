"""Test package for utility modules."""
