"""Test package for mvforge."""
