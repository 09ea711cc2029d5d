"""Tests for the command surface."""
