"""Utility modules for mvforge."""
