"""Core modules for mvforge."""
