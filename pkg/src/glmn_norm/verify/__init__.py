"""Seeded instances and the acceptance suite."""
