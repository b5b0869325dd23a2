"""Deformations of representations."""
