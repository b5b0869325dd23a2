"""Translation and rotation numbers."""
