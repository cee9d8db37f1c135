"""Replicated scenario runs and their running statistics."""
