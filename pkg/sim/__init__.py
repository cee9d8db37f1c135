"""Synthetic and replayed proximity sequences."""
