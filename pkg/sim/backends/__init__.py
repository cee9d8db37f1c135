"""Scenario backends producing proximity sequences with ground truth."""
