"""Workflow handler unit tests."""
