"""Workflow unit tests."""
