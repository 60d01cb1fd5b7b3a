"""Photon unit tests."""
