"""Test package for photon-numerics."""
