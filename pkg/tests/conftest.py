"""Shared fixtures: small experiment configs that run in well under a second."""

import copy

import pytest

import src.services.command_orchestrator as command_orchestrator

from src.models.experiment_config import ExperimentConfig
from src.services.command_orchestrator import CommandOrchestrator

SMALL_PAYLOAD = {
    "seed": 3,
    "grids": {
        "spherical": {"n_r": 24, "n_theta": 12, "n_phi": 8, "k_max": 8.0},
        "cartesian": {"n": 16, "k_max": 6.0, "centering": "cell"},
    },
    "states": [
        {"name": "g1", "kind": "gaussian", "k0": [0.0, 0.0, 1.0], "s": 1.5},
        {"name": "g2", "kind": "gaussian", "k0": [0.5, 0.0, 1.0], "s": 1.5},
        {"name": "noise", "kind": "random"},
    ],
    "check_forms": {"tolerance": 1e-9},
    "boost_check": {"state": "g1", "rapidities": [0.2], "ladder_levels": 0},
    "number_density": {"state": "g1", "grid": "cartesian"},
    "tail_fit": {"alpha": 0.5},
}


@pytest.fixture
def small_payload():
    """A fresh copy of the small experiment mapping."""
    return copy.deepcopy(SMALL_PAYLOAD)


@pytest.fixture
def small_config(small_payload, tmp_path):
    """Small experiment config writing into a temporary directory."""
    small_payload["output"] = {"directory": str(tmp_path / "results")}
    return ExperimentConfig.model_validate(small_payload)


@pytest.fixture
def fresh_orchestrator():
    """Reset the orchestrator singleton around a test."""
    CommandOrchestrator._instance = None
    command_orchestrator._orchestrator_instance = None
    yield
    CommandOrchestrator._instance = None
    command_orchestrator._orchestrator_instance = None
