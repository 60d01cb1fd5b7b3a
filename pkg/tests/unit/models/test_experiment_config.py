"""
Unit tests for the experiment configuration schema.

Tests defaults, validation errors and the cross-field checks.
"""

import pytest
from pydantic import ValidationError

from src.core.constants import CHECK_FORMS_TOLERANCE, DEFAULT_EPSILON_FACTORS
from src.models.experiment_config import (
    BoostCheckConfig,
    CartesianGridConfig,
    CheckFormsConfig,
    ExperimentConfig,
    GridsConfig,
    NumberDensityConfig,
    StateConfig,
)


def minimal_payload(**overrides):
    payload = {
        "grids": {"spherical": {"n_r": 16, "n_theta": 8, "n_phi": 8, "k_max": 6.0}},
        "states": [{"name": "g1", "kind": "gaussian", "k0": [0.0, 0.0, 1.0]}],
    }
    payload.update(overrides)
    return payload


class TestExperimentConfig:
    """Test cases for ExperimentConfig."""

    def test_defaults(self):
        config = ExperimentConfig.model_validate(minimal_payload())

        assert config.seed == 0
        assert config.check_forms.tolerance == CHECK_FORMS_TOLERANCE
        assert config.tail_fit.epsilon_factors == list(DEFAULT_EPSILON_FACTORS)
        assert config.boost_check is None
        assert config.output.directory is None

    def test_state_lookup(self):
        config = ExperimentConfig.model_validate(minimal_payload())

        assert config.state("g1").kind == "gaussian"
        assert config.state("missing") is None

    def test_duplicate_state_names(self):
        states = [{"name": "a", "kind": "random"}, {"name": "a", "kind": "oscillator"}]

        with pytest.raises(ValidationError, match="duplicate state names"):
            ExperimentConfig.model_validate(minimal_payload(states=states))

    def test_unknown_key_rejected(self):
        with pytest.raises(ValidationError):
            ExperimentConfig.model_validate(minimal_payload(sead=3))

    def test_negative_seed(self):
        with pytest.raises(ValidationError):
            ExperimentConfig.model_validate(minimal_payload(seed=-1))

    def test_example_is_valid(self):
        example = ExperimentConfig.model_config["json_schema_extra"]["example"]

        assert ExperimentConfig.model_validate(example).grids.families() == ["spherical", "cartesian"]


class TestGridsConfig:
    """Test cases for grid configs."""

    def test_needs_a_family(self):
        with pytest.raises(ValidationError, match="grids.spherical"):
            GridsConfig.model_validate({})

    @pytest.mark.parametrize("n", [12, 48, 100])
    def test_cartesian_power_of_two(self, n):
        with pytest.raises(ValidationError, match="power of two"):
            CartesianGridConfig(n=n)

    def test_cartesian_k_center_length(self):
        with pytest.raises(ValidationError, match="three components"):
            CartesianGridConfig(k_center=[1.0, 2.0])

    def test_cartesian_defaults_to_cell(self):
        assert CartesianGridConfig().centering == "cell"


class TestStateConfig:
    """Test cases for StateConfig."""

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 0.5])
    def test_allowed_alphas(self, alpha):
        assert StateConfig(name="s", kind="random", alpha=alpha).alpha == alpha

    def test_alpha_outside_family(self):
        with pytest.raises(ValidationError, match="alpha"):
            StateConfig(name="s", kind="random", alpha=1.0)

    @pytest.mark.parametrize(
        "fields",
        [{"kind": "squeezed"}, {"helicity": 0}, {"order": 2}, {"s": 0.0}, {"k0": [1.0]}, {"seed": -1}],
    )
    def test_invalid_fields(self, fields):
        payload = {"name": "s", "kind": "gaussian"}
        payload.update(fields)

        with pytest.raises(ValidationError):
            StateConfig.model_validate(payload)


class TestCommandSections:
    """Test cases for the per-command sections."""

    def test_pairs_must_have_two_names(self):
        with pytest.raises(ValidationError, match="exactly two"):
            CheckFormsConfig(pairs=[["a", "b", "c"]])

    def test_boost_defaults(self):
        section = BoostCheckConfig(state="g1")

        assert section.rapidities == [0.5]
        assert section.direction == [0.0, 0.0, 1.0]
        assert section.ladder_levels == 3

    def test_boost_needs_rapidities(self):
        with pytest.raises(ValidationError):
            BoostCheckConfig(state="g1", rapidities=[])

    def test_number_density_points(self):
        section = NumberDensityConfig(state="g1", path="quadrature", points=[[0.0, 0.0, 1.0]])

        assert section.points == [[0.0, 0.0, 1.0]]
        with pytest.raises(ValidationError, match="three components"):
            NumberDensityConfig(state="g1", points=[[0.0, 1.0]])
