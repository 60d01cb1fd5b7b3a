"""
Unit tests for the check-forms handler.

Tests form agreement over state pairs on both grid families.
"""

import pytest

from src.core.error_handling import ConfigurationError
from src.services.workflows.check_forms_handler import CheckFormsHandler
from src.workflows.command_types import CommandType


class TestCheckFormsHandler:
    """Test cases for CheckFormsHandler."""

    def setup_method(self):
        self.handler = CheckFormsHandler()

    def test_initialization(self):
        """Test handler initialization."""
        assert self.handler.command_type == CommandType.CHECK_FORMS

    def test_all_pairs_on_all_grids(self, small_config):
        """Every unordered pair including self-pairs runs on every grid."""
        result = self.handler.execute(small_config)

        pairs = result.result["pairs"]
        assert result.passed, result.failures
        assert len(pairs) == 2 * 6
        assert {entry["grid"] for entry in pairs} == {"spherical", "cartesian"}
        assert result.result["max_deviation"] < 1e-9
        assert [g["family"] for g in result.grids] == ["spherical", "cartesian"]

    def test_rspace_form_only_on_cartesian(self, small_config):
        """The real-space form joins on Cartesian grids."""
        result = self.handler.execute(small_config)

        for entry in result.result["pairs"]:
            assert ("rspace" in entry["values"]) == (entry["grid"] == "cartesian")

    def test_explicit_pairs_and_grid_selection(self, small_config):
        """Configured pairs and grid families restrict the comparison."""
        section = small_config.check_forms.model_copy(update={"pairs": [["g1", "g2"]], "grids": ["cartesian"]})
        config = small_config.model_copy(update={"check_forms": section})

        result = self.handler.execute(config)

        assert [(e["bra"], e["ket"], e["grid"]) for e in result.result["pairs"]] == [("g1", "g2", "cartesian")]
        table = result.tables["forms"]
        assert set(table["form"]) == set(result.result["pairs"][0]["values"])

    def test_tight_tolerance_fails(self, small_config):
        """A tolerance no float comparison can meet reports every pair."""
        section = small_config.check_forms.model_copy(update={"tolerance": 1e-300, "pairs": [["g1", "g2"]]})
        config = small_config.model_copy(update={"check_forms": section})

        result = self.handler.execute(config)

        assert not result.passed
        assert len(result.failures) == 2
        assert all("g1|g2" in failure for failure in result.failures)

    def test_unknown_state_in_pair(self, small_config):
        section = small_config.check_forms.model_copy(update={"pairs": [["g1", "ghost"]]})
        config = small_config.model_copy(update={"check_forms": section})

        with pytest.raises(ConfigurationError, match="ghost"):
            self.handler.execute(config)

    def test_no_states(self, small_config):
        config = small_config.model_copy(update={"states": []})

        with pytest.raises(ConfigurationError, match="at least one"):
            self.handler.execute(config)

    def test_state_export(self, small_config):
        """Exported snapshots add one table per sampled state."""
        section = small_config.check_forms.model_copy(update={"pairs": [["g1", "g1"]], "grids": ["cartesian"]})
        output = small_config.output.model_copy(update={"export_states": True})
        config = small_config.model_copy(update={"check_forms": section, "output": output})

        result = self.handler.execute(config)

        assert set(result.tables) == {"forms", "state.g1.cartesian"}
        assert len(result.tables["state.g1.cartesian"]["kx"]) == 16**3
