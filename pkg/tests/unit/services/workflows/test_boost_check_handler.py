"""
Unit tests for the boost-check handler.
"""

import logging

import pytest

from src.core.error_handling import ConfigurationError, NeedsAnalyticStateError
from src.services.workflows.boost_check_handler import BoostCheckHandler
from src.workflows.command_types import CommandType


def _with_boost(config, **fields):
    return config.model_copy(update={"boost_check": config.boost_check.model_copy(update=fields)})


class TestBoostCheckHandler:
    """Test cases for BoostCheckHandler."""

    def setup_method(self):
        self.handler = BoostCheckHandler()

    def test_initialization(self):
        assert self.handler.command_type == CommandType.BOOST_CHECK

    def test_payload_per_rapidity(self, small_config):
        """Each rapidity gets one boost report and one table row."""
        config = _with_boost(small_config, rapidities=[0.1, 0.2], tolerance=1.0)

        result = self.handler.execute(config)

        boosts = result.result["boosts"]
        assert result.passed, result.failures
        assert [b["rapidity"] for b in boosts] == [0.1, 0.2]
        assert result.result["partner"] == "g1"
        assert result.tables["rapidities"]["rapidity"] == [0.1, 0.2]
        assert "ladder" not in result.tables
        for boost in boosts:
            assert boost["boosted_grid"]["n_r"] > boost["grid"]["n_r"]
            assert boost["refinement"] == []

    def test_single_helicity_state_reports_leakage_and_wigner_phase(self, small_config):
        """A single-helicity Gaussian stays in its helicity sector."""
        result = self.handler.execute(_with_boost(small_config, tolerance=1.0))

        boost = result.result["boosts"][0]
        assert boost["helicity_leakage"] < 1e-10
        assert len(result.result["wigner_phase_max"]) == 1

    def test_z_boost_of_axial_packet_has_no_wigner_phase(self, small_config):
        result = self.handler.execute(_with_boost(small_config, tolerance=1.0))

        assert result.result["wigner_phase_max"][0] == pytest.approx(0.0, abs=1e-12)

    def test_ladder_table(self, small_config):
        """Every ladder rung lands in the ladder table."""
        result = self.handler.execute(_with_boost(small_config, ladder_levels=2, grid="cartesian", tolerance=1.0))

        ladder = result.tables["ladder"]
        assert ladder["level"] == [0, 1]
        assert ladder["nodes"] == [8**3, 16**3]
        assert result.result["boosts"][0]["refinement_converges"] in (True, False)

    def test_stalled_ladder_fails(self, small_config, mocker):
        """A ladder that stops improving tenfold is a failure by default."""
        mocker.patch("src.services.workflows.boost_check_handler.ladder_converges", return_value=False)

        result = self.handler.execute(_with_boost(small_config, ladder_levels=2, tolerance=1.0))

        assert not result.passed
        assert result.failures == ["eta=0.2: refinement ladder is not converging 10x per rung"]
        assert result.result["boosts"][0]["refinement_converges"] is False

    def test_stalled_ladder_only_warns_when_not_required(self, small_config, mocker, caplog):
        mocker.patch("src.services.workflows.boost_check_handler.ladder_converges", return_value=False)
        config = _with_boost(small_config, ladder_levels=2, tolerance=1.0, require_ladder_convergence=False)

        with caplog.at_level(logging.WARNING):
            result = self.handler.execute(config)

        assert result.passed, result.failures
        assert "not converging" in caplog.text

    def test_tight_tolerance_fails(self, small_config):
        result = self.handler.execute(_with_boost(small_config, tolerance=1e-300))

        assert not result.passed
        assert "eta=0.2" in result.failures[0]

    def test_partner_state(self, small_config):
        result = self.handler.execute(_with_boost(small_config, partner="g2", tolerance=1.0))

        assert result.result["partner"] == "g2"

    def test_sampled_only_state(self, small_config):
        with pytest.raises(NeedsAnalyticStateError):
            self.handler.execute(_with_boost(small_config, state="noise"))

    def test_missing_section(self, small_config):
        config = small_config.model_copy(update={"boost_check": None})

        with pytest.raises(ConfigurationError, match=r"\[boost_check\]"):
            self.handler.execute(config)
