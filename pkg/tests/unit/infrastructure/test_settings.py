"""Tests for Settings and the campaign configuration document."""
import json
import os
from unittest.mock import patch

import pytest
from pydantic import ValidationError

from src.domain.entities.coverage_map import CoverageMode
from src.domain.entities.model_request import ModelRole
from src.domain.exceptions import ConfigError
from src.infrastructure.settings import (
    DEFAULT_CRASH_PATTERNS,
    CampaignConfig,
    CompilerConfig,
    LlmMode,
    Settings,
    load_campaign_config,
)


def campaign_document(**overrides):
    document = {
        "pool_path": "pool.jsonl",
        "output_dir": "out",
        "compiler": {"command_template": ["gcc", "-c", "{input}"]},
        "max_iterations": 100,
    }
    document.update(overrides)
    return document


class TestSettingsInit:
    """Test Settings initialization."""

    def test_defaults(self):
        """Test defaults without environment or .env file."""
        with patch.dict(os.environ, {}, clear=True):
            settings = Settings(_env_file=None)
        assert settings.llm_mode == LlmMode.LIVE
        assert settings.llm_requests_per_minute == 60.0
        assert settings.bugzilla_url == "https://gcc.gnu.org/bugzilla"
        assert settings.logs_directory == "logs"

    def test_environment_overrides(self):
        """Test values come from environment variables."""
        env = {
            "LLM_BASE_URL": "https://llm.example/v1/",
            "LLM_MODE": "replay",
            "REPLAY_ARCHIVE": "archive.jsonl",
            "GROUP_MODEL": "grouper",
            "FETCH_WORKERS": "8",
        }
        with patch.dict(os.environ, env, clear=True):
            settings = Settings(_env_file=None)
        assert settings.llm_mode == LlmMode.REPLAY
        assert settings.replay_archive == "archive.jsonl"
        assert settings.fetch_workers == 8
        assert settings.base_url_for(ModelRole.GROUP) == "https://llm.example/v1"

    def test_invalid_values(self):
        """Test invalid numbers are rejected."""
        with pytest.raises(ValidationError):
            Settings(fetch_workers=0, _env_file=None)
        with pytest.raises(ValidationError):
            Settings(llm_requests_per_minute=0, _env_file=None)

    def test_model_params_per_role(self, sample_settings):
        """Test each role gets its model and temperature."""
        assert sample_settings.model_params(ModelRole.EXTRACT).temperature == 0.2
        assert sample_settings.model_params(ModelRole.GROUP).model_name == "group-model"
        assert sample_settings.model_params(ModelRole.EMBED).temperature == 0.0

    def test_embed_base_url(self, sample_settings):
        """Test embeddings can use their own endpoint."""
        settings = sample_settings.model_copy(update={"embed_base_url": "https://emb.test/"})
        assert settings.base_url_for(ModelRole.EMBED) == "https://emb.test"
        assert settings.base_url_for(ModelRole.EXTRACT) == "https://llm.test/v1"


class TestCompilerConfig:
    """Test compiler configuration validation."""

    def test_defaults(self):
        """Test default crash patterns and no coverage."""
        config = CompilerConfig(command_template=["gcc", "{input}"])
        assert config.crash_patterns == DEFAULT_CRASH_PATTERNS
        assert config.coverage_mode == CoverageMode.NONE
        assert config.timeout == 10.0

    def test_requires_input_placeholder(self):
        """Test the command must reference the program."""
        with pytest.raises(ValidationError):
            CompilerConfig(command_template=["gcc", "-c", "x.c"])

    @pytest.mark.parametrize(
        "data",
        [
            {"coverage_mode": "edge_bitmap"},
            {"coverage_mode": "line_report"},
            {"unknown_key": 1},
            {"timeout": 0},
        ],
    )
    def test_invalid(self, data):
        """Test missing coverage sources, unknown keys and bad values."""
        with pytest.raises(ValidationError):
            CompilerConfig(command_template=["gcc", "{input}"], **data)


class TestCampaignConfig:
    """Test campaign document validation."""

    def test_valid(self):
        """Test a minimal document and its defaults."""
        config = CampaignConfig(**campaign_document())
        assert config.k == 2
        assert config.target_group_size == 4
        assert config.snapshot_every == 100
        assert config.group_strategy == "synthesized"
        assert config.feedback is True

    @pytest.mark.parametrize(
        "overrides",
        [
            {"k": 5, "target_group_size": 4},
            {"k": 0},
            {"max_iterations": None},
            {"group_strategy": "greedy"},
            {"feedback": "sometimes"},
            {"extra": True},
        ],
    )
    def test_invalid(self, overrides):
        """Test inconsistent sizes, missing budget and unknown fields."""
        with pytest.raises(ValidationError):
            CampaignConfig(**campaign_document(**overrides))

    def test_time_budget_alone(self):
        """Test a time budget is enough without an iteration cap."""
        config = CampaignConfig(**campaign_document(max_iterations=None, time_budget_seconds=60))
        assert config.max_iterations is None

    def test_model_overrides(self):
        """Test per-role overrides are keyed by role name."""
        config = CampaignConfig(**campaign_document(models={"group": {"model_name": "tuned"}}))
        assert config.models[ModelRole.GROUP].model_name == "tuned"


class TestLoadCampaignConfig:
    """Test reading the JSON document."""

    def test_load(self, temp_dir):
        """Test a valid file loads."""
        path = temp_dir / "campaign.json"
        path.write_text(json.dumps(campaign_document(seed=4)), encoding="utf-8")
        assert load_campaign_config(str(path)).seed == 4

    def test_missing_file(self, temp_dir):
        """Test an unreadable file raises ConfigError."""
        with pytest.raises(ConfigError):
            load_campaign_config(str(temp_dir / "missing.json"))

    def test_invalid_document_lists_fields(self, temp_dir):
        """Test validation errors name the offending field."""
        path = temp_dir / "campaign.json"
        path.write_text(json.dumps(campaign_document(k="many")), encoding="utf-8")
        with pytest.raises(ConfigError, match="k:"):
            load_campaign_config(str(path))
