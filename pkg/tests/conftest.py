"""Pytest configuration and shared fixtures."""
import shutil
import sys
import tempfile
from pathlib import Path

import pytest

from src.domain.entities.feature_pool import FeaturePool
from src.infrastructure.settings import CampaignConfig, CompilerConfig, Settings
from tests.fixtures.sample_data import sample_features
from tests.fixtures.scripted import ScriptedChatModel, ScriptedHarness, deterministic_responder

FIXTURES_DIR = Path(__file__).parent / "fixtures"
FAKE_COMPILER = FIXTURES_DIR / "fake_compiler.py"
GOLDEN_DIR = FIXTURES_DIR / "golden"


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    temp_path = Path(tempfile.mkdtemp())
    yield temp_path
    shutil.rmtree(temp_path)


@pytest.fixture
def sample_settings(temp_dir):
    """Create sample settings for testing."""
    return Settings(
        llm_base_url="https://llm.test/v1",
        llm_api_key="test-key",
        embed_base_url=None,
        llm_requests_per_minute=1_000_000,
        llm_http_retries=0,
        bugzilla_url="https://bugzilla.test",
        bugzilla_api_key=None,
        fetch_workers=2,
        logs_directory=str(temp_dir / "logs"),
        _env_file=None  # Disable .env loading in tests (Pydantic v2)
    )


@pytest.fixture
def features():
    """The three sample features (flexible array, pass by value, backward goto)."""
    return sample_features()


@pytest.fixture
def pool(features):
    return FeaturePool(features)


@pytest.fixture
def scripted_model():
    """Chat model answering with a pure function of the prompt."""
    return ScriptedChatModel(handler=deterministic_responder)


@pytest.fixture
def scripted_harness():
    return ScriptedHarness()


@pytest.fixture
def fake_compiler_config(temp_dir):
    """Compiler config that runs the fake driver through the current interpreter."""
    return CompilerConfig(
        command_template=[sys.executable, str(FAKE_COMPILER), "{input}", "-o", "{output}"],
        timeout=5.0,
    )


@pytest.fixture
def campaign_config(temp_dir):
    """Campaign over a small pool with edge coverage and a scripted harness."""
    from src.infrastructure.file_system.pool_store import save_pool
    from tests.fixtures.sample_data import generated_pool

    pool_path = temp_dir / "pool.jsonl"
    save_pool(generated_pool(12, seed=7), str(pool_path))
    return CampaignConfig(
        pool_path=str(pool_path),
        output_dir=str(temp_dir / "campaign"),
        compiler=CompilerConfig(
            command_template=["cc", "{input}"],
            coverage_mode="edge_bitmap",
            bitmap_path=str(temp_dir / "bitmap"),
        ),
        k=2,
        target_group_size=4,
        max_iterations=20,
        seed=11,
        snapshot_every=5,
    )


@pytest.fixture(autouse=True)
def setup_test_environment(monkeypatch):
    """Setup test environment variables."""
    monkeypatch.setenv("TESTING", "true")
    monkeypatch.delenv("LLM_MODE", raising=False)
    monkeypatch.delenv("REPLAY_ARCHIVE", raising=False)


# Markers for different test types
def pytest_configure(config):
    """Configure pytest markers."""
    config.addinivalue_line("markers", "unit: Unit tests")
    config.addinivalue_line("markers", "integration: Integration tests")
    config.addinivalue_line("markers", "slow: Slow running tests")
    config.addinivalue_line("markers", "llm_api: Tests that require chat endpoint mocking")
