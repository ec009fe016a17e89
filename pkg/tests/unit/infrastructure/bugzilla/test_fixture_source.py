"""Tests for the local fixture artifact source."""
from src.infrastructure.bugzilla.fixture_source import FixtureArtifactSource
from tests.fixtures.sample_data import SAMPLE_POC, SAMPLE_REPORT, create_bug_fixture


class TestFixtureArtifactSource:
    """Test reading bug directories."""

    def test_reads_bugs_in_order(self, temp_dir):
        """Test bug directories are read sorted by name with their files intact."""
        create_bug_fixture(temp_dir, "b2", fix=None)
        create_bug_fixture(temp_dir, "a1", poc_name="poc.cpp")
        result = FixtureArtifactSource(str(temp_dir)).fetch(None, 10)
        assert [a.bug_id for a in result.artifacts] == ["a1", "b2"]
        first, second = result.artifacts
        assert first.report_text == SAMPLE_REPORT
        assert first.poc_source == SAMPLE_POC
        assert not first.partial
        assert second.partial
        assert first.url.startswith("file://")

    def test_bad_bugs_skipped(self, temp_dir):
        """Test bugs without evidence or with non-UTF-8 text are skipped and counted."""
        create_bug_fixture(temp_dir, "ok")
        create_bug_fixture(temp_dir, "empty", report=None, poc=None)
        binary = create_bug_fixture(temp_dir, "binary", report=None)
        (binary / "report.txt").write_bytes(b"\xff\xfe\x00bad")
        result = FixtureArtifactSource(str(temp_dir)).fetch(None, 10)
        assert [a.bug_id for a in result.artifacts] == ["ok"]
        assert result.parse_errors == 2
        assert sorted(result.skipped_ids) == ["binary", "empty"]

    def test_limit_and_missing_directory(self, temp_dir):
        """Test the limit and an absent directory."""
        for name in ("1", "2", "3"):
            create_bug_fixture(temp_dir, name)
        assert len(FixtureArtifactSource(str(temp_dir)).fetch(None, 2).artifacts) == 2
        missing = FixtureArtifactSource(str(temp_dir / "none"))
        assert missing.fetch(None, 5).artifacts == []
        assert missing.test_connection() is False
