"""Tests for BuildTrainingDataUseCase."""
import json

import pytest

from src.application.use_cases.build_training_data import BuildTrainingDataUseCase
from src.domain.exceptions import PoolFormatError
from src.infrastructure.file_system.group_store import save_groups
from tests.fixtures.sample_data import sample_group


class TestBuildTrainingDataUseCase:
    """Test dataset generation from a groups file."""

    def test_execute(self, temp_dir):
        """Test four pairs per group are written as prompt/completion records."""
        groups_path = temp_dir / "groups.jsonl"
        save_groups([sample_group(), sample_group()], str(groups_path))
        out = temp_dir / "train.jsonl"
        stats = BuildTrainingDataUseCase().execute(str(groups_path), str(out), seed=4)
        assert stats.groups_in == 2
        assert stats.pairs_out == 8
        first = json.loads(out.read_text(encoding="utf-8").splitlines()[0])
        assert first["completion"].startswith("1. ")

    def test_corrupt_groups_file(self, temp_dir):
        """Test a malformed groups file is reported with its record index."""
        groups_path = temp_dir / "groups.jsonl"
        groups_path.write_text('{"source": "collected", "features": []}\n', encoding="utf-8")
        with pytest.raises(PoolFormatError) as exc_info:
            BuildTrainingDataUseCase().execute(str(groups_path), str(temp_dir / "out.jsonl"))
        assert exc_info.value.record_index == 0
