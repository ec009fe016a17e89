"""Tests for the smaller domain entities."""
import pytest
from pydantic import ValidationError

from src.domain.entities.bug_artifact import BugArtifact
from src.domain.entities.campaign import IterationReport
from src.domain.entities.embedding import EmbeddingVector
from src.domain.entities.model_request import ModelParams, ModelRequest, ModelRole
from src.domain.entities.source_program import Language, SourceProgram
from src.domain.entities.training_pair import TrainingPair


class TestBugArtifact:
    """Test bug artifact validation."""

    def test_requires_report_or_poc(self):
        """Test an artifact with neither report nor PoC is invalid."""
        with pytest.raises(ValidationError):
            BugArtifact(bug_id="1", report_text="  ", poc_source="")

    def test_partial_without_fix(self):
        """Test artifacts lacking fix history are partial."""
        assert BugArtifact(bug_id="1", report_text="ICE").partial
        assert not BugArtifact(bug_id="1", report_text="ICE", fix_summary="fixed").partial


class TestSourceProgram:
    """Test candidate program validation."""

    def test_fences_rejected(self):
        """Test code must not contain block markers."""
        with pytest.raises(ValidationError):
            SourceProgram(code="```c\nint x;\n```")

    def test_blank_rejected(self):
        """Test code cannot be blank."""
        with pytest.raises(ValidationError):
            SourceProgram(code="   \n")

    def test_suffix_follows_language(self):
        """Test the input file suffix matches the language."""
        assert SourceProgram(code="int x;").suffix == ".c"
        assert SourceProgram(code="class A {};", language=Language.CPP).suffix == ".cpp"


class TestTrainingPair:
    """Test masked-prediction pairs."""

    def test_sides_must_be_disjoint(self):
        """Test inputs and targets cannot share a feature."""
        with pytest.raises(ValidationError):
            TrainingPair(input_features=["a", "b"], target_features=["b"], group_id="g")

    def test_sides_non_empty(self):
        """Test both sides need at least one feature."""
        with pytest.raises(ValidationError):
            TrainingPair(input_features=[], target_features=["b"], group_id="g")


class TestModelRequest:
    """Test request hashing used by the replay archive."""

    def _request(self, **overrides):
        data = {
            "role": ModelRole.GROUP,
            "prompt": "hello",
            "params": ModelParams(model_name="m", temperature=0.8),
        }
        data.update(overrides)
        return ModelRequest(**data)

    def test_hash_ignores_request_id(self):
        """Test two requests with the same content hash equally."""
        assert self._request().request_hash() == self._request().request_hash()
        assert self._request().request_id != self._request().request_id

    def test_hash_depends_on_sample_and_role(self):
        """Test retries and roles are distinct archive entries."""
        base = self._request().request_hash()
        assert self._request(sample=1).request_hash() != base
        assert self._request(role=ModelRole.INSTANTIATE).request_hash() != base


class TestEmbeddingVector:
    """Test embedding vector validation."""

    def test_non_finite_rejected(self):
        """Test NaN and infinity are rejected."""
        with pytest.raises(ValidationError):
            EmbeddingVector(values=[1.0, float("nan")])
        with pytest.raises(ValidationError):
            EmbeddingVector(values=[float("inf")])

    def test_dim(self):
        """Test dim is the vector length."""
        assert EmbeddingVector(values=[0.0, 1.0, 2.0]).dim == 3


class TestIterationReport:
    """Test the promotion soundness check on iteration reports."""

    def test_promotion_outside_group_minus_seed_rejected(self):
        """Test promoted ids must come from the group and not the seed."""
        with pytest.raises(ValidationError):
            IterationReport(
                iteration=1, seed_ids=["a"], group_ids=["a", "b"], promoted_ids=["a"], cov_delta=3
            )

    def test_promotion_without_gain_rejected(self):
        """Test promotion requires a positive coverage delta."""
        with pytest.raises(ValidationError):
            IterationReport(
                iteration=1, seed_ids=["a"], group_ids=["a", "b"], promoted_ids=["b"], cov_delta=0
            )

    def test_sound_promotion_accepted(self):
        """Test a glue feature promoted on gain is valid."""
        report = IterationReport(
            iteration=1, seed_ids=["a"], group_ids=["a", "b"], promoted_ids=["b"], cov_delta=2
        )
        assert report.promoted_ids == ["b"]
