"""Tests for RunCampaignUseCase."""
import itertools

import pytest

from src.application.use_cases.compute_metrics import ComputeMetricsUseCase
from src.application.use_cases.run_campaign import (
    STOP_HARNESS_ERROR,
    STOP_ITERATION_CAP,
    STOP_TIME_BUDGET,
    RunCampaignUseCase,
)
from src.domain.entities.campaign import IterationReport
from src.domain.entities.feature_group import GroupSource
from src.domain.exceptions import HarnessError
from src.infrastructure.file_system.campaign_store import (
    COVERAGE_FILE,
    CRASHES_FILE,
    GROUPS_FILE,
    ITERATIONS_FILE,
    REPORT_FILE,
    SUMMARY_FILE,
    CampaignStore,
)
from src.infrastructure.file_system.group_store import load_groups
from src.infrastructure.llm.hash_embedding import HashEmbeddingProvider
from tests.fixtures.scripted import ScriptedChatModel, ScriptedHarness, deterministic_responder


def run(config, harness=None, resume=False, **kwargs):
    use_case = RunCampaignUseCase(
        config,
        model=ScriptedChatModel(handler=deterministic_responder),
        harness=harness or ScriptedHarness(),
        **kwargs,
    )
    return use_case.execute(resume=resume)


class TestRunCampaignUseCase:
    """Test budgets, persistence and resume."""

    def test_runs_to_iteration_cap(self, campaign_config):
        """Test the campaign stops at the cap and writes every artifact."""
        report = run(campaign_config)
        assert report.stopped_reason == STOP_ITERATION_CAP
        assert report.final_iteration == 20
        assert report.iterations_run == 20
        assert report.stats.generated == 20
        root = CampaignStore(campaign_config.output_dir).root
        for name in (ITERATIONS_FILE, REPORT_FILE, SUMMARY_FILE, CRASHES_FILE, COVERAGE_FILE):
            assert (root / name).is_file()
        assert len(CampaignStore(campaign_config.output_dir).load_iterations()) == 20

    def test_fresh_run_discards_old_iterations(self, campaign_config):
        """Test a non-resumed run starts a new iteration log."""
        run(campaign_config)
        run(campaign_config)
        assert len(CampaignStore(campaign_config.output_dir).load_iterations()) == 20

    def test_time_budget(self, campaign_config):
        """Test the wall-clock budget with a fake clock."""
        config = campaign_config.model_copy(update={"max_iterations": None, "time_budget_seconds": 3})
        ticks = itertools.count()
        report = run(config, clock=lambda: next(ticks))
        assert report.stopped_reason == STOP_TIME_BUDGET
        assert report.iterations_run == 2

    def test_harness_error_snapshots_and_reraises(self, campaign_config):
        """Test a fatal harness error persists state before propagating."""
        with pytest.raises(HarnessError):
            run(campaign_config, harness=ScriptedHarness(fail_on_run=8))
        store = CampaignStore(campaign_config.output_dir)
        state = store.load_state()
        assert state.iteration == 7
        assert store.load_report().stopped_reason == STOP_HARNESS_ERROR
        assert len(store.load_iterations()) == 7

    def test_resume_continues_to_cumulative_cap(self, campaign_config):
        """Test resuming runs only the iterations left under the cap."""
        run(campaign_config.model_copy(update={"max_iterations": 10}))
        report = run(campaign_config, resume=True)
        assert report.iterations_run == 10
        assert report.final_iteration == 20
        iterations = CampaignStore(campaign_config.output_dir).load_iterations()
        assert [r.iteration for r in iterations] == list(range(1, 21))

    def test_resume_drops_iterations_after_snapshot(self, campaign_config):
        """Test log entries newer than the snapshot are discarded on resume."""
        config = campaign_config.model_copy(update={"max_iterations": 5})
        run(config)
        store = CampaignStore(config.output_dir)
        store.append_iteration(IterationReport(iteration=6))
        report = run(config, resume=True)
        assert report.iterations_run == 0
        assert [r.iteration for r in store.load_iterations()] == [1, 2, 3, 4, 5]

    def test_resume_without_snapshot_starts_fresh(self, campaign_config):
        """Test resume falls back to a new campaign when nothing is saved."""
        report = run(campaign_config.model_copy(update={"max_iterations": 3}), resume=True)
        assert report.final_iteration == 3

    def test_campaign_groups_feed_coherence_metrics(self, campaign_config):
        """Test every iteration's group, glue features included, is exported and scoreable."""
        report = run(campaign_config)
        path = CampaignStore(campaign_config.output_dir).root / GROUPS_FILE
        groups = load_groups(str(path))
        assert len(groups) == report.final_iteration
        assert any(f.is_glue for group in groups for f in group.features)
        assert GroupSource.SYNTHESIZED in {group.source for group in groups}

        result = ComputeMetricsUseCase(HashEmbeddingProvider(dim=16)).execute(groups_path=str(path))
        assert result["coherence"]["groups"] == len(groups)

    def test_resumed_groups_match_straight_run(self, campaign_config, temp_dir):
        """Test the exported groups of a resumed campaign equal a single run's."""
        straight = campaign_config.model_copy(update={"output_dir": str(temp_dir / "straight")})
        run(straight)
        run(campaign_config.model_copy(update={"max_iterations": 10}))
        run(campaign_config, resume=True)
        first = (CampaignStore(straight.output_dir).root / GROUPS_FILE).read_text(encoding="utf-8")
        second = (CampaignStore(campaign_config.output_dir).root / GROUPS_FILE).read_text(encoding="utf-8")
        assert first == second
