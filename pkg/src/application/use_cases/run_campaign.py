"""Caso de uso para ejecutar (o reanudar) una campaña de fuzzing."""

import logging
import time
from typing import Callable, Optional

from src.application.interfaces.compiler_harness import CompilerHarnessInterface
from src.application.interfaces.model_endpoint import ChatModel
from src.application.services.fuzz_loop import FuzzDependencies, run_iteration
from src.application.services.reporting import build_campaign_report, render_summary
from src.domain.entities.campaign import CampaignReport, CampaignState
from src.domain.entities.coverage_map import CoverageMap
from src.domain.entities.feature_pool import NovelQueue
from src.domain.exceptions import HarnessError
from src.infrastructure.compiler.harness import CompilerHarness
from src.infrastructure.file_system.campaign_store import ITERATIONS_FILE, CampaignStore
from src.infrastructure.file_system.pool_store import load_pool
from src.infrastructure.llm.llm_client import LLMClient
from src.infrastructure.settings import CampaignConfig, Settings

logger = logging.getLogger(__name__)

STOP_ITERATION_CAP = "iteration_cap"
STOP_TIME_BUDGET = "time_budget"
STOP_HARNESS_ERROR = "harness_error"


class RunCampaignUseCase:
    """Ejecuta iteraciones hasta agotar el presupuesto y persiste el estado.

    El snapshot se escribe cada `snapshot_every` iteraciones, al terminar y
    ante un HarnessError fatal.
    """

    def __init__(
        self,
        config: CampaignConfig,
        settings: Optional[Settings] = None,
        model: Optional[ChatModel] = None,
        harness: Optional[CompilerHarnessInterface] = None,
        clock: Callable[[], float] = time.monotonic,
    ):
        self.config = config
        self.store = CampaignStore(config.output_dir)
        if model is None:
            model = LLMClient(
                settings or Settings(),
                mode=config.llm_mode,
                archive_path=config.replay_archive,
                overrides=config.models,
            )
        self.deps = FuzzDependencies(
            group_model=model,
            instantiation_model=model,
            harness=harness or CompilerHarness(config.compiler),
            run_dir_for=self.store.run_dir,
            record_group=self.store.save_run_group,
        )
        self.clock = clock

    def _initial_state(self, resume: bool) -> CampaignState:
        if resume and self.store.has_snapshot():
            state = self.store.load_state()
            dropped = self.store.truncate_iterations(state.iteration)
            if dropped:
                logger.info("Se descartaron %d iteraciones posteriores al snapshot", dropped)
            return state
        if resume:
            logger.warning("No hay snapshot en %s; se inicia una campaña nueva", self.store.root)
        iterations_file = self.store.root / ITERATIONS_FILE
        if iterations_file.exists():
            iterations_file.unlink()
        return CampaignState(
            pool=load_pool(self.config.pool_path),
            novel=NovelQueue(max_size=self.config.novel_queue_cap),
            global_cov=CoverageMap.empty(self.config.compiler.coverage_mode),
        )

    def _budget_exhausted(self, state: CampaignState, started: float) -> Optional[str]:
        cap = self.config.max_iterations
        if cap is not None and state.iteration >= cap:
            return STOP_ITERATION_CAP
        budget = self.config.time_budget_seconds
        if budget is not None and self.clock() - started >= budget:
            return STOP_TIME_BUDGET
        return None

    def _finish(self, state: CampaignState, iterations_run: int, reason: str) -> CampaignReport:
        self.store.save_state(state)
        report = build_campaign_report(
            state,
            self.store.load_iterations(),
            iterations_run,
            reason,
            self.config.compiler.component_map,
        )
        self.store.write_report(report, render_summary(report))
        self.store.write_coverage(state.global_cov)
        self.store.export_groups(state.iteration)
        return report

    def execute(self, resume: bool = False) -> CampaignReport:
        """Corre la campaña; `max_iterations` es el total acumulado al reanudar.

        Raises:
            HarnessError: Tras escribir el snapshot y el reporte parcial
        """
        state = self._initial_state(resume)
        started = self.clock()
        iterations_run = 0
        logger.info(
            "Campaña en %s desde la iteración %d (pool de %d features)",
            self.store.root,
            state.iteration,
            len(state.pool),
        )

        while True:
            reason = self._budget_exhausted(state, started)
            if reason is not None:
                break
            try:
                report = run_iteration(state, self.deps, self.config)
            except HarnessError as e:
                logger.error("Error fatal del arnés en la iteración %d: %s", state.iteration + 1, e)
                self._finish(state, iterations_run, STOP_HARNESS_ERROR)
                raise
            self.store.append_iteration(report)
            iterations_run += 1
            if state.iteration % self.config.snapshot_every == 0:
                self.store.save_state(state)

        logger.info("Campaña terminada (%s) tras %d iteraciones", reason, iterations_run)
        return self._finish(state, iterations_run, reason)
