"""Bucle de fuzzing guiado por cobertura sobre grupos de features.

Cada iteración elige semillas (mezclando la cola de novedades y el pool),
completa el grupo, lo instancia, compila el programa y, si la cobertura
global crece, promueve las features de pegamento del grupo.
"""

import logging
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, NamedTuple, Optional, Tuple

from src.application.interfaces.compiler_harness import CompilerHarnessInterface
from src.application.interfaces.model_endpoint import ChatModel
from src.application.services.group_synthesis import complete_group, random_group
from src.application.services.instantiation import instantiate
from src.domain.entities.campaign import (
    CampaignState,
    CampaignStats,
    CoveragePoint,
    CrashRecord,
    IterationReport,
)
from src.domain.entities.compile_outcome import CompileOutcome, CompileStatus, CrashSignature
from src.domain.entities.coverage_map import CoverageMap, CoverageMode, merge_coverage
from src.domain.entities.feature import Feature
from src.domain.entities.feature_group import FeatureGroup, GroupSource
from src.domain.entities.source_program import SourceProgram
from src.domain.exceptions import (
    CoverageUnavailable,
    EmptyPool,
    GroupSynthesisFailed,
    HarnessError,
    InstantiationFailed,
)
from src.infrastructure.settings import CampaignConfig

logger = logging.getLogger(__name__)

SAMPLE_STDERR_CHARS = 4000


class SeedSelection(NamedTuple):
    features: List[Feature]
    from_novel: List[str]


@dataclass
class FuzzDependencies:
    """Colaboradores de una iteración."""

    group_model: ChatModel
    instantiation_model: ChatModel
    harness: CompilerHarnessInterface
    run_dir_for: Callable[[int], Path]
    record_group: Optional[Callable[[int, FeatureGroup], None]] = None


def iteration_rng(seed: int, iteration: int) -> random.Random:
    """Generador propio de cada iteración; reanudar no altera las siguientes."""
    return random.Random(f"{seed}:{iteration}")


def select_seed_set(state: CampaignState, k: int, rng: random.Random) -> SeedSelection:
    """Toma k_N ~ U[0, min(k, |N|)] ids de la cola y completa con el pool.

    Raises:
        EmptyPool: Si el pool global está vacío
    """
    if k < 1:
        raise ValueError("k debe ser >= 1")
    if len(state.pool) == 0:
        raise EmptyPool("El pool de features está vacío")

    k_novel = rng.randint(0, min(k, len(state.novel)))
    from_novel = state.novel.dequeue(k_novel)
    chosen = [state.pool.get(fid) for fid in from_novel if fid in state.pool]
    fill = state.pool.sample(k - len(chosen), rng.getrandbits(32), exclude=from_novel)
    return SeedSelection(features=chosen + fill, from_novel=from_novel)


class HarnessObservation(NamedTuple):
    """Lo que el arnés reportó en una iteración, antes de tocar el estado."""

    outcome: CompileOutcome
    signature: Optional[CrashSignature]
    compilable: bool
    coverage: Optional[CoverageMap]


def _count_outcome(stats: CampaignStats, outcome: CompileOutcome) -> None:
    if outcome.status == CompileStatus.VALID:
        stats.valid += 1
    elif outcome.status == CompileStatus.REJECT:
        stats.rejects += 1
    elif outcome.status == CompileStatus.HANG:
        stats.hangs += 1
    elif outcome.status == CompileStatus.OOM:
        stats.ooms += 1
    elif outcome.status == CompileStatus.CRASH:
        stats.crashes_total += 1


def _observe(
    state: CampaignState, deps: FuzzDependencies, program: SourceProgram, run_dir: Path
) -> HarnessObservation:
    """Todas las llamadas al arnés de la iteración; no modifica `state`.

    Raises:
        HarnessError: Falla fatal en cualquiera de las llamadas
    """
    outcome = deps.harness.run_compile(program, run_dir)
    signature = None
    compilable = False
    if outcome.status == CompileStatus.CRASH:
        signature = deps.harness.classify_crash(outcome)
        compilable = deps.harness.accepts_elsewhere(program, run_dir)

    coverage = None
    if state.global_cov.unit_kind != CoverageMode.NONE:
        try:
            coverage = deps.harness.measure_coverage(run_dir)
        except CoverageUnavailable as e:
            logger.warning("Cobertura no disponible en %s: %s", run_dir, str(e))
    return HarnessObservation(outcome, signature, compilable, coverage)


def _record_crash(
    state: CampaignState,
    report: IterationReport,
    observation: HarnessObservation,
    program: SourceProgram,
    run_dir: Path,
) -> None:
    signature = observation.signature
    outcome = observation.outcome
    report.signature = signature
    report.crash_compilable = observation.compilable
    bucket = f"{signature.kind.value}:{signature.key}"
    existing = state.crash_index.get(bucket)
    if existing is not None:
        existing.occurrences += 1
        return
    report.new_crash = True
    state.stats.crashes_unique += 1
    state.crash_index[bucket] = CrashRecord(
        signature=signature,
        first_seen_iteration=report.iteration,
        sample_stderr=outcome.stderr[:SAMPLE_STDERR_CHARS],
        reproduce_command=outcome.command,
        source_path=str(run_dir / f"input{program.suffix}"),
    )
    logger.info(
        "Crash nuevo en la iteración %d: %s %s", report.iteration, signature.kind.value, signature.key
    )


def _promote(
    state: CampaignState,
    group: FeatureGroup,
    seed_ids: List[str],
    iteration: int,
    feedback: bool = True,
) -> List[str]:
    """Promoción optimista: las features de pegamento de G \\ S pasan al pool y a la cola.

    Sin retroalimentación solo se registran la recompensa y la curva.
    """
    promoted: List[str] = []
    if feedback and group.source == GroupSource.SYNTHESIZED:
        seeds = set(seed_ids)
        for feature in group.sorted_features():
            if feature.id in seeds or not feature.is_glue:
                continue
            state.pool.insert(feature)
            state.novel.enqueue(feature.id)
            promoted.append(feature.id)
    state.pool.increment_reward(group.ids())
    state.coverage_curve.append(CoveragePoint(iteration=iteration, size=len(state.global_cov)))
    return promoted


def _build_group(
    selection: SeedSelection,
    state: CampaignState,
    deps: FuzzDependencies,
    config: CampaignConfig,
    iteration: int,
    fallback_seed: int,
) -> Tuple[FeatureGroup, bool]:
    """Grupo de la iteración y si el modelo de grupos falló."""
    if config.group_strategy == "random":
        group = random_group(selection.features, state.pool, config.target_group_size, fallback_seed)
        return group, False
    try:
        group = complete_group(
            selection.features,
            config.target_group_size,
            deps.group_model,
            iteration_id=iteration,
            retries=config.group_retries,
        )
        return group, False
    except GroupSynthesisFailed as e:
        logger.warning("Iteración %d: %s; se usa un grupo aleatorio", iteration, str(e))
        group = random_group(selection.features, state.pool, config.target_group_size, fallback_seed)
        return group, True


def run_iteration(
    state: CampaignState, deps: FuzzDependencies, config: CampaignConfig
) -> IterationReport:
    """Ejecuta una iteración y confirma sus efectos en `state`.

    Las fallas de modelo e instanciación se cuentan y dejan el estado como
    estaba (salvo el contador de iteración). Ante un HarnessError el estado
    queda exactamente como antes de la iteración.

    Raises:
        HarnessError: Falla fatal del arnés del compilador
        EmptyPool: Si no hay features para sembrar
    """
    iteration = state.iteration + 1
    rng = iteration_rng(config.seed, iteration)
    selection = select_seed_set(state, config.k, rng)
    fallback_seed = rng.getrandbits(32)
    seed_ids = [f.id for f in selection.features]
    report = IterationReport(iteration=iteration, seed_ids=seed_ids)

    group, model_failed = _build_group(selection, state, deps, config, iteration, fallback_seed)
    report.group_ids = sorted(group.ids())
    report.group_source = group.source

    try:
        program = instantiate(group, deps.instantiation_model, retries=config.instantiation_retries)
    except InstantiationFailed as e:
        state.stats.model_failures += int(model_failed)
        state.stats.instantiation_failures += 1
        state.novel.requeue_front(selection.from_novel)
        state.iteration = iteration
        report.failure = "instantiation_failed"
        logger.warning("Iteración %d: %s", iteration, str(e))
        _record_group(deps, iteration, group)
        return IterationReport.model_validate(report.model_dump())

    run_dir = deps.run_dir_for(iteration)
    try:
        observation = _observe(state, deps, program, run_dir)
    except HarnessError:
        state.novel.requeue_front(selection.from_novel)
        raise

    outcome = observation.outcome
    state.stats.model_failures += int(model_failed)
    state.stats.generated += 1
    _count_outcome(state.stats, outcome)
    report.outcome_status = outcome.status
    if outcome.status == CompileStatus.CRASH:
        _record_crash(state, report, observation, program, run_dir)

    if observation.coverage is not None:
        state.global_cov, report.cov_delta = merge_coverage(state.global_cov, observation.coverage)
    elif state.global_cov.unit_kind != CoverageMode.NONE:
        state.stats.coverage_failures += 1
    if report.cov_delta > 0:
        report.promoted_ids = _promote(state, group, seed_ids, iteration, config.feedback)

    state.iteration = iteration
    _record_group(deps, iteration, group)
    logger.debug(
        "Iteración %d: %s, delta=%d, promovidas=%d",
        iteration,
        outcome.status.value,
        report.cov_delta,
        len(report.promoted_ids),
    )
    return IterationReport.model_validate(report.model_dump())


def _record_group(deps: FuzzDependencies, iteration: int, group: FeatureGroup) -> None:
    if deps.record_group is not None:
        deps.record_group(iteration, group)
