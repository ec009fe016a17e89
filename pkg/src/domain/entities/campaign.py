"""Entidades del estado y los reportes de una campaña."""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.domain.entities.compile_outcome import CompileStatus, CrashSignature
from src.domain.entities.coverage_map import CoverageMap, CoverageMode
from src.domain.entities.feature_group import GroupSource
from src.domain.entities.feature_pool import FeaturePool, NovelQueue


class CampaignStats(BaseModel):
    """Contadores no decrecientes de la campaña."""

    generated: int = 0
    valid: int = 0
    rejects: int = 0
    crashes_unique: int = 0
    crashes_total: int = 0
    hangs: int = 0
    ooms: int = 0
    model_failures: int = 0
    instantiation_failures: int = 0
    coverage_failures: int = 0


class CrashRecord(BaseModel):
    """Primera aparición de un bucket de crash."""

    signature: CrashSignature
    first_seen_iteration: int
    occurrences: int = 1
    sample_stderr: str = ""
    reproduce_command: List[str] = Field(default_factory=list)
    source_path: Optional[str] = None


class CoveragePoint(BaseModel):
    iteration: int
    size: int


class IterationReport(BaseModel):
    """Resultado de una iteración del bucle de fuzzing."""

    iteration: int
    seed_ids: List[str] = Field(default_factory=list)
    group_ids: List[str] = Field(default_factory=list)
    group_source: Optional[GroupSource] = None
    outcome_status: Optional[CompileStatus] = None
    signature: Optional[CrashSignature] = None
    new_crash: bool = False
    crash_compilable: bool = False
    cov_delta: int = 0
    promoted_ids: List[str] = Field(default_factory=list)
    failure: Optional[str] = None

    @model_validator(mode="after")
    def promotion_is_sound(self) -> "IterationReport":
        """Sólo se promueven features de G \\ S y sólo con ganancia de cobertura."""
        allowed = set(self.group_ids) - set(self.seed_ids)
        if not set(self.promoted_ids) <= allowed:
            raise ValueError("Features promovidas fuera de G \\ S")
        if self.promoted_ids and self.cov_delta <= 0:
            raise ValueError("Promoción sin ganancia de cobertura")
        return self


class CampaignState(BaseModel):
    """Raíz mutable del bucle: pool, cola, cobertura y estadísticas."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    pool: FeaturePool
    novel: NovelQueue = Field(default_factory=NovelQueue)
    global_cov: CoverageMap = Field(
        default_factory=lambda: CoverageMap.empty(CoverageMode.NONE)
    )
    iteration: int = 0
    stats: CampaignStats = Field(default_factory=CampaignStats)
    crash_index: Dict[str, CrashRecord] = Field(default_factory=dict)
    coverage_curve: List[CoveragePoint] = Field(default_factory=list)


class CampaignReport(BaseModel):
    """Reporte final apto para resúmenes de validez y crashes."""

    iterations_run: int
    final_iteration: int
    stopped_reason: str
    stats: CampaignStats
    coverage_size: int
    coverage_curve: List[CoveragePoint] = Field(default_factory=list)
    crashes: List[CrashRecord] = Field(default_factory=list)
    valid_rate: float = 0.0
    crash_on_valid: float = 0.0
    component_coverage: Dict[str, int] = Field(default_factory=dict)
