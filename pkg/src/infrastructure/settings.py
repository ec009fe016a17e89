"""Configuración de la aplicación usando pydantic."""

from enum import Enum
from pathlib import Path
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.domain.entities.coverage_map import CoverageMode
from src.domain.entities.model_request import ModelParams, ModelRole
from src.domain.exceptions import ConfigError

DEFAULT_CRASH_PATTERNS = [
    r"internal compiler error",
    r"Assertion .* failed",
    r"UNREACHABLE executed",
    r"PLEASE submit a bug report",
]
DEFAULT_FATAL_SIGNALS = ["SIGSEGV", "SIGABRT", "SIGILL", "SIGFPE", "SIGBUS"]
DEFAULT_OOM_PATTERNS = [
    r"virtual memory exhausted",
    r"out of memory",
    r"std::bad_alloc",
    r"Cannot allocate memory",
    r"Killed signal terminated program",
]
DEFAULT_FRONTEND_MISMATCH_PATTERNS = [
    r"unknown type name '(class|namespace|template)'",
    r"'(class|namespace|template)' undeclared",
    r"expected .* before '(<|::)' token",
    r"fatal error: '?(iostream|vector|string|memory)'?(: No such file| file not found)",
    r"invalid argument '-std=c\+\+",
]


class LlmMode(str, Enum):
    """Modo de transporte del cliente de modelos."""

    LIVE = "live"
    RECORD = "record"
    REPLAY = "replay"


class Settings(BaseSettings):
    """Configuración de entorno con validación de tipos."""

    llm_base_url: str = Field(
        default="http://localhost:8000/v1",
        description="URL base del endpoint compatible con OpenAI",
    )
    llm_api_key: Optional[str] = Field(default=None, description="API key del endpoint")
    embed_base_url: Optional[str] = Field(
        default=None, description="URL base para embeddings (por defecto llm_base_url)"
    )
    extract_model: str = Field(default="extract-model", description="Modelo de extracción")
    group_model: str = Field(default="group-model", description="Modelo de grupos")
    instantiate_model: str = Field(
        default="instantiate-model", description="Modelo de instanciación"
    )
    embed_model: str = Field(default="embed-model", description="Modelo de embeddings")
    extract_temperature: float = Field(default=0.2, ge=0.0)
    group_temperature: float = Field(default=0.8, ge=0.0)
    instantiate_temperature: float = Field(default=0.8, ge=0.0)
    llm_max_tokens: int = Field(default=2048, gt=0)
    llm_requests_per_minute: float = Field(
        default=60.0, gt=0, description="Tasa del token bucket por endpoint"
    )
    llm_http_retries: int = Field(default=3, ge=0)
    llm_timeout: float = Field(default=120.0, gt=0)
    llm_mode: LlmMode = Field(default=LlmMode.LIVE)
    replay_archive: Optional[str] = Field(
        default=None, description="Archivo de grabación/replay de respuestas"
    )
    bugzilla_url: str = Field(
        default="https://gcc.gnu.org/bugzilla", description="URL base del Bugzilla"
    )
    bugzilla_api_key: Optional[str] = Field(default=None, description="API key de Bugzilla")
    fetch_workers: int = Field(default=4, ge=1, description="Descargas concurrentes de bugs")
    logs_directory: str = Field(
        default="logs", description="Directorio donde se almacenan los archivos de log"
    )

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"
    )

    def model_params(self, role: ModelRole) -> ModelParams:
        """Parámetros por defecto para un rol."""
        names = {
            ModelRole.EXTRACT: (self.extract_model, self.extract_temperature),
            ModelRole.GROUP: (self.group_model, self.group_temperature),
            ModelRole.INSTANTIATE: (self.instantiate_model, self.instantiate_temperature),
            ModelRole.EMBED: (self.embed_model, 0.0),
        }
        model_name, temperature = names[role]
        return ModelParams(
            model_name=model_name, temperature=temperature, max_tokens=self.llm_max_tokens
        )

    def base_url_for(self, role: ModelRole) -> str:
        if role == ModelRole.EMBED and self.embed_base_url:
            return self.embed_base_url.rstrip("/")
        return self.llm_base_url.rstrip("/")


class _StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ModelRoleConfig(_StrictModel):
    """Sobrescritura por rol del modelo y su endpoint."""

    model_name: Optional[str] = None
    base_url: Optional[str] = None
    temperature: Optional[float] = Field(default=None, ge=0.0)
    max_tokens: Optional[int] = Field(default=None, gt=0)


class CompilerConfig(_StrictModel):
    """Cómo invocar el compilador objetivo y leer su cobertura."""

    command_template: List[str] = Field(..., min_length=1)
    cpp_command_template: Optional[List[str]] = None
    secondary_command_template: Optional[List[str]] = Field(
        default=None,
        description="Compilador secundario para contar crashes como válidos",
    )
    flags: List[str] = Field(default_factory=list)
    timeout: float = Field(default=10.0, gt=0)
    memory_limit: Optional[int] = Field(default=None, gt=0, description="Bytes")
    stderr_cap: int = Field(default=65536, gt=0, description="Bytes de stderr capturados")
    coverage_mode: CoverageMode = CoverageMode.NONE
    workdir: Optional[str] = None
    env: Dict[str, str] = Field(default_factory=dict)
    crash_patterns: List[str] = Field(default_factory=lambda: list(DEFAULT_CRASH_PATTERNS))
    fatal_signals: List[str] = Field(default_factory=lambda: list(DEFAULT_FATAL_SIGNALS))
    oom_patterns: List[str] = Field(default_factory=lambda: list(DEFAULT_OOM_PATTERNS))
    frontend_mismatch_patterns: List[str] = Field(
        default_factory=lambda: list(DEFAULT_FRONTEND_MISMATCH_PATTERNS)
    )
    backtrace_frames: int = Field(default=3, ge=1)
    tail_lines: int = Field(default=5, ge=1)
    bitmap_path: Optional[str] = None
    bitmap_env_var: str = "FORJADOR_BITMAP"
    bitmap_size: int = Field(default=65536, gt=0)
    line_report_command: Optional[List[str]] = None
    line_report_dir: Optional[str] = None
    line_report_glob: str = "*.gcov"
    component_map: Dict[str, str] = Field(default_factory=dict)

    @field_validator("command_template")
    @classmethod
    def has_input_placeholder(cls, v: List[str]) -> List[str]:
        if not any("{input}" in part for part in v):
            raise ValueError("command_template debe contener {input}")
        return v

    @model_validator(mode="after")
    def coverage_sources(self) -> "CompilerConfig":
        """Cada modo de cobertura necesita su fuente."""
        if self.coverage_mode == CoverageMode.EDGE_BITMAP and not self.bitmap_path:
            raise ValueError("coverage_mode edge_bitmap requiere bitmap_path")
        if (
            self.coverage_mode == CoverageMode.LINE_REPORT
            and not self.line_report_command
            and not self.line_report_dir
        ):
            raise ValueError(
                "coverage_mode line_report requiere line_report_command o line_report_dir"
            )
        return self


class CampaignConfig(_StrictModel):
    """Documento declarativo de una campaña de fuzzing."""

    pool_path: str
    output_dir: str
    compiler: CompilerConfig
    k: int = Field(default=2, ge=1, description="Features iniciales por grupo")
    target_group_size: int = Field(default=4, ge=1)
    max_iterations: Optional[int] = Field(default=None, ge=0)
    time_budget_seconds: Optional[float] = Field(default=None, ge=0)
    seed: int = 0
    snapshot_every: int = Field(default=100, ge=1)
    novel_queue_cap: Optional[int] = Field(default=None, ge=1)
    group_retries: int = Field(default=2, ge=0)
    instantiation_retries: int = Field(default=2, ge=0)
    group_strategy: Literal["synthesized", "random"] = "synthesized"
    feedback: bool = Field(
        default=True, description="Promover features de pegamento a la cola ante ganancia de cobertura"
    )
    models: Dict[ModelRole, ModelRoleConfig] = Field(default_factory=dict)
    llm_mode: Optional[LlmMode] = None
    replay_archive: Optional[str] = None

    @model_validator(mode="after")
    def consistent_sizes(self) -> "CampaignConfig":
        if self.target_group_size < self.k:
            raise ValueError("target_group_size debe ser >= k")
        if self.max_iterations is None and self.time_budget_seconds is None:
            raise ValueError("Defina max_iterations o time_budget_seconds")
        return self


def load_campaign_config(path: str) -> CampaignConfig:
    """Lee y valida estrictamente el documento JSON de campaña.

    Raises:
        ConfigError: Si el archivo no se puede leer o no valida
    """
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"No se pudo leer la configuración {path}: {e}") from e
    try:
        return CampaignConfig.model_validate_json(raw)
    except ValidationError as e:
        details = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise ConfigError(f"Configuración inválida en {path}: {details}") from e
