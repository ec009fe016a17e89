"""Entidades de resultado de compilación y firma de crash."""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field


class CompileStatus(str, Enum):
    VALID = "Valid"
    REJECT = "Reject"
    CRASH = "Crash"
    HANG = "Hang"
    OOM = "Oom"


class CompileOutcome(BaseModel):
    """Observación cruda de una ejecución del compilador y su clasificación."""

    status: CompileStatus
    exit_code: int = Field(..., description="Código de salida; negativo si terminó por señal")
    signal: Optional[str] = None
    stderr: str = ""
    stderr_truncated: bool = False
    wall_time: float = 0.0
    command: List[str] = Field(default_factory=list)


class CrashKind(str, Enum):
    ASSERTION_FAILURE = "AssertionFailure"
    INTERNAL_ERROR = "InternalError"
    SIGNAL = "Signal"


class CrashSignature(BaseModel):
    """Clave determinística de bucket para un crash."""

    kind: CrashKind
    key: str

    model_config = {"frozen": True}
