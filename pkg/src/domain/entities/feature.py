"""Entidad Feature del dominio."""

import hashlib
import re
from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, Field, model_validator

from src.domain.exceptions import EmptyDescription

_WHITESPACE_RUN = re.compile(r"\s+")


def normalize_description(text: str) -> str:
    """Recorta y colapsa espacios en blanco; no cambia mayúsculas.

    Args:
        text: Descripción en lenguaje natural

    Returns:
        Texto normalizado (idempotente)
    """
    return _WHITESPACE_RUN.sub(" ", text).strip()


def feature_id_for(description: str) -> str:
    """Calcula el id estable de una feature a partir de su descripción."""
    normalized = normalize_description(description)
    return hashlib.sha1(normalized.encode("utf-8")).hexdigest()[:16]


class OriginKind(str, Enum):
    """Procedencia de una feature."""

    EXTRACTED = "extracted"
    GLUE = "glue"
    MANUAL = "manual"


class FeatureOrigin(BaseModel):
    """Procedencia con referencia opcional (bug_id o iteración)."""

    kind: OriginKind
    ref: Optional[str] = None

    @classmethod
    def extracted(cls, bug_id: str) -> "FeatureOrigin":
        return cls(kind=OriginKind.EXTRACTED, ref=str(bug_id))

    @classmethod
    def glue(cls, iteration_id: int) -> "FeatureOrigin":
        return cls(kind=OriginKind.GLUE, ref=str(iteration_id))

    @classmethod
    def manual(cls) -> "FeatureOrigin":
        return cls(kind=OriginKind.MANUAL)


class Feature(BaseModel):
    """Invariante en lenguaje natural más un testigo de código.

    El id depende sólo de la descripción normalizada, de modo que la misma
    invariante con testigos distintos es una única feature.
    """

    id: str = ""
    description: str = Field(..., description="Texto 'The code should ...'")
    witness: str = Field(default="", description="Fragmento de código ilustrativo")
    origin: FeatureOrigin = Field(default_factory=FeatureOrigin.manual)
    reward: int = Field(default=0, ge=0)

    @model_validator(mode="before")
    @classmethod
    def normalize_and_identify(cls, data: Any) -> Any:
        """Normaliza la descripción y calcula o verifica el id."""
        if not isinstance(data, dict):
            return data
        description = normalize_description(str(data.get("description") or ""))
        if not description:
            raise EmptyDescription("La descripción de la feature está vacía")
        expected_id = feature_id_for(description)
        given_id = data.get("id") or expected_id
        if given_id != expected_id:
            raise ValueError(
                f"id {given_id} no corresponde a la descripción (esperado {expected_id})"
            )
        return {**data, "description": description, "id": expected_id}

    @classmethod
    def create(
        cls,
        description: str,
        witness: str = "",
        origin: Optional[FeatureOrigin] = None,
    ) -> "Feature":
        """Construye una feature nueva con recompensa cero."""
        return cls(
            description=description,
            witness=witness,
            origin=origin or FeatureOrigin.manual(),
        )

    @property
    def is_glue(self) -> bool:
        return self.origin.kind == OriginKind.GLUE
