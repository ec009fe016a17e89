"""Entidades de embeddings y puntajes de coherencia."""

import math
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator


class EmbeddingVector(BaseModel):
    """Vector de dimensión fija con entradas finitas."""

    values: List[float] = Field(..., min_length=1)

    model_config = {"frozen": True}

    @field_validator("values")
    @classmethod
    def finite_values(cls, v: List[float]) -> List[float]:
        if not all(math.isfinite(x) for x in v):
            raise ValueError("El vector contiene valores no finitos")
        return v

    @property
    def dim(self) -> int:
        return len(self.values)


class CoherenceScore(BaseModel):
    """Redundancia y diámetro semánticos de un grupo."""

    group_id: Optional[str] = None
    redundancy: float
    diameter: Optional[float] = None
    pair_count: int
    filtered_count: int
    no_pairs_kept: bool = False


class JaccardResult(BaseModel):
    value: float
    overlap: int
    union: int
    degenerate: bool = False


class ValidityStats(BaseModel):
    """Tasa de programas válidos y fracción de válidos que crashean."""

    generated: int
    valid: int
    crashing_valid: int
    valid_rate: float
    crash_on_valid: float
    degenerate: bool = False
