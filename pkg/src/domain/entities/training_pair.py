"""Entidad TrainingPair del dominio."""

from typing import List

from pydantic import BaseModel, Field, model_validator


class TrainingPair(BaseModel):
    """Partición enmascarada de un grupo en entradas y objetivos."""

    input_features: List[str] = Field(..., min_length=1)
    target_features: List[str] = Field(..., min_length=1)
    group_id: str

    @model_validator(mode="after")
    def disjoint_sides(self) -> "TrainingPair":
        if set(self.input_features) & set(self.target_features):
            raise ValueError("Entradas y objetivos comparten features")
        return self


class TrainingExportStats(BaseModel):
    """Conteos de una exportación de dataset."""

    groups_in: int = 0
    groups_skipped: int = 0
    pairs_out: int = 0
