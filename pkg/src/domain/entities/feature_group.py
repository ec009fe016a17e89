"""Entidad FeatureGroup del dominio."""

import hashlib
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator

from src.domain.entities.feature import Feature


class GroupSource(str, Enum):
    """Origen de un grupo de features."""

    COLLECTED = "collected"
    SYNTHESIZED = "synthesized"
    RANDOM = "random"


class FeatureGroup(BaseModel):
    """Conjunto de features que un programa debe realizar a la vez.

    Los miembros no tienen orden: toda operación que recorre el grupo
    usa `sorted_features()`.
    """

    features: List[Feature] = Field(..., min_length=1)
    source: GroupSource
    parent_bug: Optional[str] = None

    @field_validator("features")
    @classmethod
    def unique_members(cls, v: List[Feature]) -> List[Feature]:
        """Rechaza miembros repetidos."""
        ids = [f.id for f in v]
        if len(ids) != len(set(ids)):
            raise ValueError("El grupo contiene features con id repetido")
        return v

    @property
    def group_id(self) -> str:
        joined = ",".join(sorted(self.ids()))
        return hashlib.sha1(joined.encode("utf-8")).hexdigest()[:12]

    def ids(self) -> List[str]:
        return [f.id for f in self.features]

    def sorted_features(self) -> List[Feature]:
        return sorted(self.features, key=lambda f: f.id)

    def descriptions(self) -> List[str]:
        return [f.description for f in self.sorted_features()]

    def __len__(self) -> int:
        return len(self.features)
