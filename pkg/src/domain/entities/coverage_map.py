"""Entidad CoverageMap del dominio."""

from enum import Enum
from typing import FrozenSet, List, Tuple, Union

from pydantic import BaseModel, Field

from src.domain.exceptions import UnitKindMismatch

CoverageUnit = Union[int, str]


class CoverageMode(str, Enum):
    EDGE_BITMAP = "edge_bitmap"
    LINE_REPORT = "line_report"
    NONE = "none"


class CoverageMap(BaseModel):
    """Acumulador monótono de unidades cubiertas (aristas o archivo:línea)."""

    unit_kind: CoverageMode
    covered: FrozenSet[CoverageUnit] = Field(default_factory=frozenset)

    model_config = {"frozen": True}

    @classmethod
    def empty(cls, unit_kind: CoverageMode) -> "CoverageMap":
        return cls(unit_kind=unit_kind)

    def sorted_units(self) -> List[CoverageUnit]:
        return sorted(self.covered, key=lambda u: (isinstance(u, str), u))

    def __len__(self) -> int:
        return len(self.covered)


def merge_coverage(global_map: CoverageMap, snapshot: CoverageMap) -> Tuple[CoverageMap, int]:
    """Une la instantánea al mapa global.

    Returns:
        (mapa unido, cantidad de unidades nuevas)

    Raises:
        UnitKindMismatch: Si los mapas usan unidades distintas
    """
    if global_map.unit_kind != snapshot.unit_kind:
        raise UnitKindMismatch(
            f"No se pueden unir {global_map.unit_kind.value} y {snapshot.unit_kind.value}"
        )
    new_units = snapshot.covered - global_map.covered
    if not new_units:
        return global_map, 0
    merged = CoverageMap(
        unit_kind=global_map.unit_kind, covered=global_map.covered | new_units
    )
    return merged, len(new_units)
