"""Persistencia de grupos de features recolectados o sintetizados."""

import logging
from typing import Iterable, List

from pydantic import ValidationError

from src.domain.entities.feature_group import FeatureGroup
from src.domain.exceptions import EmptyDescription, PoolFormatError
from src.infrastructure.file_system.jsonl import read_records, write_records
from src.infrastructure.file_system.pool_store import feature_record

logger = logging.getLogger(__name__)


def save_groups(groups: Iterable[FeatureGroup], path: str) -> int:
    """Un registro por grupo con sus features ordenadas por id."""
    return write_records(
        path,
        (
            {
                "group_id": g.group_id,
                "source": g.source.value,
                "parent_bug": g.parent_bug,
                "features": [feature_record(f) for f in g.sorted_features()],
            }
            for g in groups
        ),
    )


def load_groups(path: str) -> List[FeatureGroup]:
    """Carga los grupos guardados con `save_groups`.

    Raises:
        PoolFormatError: Si un registro no es un grupo válido
    """
    groups = []
    for index, line_number, record in read_records(path):
        record = {k: v for k, v in record.items() if k != "group_id"}
        try:
            groups.append(FeatureGroup.model_validate(record))
        except (ValidationError, EmptyDescription) as e:
            raise PoolFormatError(index, line_number, str(e)) from e
    logger.info("Grupos cargados desde %s: %d", path, len(groups))
    return groups
