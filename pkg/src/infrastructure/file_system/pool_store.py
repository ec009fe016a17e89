"""Persistencia del pool de features."""

import logging
from typing import Any, Dict

from pydantic import ValidationError

from src.domain.entities.feature import Feature
from src.domain.entities.feature_pool import FeaturePool
from src.domain.exceptions import EmptyDescription, PoolFormatError
from src.infrastructure.file_system.jsonl import read_records, write_records

logger = logging.getLogger(__name__)

FIELD_ORDER = ("id", "description", "witness", "origin", "reward")


def feature_record(feature: Feature) -> Dict[str, Any]:
    data = feature.model_dump(mode="json")
    return {key: data[key] for key in FIELD_ORDER}


def save_pool(pool: FeaturePool, path: str) -> int:
    """Guarda el pool en orden de inserción, un registro por feature."""
    count = write_records(path, (feature_record(f) for f in pool.features()))
    logger.debug("Pool guardado en %s: %d features", path, count)
    return count


def load_pool(path: str) -> FeaturePool:
    """Carga un pool guardado con `save_pool`.

    Raises:
        StoreIoError: Si el archivo no se puede leer
        PoolFormatError: Con el índice del registro corrupto
    """
    pool = FeaturePool()
    for index, line_number, record in read_records(path):
        try:
            feature = Feature.model_validate(record)
        except (ValidationError, EmptyDescription) as e:
            raise PoolFormatError(index, line_number, str(e)) from e
        if not pool.insert(feature):
            raise PoolFormatError(index, line_number, f"id duplicado {feature.id}")
    logger.info("Pool cargado desde %s: %d features", path, len(pool))
    return pool
