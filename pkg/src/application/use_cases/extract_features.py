"""Caso de uso para extraer features de bugs históricos."""

import logging
from typing import Dict, List, Optional

from pydantic import BaseModel

from src.application.interfaces.artifact_source import ArtifactSource
from src.application.interfaces.model_endpoint import ChatModel
from src.application.services.extraction import build_extraction_prompt, parse_extraction_response
from src.domain.entities.feature_group import FeatureGroup
from src.domain.entities.feature_pool import FeaturePool
from src.domain.entities.model_request import ModelRole
from src.domain.exceptions import ModelError, NoFeaturesFound
from src.infrastructure.file_system.group_store import save_groups
from src.infrastructure.file_system.pool_store import save_pool

logger = logging.getLogger(__name__)


class ExtractionSummary(BaseModel):
    bugs: int = 0
    skipped_artifacts: int = 0
    failed_extractions: int = 0
    partial_artifacts: int = 0
    groups: int = 0
    features: int = 0


class ExtractFeaturesUseCase:
    """Bugs → prompt de extracción → grupos recolectados → pool global."""

    def __init__(self, source: ArtifactSource, model: ChatModel):
        self.source = source
        self.model = model

    def execute(
        self,
        limit: int,
        out_pool: str,
        out_groups: Optional[str] = None,
        query: Optional[Dict[str, str]] = None,
    ) -> ExtractionSummary:
        """Procesa hasta `limit` bugs; un bug fallido nunca aborta el lote."""
        fetched = self.source.fetch(query, limit)
        summary = ExtractionSummary(
            bugs=len(fetched.artifacts), skipped_artifacts=fetched.parse_errors
        )
        pool = FeaturePool()
        groups: List[FeatureGroup] = []

        for artifact in fetched.artifacts:
            if artifact.partial:
                summary.partial_artifacts += 1
            try:
                response = self.model.complete(
                    ModelRole.EXTRACT, build_extraction_prompt(artifact)
                )
                group = parse_extraction_response(
                    response, artifact.bug_id, poc_source=artifact.poc_source
                )
            except (ModelError, NoFeaturesFound) as e:
                summary.failed_extractions += 1
                logger.warning("Bug %s sin features: %s", artifact.bug_id, str(e))
                continue
            groups.append(group)
            for feature in group.features:
                pool.insert(feature)

        save_pool(pool, out_pool)
        if out_groups:
            save_groups(groups, out_groups)
        summary.groups = len(groups)
        summary.features = len(pool)
        logger.info(
            "Extracción: %d bugs, %d grupos, %d features",
            summary.bugs,
            summary.groups,
            summary.features,
        )
        return summary
