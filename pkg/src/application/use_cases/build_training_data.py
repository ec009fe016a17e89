"""Caso de uso para generar el dataset de predicción enmascarada."""

import logging

from src.application.services.group_synthesis import export_training_dataset
from src.domain.entities.training_pair import TrainingExportStats
from src.infrastructure.file_system.group_store import load_groups

logger = logging.getLogger(__name__)


class BuildTrainingDataUseCase:
    """Lee grupos recolectados y escribe pares prompt/completion."""

    def execute(self, groups_path: str, out_path: str, seed: int = 0) -> TrainingExportStats:
        groups = load_groups(groups_path)
        return export_training_dataset(groups, out_path, seed=seed)
