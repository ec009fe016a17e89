"""Interfaz para fuentes de artefactos de bugs."""

from abc import ABC, abstractmethod
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from src.domain.entities.bug_artifact import BugArtifact


class FetchResult(BaseModel):
    """Artefactos obtenidos y errores de parseo contados."""

    artifacts: List[BugArtifact] = Field(default_factory=list)
    parse_errors: int = 0
    skipped_ids: List[str] = Field(default_factory=list)


class ArtifactSource(ABC):
    """Interfaz para obtener bugs de un tracker o de fixtures locales."""

    @abstractmethod
    def fetch(self, query: Optional[Dict[str, str]], limit: int) -> FetchResult:
        """Obtiene hasta `limit` artefactos que cumplan el filtro."""
        pass

    @abstractmethod
    def test_connection(self) -> bool:
        """Prueba que la fuente es accesible."""
        pass
