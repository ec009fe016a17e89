"""Caso de uso para probar la conexión con los endpoints configurados."""

from typing import Any, Dict, Optional

from src.application.interfaces.artifact_source import ArtifactSource
from src.domain.entities.model_request import ModelRole
from src.infrastructure.llm.llm_client import LLMClient


class TestConnectionUseCase:
    """Prueba cada rol de modelo y, opcionalmente, el tracker de bugs."""

    def __init__(self, client: LLMClient, tracker: Optional[ArtifactSource] = None):
        self.client = client
        self.tracker = tracker

    def execute(self) -> Dict[str, Any]:
        """Ejecuta la prueba de conexión."""
        endpoints = {
            role.value: {
                "base_url": self.client.base_url_for(role),
                "model": self.client.params_for(role).model_name,
                "reachable": self.client.test_connection(role),
            }
            for role in ModelRole
        }
        tracker_ok = self.tracker.test_connection() if self.tracker is not None else None
        return {
            "endpoints": endpoints,
            "tracker_reachable": tracker_ok,
            "all_ok": all(e["reachable"] for e in endpoints.values()) and tracker_ok is not False,
        }
