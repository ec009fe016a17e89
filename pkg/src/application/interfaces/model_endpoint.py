"""Interfaz para endpoints de modelos de lenguaje y embeddings."""

from abc import ABC, abstractmethod
from typing import List

from src.domain.entities.embedding import EmbeddingVector
from src.domain.entities.model_request import ModelRole


class ChatModel(ABC):
    """Modelo conversacional para un rol dado."""

    @abstractmethod
    def complete(self, role: ModelRole, prompt: str, sample: int = 0) -> str:
        """Devuelve el texto de la primera opción de la respuesta.

        `sample` distingue reintentos del mismo prompt.
        """
        pass


class EmbeddingProvider(ABC):
    """Proveedor de vectores de embedding."""

    @abstractmethod
    def embed(self, texts: List[str]) -> List[EmbeddingVector]:
        """Devuelve un vector por texto, en el mismo orden."""
        pass
