"""Proveedor de embeddings determinístico para fixtures y pruebas."""

import hashlib
from typing import List

import numpy as np

from src.application.interfaces.model_endpoint import EmbeddingProvider
from src.domain.entities.embedding import EmbeddingVector


class HashEmbeddingProvider(EmbeddingProvider):
    """Vector gaussiano sembrado con el hash del texto."""

    def __init__(self, dim: int = 16, salt: str = ""):
        if dim <= 0:
            raise ValueError("dim debe ser > 0")
        self.dim = dim
        self.salt = salt

    def _vector(self, text: str) -> EmbeddingVector:
        digest = hashlib.sha256((self.salt + text).encode("utf-8")).digest()
        rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
        values = rng.standard_normal(self.dim)
        if not np.any(values):
            values[0] = 1.0
        return EmbeddingVector(values=values.tolist())

    def embed(self, texts: List[str]) -> List[EmbeddingVector]:
        return [self._vector(text) for text in texts]
