"""Entidad ModelRequest del dominio."""

import hashlib
import json
import uuid
from enum import Enum
from typing import List, Union

from pydantic import BaseModel, Field


class ModelRole(str, Enum):
    EXTRACT = "extract"
    GROUP = "group"
    INSTANTIATE = "instantiate"
    EMBED = "embed"


class ModelParams(BaseModel):
    model_name: str
    temperature: float = 0.0
    max_tokens: int = 1024


class ModelRequest(BaseModel):
    """Petición a un endpoint de modelo; el rol decide endpoint y modelo."""

    role: ModelRole
    prompt: Union[str, List[str]]
    params: ModelParams
    sample: int = Field(default=0, ge=0, description="Índice de reintento para el mismo prompt")
    request_id: str = Field(default_factory=lambda: uuid.uuid4().hex)

    def request_hash(self) -> str:
        """Hash de contenido: rol, prompt, parámetros e índice de muestra (no el request_id)."""
        canonical = json.dumps(
            {
                "role": self.role.value,
                "prompt": self.prompt,
                "params": self.params.model_dump(),
                "sample": self.sample,
            },
            sort_keys=True,
            ensure_ascii=False,
        )
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
