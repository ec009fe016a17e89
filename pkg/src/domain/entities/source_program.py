"""Entidad SourceProgram del dominio."""

from enum import Enum

from pydantic import BaseModel, Field, field_validator


class Language(str, Enum):
    C = "c"
    CPP = "cpp"


class SourceProgram(BaseModel):
    """Programa candidato instanciado a partir de un grupo."""

    code: str = Field(..., min_length=1)
    language: Language = Language.C
    group_id: str = ""
    attempt: int = Field(default=0, ge=0)

    @field_validator("code")
    @classmethod
    def no_fences(cls, v: str) -> str:
        if not v.strip():
            raise ValueError("El código está vacío")
        if "```" in v:
            raise ValueError("El código contiene marcadores de bloque")
        return v

    @property
    def suffix(self) -> str:
        return ".cpp" if self.language == Language.CPP else ".c"
