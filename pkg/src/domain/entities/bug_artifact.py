"""Entidad BugArtifact del dominio."""

from pydantic import BaseModel, Field, model_validator


class BugArtifact(BaseModel):
    """Artefactos históricos de un bug: reporte, PoC y resumen del fix."""

    bug_id: str = Field(..., min_length=1)
    report_text: str = ""
    poc_source: str = ""
    fix_summary: str = ""
    url: str = ""

    @model_validator(mode="after")
    def has_evidence(self) -> "BugArtifact":
        """Exige reporte o PoC no vacíos."""
        if not self.report_text.strip() and not self.poc_source.strip():
            raise ValueError(f"El bug {self.bug_id} no tiene reporte ni PoC")
        return self

    @property
    def partial(self) -> bool:
        """Sin historial de fix sólo se extrae de reporte y PoC."""
        return not self.fix_summary.strip()
