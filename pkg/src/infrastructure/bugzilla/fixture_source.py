"""Fuente de artefactos desde un directorio local de fixtures."""

import logging
from pathlib import Path
from typing import Dict, Optional

from src.application.interfaces.artifact_source import ArtifactSource, FetchResult
from src.domain.entities.bug_artifact import BugArtifact
from src.domain.exceptions import ArtifactParseError

logger = logging.getLogger(__name__)

REPORT_FILE = "report.txt"
POC_FILES = ("poc.c", "poc.cc", "poc.cpp")
FIX_FILE = "fix.txt"


def _read(path: Path) -> str:
    if not path.is_file():
        return ""
    return path.read_bytes().decode("utf-8")


class FixtureArtifactSource(ArtifactSource):
    """Un subdirectorio por bug con report.txt, poc.c y fix.txt."""

    def __init__(self, directory: str):
        self.directory = Path(directory)

    def test_connection(self) -> bool:
        return self.directory.is_dir()

    def load_artifact(self, bug_dir: Path) -> BugArtifact:
        """Lee un bug sin alterar bytes.

        Raises:
            ArtifactParseError: Si faltan reporte y PoC o el texto no es UTF-8
        """
        bug_id = bug_dir.name
        try:
            poc = next((_read(bug_dir / n) for n in POC_FILES if (bug_dir / n).is_file()), "")
            return BugArtifact(
                bug_id=bug_id,
                report_text=_read(bug_dir / REPORT_FILE),
                poc_source=poc,
                fix_summary=_read(bug_dir / FIX_FILE),
                url=bug_dir.resolve().as_uri(),
            )
        except UnicodeDecodeError as e:
            raise ArtifactParseError(bug_id, f"texto no UTF-8: {e}") from e
        except OSError as e:
            raise ArtifactParseError(bug_id, f"no se pudo leer: {e}") from e
        except ValueError as e:
            raise ArtifactParseError(bug_id, str(e)) from e

    def fetch(self, query: Optional[Dict[str, str]], limit: int) -> FetchResult:
        result = FetchResult()
        if limit <= 0 or not self.directory.is_dir():
            if not self.directory.is_dir():
                logger.error("Directorio de fixtures no encontrado: %s", self.directory)
            return result

        for bug_dir in sorted(p for p in self.directory.iterdir() if p.is_dir()):
            if len(result.artifacts) >= limit:
                break
            try:
                result.artifacts.append(self.load_artifact(bug_dir))
            except ArtifactParseError as e:
                logger.warning("Fixture omitido: %s", str(e))
                result.parse_errors += 1
                result.skipped_ids.append(bug_dir.name)

        logger.info(
            "Fixtures leídos: %d artefactos, %d con errores",
            len(result.artifacts),
            result.parse_errors,
        )
        return result
