"""Cliente para la API REST de Bugzilla."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional

import requests
from requests.adapters import HTTPAdapter
from urllib3.util.retry import Retry

from src.application.interfaces.artifact_source import ArtifactSource, FetchResult
from src.domain.entities.bug_artifact import BugArtifact
from src.domain.exceptions import ArtifactParseError, NetworkError
from src.infrastructure.bugzilla import utils as bz_utils
from src.infrastructure.settings import Settings

logger = logging.getLogger(__name__)

DEFAULT_QUERY = {
    "product": "gcc",
    "keywords": "ice-on-valid-code",
    "resolution": "FIXED",
}


class BugzillaClient(ArtifactSource):
    """Obtiene reportes, PoCs y avisos de fix de un Bugzilla."""

    def __init__(self, settings: Settings, session: Optional[requests.Session] = None):
        self.settings = settings
        self.base_url = settings.bugzilla_url.rstrip("/")
        self.session = session or requests.Session()
        retry = Retry(
            total=settings.llm_http_retries,
            backoff_factor=0.5,
            status_forcelist=(429, 500, 502, 503, 504),
            allowed_methods=frozenset(["GET"]),
            raise_on_status=False,
        )
        adapter = HTTPAdapter(max_retries=retry)
        self.session.mount("http://", adapter)
        self.session.mount("https://", adapter)
        self.session.headers.update({"Accept": "application/json"})
        if settings.bugzilla_api_key:
            self.session.headers["X-BUGZILLA-API-KEY"] = settings.bugzilla_api_key

    def test_connection(self) -> bool:
        """Prueba la conexión con Bugzilla."""
        try:
            response = self.session.get(f"{self.base_url}/rest/version", timeout=10)
            response.raise_for_status()
            logger.info("Conexión con Bugzilla exitosa")
            return True
        except Exception as e:
            logger.error("Error de conexión con Bugzilla: %s", str(e))
            return False

    def _get(self, path: str, params: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        try:
            response = self.session.get(f"{self.base_url}{path}", params=params, timeout=30)
            response.raise_for_status()
            return response.json()
        except requests.exceptions.RequestException as e:
            bz_utils.handle_http_error(e, logger)
            raise NetworkError(f"Fallo consultando {path}: {e}") from e
        except ValueError as e:
            raise NetworkError(f"Respuesta no JSON en {path}") from e

    def list_bug_ids(self, query: Optional[Dict[str, str]], limit: int) -> List[str]:
        params: Dict[str, Any] = dict(DEFAULT_QUERY)
        params.update(query or {})
        params.update({"limit": limit, "include_fields": "id"})
        body = self._get("/rest/bug", params)
        return [str(bug["id"]) for bug in body.get("bugs", [])][:limit]

    def fetch_artifact(self, bug_id: str) -> BugArtifact:
        """Arma el artefacto de un bug: primer comentario, adjunto PoC y avisos de fix.

        Raises:
            ArtifactParseError: Si la respuesta no tiene la forma esperada
            NetworkError: Si falla la red tras los reintentos
        """
        comments_body = self._get(f"/rest/bug/{bug_id}/comment")
        attachments_body = self._get(f"/rest/bug/{bug_id}/attachment")
        try:
            comments = comments_body["bugs"][bug_id]["comments"]
            attachments = attachments_body["bugs"].get(bug_id, [])
        except (KeyError, TypeError, AttributeError) as e:
            raise ArtifactParseError(bug_id, f"estructura inesperada: {e}") from e

        report = comments[0].get("text", "") if comments else ""
        poc = ""
        for attachment in attachments:
            if bz_utils.is_poc_attachment(attachment):
                try:
                    poc = bz_utils.decode_attachment(attachment)
                except ValueError as e:
                    raise ArtifactParseError(bug_id, str(e)) from e
                break

        try:
            return BugArtifact(
                bug_id=bug_id,
                report_text=report,
                poc_source=poc,
                fix_summary=bz_utils.fix_summary_from_comments(comments[1:]),
                url=f"{self.base_url}/show_bug.cgi?id={bug_id}",
            )
        except ValueError as e:
            raise ArtifactParseError(bug_id, str(e)) from e

    def fetch(self, query: Optional[Dict[str, str]], limit: int) -> FetchResult:
        """Lista bugs y descarga sus detalles en paralelo, conservando el orden.

        Raises:
            NetworkError: Si falla el listado de bugs
        """
        result = FetchResult()
        if limit <= 0:
            return result

        bug_ids = self.list_bug_ids(query, limit)
        logger.info("Descargando %d bugs con %d workers", len(bug_ids), self.settings.fetch_workers)

        def safe_fetch(bug_id: str):
            try:
                return self.fetch_artifact(bug_id)
            except (ArtifactParseError, NetworkError) as e:
                return e

        with ThreadPoolExecutor(max_workers=self.settings.fetch_workers) as executor:
            outcomes = list(executor.map(safe_fetch, bug_ids))

        for bug_id, outcome in zip(bug_ids, outcomes):
            if isinstance(outcome, BugArtifact):
                if outcome.partial:
                    logger.debug("Bug %s sin historial de fix (parcial)", bug_id)
                result.artifacts.append(outcome)
            else:
                logger.warning("Bug %s omitido: %s", bug_id, str(outcome))
                result.parse_errors += 1
                result.skipped_ids.append(bug_id)
        return result
