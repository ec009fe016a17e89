"""Cliente único para endpoints de chat y embeddings compatibles con OpenAI."""

import logging
from typing import Any, Dict, List, Optional

import requests
from requests.adapters import HTTPAdapter
from urllib3.util.retry import Retry

from src.application.interfaces.model_endpoint import ChatModel, EmbeddingProvider
from src.domain.entities.embedding import EmbeddingVector
from src.domain.entities.model_request import ModelParams, ModelRequest, ModelRole
from src.domain.exceptions import ModelError, ReplayMiss
from src.infrastructure.llm.rate_limiter import TokenBucket
from src.infrastructure.llm.replay_archive import ReplayArchive
from src.infrastructure.settings import LlmMode, ModelRoleConfig, Settings

logger = logging.getLogger(__name__)


class LLMClient(ChatModel, EmbeddingProvider):
    """Transporte para extracción, grupos, instanciación y embeddings.

    En modo replay nunca toca la red; en modo record además archiva cada
    respuesta por hash de petición.
    """

    def __init__(
        self,
        settings: Settings,
        mode: Optional[LlmMode] = None,
        archive_path: Optional[str] = None,
        overrides: Optional[Dict[ModelRole, ModelRoleConfig]] = None,
        session: Optional[requests.Session] = None,
    ):
        self.settings = settings
        self.mode = mode or settings.llm_mode
        self.overrides = overrides or {}
        archive_path = archive_path or settings.replay_archive
        if self.mode != LlmMode.LIVE and not archive_path:
            raise ModelError(f"El modo {self.mode.value} requiere un archivo de replay")
        self.archive = ReplayArchive(archive_path) if archive_path else None

        self.session = session or requests.Session()
        retry = Retry(
            total=settings.llm_http_retries,
            backoff_factor=0.5,
            status_forcelist=(429, 500, 502, 503, 504),
            allowed_methods=frozenset(["GET", "POST"]),
            raise_on_status=False,
        )
        adapter = HTTPAdapter(max_retries=retry)
        self.session.mount("http://", adapter)
        self.session.mount("https://", adapter)
        self.session.headers.update(
            {"Accept": "application/json", "Content-Type": "application/json"}
        )
        if settings.llm_api_key:
            self.session.headers["Authorization"] = f"Bearer {settings.llm_api_key}"
        self._buckets: Dict[str, TokenBucket] = {}

    def params_for(self, role: ModelRole) -> ModelParams:
        """Parámetros del rol con las sobrescrituras de campaña aplicadas."""
        params = self.settings.model_params(role)
        override = self.overrides.get(role)
        if override is None:
            return params
        update = {
            key: value
            for key, value in {
                "model_name": override.model_name,
                "temperature": override.temperature,
                "max_tokens": override.max_tokens,
            }.items()
            if value is not None
        }
        return params.model_copy(update=update)

    def base_url_for(self, role: ModelRole) -> str:
        override = self.overrides.get(role)
        if override is not None and override.base_url:
            return override.base_url.rstrip("/")
        return self.settings.base_url_for(role)

    def _bucket(self, base_url: str) -> TokenBucket:
        if base_url not in self._buckets:
            self._buckets[base_url] = TokenBucket(self.settings.llm_requests_per_minute)
        return self._buckets[base_url]

    def _post(self, role: ModelRole, path: str, payload: Dict[str, Any]) -> Dict[str, Any]:
        base_url = self.base_url_for(role)
        waited = self._bucket(base_url).acquire()
        if waited:
            logger.debug("Rate limit: espera de %.2fs para %s", waited, base_url)
        try:
            response = self.session.post(
                f"{base_url}{path}", json=payload, timeout=self.settings.llm_timeout
            )
            response.raise_for_status()
            return response.json()
        except requests.exceptions.HTTPError as e:
            status = e.response.status_code if e.response is not None else "?"
            logger.error("Error HTTP %s del endpoint %s: %s", status, role.value, str(e))
            raise ModelError(f"El endpoint {role.value} respondió {status}") from e
        except requests.exceptions.RequestException as e:
            logger.error("Error de conexión con el endpoint %s: %s", role.value, str(e))
            raise ModelError(f"No se pudo contactar el endpoint {role.value}: {e}") from e
        except ValueError as e:
            raise ModelError(f"Cuerpo JSON inválido del endpoint {role.value}") from e

    def _from_archive(self, request: ModelRequest) -> Any:
        request_hash = request.request_hash()
        response = self.archive.get(request_hash) if self.archive else None
        if response is None:
            logger.error("Replay miss para %s (%s)", request.role.value, request_hash)
            raise ReplayMiss(request_hash)
        return response

    def _archive(self, request: ModelRequest, response: Any) -> None:
        if self.mode == LlmMode.RECORD and self.archive is not None:
            self.archive.record(request.request_hash(), request.role.value, response)

    def chat(self, request: ModelRequest) -> str:
        """Envía una petición de chat y devuelve el texto de la primera opción.

        Raises:
            ModelError: Fallo HTTP o cuerpo mal formado tras los reintentos
            ReplayMiss: En modo replay, si la petición no está archivada
        """
        if self.mode == LlmMode.REPLAY:
            return str(self._from_archive(request))

        body = self._post(
            request.role,
            "/chat/completions",
            {
                "model": request.params.model_name,
                "messages": [{"role": "user", "content": request.prompt}],
                "temperature": request.params.temperature,
                "max_tokens": request.params.max_tokens,
            },
        )
        try:
            text = body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as e:
            raise ModelError(f"Respuesta de chat mal formada: {body!r:.200}") from e
        if not isinstance(text, str):
            raise ModelError("La respuesta de chat no contiene texto")
        self._archive(request, text)
        return text

    def complete(self, role: ModelRole, prompt: str, sample: int = 0) -> str:
        return self.chat(
            ModelRequest(role=role, prompt=prompt, params=self.params_for(role), sample=sample)
        )

    def embed(self, texts: List[str]) -> List[EmbeddingVector]:
        """Embeddings por lotes; todos los vectores comparten dimensión."""
        if not texts:
            return []
        request = ModelRequest(
            role=ModelRole.EMBED, prompt=list(texts), params=self.params_for(ModelRole.EMBED)
        )
        if self.mode == LlmMode.REPLAY:
            raw = self._from_archive(request)
        else:
            body = self._post(
                ModelRole.EMBED,
                "/embeddings",
                {"model": request.params.model_name, "input": list(texts)},
            )
            try:
                data = sorted(body["data"], key=lambda item: item.get("index", 0))
                raw = [item["embedding"] for item in data]
            except (KeyError, TypeError) as e:
                raise ModelError("Respuesta de embeddings mal formada") from e
            self._archive(request, raw)

        if len(raw) != len(texts):
            raise ModelError(f"Se esperaban {len(texts)} vectores y llegaron {len(raw)}")
        vectors = [EmbeddingVector(values=values) for values in raw]
        if len({v.dim for v in vectors}) != 1:
            raise ModelError("Los vectores de embedding tienen dimensiones distintas")
        return vectors

    def test_connection(self, role: ModelRole) -> bool:
        """Prueba el endpoint de un rol consultando /models."""
        if self.mode == LlmMode.REPLAY:
            return self.archive is not None
        try:
            response = self.session.get(f"{self.base_url_for(role)}/models", timeout=10)
            response.raise_for_status()
            logger.info("Conexión con el endpoint %s exitosa", role.value)
            return True
        except Exception as e:
            logger.error("Error de conexión con el endpoint %s: %s", role.value, str(e))
            return False
