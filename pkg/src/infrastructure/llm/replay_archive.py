"""Archivo de grabación/replay de respuestas de modelos."""

import json
import logging
import threading
from pathlib import Path
from typing import Any, Dict, Optional

from src.domain.exceptions import PoolFormatError, StoreIoError

logger = logging.getLogger(__name__)


class ReplayArchive:
    """Entradas direccionadas por hash de petición, una por línea."""

    def __init__(self, path: str):
        self.path = Path(path)
        self._entries: Dict[str, Any] = {}
        self._lock = threading.Lock()
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        try:
            lines = self.path.read_text(encoding="utf-8").splitlines()
        except OSError as e:
            raise StoreIoError(f"No se pudo leer el archivo de replay {self.path}: {e}") from e
        for index, line in enumerate(lines):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                self._entries[record["hash"]] = record["response"]
            except (json.JSONDecodeError, KeyError, TypeError) as e:
                raise PoolFormatError(index, index + 1, str(e)) from e
        logger.info("Archivo de replay cargado: %d entradas", len(self._entries))

    def get(self, request_hash: str) -> Optional[Any]:
        return self._entries.get(request_hash)

    def __contains__(self, request_hash: object) -> bool:
        return request_hash in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def record(self, request_hash: str, role: str, response: Any) -> None:
        """Anexa la respuesta si el hash aún no está archivado."""
        with self._lock:
            if request_hash in self._entries:
                return
            self._entries[request_hash] = response
            self.path.parent.mkdir(parents=True, exist_ok=True)
            try:
                with open(self.path, "a", encoding="utf-8") as f:
                    f.write(
                        json.dumps(
                            {"hash": request_hash, "role": role, "response": response},
                            ensure_ascii=False,
                        )
                        + "\n"
                    )
            except OSError as e:
                raise StoreIoError(f"No se pudo escribir {self.path}: {e}") from e
