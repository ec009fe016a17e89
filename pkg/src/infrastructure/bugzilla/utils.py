"""Utilidades compartidas para interacción con Bugzilla."""

import base64
import binascii
import json
import logging
import re
from typing import Any, Dict, List

logger = logging.getLogger(__name__)

_POC_EXTENSIONS = (".c", ".cc", ".cpp", ".cxx", ".i", ".ii", ".C")
_FIX_NOTICE = re.compile(r"^The (master|releases/[\w.\-]+|[\w./\-]+) branch has been updated by", re.M)


def handle_http_error(e: Exception, logger_instance: logging.Logger) -> None:
    """Registra un error HTTP de Bugzilla de forma consistente.

    Args:
        e: Excepción capturada
        logger_instance: Logger a usar para el error
    """
    if hasattr(e, "response") and e.response is not None:
        try:
            error_details = e.response.json()
            logger_instance.error("Detalles del error: %s", json.dumps(error_details, indent=2))
        except Exception:
            logger_instance.error("Error HTTP %s: %s", e.response.status_code, e.response.text)
    else:
        logger_instance.error("Error de conexión: %s", str(e))


def is_fix_notice(text: str) -> bool:
    """Comentario automático de commit que referencia el fix."""
    return bool(_FIX_NOTICE.search(text))


def fix_summary_from_comments(comments: List[Dict[str, Any]]) -> str:
    """Une los avisos de commit del hilo; vacío si el bug no tiene fix registrado."""
    notices = [c.get("text", "").strip() for c in comments if is_fix_notice(c.get("text", ""))]
    return "\n\n".join(n for n in notices if n)


def is_poc_attachment(attachment: Dict[str, Any]) -> bool:
    if attachment.get("is_obsolete") or attachment.get("is_patch"):
        return False
    name = attachment.get("file_name", "")
    content_type = attachment.get("content_type", "")
    return name.endswith(_POC_EXTENSIONS) or content_type.startswith("text/")


def decode_attachment(attachment: Dict[str, Any]) -> str:
    """Decodifica el campo base64 `data` de un adjunto.

    Raises:
        ValueError: Si el contenido no es base64 válido
    """
    try:
        return base64.b64decode(attachment.get("data", ""), validate=True).decode(
            "utf-8", errors="replace"
        )
    except binascii.Error as e:
        raise ValueError(f"Adjunto {attachment.get('id')} con base64 inválido") from e
