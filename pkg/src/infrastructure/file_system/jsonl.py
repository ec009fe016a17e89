"""Lectura y escritura de archivos de registros línea a línea."""

import json
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, Tuple

from src.domain.exceptions import PoolFormatError, StoreIoError


def write_records(path: str, records: Iterable[Dict[str, Any]]) -> int:
    """Escribe atómicamente: archivo temporal en el mismo directorio y reemplazo.

    Returns:
        Cantidad de registros escritos

    Raises:
        StoreIoError: Si el destino no es escribible
    """
    target = Path(path)
    count = 0
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            for record in records:
                f.write(json.dumps(record, ensure_ascii=False) + "\n")
                count += 1
        os.replace(tmp_name, target)
    except OSError as e:
        raise StoreIoError(f"No se pudo escribir {path}: {e}") from e
    return count


def read_records(path: str) -> Iterator[Tuple[int, int, Dict[str, Any]]]:
    """Itera (índice de registro, número de línea, registro), omitiendo líneas vacías.

    Raises:
        StoreIoError: Si el archivo no se puede leer
        PoolFormatError: Si una línea no es un objeto JSON
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise StoreIoError(f"No se pudo leer {path}: {e}") from e

    index = 0
    for line_number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise PoolFormatError(index, line_number, f"JSON inválido: {e.msg}") from e
        if not isinstance(record, dict):
            raise PoolFormatError(index, line_number, "el registro no es un objeto")
        yield index, line_number, record
        index += 1
