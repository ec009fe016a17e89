"""Lectores de cobertura: bitmap de aristas y reportes de líneas gcov/lcov."""

import logging
import re
from pathlib import Path
from typing import Dict, Iterable, Set

import numpy as np

from src.domain.entities.coverage_map import CoverageMap, CoverageMode
from src.domain.exceptions import CoverageUnavailable

logger = logging.getLogger(__name__)

_GCOV_LINE = re.compile(r"^\s*(?P<count>[^:]+):\s*(?P<line>\d+):(?P<text>.*)$")
_NOT_EXECUTED = {"-", "#####", "=====", "$$$$$", "%%%%%"}
_LCOV_RECORD = re.compile(r"^(?P<tag>[A-Z_]+):(?P<value>.*)$")


def reset_edge_bitmap(path: str, size: int) -> None:
    """Deja el bitmap en cero antes de cada ejecución."""
    try:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(bytes(size))
    except OSError as e:
        raise CoverageUnavailable(f"No se pudo reiniciar el bitmap {path}: {e}") from e


def read_edge_bitmap(path: str) -> CoverageMap:
    """Índices de las aristas con contador distinto de cero.

    Raises:
        CoverageUnavailable: Si el bitmap no existe o no se puede leer
    """
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise CoverageUnavailable(f"Bitmap de cobertura no disponible: {path}") from e
    hits = np.flatnonzero(np.frombuffer(data, dtype=np.uint8))
    return CoverageMap(
        unit_kind=CoverageMode.EDGE_BITMAP, covered=frozenset(int(i) for i in hits)
    )


def _executed(count: str) -> bool:
    count = count.strip().rstrip("*")
    if count in _NOT_EXECUTED:
        return False
    try:
        return int(count) > 0
    except ValueError:
        # gcov -H imprime 1.2k, 3M...
        return bool(re.match(r"^\d+(\.\d+)?[kMGT]?$", count)) and not count.startswith("0")


def parse_gcov(text: str) -> Set[str]:
    """Pares archivo:línea ejecutados de uno o más reportes .gcov concatenados."""
    units: Set[str] = set()
    source = ""
    for raw in text.splitlines():
        match = _GCOV_LINE.match(raw)
        if not match:
            continue
        line_no = int(match.group("line"))
        if line_no == 0:
            if match.group("text").startswith("Source:"):
                source = match.group("text")[len("Source:"):].strip()
            continue
        if _executed(match.group("count")):
            units.add(f"{source}:{line_no}")
    return units


def parse_lcov(text: str) -> Set[str]:
    units: Set[str] = set()
    source = ""
    for raw in text.splitlines():
        match = _LCOV_RECORD.match(raw.strip())
        if not match:
            continue
        tag, value = match.group("tag"), match.group("value")
        if tag == "SF":
            source = value.strip()
        elif tag == "DA":
            fields = value.split(",")
            if len(fields) >= 2 and fields[1].strip().isdigit() and int(fields[1]) > 0:
                units.add(f"{source}:{int(fields[0])}")
        elif tag == "end_of_record":
            source = ""
    return units


def parse_line_report(text: str) -> CoverageMap:
    """Detecta el formato (lcov si hay registros SF:) y devuelve el mapa."""
    if re.search(r"^SF:", text, re.MULTILINE):
        units = parse_lcov(text)
    else:
        units = parse_gcov(text)
    return CoverageMap(unit_kind=CoverageMode.LINE_REPORT, covered=frozenset(units))


def read_line_reports(directory: Path, pattern: str) -> CoverageMap:
    """Une todos los reportes que coinciden con el patrón bajo el directorio."""
    files = sorted(directory.rglob(pattern)) if directory.is_dir() else []
    if not files:
        raise CoverageUnavailable(f"No hay reportes {pattern} en {directory}")
    units: Set[str] = set()
    for report in files:
        try:
            units |= parse_line_report(report.read_text(encoding="utf-8", errors="replace")).covered
        except OSError as e:
            raise CoverageUnavailable(f"No se pudo leer {report}: {e}") from e
    return CoverageMap(unit_kind=CoverageMode.LINE_REPORT, covered=frozenset(units))


def attribute_components(units: Iterable, component_map: Dict[str, str]) -> Dict[str, int]:
    """Cuenta líneas por componente usando el prefijo de ruta más largo."""
    prefixes = sorted(component_map, key=len, reverse=True)
    counts: Dict[str, int] = {component: 0 for component in component_map.values()}
    for unit in units:
        if not isinstance(unit, str):
            continue
        path = unit.rsplit(":", 1)[0]
        for prefix in prefixes:
            if path.startswith(prefix):
                counts[component_map[prefix]] += 1
                break
        else:
            counts["other"] = counts.get("other", 0) + 1
    return counts
