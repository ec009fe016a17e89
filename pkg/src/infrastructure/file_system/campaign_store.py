"""Directorio de campaña: snapshot de estado, iteraciones y reportes."""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd
from pydantic import ValidationError

from src.domain.entities.campaign import (
    CampaignReport,
    CampaignState,
    CampaignStats,
    CoveragePoint,
    CrashRecord,
    IterationReport,
)
from src.domain.entities.coverage_map import CoverageMap
from src.domain.entities.feature_group import FeatureGroup
from src.domain.entities.feature_pool import NovelQueue
from src.domain.exceptions import PoolFormatError, StoreIoError
from src.infrastructure.file_system.group_store import save_groups
from src.infrastructure.file_system.jsonl import read_records
from src.infrastructure.file_system.pool_store import load_pool, save_pool

logger = logging.getLogger(__name__)

STATE_FILE = "state.json"
STATE_POOL_FILE = "state_pool.jsonl"
ITERATIONS_FILE = "iterations.jsonl"
REPORT_FILE = "report.json"
SUMMARY_FILE = "summary.txt"
CRASHES_FILE = "crashes.csv"
COVERAGE_FILE = "coverage.json"
RUNS_DIR = "runs"
GROUP_FILE = "group.jsonl"
GROUPS_FILE = "groups.jsonl"

CRASH_COLUMNS = [
    "kind",
    "key",
    "first_seen_iteration",
    "occurrences",
    "reproduce_command",
    "source_path",
    "sample_stderr",
]


def _write_text(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp_name, path)
    except OSError as e:
        raise StoreIoError(f"No se pudo escribir {path}: {e}") from e


class CampaignStore:
    """Archivos con nombre estable dentro del directorio de una campaña."""

    def __init__(self, output_dir: str):
        self.root = Path(output_dir)

    def run_dir(self, iteration: int) -> Path:
        return self.root / RUNS_DIR / f"{iteration:06d}"

    def has_snapshot(self) -> bool:
        return (self.root / STATE_FILE).is_file()

    def save_state(self, state: CampaignState) -> None:
        """Escribe el pool y luego state.json, de modo que el snapshot siempre es coherente."""
        save_pool(state.pool, str(self.root / STATE_POOL_FILE))
        document = {
            "iteration": state.iteration,
            "stats": state.stats.model_dump(mode="json"),
            "novel": state.novel.snapshot(),
            "novel_max_size": state.novel.max_size,
            "global_cov": {
                "unit_kind": state.global_cov.unit_kind.value,
                "covered": state.global_cov.sorted_units(),
            },
            "crash_index": {
                key: record.model_dump(mode="json") for key, record in state.crash_index.items()
            },
            "coverage_curve": [p.model_dump(mode="json") for p in state.coverage_curve],
        }
        _write_text(self.root / STATE_FILE, json.dumps(document, indent=2, ensure_ascii=False))
        logger.info("Snapshot guardado en la iteración %d", state.iteration)

    def load_state(self) -> CampaignState:
        """Reconstruye el estado desde el último snapshot.

        Raises:
            StoreIoError: Si falta o no se puede leer el snapshot
            PoolFormatError: Si el snapshot está corrupto
        """
        path = self.root / STATE_FILE
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except OSError as e:
            raise StoreIoError(f"No se pudo leer {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise PoolFormatError(0, e.lineno, f"state.json inválido: {e.msg}") from e

        try:
            state = CampaignState(
                pool=load_pool(str(self.root / STATE_POOL_FILE)),
                novel=NovelQueue(document["novel"], max_size=document.get("novel_max_size")),
                global_cov=CoverageMap.model_validate(document["global_cov"]),
                iteration=document["iteration"],
                stats=CampaignStats.model_validate(document["stats"]),
                crash_index={
                    key: CrashRecord.model_validate(record)
                    for key, record in document["crash_index"].items()
                },
                coverage_curve=[CoveragePoint.model_validate(p) for p in document["coverage_curve"]],
            )
        except (KeyError, TypeError, ValidationError) as e:
            raise PoolFormatError(0, 1, f"state.json incompleto: {e}") from e
        logger.info("Snapshot cargado: iteración %d, pool de %d", state.iteration, len(state.pool))
        return state

    def append_iteration(self, report: IterationReport) -> None:
        path = self.root / ITERATIONS_FILE
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "a", encoding="utf-8") as f:
                f.write(report.model_dump_json() + "\n")
        except OSError as e:
            raise StoreIoError(f"No se pudo escribir {path}: {e}") from e

    def load_iterations(self) -> List[IterationReport]:
        path = self.root / ITERATIONS_FILE
        if not path.is_file():
            return []
        reports = []
        for index, line_number, record in read_records(str(path)):
            try:
                reports.append(IterationReport.model_validate(record))
            except ValidationError as e:
                raise PoolFormatError(index, line_number, str(e)) from e
        return reports

    def truncate_iterations(self, upto: int) -> int:
        """Descarta iteraciones registradas después del snapshot (al reanudar).

        Returns:
            Cantidad de registros descartados
        """
        reports = self.load_iterations()
        kept = [r for r in reports if r.iteration <= upto]
        if len(kept) != len(reports):
            _write_text(
                self.root / ITERATIONS_FILE,
                "".join(r.model_dump_json() + "\n" for r in kept),
            )
        return len(reports) - len(kept)

    def save_run_group(self, iteration: int, group: FeatureGroup) -> None:
        """Guarda el grupo de la iteración junto a su programa."""
        save_groups([group], str(self.run_dir(iteration) / GROUP_FILE))

    def export_groups(self, upto: int) -> int:
        """Reúne en groups.jsonl los grupos de las iteraciones 1..upto.

        Returns:
            Cantidad de grupos exportados
        """
        lines: List[str] = []
        for iteration in range(1, upto + 1):
            path = self.run_dir(iteration) / GROUP_FILE
            if not path.is_file():
                continue
            try:
                text = path.read_text(encoding="utf-8")
            except OSError as e:
                raise StoreIoError(f"No se pudo leer {path}: {e}") from e
            lines.extend(line for line in text.splitlines() if line.strip())
        _write_text(self.root / GROUPS_FILE, "".join(line + "\n" for line in lines))
        return len(lines)

    def write_report(self, report: CampaignReport, summary: str) -> None:
        _write_text(self.root / REPORT_FILE, report.model_dump_json(indent=2))
        _write_text(self.root / SUMMARY_FILE, summary)
        self.write_crash_table(report.crashes)

    def load_report(self) -> Optional[CampaignReport]:
        path = self.root / REPORT_FILE
        if not path.is_file():
            return None
        try:
            return CampaignReport.model_validate_json(path.read_text(encoding="utf-8"))
        except (OSError, ValidationError) as e:
            raise StoreIoError(f"No se pudo leer {path}: {e}") from e

    def write_crash_table(self, crashes: List[CrashRecord]) -> pd.DataFrame:
        """Tabla de crashes únicos ordenada por tipo y clave."""
        df = crash_table(crashes)
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            df.to_csv(self.root / CRASHES_FILE, index=False, encoding="utf-8")
        except OSError as e:
            raise StoreIoError(f"No se pudo escribir {CRASHES_FILE}: {e}") from e
        return df

    def write_coverage(self, cov: CoverageMap) -> None:
        _write_text(
            self.root / COVERAGE_FILE,
            json.dumps({"unit_kind": cov.unit_kind.value, "covered": cov.sorted_units()}),
        )


def crash_table(crashes: List[CrashRecord]) -> pd.DataFrame:
    rows: List[Dict[str, Any]] = [
        {
            "kind": c.signature.kind.value,
            "key": c.signature.key,
            "first_seen_iteration": c.first_seen_iteration,
            "occurrences": c.occurrences,
            "reproduce_command": " ".join(c.reproduce_command),
            "source_path": c.source_path or "",
            "sample_stderr": c.sample_stderr,
        }
        for c in crashes
    ]
    df = pd.DataFrame(rows, columns=CRASH_COLUMNS)
    if not df.empty:
        df = df.sort_values(["kind", "key"], kind="mergesort").reset_index(drop=True)
    return df


def load_coverage(path: str) -> CoverageMap:
    """Lee un archivo coverage.json exportado por una campaña.

    Raises:
        StoreIoError: Si no se puede leer o no es un mapa válido
    """
    try:
        return CoverageMap.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValidationError) as e:
        raise StoreIoError(f"No se pudo leer la cobertura {path}: {e}") from e
