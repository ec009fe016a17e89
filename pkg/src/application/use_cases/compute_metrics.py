"""Caso de uso para métricas de coherencia, solapamiento y validez."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from src.application.interfaces.model_endpoint import EmbeddingProvider
from src.application.services.metrics import (
    DEFAULT_TAU,
    campaign_validity_stats,
    jaccard,
    score_groups,
)
from src.domain.entities.embedding import CoherenceScore
from src.domain.exceptions import StoreIoError
from src.infrastructure.file_system.campaign_store import CampaignStore, load_coverage
from src.infrastructure.file_system.group_store import load_groups

logger = logging.getLogger(__name__)


def coherence_frame(scores: List[CoherenceScore]) -> pd.DataFrame:
    return pd.DataFrame(
        [s.model_dump() for s in scores],
        columns=[
            "group_id",
            "redundancy",
            "diameter",
            "pair_count",
            "filtered_count",
            "no_pairs_kept",
        ],
    )


class ComputeMetricsUseCase:
    """Combina las métricas pedidas en un único resultado serializable."""

    def __init__(self, provider: Optional[EmbeddingProvider] = None):
        self.provider = provider

    def coherence(self, groups_path: str, tau: float = DEFAULT_TAU) -> pd.DataFrame:
        if self.provider is None:
            raise ValueError("Se necesita un proveedor de embeddings para la coherencia")
        return coherence_frame(score_groups(load_groups(groups_path), self.provider, tau))

    def execute(
        self,
        groups_path: Optional[str] = None,
        coverage_a: Optional[str] = None,
        coverage_b: Optional[str] = None,
        campaign_dir: Optional[str] = None,
        tau: float = DEFAULT_TAU,
        out_path: Optional[str] = None,
    ) -> Dict[str, Any]:
        """Calcula lo que corresponda a las entradas dadas.

        Con `out_path` escribe un registro por grupo más un registro de resumen.
        """
        result: Dict[str, Any] = {}
        records: List[Dict[str, Any]] = []

        if groups_path:
            frame = self.coherence(groups_path, tau)
            records.extend(frame.to_dict(orient="records"))
            kept = frame[~frame["no_pairs_kept"]] if not frame.empty else frame
            result["coherence"] = {
                "groups": int(len(frame)),
                "flagged": int(frame["no_pairs_kept"].sum()) if not frame.empty else 0,
                "redundancy_mean": float(kept["redundancy"].mean()) if not kept.empty else 0.0,
                "redundancy_std": float(kept["redundancy"].std(ddof=0)) if not kept.empty else 0.0,
                "diameter_mean": float(frame["diameter"].mean()) if not frame.empty else 0.0,
                "diameter_std": float(frame["diameter"].std(ddof=0)) if not frame.empty else 0.0,
            }

        if coverage_a and coverage_b:
            overlap = jaccard(load_coverage(coverage_a), load_coverage(coverage_b))
            result["jaccard"] = overlap.model_dump()

        if campaign_dir:
            iterations = CampaignStore(campaign_dir).load_iterations()
            result["validity"] = campaign_validity_stats(iterations).model_dump()

        if out_path:
            records.append({"summary": result})
            try:
                Path(out_path).parent.mkdir(parents=True, exist_ok=True)
                with open(out_path, "w", encoding="utf-8") as f:
                    for record in records:
                        f.write(json.dumps(record, ensure_ascii=False) + "\n")
            except OSError as e:
                raise StoreIoError(f"No se pudo escribir {out_path}: {e}") from e
            logger.info("Métricas escritas en %s", out_path)
        return result
