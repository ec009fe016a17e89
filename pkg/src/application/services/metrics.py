"""Medidas de coherencia de grupos, solapamiento de cobertura y validez."""

import logging
import math
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from src.application.interfaces.model_endpoint import EmbeddingProvider
from src.domain.entities.campaign import IterationReport
from src.domain.entities.compile_outcome import CompileStatus
from src.domain.entities.coverage_map import CoverageMap
from src.domain.entities.embedding import (
    CoherenceScore,
    EmbeddingVector,
    JaccardResult,
    ValidityStats,
)
from src.domain.entities.feature_group import FeatureGroup
from src.domain.exceptions import DimMismatch, TooFewFeatures, UnitKindMismatch, ZeroVector

logger = logging.getLogger(__name__)

DEFAULT_TAU = 0.95


def _matrix(vectors: Sequence[EmbeddingVector]) -> np.ndarray:
    if len({v.dim for v in vectors}) > 1:
        raise DimMismatch("Los vectores tienen dimensiones distintas")
    return np.array([v.values for v in vectors], dtype=np.float64)


def _normalized(matrix: np.ndarray) -> np.ndarray:
    norms = np.sqrt(np.einsum("ij,ij->i", matrix, matrix))
    if np.any(norms == 0.0):
        raise ZeroVector("Vector de embedding nulo")
    return matrix / norms[:, None]


def cosine(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """Similitud coseno acotada a [-1, 1].

    Raises:
        DimMismatch: Si las dimensiones difieren
        ZeroVector: Si algún vector es nulo
    """
    unit = _normalized(_matrix([a, b]))
    return float(np.clip(np.dot(unit[0], unit[1]), -1.0, 1.0))


def pair_cosines(vectors: Sequence[EmbeddingVector]) -> List[Tuple[int, int, float]]:
    """Cosenos de todos los pares no ordenados i < j."""
    if len(vectors) < 2:
        raise TooFewFeatures(f"Se necesitan al menos 2 vectores, hay {len(vectors)}")
    unit = _normalized(_matrix(vectors))
    rows, cols = np.triu_indices(len(vectors), k=1)
    sims = np.clip(np.einsum("ij,ij->i", unit[rows], unit[cols]), -1.0, 1.0)
    return [(int(i), int(j), float(s)) for i, j, s in zip(rows, cols, sims)]


def redundancy(vectors: Sequence[EmbeddingVector], tau: float = DEFAULT_TAU) -> CoherenceScore:
    """Media de similitudes entre pares, descartando casi duplicados (cos >= tau).

    Sin pares sobrevivientes la redundancia es 0 y se marca `no_pairs_kept`.
    """
    if not 0.0 < tau <= 1.0:
        raise ValueError("tau debe estar en (0, 1]")
    sims = [s for _, _, s in pair_cosines(vectors)]
    kept = [s for s in sims if s < tau]
    if not kept:
        return CoherenceScore(
            redundancy=0.0, pair_count=0, filtered_count=len(sims), no_pairs_kept=True
        )
    return CoherenceScore(
        redundancy=math.fsum(kept) / len(kept),
        pair_count=len(kept),
        filtered_count=len(sims) - len(kept),
    )


def diameter(vectors: Sequence[EmbeddingVector]) -> float:
    """Máximo de (1 - coseno) sobre todos los pares."""
    return max(1.0 - s for _, _, s in pair_cosines(vectors))


def coherence(
    vectors: Sequence[EmbeddingVector], tau: float = DEFAULT_TAU, group_id: str = None
) -> CoherenceScore:
    score = redundancy(vectors, tau)
    return score.model_copy(update={"diameter": diameter(vectors), "group_id": group_id})


def score_groups(
    groups: Iterable[FeatureGroup], provider: EmbeddingProvider, tau: float = DEFAULT_TAU
) -> List[CoherenceScore]:
    """Puntaje por grupo; los grupos de un solo miembro se omiten."""
    scores = []
    for group in groups:
        if len(group) < 2:
            logger.debug("Grupo %s omitido: un solo miembro", group.group_id)
            continue
        vectors = provider.embed(group.descriptions())
        scores.append(coherence(vectors, tau, group.group_id))
    logger.info("Coherencia calculada para %d grupos", len(scores))
    return scores


def jaccard(cov_a: CoverageMap, cov_b: CoverageMap) -> JaccardResult:
    """|A ∩ B| / |A ∪ B|; dos conjuntos vacíos dan 1.0 marcado como degenerado.

    Raises:
        UnitKindMismatch: Si los mapas usan unidades distintas
    """
    if cov_a.unit_kind != cov_b.unit_kind:
        raise UnitKindMismatch(
            f"No se pueden comparar {cov_a.unit_kind.value} y {cov_b.unit_kind.value}"
        )
    overlap = len(cov_a.covered & cov_b.covered)
    union = len(cov_a.covered | cov_b.covered)
    if union == 0:
        return JaccardResult(value=1.0, overlap=0, union=0, degenerate=True)
    return JaccardResult(value=overlap / union, overlap=overlap, union=union)


def jaccard_from_counts(overlap: int, only_a: int, only_b: int) -> JaccardResult:
    """Jaccard a partir de conteos publicados (solapamiento y exclusivos)."""
    if min(overlap, only_a, only_b) < 0:
        raise ValueError("Los conteos deben ser >= 0")
    union = overlap + only_a + only_b
    if union == 0:
        return JaccardResult(value=1.0, overlap=0, union=0, degenerate=True)
    return JaccardResult(value=overlap / union, overlap=overlap, union=union)


def campaign_validity_stats(reports: Sequence[IterationReport]) -> ValidityStats:
    """Tasa de válidos y CrashOnValid de una campaña.

    Un Crash cuenta como válido sólo si un compilador secundario aceptó el
    mismo programa; el numerador de CrashOnValid son los crashes nuevos
    entre esos programas.
    """
    generated = [r for r in reports if r.outcome_status is not None]
    clean = sum(1 for r in generated if r.outcome_status == CompileStatus.VALID)
    compilable_crashes = [
        r for r in generated if r.outcome_status == CompileStatus.CRASH and r.crash_compilable
    ]
    valid = clean + len(compilable_crashes)
    crashing_valid = sum(1 for r in compilable_crashes if r.new_crash)
    return ValidityStats(
        generated=len(generated),
        valid=valid,
        crashing_valid=crashing_valid,
        valid_rate=valid / len(generated) if generated else 0.0,
        crash_on_valid=crashing_valid / valid if valid else 0.0,
        degenerate=not generated or valid == 0,
    )
