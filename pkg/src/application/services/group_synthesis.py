"""Completado de grupos y pares de entrenamiento por predicción enmascarada."""

import json
import logging
import random
from pathlib import Path
from typing import Iterable, List, Sequence

from src.application.interfaces.model_endpoint import ChatModel
from src.application.services.extraction import parse_feature_items
from src.domain.entities.feature import Feature, FeatureOrigin
from src.domain.entities.feature_group import FeatureGroup, GroupSource
from src.domain.entities.feature_pool import FeaturePool
from src.domain.entities.model_request import ModelRole
from src.domain.entities.training_pair import TrainingExportStats, TrainingPair
from src.domain.exceptions import (
    GroupSynthesisFailed,
    GroupTooSmall,
    ModelError,
    StoreIoError,
)

logger = logging.getLogger(__name__)

PAIRS_PER_GROUP = 4

GROUP_TEMPLATE = """[Features]
{features}

[Task]
Propose up to {missing} additional features that glue the features above into one coherent program. Do not repeat or rewrite the given features. Answer with a numbered list where every item starts with "The code should".
"""


def render_feature_list(descriptions: Sequence[str]) -> str:
    return "\n".join(f"{i}. {d}" for i, d in enumerate(descriptions, start=1))


def build_group_prompt(descriptions: Sequence[str], missing: int) -> str:
    """Prompt de completado; es también el formato de entrada del dataset."""
    return GROUP_TEMPLATE.format(features=render_feature_list(descriptions), missing=missing)


def complete_group(
    seed: List[Feature],
    target_size: int,
    model: ChatModel,
    iteration_id: int = 0,
    retries: int = 2,
) -> FeatureGroup:
    """Completa las features semilla con features de pegamento.

    Las semillas nunca se modifican ni se descartan; si el modelo devuelve
    menos items útiles el grupo queda más chico.

    Raises:
        GroupSynthesisFailed: Si el modelo falla tras `retries` reintentos
    """
    if not 1 <= len(seed) <= target_size:
        raise ValueError("Se requiere 1 <= |seed| <= target_size")
    missing = target_size - len(seed)
    if missing == 0:
        return FeatureGroup(features=list(seed), source=GroupSource.SYNTHESIZED)

    descriptions = sorted(f.description for f in seed)
    prompt = build_group_prompt(descriptions, missing)
    response = None
    for attempt in range(retries + 1):
        try:
            response = model.complete(ModelRole.GROUP, prompt, sample=attempt)
            break
        except ModelError as e:
            logger.warning(
                "Fallo del modelo de grupos (intento %d/%d): %s", attempt + 1, retries + 1, str(e)
            )
    if response is None:
        raise GroupSynthesisFailed(f"El modelo de grupos falló {retries + 1} veces")

    origin = FeatureOrigin.glue(iteration_id)
    members = list(seed)
    seen = {f.id for f in seed}
    for item in parse_feature_items(response):
        if len(members) == target_size:
            break
        glue = Feature.create(item.description, witness=item.witness, origin=origin)
        if glue.id in seen:
            logger.debug("Feature de pegamento duplicada descartada: %s", glue.id)
            continue
        seen.add(glue.id)
        members.append(glue)

    logger.debug(
        "Grupo completado: %d semillas + %d de pegamento", len(seed), len(members) - len(seed)
    )
    return FeatureGroup(features=members, source=GroupSource.SYNTHESIZED)


def random_group(
    seed: List[Feature], pool: FeaturePool, target_size: int, rng_seed: int
) -> FeatureGroup:
    """Grupo de referencia: semillas más features del pool al azar."""
    extra = pool.sample(
        max(0, target_size - len(seed)), rng_seed, exclude=[f.id for f in seed]
    )
    return FeatureGroup(features=list(seed) + extra, source=GroupSource.RANDOM)


def make_training_pairs(group: FeatureGroup, seed: int) -> List[TrainingPair]:
    """Cuatro particiones independientes del grupo barajado.

    Raises:
        GroupTooSmall: Si el grupo tiene menos de dos features
    """
    if len(group) < 2:
        raise GroupTooSmall(f"El grupo {group.group_id} tiene {len(group)} feature(s)")
    rng = random.Random(seed)
    pairs = []
    for _ in range(PAIRS_PER_GROUP):
        descriptions = group.descriptions()
        rng.shuffle(descriptions)
        split = rng.randint(1, len(descriptions) - 1)
        pairs.append(
            TrainingPair(
                input_features=descriptions[:split],
                target_features=descriptions[split:],
                group_id=group.group_id,
            )
        )
    return pairs


def training_record(pair: TrainingPair) -> dict:
    return {
        "prompt": build_group_prompt(pair.input_features, len(pair.target_features)),
        "completion": render_feature_list(pair.target_features),
    }


def export_training_dataset(
    groups: Iterable[FeatureGroup], path: str, seed: int = 0
) -> TrainingExportStats:
    """Escribe un registro prompt/completion por par de entrenamiento.

    Raises:
        StoreIoError: Si no se puede escribir el archivo
    """
    stats = TrainingExportStats()
    rng = random.Random(seed)
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8") as f:
            for group in groups:
                stats.groups_in += 1
                group_seed = rng.getrandbits(64)
                try:
                    pairs = make_training_pairs(group, group_seed)
                except GroupTooSmall as e:
                    stats.groups_skipped += 1
                    logger.debug("Grupo omitido: %s", str(e))
                    continue
                for pair in pairs:
                    f.write(json.dumps(training_record(pair), ensure_ascii=False) + "\n")
                    stats.pairs_out += 1
    except OSError as e:
        raise StoreIoError(f"No se pudo escribir el dataset {path}: {e}") from e

    logger.info(
        "Dataset exportado: %d grupos, %d omitidos, %d pares",
        stats.groups_in,
        stats.groups_skipped,
        stats.pairs_out,
    )
    return stats
