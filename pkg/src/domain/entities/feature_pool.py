"""Pool global de features y cola de features novedosas."""

import logging
import random
import threading
from collections import deque
from typing import Dict, Iterable, Iterator, List, Optional

from src.domain.entities.feature import Feature

logger = logging.getLogger(__name__)


class FeaturePool:
    """Colección indexada por id con registro de inserción sólo-anexar.

    Lecturas concurrentes; las escrituras se serializan con un lock.
    """

    def __init__(self, features: Optional[Iterable[Feature]] = None):
        self._entries: Dict[str, Feature] = {}
        self._insertion_log: List[str] = []
        self._lock = threading.RLock()
        for feature in features or []:
            self.insert(feature)

    def insert(self, feature: Feature) -> bool:
        """Inserta la feature si su id no existe.

        Returns:
            True si se agregó, False si ya estaba en el pool
        """
        with self._lock:
            if feature.id in self._entries:
                return False
            self._entries[feature.id] = feature
            self._insertion_log.append(feature.id)
            return True

    def get(self, feature_id: str) -> Feature:
        return self._entries[feature_id]

    def sample(
        self, n: int, seed: int, exclude: Iterable[str] = ()
    ) -> List[Feature]:
        """Muestra uniforme sin reemplazo, reproducible para una semilla.

        Args:
            n: Cantidad pedida (se devuelve menos si el pool es chico)
            seed: Semilla del generador
            exclude: Ids que no deben elegirse

        Returns:
            Lista de features distintas
        """
        if n < 0:
            raise ValueError("n debe ser >= 0")
        excluded = set(exclude)
        candidates = [fid for fid in self._insertion_log if fid not in excluded]
        chosen = random.Random(seed).sample(candidates, min(n, len(candidates)))
        return [self._entries[fid] for fid in chosen]

    def increment_reward(self, feature_ids: Iterable[str]) -> None:
        """Suma uno a la recompensa de cada feature presente en el pool."""
        with self._lock:
            for fid in feature_ids:
                feature = self._entries.get(fid)
                if feature is not None:
                    self._entries[fid] = feature.model_copy(
                        update={"reward": feature.reward + 1}
                    )

    def features(self) -> List[Feature]:
        """Features en orden de inserción."""
        return [self._entries[fid] for fid in self._insertion_log]

    @property
    def insertion_log(self) -> List[str]:
        return list(self._insertion_log)

    def __contains__(self, feature_id: object) -> bool:
        return feature_id in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Feature]:
        return iter(self.features())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FeaturePool):
            return NotImplemented
        return (
            self._insertion_log == other._insertion_log
            and self._entries == other._entries
        )


class NovelQueue:
    """Cola FIFO de ids de features que aportaron cobertura.

    Un id aparece como máximo una vez. `max_size` None significa sin límite.
    """

    def __init__(self, ids: Iterable[str] = (), max_size: Optional[int] = None):
        self._items: deque = deque()
        self._members: set = set()
        self.max_size = max_size
        for fid in ids:
            self.enqueue(fid)

    def enqueue(self, feature_id: str) -> bool:
        """Encola el id salvo que ya esté o la cola esté llena."""
        if feature_id in self._members:
            return False
        if self.max_size is not None and len(self._items) >= self.max_size:
            logger.warning("Cola de novedades llena (%d), se descarta %s", self.max_size, feature_id)
            return False
        self._items.append(feature_id)
        self._members.add(feature_id)
        return True

    def dequeue(self, max_count: int) -> List[str]:
        """Quita y devuelve los primeros min(max_count, len) ids en orden FIFO."""
        if max_count < 0:
            raise ValueError("max_count debe ser >= 0")
        taken = []
        while self._items and len(taken) < max_count:
            fid = self._items.popleft()
            self._members.discard(fid)
            taken.append(fid)
        return taken

    def requeue_front(self, feature_ids: List[str]) -> None:
        """Devuelve ids al frente de la cola conservando su orden."""
        for fid in reversed(feature_ids):
            if fid not in self._members:
                self._items.appendleft(fid)
                self._members.add(fid)

    def snapshot(self) -> List[str]:
        return list(self._items)

    def __contains__(self, feature_id: object) -> bool:
        return feature_id in self._members

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NovelQueue):
            return NotImplemented
        return self.snapshot() == other.snapshot() and self.max_size == other.max_size

