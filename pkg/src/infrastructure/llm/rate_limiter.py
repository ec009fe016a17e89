"""Token bucket por endpoint."""

import threading
import time
from typing import Callable


class TokenBucket:
    """Limita peticiones a `rate_per_minute` con ráfagas de hasta `capacity`."""

    def __init__(
        self,
        rate_per_minute: float,
        capacity: float = 1.0,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.rate = rate_per_minute / 60.0
        self.capacity = max(1.0, capacity)
        self._tokens = self.capacity
        self._clock = clock
        self._sleep = sleep
        self._last = clock()
        self._lock = threading.Lock()

    def _refill(self) -> None:
        now = self._clock()
        self._tokens = min(self.capacity, self._tokens + (now - self._last) * self.rate)
        self._last = now

    def acquire(self) -> float:
        """Toma un token, esperando si hace falta.

        Returns:
            Segundos esperados
        """
        with self._lock:
            self._refill()
            waited = 0.0
            if self._tokens < 1.0:
                waited = (1.0 - self._tokens) / self.rate
                self._sleep(waited)
                self._refill()
            self._tokens = max(0.0, self._tokens - 1.0)
            return waited
