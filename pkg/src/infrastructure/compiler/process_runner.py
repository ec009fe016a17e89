"""Ejecución de procesos hijos con timeout y límite de memoria."""

import logging
import os
import shutil
import signal
import subprocess
import time
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional

from src.domain.exceptions import HarnessError

logger = logging.getLogger(__name__)

try:
    import resource
except ImportError:  # pragma: no cover - plataformas sin setrlimit
    resource = None


class RawRun(NamedTuple):
    """Observación cruda de un proceso."""

    exit_code: int
    timed_out: bool
    stdout: str
    stderr: str
    stderr_truncated: bool
    wall_time: float


def _kill_process_group(pid: int) -> None:
    try:
        os.killpg(os.getpgid(pid), signal.SIGKILL)
    except (ProcessLookupError, PermissionError):
        try:
            os.kill(pid, signal.SIGKILL)
        except ProcessLookupError:
            pass


def _limits(memory_limit: Optional[int]):
    if memory_limit is None or resource is None:
        return None

    def apply() -> None:
        resource.setrlimit(resource.RLIMIT_AS, (memory_limit, memory_limit))

    return apply


def _decode_capped(data: bytes, cap: int):
    truncated = len(data) > cap
    return data[:cap].decode("utf-8", errors="replace"), truncated


def run_process(
    argv: List[str],
    cwd: Path,
    timeout: float,
    memory_limit: Optional[int] = None,
    env: Optional[Dict[str, str]] = None,
    stderr_cap: int = 65536,
) -> RawRun:
    """Lanza el proceso en su propio grupo y lo mata entero al vencer el plazo.

    Raises:
        HarnessError: Si el binario no existe o no se puede lanzar
    """
    if shutil.which(argv[0]) is None and not Path(argv[0]).is_file():
        raise HarnessError(f"Compilador no encontrado: {argv[0]}")

    child_env = os.environ.copy()
    child_env.update(env or {})
    started = time.monotonic()
    try:
        proc = subprocess.Popen(
            argv,
            cwd=str(cwd),
            stdin=subprocess.DEVNULL,
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
            env=child_env,
            start_new_session=True,
            preexec_fn=_limits(memory_limit),
        )
    except OSError as e:
        raise HarnessError(f"No se pudo lanzar {argv[0]}: {e}") from e

    timed_out = False
    try:
        stdout, stderr = proc.communicate(timeout=timeout)
    except subprocess.TimeoutExpired:
        timed_out = True
        _kill_process_group(proc.pid)
        stdout, stderr = proc.communicate()
        logger.debug("Proceso %s excedió %.1fs y fue terminado", argv[0], timeout)

    wall_time = time.monotonic() - started
    stderr_text, truncated = _decode_capped(stderr or b"", stderr_cap)
    stdout_text = (stdout or b"").decode("utf-8", errors="replace")
    return RawRun(
        exit_code=proc.returncode,
        timed_out=timed_out,
        stdout=stdout_text,
        stderr=stderr_text,
        stderr_truncated=truncated,
        wall_time=wall_time,
    )
