"""Clasificación de resultados y firmas de crash del compilador.

Todo aquí es puro: el mismo stderr y código de salida dan siempre el mismo
estado y la misma firma.
"""

import hashlib
import re
import signal
from typing import List, Optional, Sequence, Tuple

from src.domain.entities.compile_outcome import (
    CompileOutcome,
    CompileStatus,
    CrashKind,
    CrashSignature,
)
from src.domain.exceptions import NotACrash

_ADDRESS = re.compile(r"0x[0-9a-fA-F]+")
_DIRECTORIES = re.compile(r"(?:[\w.+\-~]*/)+([\w.+\-]+)")
_LINE_COL = re.compile(r":\d+(?::\d+)?")
_LINE_WORD = re.compile(r"\bline \d+")
_SPACES = re.compile(r"\s+")

_ICE = re.compile(r"internal compiler error: (?P<msg>.+)$")
_ASSERTION = re.compile(r"Assertion [`'].*[`'] failed")
_UNREACHABLE = re.compile(r"UNREACHABLE executed")
_SOURCE_LOCATION = re.compile(r"\S+\.\w+:\d+: ")
_GENERIC_ICE = re.compile(
    r"^(Segmentation fault|Aborted|Illegal instruction|Floating point exception|"
    r"Bus error|Killed signal|killed by signal|signal)",
    re.IGNORECASE,
)

_FRAME_NUMBERED = re.compile(r"^\s*#(?P<num>\d+)\s+(?:0x[0-9a-fA-F]+\s+)?(?:in\s+)?(?P<rest>.+)$")
_FRAME_GCC = re.compile(r"^\s*0x[0-9a-fA-F]+\s+(?P<rest>\S.*)$")
_MODULE_FRAME = re.compile(r"^\((?P<module>[^()+]+)\+0x[0-9a-fA-F]+\)")
_FUNC = re.compile(r"[^\s(]+")
_NOISE_FRAMES = re.compile(
    r"(PrintStackTrace|SignalHandler|RunSignalHandlers|CleanupOnSignal|__restore_rt|"
    r"^raise$|^abort$|^__GI_|__pthread_kill|__assert_fail|^__libc_|^_start$|"
    r"^internal_error$|^fancy_abort$|^crash_signal$|^diagnostic_|llvm_unreachable_internal|^\?+$)"
)

_SIGNALS_BY_NAME = {s.name: s for s in signal.Signals}


def normalize_evidence(line: str) -> str:
    """Quita directorios, números de línea/columna y direcciones."""
    line = _ADDRESS.sub("<ADDR>", line)
    line = _DIRECTORIES.sub(r"\1", line)
    line = _LINE_COL.sub(":<N>", line)
    line = _LINE_WORD.sub("line <N>", line)
    return _SPACES.sub(" ", line).strip()


def _signal_name(exit_code: int) -> Optional[str]:
    number = None
    if exit_code < 0:
        number = -exit_code
    elif 128 < exit_code < 160:
        number = exit_code - 128
    if number is None:
        return None
    try:
        return signal.Signals(number).name
    except ValueError:
        return None


def classify_status(
    exit_code: int,
    timed_out: bool,
    stderr: str,
    crash_patterns: Sequence[str],
    fatal_signals: Sequence[str],
    oom_patterns: Sequence[str],
) -> Tuple[CompileStatus, Optional[str]]:
    """Asigna el estado a partir de las observaciones crudas.

    Returns:
        (estado, nombre de la señal si terminó por señal)
    """
    signal_name = _signal_name(exit_code)
    if timed_out:
        return CompileStatus.HANG, signal_name
    if any(re.search(p, stderr) for p in oom_patterns):
        return CompileStatus.OOM, signal_name
    if any(re.search(p, stderr) for p in crash_patterns):
        return CompileStatus.CRASH, signal_name
    if signal_name == "SIGKILL":
        return CompileStatus.OOM, signal_name
    if signal_name in fatal_signals:
        return CompileStatus.CRASH, signal_name
    if exit_code == 0:
        return CompileStatus.VALID, None
    return CompileStatus.REJECT, signal_name


def _assertion_line(stderr: str) -> Optional[str]:
    lines = stderr.splitlines()
    for line in lines:
        if _ASSERTION.search(line):
            location = _SOURCE_LOCATION.search(line)
            return line[location.start():] if location else line
    for line in lines:
        match = _ICE.search(line)
        if match and not _GENERIC_ICE.match(match.group("msg")):
            return line[match.start():]
    for index, line in enumerate(lines):
        if _UNREACHABLE.search(line):
            previous = lines[index - 1].strip() if index > 0 else ""
            return f"{previous} {line[_UNREACHABLE.search(line).start():]}".strip()
    return None


def _frame_name(rest: str) -> str:
    if _MODULE_FRAME.match(rest):
        # sin símbolo: sólo módulo+offset
        return ""
    rest = rest.replace("(anonymous namespace)", "anon")
    func = _FUNC.match(rest)
    return func.group(0) if func else rest.strip()


def extract_frames(stderr: str) -> List[str]:
    """Nombres de función de la primera traza encontrada, sin frames de ruido."""
    frames: List[str] = []
    seen_numbered = False
    for line in stderr.splitlines():
        match = _FRAME_NUMBERED.match(line)
        if match:
            if match.group("num") == "0" and seen_numbered:
                break
            seen_numbered = True
            frames.append(_frame_name(match.group("rest")))
            continue
        match = _FRAME_GCC.match(line)
        if match:
            frames.append(_frame_name(match.group("rest")))
    return [f for f in frames if f and not _NOISE_FRAMES.search(f)]


def _digest(parts: Sequence[str]) -> str:
    return hashlib.sha1("\n".join(parts).encode("utf-8")).hexdigest()[:16]


def classify_crash(
    outcome: CompileOutcome,
    crash_patterns: Sequence[str],
    frames: int = 3,
    tail_lines: int = 5,
) -> CrashSignature:
    """Calcula la firma de bucket de un resultado Crash.

    Raises:
        NotACrash: Si el resultado no es Crash
    """
    if outcome.status != CompileStatus.CRASH:
        raise NotACrash(f"El resultado es {outcome.status.value}, no Crash")

    assertion = _assertion_line(outcome.stderr)
    if assertion is not None:
        return CrashSignature(
            kind=CrashKind.ASSERTION_FAILURE, key=normalize_evidence(assertion)
        )

    matched_pattern = any(re.search(p, outcome.stderr) for p in crash_patterns)
    kind = CrashKind.INTERNAL_ERROR if matched_pattern else CrashKind.SIGNAL
    trace = extract_frames(outcome.stderr)
    if trace:
        return CrashSignature(kind=kind, key=f"trace:{_digest(trace[:frames])}")

    tail = [
        normalize_evidence(line) for line in outcome.stderr.splitlines() if line.strip()
    ][-tail_lines:]
    if not tail and outcome.signal:
        tail = [outcome.signal]
    return CrashSignature(kind=kind, key=f"tail:{_digest(tail)}")
