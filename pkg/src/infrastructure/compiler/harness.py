"""Arnés del compilador objetivo."""

import json
import logging
import re
from pathlib import Path
from typing import List, Optional

from src.application.interfaces.compiler_harness import CompilerHarnessInterface
from src.domain.entities.compile_outcome import CompileOutcome, CompileStatus, CrashSignature
from src.domain.entities.coverage_map import CoverageMap, CoverageMode
from src.domain.entities.source_program import Language, SourceProgram
from src.domain.exceptions import CoverageUnavailable, HarnessError
from src.infrastructure.compiler.coverage import (
    parse_line_report,
    read_edge_bitmap,
    read_line_reports,
    reset_edge_bitmap,
)
from src.infrastructure.compiler.crash_classifier import classify_crash, classify_status
from src.infrastructure.compiler.process_runner import run_process
from src.infrastructure.settings import CompilerConfig

logger = logging.getLogger(__name__)

STDERR_FILE = "stderr.txt"
OUTCOME_FILE = "outcome.rec"


def render_command(
    template: List[str], input_path: Path, output_path: Path, flags: List[str], workdir: Path
) -> List[str]:
    """Sustituye {input}, {output} y {workdir}; un elemento {flags} se expande en su lugar.

    Sin {flags} en la plantilla, los flags se agregan al final.
    """
    values = {"input": str(input_path), "output": str(output_path), "workdir": str(workdir)}
    argv: List[str] = []
    spliced = False
    for part in template:
        if part == "{flags}":
            argv.extend(flags)
            spliced = True
            continue
        argv.append(part.format(**values))
    if not spliced:
        argv.extend(flags)
    return argv


def _input_file(run_dir: Path) -> Path:
    """Programa compilado en `run_dir` (input.c o input.cpp)."""
    found = sorted(run_dir.glob("input.*"))
    return found[0] if found else run_dir / "input.c"


class CompilerHarness(CompilerHarnessInterface):
    """Compila programas bajo límites, clasifica resultados y lee cobertura.

    Cada ejecución deja en su directorio input.<ext>, stderr.txt y outcome.rec.
    """

    def __init__(self, config: CompilerConfig):
        self.config = config
        self._bitmap_stale = False

    def _template_for(self, language: Language) -> List[str]:
        if language == Language.CPP and self.config.cpp_command_template:
            return self.config.cpp_command_template
        return self.config.command_template

    def _alternate_template(self, language: Language) -> Optional[List[str]]:
        if not self.config.cpp_command_template:
            return None
        if language == Language.CPP:
            return self.config.command_template
        return self.config.cpp_command_template

    def _workdir(self, run_dir: Path) -> Path:
        return Path(self.config.workdir) if self.config.workdir else run_dir

    def _env(self) -> dict:
        env = dict(self.config.env)
        if self.config.coverage_mode == CoverageMode.EDGE_BITMAP:
            env[self.config.bitmap_env_var] = str(Path(self.config.bitmap_path).resolve())
        return env

    def _execute(self, template: List[str], input_path: Path, run_dir: Path) -> CompileOutcome:
        argv = render_command(
            template,
            input_path,
            run_dir / "out.o",
            self.config.flags,
            self._workdir(run_dir),
        )
        if self.config.coverage_mode == CoverageMode.EDGE_BITMAP:
            try:
                reset_edge_bitmap(self.config.bitmap_path, self.config.bitmap_size)
                self._bitmap_stale = False
            except CoverageUnavailable as e:
                # La compilación sigue; measure_coverage reporta la falta de cobertura
                self._bitmap_stale = True
                logger.warning("%s", str(e))
        raw = run_process(
            argv,
            cwd=self._workdir(run_dir),
            timeout=self.config.timeout,
            memory_limit=self.config.memory_limit,
            env=self._env(),
            stderr_cap=self.config.stderr_cap,
        )
        status, signal_name = classify_status(
            raw.exit_code,
            raw.timed_out,
            raw.stderr,
            self.config.crash_patterns,
            self.config.fatal_signals,
            self.config.oom_patterns,
        )
        return CompileOutcome(
            status=status,
            exit_code=raw.exit_code,
            signal=signal_name,
            stderr=raw.stderr,
            stderr_truncated=raw.stderr_truncated,
            wall_time=raw.wall_time,
            command=argv,
        )

    def _frontend_mismatch(self, stderr: str) -> bool:
        return any(re.search(p, stderr) for p in self.config.frontend_mismatch_patterns)

    def run_compile(self, program: SourceProgram, run_dir: Path) -> CompileOutcome:
        """Compila el programa y persiste sus artefactos.

        Si el driver rechaza el programa por un desajuste de lenguaje y hay un
        driver alternativo configurado, se reintenta una vez con él.

        Raises:
            HarnessError: Si el compilador no se puede lanzar o el directorio no es escribible
        """
        try:
            run_dir.mkdir(parents=True, exist_ok=True)
            input_path = run_dir / f"input{program.suffix}"
            input_path.write_text(program.code, encoding="utf-8")
        except OSError as e:
            raise HarnessError(f"No se pudo preparar {run_dir}: {e}") from e

        outcome = self._execute(self._template_for(program.language), input_path, run_dir)
        alternate = self._alternate_template(program.language)
        if (
            outcome.status == CompileStatus.REJECT
            and alternate is not None
            and self._frontend_mismatch(outcome.stderr)
        ):
            logger.debug("Desajuste de lenguaje en %s, reintentando con el otro driver", run_dir)
            outcome = self._execute(alternate, input_path, run_dir)

        self._persist(outcome, run_dir)
        logger.debug("Compilación en %s: %s", run_dir, outcome.status.value)
        return outcome

    def _persist(self, outcome: CompileOutcome, run_dir: Path) -> None:
        try:
            (run_dir / STDERR_FILE).write_text(outcome.stderr, encoding="utf-8")
            (run_dir / OUTCOME_FILE).write_text(
                json.dumps(outcome.model_dump(mode="json", exclude={"stderr"}), indent=2),
                encoding="utf-8",
            )
        except OSError as e:
            raise HarnessError(f"No se pudieron escribir los artefactos de {run_dir}: {e}") from e

    def classify_crash(self, outcome: CompileOutcome) -> CrashSignature:
        return classify_crash(
            outcome,
            self.config.crash_patterns,
            frames=self.config.backtrace_frames,
            tail_lines=self.config.tail_lines,
        )

    def measure_coverage(self, run_dir: Path) -> CoverageMap:
        """Cobertura de la última ejecución según el modo configurado.

        Raises:
            CoverageUnavailable: Si los artefactos de instrumentación faltan
        """
        mode = self.config.coverage_mode
        if mode == CoverageMode.NONE:
            return CoverageMap.empty(CoverageMode.NONE)
        if mode == CoverageMode.EDGE_BITMAP:
            if self._bitmap_stale:
                raise CoverageUnavailable(
                    f"El bitmap {self.config.bitmap_path} no se reinició antes de compilar"
                )
            return read_edge_bitmap(self.config.bitmap_path)

        if self.config.line_report_command:
            argv = render_command(
                self.config.line_report_command,
                _input_file(run_dir),
                run_dir / "out.o",
                [],
                self._workdir(run_dir),
            )
            try:
                raw = run_process(argv, cwd=self._workdir(run_dir), timeout=self.config.timeout * 6)
            except HarnessError as e:
                raise CoverageUnavailable(str(e)) from e
            if raw.timed_out or raw.exit_code != 0:
                raise CoverageUnavailable(
                    f"El reportero de cobertura terminó con código {raw.exit_code}"
                )
            return parse_line_report(raw.stdout)
        return read_line_reports(Path(self.config.line_report_dir), self.config.line_report_glob)

    def accepts_elsewhere(self, program: SourceProgram, run_dir: Path) -> bool:
        """Compila con el compilador secundario, si está configurado."""
        template = self.config.secondary_command_template
        if not template:
            return False
        secondary_dir = run_dir / "secondary"
        try:
            secondary_dir.mkdir(parents=True, exist_ok=True)
            input_path = secondary_dir / f"input{program.suffix}"
            input_path.write_text(program.code, encoding="utf-8")
        except OSError as e:
            raise HarnessError(f"No se pudo preparar {secondary_dir}: {e}") from e
        argv = render_command(
            template, input_path, secondary_dir / "out.o", self.config.flags, secondary_dir
        )
        raw = run_process(argv, cwd=secondary_dir, timeout=self.config.timeout)
        return not raw.timed_out and raw.exit_code == 0
