"""Interfaz para el arnés de ejecución del compilador."""

from abc import ABC, abstractmethod
from pathlib import Path

from src.domain.entities.compile_outcome import CompileOutcome, CrashSignature
from src.domain.entities.coverage_map import CoverageMap
from src.domain.entities.source_program import SourceProgram


class CompilerHarnessInterface(ABC):
    """Ejecuta el compilador objetivo y mide cobertura."""

    @abstractmethod
    def run_compile(self, program: SourceProgram, run_dir: Path) -> CompileOutcome:
        """Compila el programa bajo límites y clasifica el resultado."""
        pass

    @abstractmethod
    def classify_crash(self, outcome: CompileOutcome) -> CrashSignature:
        """Calcula la firma de bucket de un crash."""
        pass

    @abstractmethod
    def measure_coverage(self, run_dir: Path) -> CoverageMap:
        """Lee la cobertura producida por la última ejecución."""
        pass

    @abstractmethod
    def accepts_elsewhere(self, program: SourceProgram, run_dir: Path) -> bool:
        """Indica si un compilador secundario acepta el programa."""
        pass
