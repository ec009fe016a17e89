"""Jerarquía de errores del dominio."""

from typing import Optional


class ForjadorError(Exception):
    """Error base de la aplicación."""


class ConfigError(ForjadorError):
    """Configuración inválida o incompleta."""


class EmptyDescription(ForjadorError):
    """La descripción de una feature queda vacía tras normalizarla."""


class StoreIoError(ForjadorError):
    """Error de lectura/escritura en un archivo de persistencia."""


class PoolFormatError(ForjadorError):
    """Registro corrupto en un archivo línea a línea."""

    def __init__(self, record_index: int, line_number: int, reason: str):
        self.record_index = record_index
        self.line_number = line_number
        self.reason = reason
        super().__init__(
            f"Registro {record_index} (línea {line_number}) inválido: {reason}"
        )


class NetworkError(ForjadorError):
    """Fallo de red tras agotar los reintentos."""


class ArtifactParseError(ForjadorError):
    """Artefacto de bug mal formado."""

    def __init__(self, bug_id: str, reason: str):
        self.bug_id = bug_id
        self.reason = reason
        super().__init__(f"Artefacto {bug_id} inválido: {reason}")


class NoFeaturesFound(ForjadorError):
    """La respuesta del modelo no contiene ninguna feature reconocible."""


class ModelError(ForjadorError):
    """Fallo del endpoint de modelo (HTTP o cuerpo mal formado)."""


class ReplayMiss(ModelError):
    """La petición no está en el archivo de replay."""

    def __init__(self, request_hash: str):
        self.request_hash = request_hash
        super().__init__(f"Petición no encontrada en el archivo de replay: {request_hash}")


class GroupSynthesisFailed(ForjadorError):
    """El modelo de grupos falló tras agotar los reintentos."""


class GroupTooSmall(ForjadorError):
    """Grupo con menos de dos features para generar pares de entrenamiento."""


class NoCodeFound(ForjadorError):
    """La respuesta no contiene código C/C++ reconocible."""


class InstantiationFailed(ForjadorError):
    """No se obtuvo un programa tras agotar los reintentos."""

    def __init__(self, group_id: str, attempts: int, last_error: Optional[Exception] = None):
        self.group_id = group_id
        self.attempts = attempts
        self.last_error = last_error
        super().__init__(
            f"Instanciación fallida para el grupo {group_id} tras {attempts} intento(s)"
        )


class HarnessError(ForjadorError):
    """Fallo del propio arnés (compilador ausente, error al lanzar el proceso)."""


class NotACrash(ForjadorError):
    """Se pidió una firma de crash para un resultado que no es Crash."""


class CoverageUnavailable(ForjadorError):
    """No se pudo leer la cobertura de la iteración."""


class UnitKindMismatch(ForjadorError):
    """Mapas de cobertura con unidades de distinto tipo."""


class EmptyPool(ForjadorError):
    """El pool global de features está vacío."""


class DimMismatch(ForjadorError):
    """Vectores de embedding con dimensiones distintas."""


class ZeroVector(ForjadorError):
    """Vector de embedding nulo."""


class TooFewFeatures(ForjadorError):
    """Se necesitan al menos dos vectores para la métrica."""
