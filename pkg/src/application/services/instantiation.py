"""Instanciación de grupos de features en programas C/C++."""

import logging
import re
from typing import Optional

from src.application.interfaces.model_endpoint import ChatModel
from src.domain.entities.feature_group import FeatureGroup
from src.domain.entities.model_request import ModelRole
from src.domain.entities.source_program import Language, SourceProgram
from src.domain.exceptions import InstantiationFailed, ModelError, NoCodeFound

logger = logging.getLogger(__name__)

INSTANTIATION_TEMPLATE = """[Task]
Given a set of features, generate a single C/C++ program that satisfies all features and stresses compiler edge cases.

[Input]
A set of feature where each feature specifies a semantic that must be satisfied by the generated program.

{features}

[Instructions]
1. All features must be satisfied within a single program.
2. Dependencies among features are implicit and should be realized through appropriate control-flow and/or data-flow structures in the generated code.
3. The generated code must be valid and compilable under the language specification.
"""

_FENCED_BLOCK = re.compile(r"```[^\n]*\n(.*?)```", re.DOTALL)
_PREAMBLE = re.compile(
    r"^\s*(#\s*include\b|#\s*define\b|int\s+main\b|"
    r"(?:(?:static|extern|inline|const|volatile|unsigned|signed|register)\s+)*"
    r"(?:void|int|char|short|long|float|double|_Bool|bool|struct|union|enum|typedef|"
    r"class|template|namespace|auto|size_t)\b)"
)
_CPP_ONLY = re.compile(r"\bclass\b|\btemplate\b|::")


def build_instantiation_prompt(group: FeatureGroup) -> str:
    """Renderiza el prompt con las features ordenadas por id y sus testigos."""
    entries = []
    for index, feature in enumerate(group.sorted_features(), start=1):
        entry = f"{index}. {feature.description}"
        if feature.witness.strip():
            entry += f"\n   Example:\n```\n{feature.witness.rstrip()}\n```"
        entries.append(entry)
    return INSTANTIATION_TEMPLATE.format(features="\n".join(entries))


def detect_language(code: str) -> Language:
    return Language.CPP if _CPP_ONLY.search(code) else Language.C


def extract_code_block(response: str, group_id: str = "", attempt: int = 0) -> SourceProgram:
    """Extrae una única unidad de código de la respuesta del modelo.

    Raises:
        NoCodeFound: Si no hay bloque cercado ni preámbulo C/C++
    """
    code: Optional[str] = None
    for match in _FENCED_BLOCK.finditer(response):
        if match.group(1).strip():
            code = match.group(1)
            break

    if code is None:
        lines = response.splitlines(keepends=True)
        for index, line in enumerate(lines):
            if _PREAMBLE.match(line):
                code = "".join(lines[index:])
                break

    if code is None or not code.strip() or "```" in code:
        raise NoCodeFound("La respuesta no contiene código C/C++")
    return SourceProgram(
        code=code, language=detect_language(code), group_id=group_id, attempt=attempt
    )


def instantiate(group: FeatureGroup, model: ChatModel, retries: int = 2) -> SourceProgram:
    """Pide un programa al modelo reintentando ante respuestas sin código.

    Raises:
        InstantiationFailed: Si se agota el presupuesto de reintentos
    """
    prompt = build_instantiation_prompt(group)
    last_error: Optional[Exception] = None
    for attempt in range(retries + 1):
        try:
            response = model.complete(ModelRole.INSTANTIATE, prompt, sample=attempt)
            return extract_code_block(response, group_id=group.group_id, attempt=attempt)
        except (NoCodeFound, ModelError) as e:
            last_error = e
            logger.warning(
                "Instanciación del grupo %s, intento %d fallido: %s",
                group.group_id,
                attempt,
                str(e),
            )
    raise InstantiationFailed(group.group_id, retries + 1, last_error)
