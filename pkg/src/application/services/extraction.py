"""Prompt de extracción y parser de listas de features."""

import re
from typing import List, NamedTuple, Optional

from src.domain.entities.bug_artifact import BugArtifact
from src.domain.entities.feature import Feature, FeatureOrigin, normalize_description
from src.domain.entities.feature_group import FeatureGroup, GroupSource
from src.domain.exceptions import NoFeaturesFound

FEATURE_STEM = "The code should"
NOT_AVAILABLE = "(not available)"

EXTRACTION_TEMPLATE = """[Input]
A bug-triggering program, its corresponding bug report, and the root cause of the bug described in the fix history.

bug report:
{report}

bug-triggering program:
```c
{poc}
```

root cause: {root_cause}

[Task]
Extract and describe key features that a program need in order to reproduce the bug described in the input.

[Steps]
1. Read the bug report and the root cause description to understand the observed failure and why the bug occurs.
2. Analyze the bug report, root cause, and the program together to determine the key features relevant to triggering the issue.
3. Extract the key features from the input.

[OutputExample]
The code should...
"""

_NUMBERED = re.compile(r"^\s*\d+[.)]\s+(.*\S)\s*$")
_BULLET = re.compile(r"^\s*[-*•+]\s+(.*\S)\s*$")
_FENCE = re.compile(r"^\s*```")
_LABEL = re.compile(r"^(?:feature\s*\d+\s*[:.\-]\s*)", re.IGNORECASE)
_EMPHASIS = re.compile(r"(\*\*|__)")
_LINE_MENTION = re.compile(
    r"\blines?\s+(\d+)(?:\s*(?:-|–|to)\s*(\d+))?", re.IGNORECASE
)


class ParsedItem(NamedTuple):
    description: str
    witness: str


def build_extraction_prompt(artifact: BugArtifact) -> str:
    """Renderiza el prompt de extracción para un artefacto (determinístico)."""
    return EXTRACTION_TEMPLATE.format(
        report=artifact.report_text.strip() or NOT_AVAILABLE,
        poc=artifact.poc_source.rstrip() or NOT_AVAILABLE,
        root_cause=artifact.fix_summary.strip() or NOT_AVAILABLE,
    )


def repair_description(text: str) -> str:
    """Limpia marcas de formato y garantiza el prefijo 'The code should'."""
    text = _EMPHASIS.sub("", text).strip()
    text = _LABEL.sub("", text).strip()
    if text.lower().startswith(FEATURE_STEM.lower()):
        return FEATURE_STEM + text[len(FEATURE_STEM):]
    for partial in ("code should", "should"):
        if text.lower().startswith(partial):
            return f"{FEATURE_STEM}{text[len(partial):]}"
    if len(text) > 1 and not text[1].isupper():
        text = text[0].lower() + text[1:]
    return f"{FEATURE_STEM} {text}"


def _detect_mode(lines: List[str]) -> str:
    in_fence = False
    has_bullet = False
    for line in lines:
        if _FENCE.match(line):
            in_fence = not in_fence
            continue
        if in_fence:
            continue
        if _NUMBERED.match(line):
            return "numbered"
        if _BULLET.match(line):
            has_bullet = True
    return "bullet" if has_bullet else "paragraph"


def parse_feature_items(text: str) -> List[ParsedItem]:
    """Divide una respuesta en items con su testigo opcional.

    Acepta listas numeradas, viñetas o párrafos separados por líneas en
    blanco, en ese orden de precedencia. Un bloque cercado que sigue a un
    item es su testigo.
    """
    lines = text.splitlines()
    mode = _detect_mode(lines)
    marker = {"numbered": _NUMBERED, "bullet": _BULLET}.get(mode)

    items: List[List[str]] = []
    witnesses: List[str] = []
    fence_lines: Optional[List[str]] = None
    open_item = False
    paragraph: List[str] = []

    def close_paragraph() -> None:
        if paragraph:
            joined = " ".join(paragraph).strip()
            if not joined.endswith(":"):
                items.append([joined])
                witnesses.append("")
            paragraph.clear()

    for line in lines:
        if _FENCE.match(line):
            if fence_lines is None:
                if marker is None:
                    close_paragraph()
                fence_lines = []
            else:
                block = "\n".join(fence_lines)
                if items and not witnesses[-1] and block.strip():
                    witnesses[-1] = block
                fence_lines = None
                open_item = False
            continue
        if fence_lines is not None:
            fence_lines.append(line)
            continue

        if marker is None:
            if line.strip():
                paragraph.append(line.strip())
            else:
                close_paragraph()
            continue

        match = marker.match(line)
        if match:
            items.append([match.group(1)])
            witnesses.append("")
            open_item = True
        elif not line.strip():
            open_item = False
        elif open_item:
            items[-1].append(line.strip())

    if marker is None:
        close_paragraph()

    parsed = []
    for parts, witness in zip(items, witnesses):
        description = normalize_description(" ".join(parts))
        if description:
            parsed.append(ParsedItem(repair_description(description), witness))
    return parsed


def witness_from_poc(description: str, poc_source: str) -> str:
    """Rango de líneas del PoC más chico mencionado en la descripción."""
    if not poc_source:
        return ""
    poc_lines = poc_source.splitlines()
    best = None
    for match in _LINE_MENTION.finditer(description):
        start = int(match.group(1))
        end = int(match.group(2) or start)
        if start < 1 or end < start or end > len(poc_lines):
            continue
        if best is None or (end - start) < (best[1] - best[0]):
            best = (start, end)
    if best is None:
        return ""
    return "\n".join(poc_lines[best[0] - 1 : best[1]])


def parse_extraction_response(
    text: str, bug_id: str, poc_source: str = ""
) -> FeatureGroup:
    """Convierte la respuesta del modelo en un grupo recolectado.

    Raises:
        NoFeaturesFound: Si no se reconoce ningún item
    """
    origin = FeatureOrigin.extracted(bug_id)
    features = []
    seen = set()
    for item in parse_feature_items(text):
        witness = item.witness or witness_from_poc(item.description, poc_source)
        feature = Feature.create(item.description, witness=witness, origin=origin)
        if feature.id in seen:
            continue
        seen.add(feature.id)
        features.append(feature)

    if not features:
        raise NoFeaturesFound(f"No se encontraron features en la respuesta del bug {bug_id}")
    return FeatureGroup(features=features, source=GroupSource.COLLECTED, parent_bug=str(bug_id))
