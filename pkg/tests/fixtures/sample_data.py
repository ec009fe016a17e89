"""Sample data for testing."""
from pathlib import Path
from typing import List, Optional

from faker import Faker

from src.domain.entities.bug_artifact import BugArtifact
from src.domain.entities.feature import Feature, FeatureOrigin
from src.domain.entities.feature_group import FeatureGroup, GroupSource
from src.domain.entities.feature_pool import FeaturePool

FLEX_STRUCT = "The code should declare a struct with a flexible array member."
PASS_BY_VALUE = "The code should pass the struct by value to a function."
BACKWARD_GOTO = "The code should use a goto that jumps backwards into a loop body."

FLEX_STRUCT_ID = "634e38716018c993"
PASS_BY_VALUE_ID = "7b4eb8cf4e1a7600"
BACKWARD_GOTO_ID = "5b196d59d1bbc307"

SAMPLE_REPORT = (
    "GCC ICEs in expand_expr when a struct with a flexible array member is passed by value."
)
SAMPLE_POC = "struct S { int n; int a[]; };\nvoid f(struct S s);\nvoid g(struct S *p) { f(*p); }\n"
SAMPLE_FIX = (
    "The master branch has been updated by Jane Doe:\n\n"
    "expr.cc: Handle BLKmode copies of flexible array structs."
)

# Respuesta de extracción en lista numerada, con testigo cercado en el primer item
SAMPLE_EXTRACTION_RESPONSE = """Here are the key features:

1. The code should declare a struct with a flexible array member.
```c
struct S { int n; int a[]; };
```
2. The code should pass the struct by value to a function (see line 3).
3. **Feature 3:** use a goto that jumps backwards into a loop body.
"""

CPP_PROGRAM = """#include <vector>
template <typename T> struct Box { T v; };
int main() { Box<int> b{1}; return b.v - 1; }
"""

C_PROGRAM = """struct S { int n; int a[]; };
void f(struct S s) { (void)s; }
int main(void) { return 0; }
"""


def sample_features() -> List[Feature]:
    return [
        Feature.create(FLEX_STRUCT, witness="struct S { int n; int a[]; };",
                       origin=FeatureOrigin.extracted("101")),
        Feature.create(PASS_BY_VALUE, origin=FeatureOrigin.extracted("101")),
        Feature.create(BACKWARD_GOTO, origin=FeatureOrigin.extracted("202")),
    ]


def sample_group(source: GroupSource = GroupSource.COLLECTED) -> FeatureGroup:
    return FeatureGroup(features=sample_features(), source=source, parent_bug="101")


def sample_artifact(fix_summary: str = SAMPLE_FIX) -> BugArtifact:
    return BugArtifact(
        bug_id="101",
        report_text=SAMPLE_REPORT,
        poc_source=SAMPLE_POC,
        fix_summary=fix_summary,
    )


def generated_features(count: int, seed: int = 0, origin: Optional[FeatureOrigin] = None) -> List[Feature]:
    """Features distintas con texto variado (incluye caracteres no ASCII)."""
    fake = Faker(["en_US", "es_ES"])
    fake.seed_instance(seed)
    features = []
    for index in range(count):
        description = f"The code should {fake.sentence(nb_words=8).rstrip('.').lower()} #{index}."
        witness = "" if index % 3 else f"int v{index} = {fake.random_int(0, 999)}; /* {fake.word()} */"
        features.append(Feature.create(description, witness=witness, origin=origin))
    return features


def generated_pool(count: int, seed: int = 0) -> FeaturePool:
    return FeaturePool(generated_features(count, seed))


def create_bug_fixture(
    directory: Path,
    bug_id: str,
    report: Optional[str] = SAMPLE_REPORT,
    poc: Optional[str] = SAMPLE_POC,
    fix: Optional[str] = SAMPLE_FIX,
    poc_name: str = "poc.c",
) -> Path:
    """Create a bug directory with the given files; None leaves a file out."""
    bug_dir = directory / bug_id
    bug_dir.mkdir(parents=True, exist_ok=True)
    for name, content in (("report.txt", report), (poc_name, poc), ("fix.txt", fix)):
        if content is not None:
            (bug_dir / name).write_text(content, encoding="utf-8")
    return bug_dir
