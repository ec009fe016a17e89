"""Reporte final de campaña y su resumen legible."""

from typing import Dict, List, Sequence

from src.application.services.metrics import campaign_validity_stats
from src.domain.entities.campaign import CampaignReport, CampaignState, IterationReport
from src.infrastructure.compiler.coverage import attribute_components


def build_campaign_report(
    state: CampaignState,
    iterations: Sequence[IterationReport],
    iterations_run: int,
    stopped_reason: str,
    component_map: Dict[str, str],
) -> CampaignReport:
    validity = campaign_validity_stats(iterations)
    crashes = sorted(
        state.crash_index.values(),
        key=lambda c: (c.signature.kind.value, c.signature.key),
    )
    return CampaignReport(
        iterations_run=iterations_run,
        final_iteration=state.iteration,
        stopped_reason=stopped_reason,
        stats=state.stats.model_copy(),
        coverage_size=len(state.global_cov),
        coverage_curve=list(state.coverage_curve),
        crashes=crashes,
        valid_rate=validity.valid_rate,
        crash_on_valid=validity.crash_on_valid,
        component_coverage=(
            attribute_components(state.global_cov.covered, component_map) if component_map else {}
        ),
    )


def render_summary(report: CampaignReport) -> str:
    stats = report.stats
    lines: List[str] = [
        "Resumen de campaña",
        "==================",
        f"Iteraciones ejecutadas: {report.iterations_run} (última: {report.final_iteration})",
        f"Motivo de fin: {report.stopped_reason}",
        f"Programas generados: {stats.generated}",
        f"  Válidos: {stats.valid}  Rechazados: {stats.rejects}  Colgados: {stats.hangs}  OOM: {stats.ooms}",
        f"  Crashes: {stats.crashes_total} ({stats.crashes_unique} únicos)",
        f"Fallas de modelo: {stats.model_failures}  de instanciación: {stats.instantiation_failures}"
        f"  de cobertura: {stats.coverage_failures}",
        f"Valid rate: {report.valid_rate:.2%}  CrashOnValid: {report.crash_on_valid:.2%}",
        f"Cobertura: {report.coverage_size} unidades",
    ]
    for component, count in sorted(report.component_coverage.items()):
        lines.append(f"  {component}: {count}")
    if report.crashes:
        lines.append("")
        lines.append("Crashes únicos:")
        for crash in report.crashes:
            lines.append(
                f"  [{crash.signature.kind.value}] {crash.signature.key} "
                f"(iteración {crash.first_seen_iteration}, x{crash.occurrences})"
            )
    return "\n".join(lines) + "\n"
