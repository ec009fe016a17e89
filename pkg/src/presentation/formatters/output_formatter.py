"""Formateador de salida para la CLI."""

from typing import Any, Dict

import click
import pandas as pd

from src.domain.entities.campaign import CampaignReport
from src.domain.entities.training_pair import TrainingExportStats


class OutputFormatter:
    """Responsable de formatear la salida de la aplicación."""

    def print_error(self, message: str) -> None:
        """Imprime mensaje de error."""
        click.echo(f"[ERROR] {message}", err=True)

    def print_success(self, message: str) -> None:
        """Imprime mensaje de éxito."""
        click.echo(f"[OK] {message}")

    def print_warning(self, message: str) -> None:
        """Imprime mensaje de advertencia."""
        click.echo(f"[WARNING] {message}")

    def print_info(self, message: str) -> None:
        """Imprime mensaje informativo."""
        click.echo(message)

    def print_extraction_summary(self, summary) -> None:
        click.echo(f"{'='*70}")
        click.echo("RESUMEN DE EXTRACCIÓN")
        click.echo(f"{'='*70}")
        click.echo(f"Bugs leídos: {summary.bugs}")
        click.echo(f"  - Sin historial de fix (parciales): {summary.partial_artifacts}")
        click.echo(f"  - Artefactos omitidos: {summary.skipped_artifacts}")
        click.echo(f"  - Extracciones fallidas: {summary.failed_extractions}")
        click.echo(f"Grupos recolectados: {summary.groups}")
        click.echo(f"Features en el pool: {summary.features}")
        if summary.skipped_artifacts or summary.failed_extractions:
            self.print_warning("Revisa el archivo de log para ver los bugs omitidos")

    def print_training_stats(self, stats: TrainingExportStats, out_path: str) -> None:
        self.print_success(f"Dataset escrito en {out_path}")
        click.echo(f"  - Grupos leídos: {stats.groups_in}")
        click.echo(f"  - Grupos omitidos (< 2 features): {stats.groups_skipped}")
        click.echo(f"  - Pares generados: {stats.pairs_out}")

    def print_campaign_report(self, report: CampaignReport, output_dir: str) -> None:
        """Imprime el resumen de una campaña terminada."""
        stats = report.stats
        click.echo(f"{'='*70}")
        click.echo("RESUMEN DE CAMPAÑA")
        click.echo(f"{'='*70}")
        click.echo(f"Iteraciones: {report.iterations_run} (última {report.final_iteration})")
        click.echo(f"Motivo de fin: {report.stopped_reason}")
        click.echo(f"Programas generados: {stats.generated}")
        click.echo(f"  - Válidos: {stats.valid}")
        click.echo(f"  - Rechazados: {stats.rejects}")
        click.echo(f"  - Colgados: {stats.hangs}  OOM: {stats.ooms}")
        click.echo(f"Crashes: {stats.crashes_total} ({stats.crashes_unique} únicos)")
        click.echo(f"Cobertura: {report.coverage_size} unidades")
        click.echo(f"Valid rate: {report.valid_rate:.2%}  CrashOnValid: {report.crash_on_valid:.2%}")
        if stats.model_failures or stats.instantiation_failures or stats.coverage_failures:
            self.print_warning(
                f"Fallas: modelo {stats.model_failures}, instanciación "
                f"{stats.instantiation_failures}, cobertura {stats.coverage_failures}"
            )
        click.echo(f"\nReportes en {output_dir}")

    def print_crash_table(self, table: pd.DataFrame) -> None:
        if table.empty:
            self.print_info("Sin crashes registrados")
            return
        click.echo(f"{len(table)} bucket(s) únicos de crash:\n")
        for row in table.itertuples(index=False):
            click.echo(f"[{row.kind}] {row.key}")
            click.echo(f"  Primera aparición: iteración {row.first_seen_iteration} (x{row.occurrences})")
            click.echo(f"  Reproducir: {row.reproduce_command}")
            sample = row.sample_stderr.strip().splitlines()
            if sample:
                click.echo(f"  stderr: {sample[0][:120]}")
            click.echo("")

    def print_metrics(self, result: Dict[str, Any]) -> None:
        if not result:
            self.print_warning("No se pidió ninguna métrica")
            return
        coherence = result.get("coherence")
        if coherence:
            click.echo("Coherencia de grupos:")
            click.echo(f"  - Grupos: {coherence['groups']} (sin pares: {coherence['flagged']})")
            click.echo(
                f"  - Redundancia: {coherence['redundancy_mean']:.4f} ± {coherence['redundancy_std']:.4f}"
            )
            click.echo(
                f"  - Diámetro: {coherence['diameter_mean']:.4f} ± {coherence['diameter_std']:.4f}"
            )
        overlap = result.get("jaccard")
        if overlap:
            click.echo(
                f"Jaccard: {overlap['value']:.4%} ({overlap['overlap']} / {overlap['union']})"
            )
        validity = result.get("validity")
        if validity:
            click.echo(
                f"Valid rate: {validity['valid_rate']:.2%}  CrashOnValid: {validity['crash_on_valid']:.2%}"
            )

    def print_connection_result(self, result: Dict[str, Any]) -> None:
        """Imprime resultado de test de conexión."""
        click.echo("Probando endpoints de modelos...")
        for role, endpoint in result["endpoints"].items():
            label = f"{role}: {endpoint['model']} @ {endpoint['base_url']}"
            if endpoint["reachable"]:
                self.print_success(label)
            else:
                self.print_error(f"Sin conexión - {label}")

        if result["tracker_reachable"] is None:
            return
        if result["tracker_reachable"]:
            self.print_success("Conexión con Bugzilla exitosa")
        else:
            self.print_error("Error de conexión con Bugzilla")
