"""Comandos de la CLI separados del main."""

import json
import logging
import sys
from pathlib import Path

import click
from pydantic import ValidationError

from src.domain.exceptions import ForjadorError, HarnessError
from src.infrastructure.settings import Settings

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_HARNESS = 3

LOG_LEVEL_OPTION = click.option(
    "--log-level",
    default="INFO",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"]),
)


def safe_init_settings() -> Settings:
    """Inicializa Settings; ante valores inválidos del entorno termina con código 1."""
    try:
        return Settings()
    except ValidationError as e:
        click.echo("[ERROR] Configuracion de entorno invalida.", err=True)
        for error in e.errors():
            env_var = str(error["loc"][0]).upper() if error["loc"] else "?"
            click.echo(f"  - {env_var}: {error['msg']}", err=True)
        click.echo("\nRevise el archivo .env (ejemplo: cp .env.example .env).", err=True)
        sys.exit(EXIT_ERROR)


def setup_logging(settings: Settings, level: str = "INFO"):
    """Configura el sistema de logging."""
    logs_dir = Path(settings.logs_directory)
    logs_dir.mkdir(parents=True, exist_ok=True)

    log_file = logs_dir / "forjador.log"

    # La salida a consola se maneja por OutputFormatter
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.FileHandler(str(log_file), encoding="utf-8")],
        force=True,
    )

    logging.getLogger("urllib3").setLevel(logging.WARNING)
    logging.getLogger("requests").setLevel(logging.WARNING)


@click.command()
@click.option("--fixtures", type=click.Path(), help="Directorio local de bugs (modo offline)")
@click.option("--limit", "-n", default=100, show_default=True, help="Máximo de bugs")
@click.option("--out-pool", required=True, help="Archivo de salida del pool de features")
@click.option("--out-groups", help="Archivo de salida de los grupos recolectados")
@click.option("--product", help="Producto de Bugzilla (por defecto gcc)")
@click.option("--component", help="Componente de Bugzilla")
@LOG_LEVEL_OPTION
def extract_command(fixtures, limit, out_pool, out_groups, product, component, log_level):
    """Extrae features de bugs históricos y arma el pool global."""
    from src.application.use_cases.extract_features import ExtractFeaturesUseCase
    from src.infrastructure.bugzilla.bugzilla_client import BugzillaClient
    from src.infrastructure.bugzilla.fixture_source import FixtureArtifactSource
    from src.infrastructure.llm.llm_client import LLMClient
    from src.presentation.formatters.output_formatter import OutputFormatter

    settings = safe_init_settings()
    setup_logging(settings, log_level)
    formatter = OutputFormatter()

    try:
        source = FixtureArtifactSource(fixtures) if fixtures else BugzillaClient(settings)
        query = {k: v for k, v in {"product": product, "component": component}.items() if v}
        summary = ExtractFeaturesUseCase(source, LLMClient(settings)).execute(
            limit, out_pool, out_groups, query or None
        )
        formatter.print_extraction_summary(summary)
    except ForjadorError as e:
        formatter.print_error(str(e))
        formatter.print_info("Revisa el archivo de log para más detalles técnicos")
        sys.exit(EXIT_ERROR)


@click.command()
@click.option("--groups", "-g", required=True, help="Archivo de grupos recolectados")
@click.option("--out", "-o", required=True, help="Archivo JSONL de salida")
@click.option("--seed", default=0, show_default=True, help="Semilla de las particiones")
@LOG_LEVEL_OPTION
def traindata_command(groups, out, seed, log_level):
    """Genera pares de predicción enmascarada para entrenar el modelo de grupos."""
    from src.application.use_cases.build_training_data import BuildTrainingDataUseCase
    from src.presentation.formatters.output_formatter import OutputFormatter

    setup_logging(safe_init_settings(), log_level)
    formatter = OutputFormatter()

    try:
        stats = BuildTrainingDataUseCase().execute(groups, out, seed=seed)
        formatter.print_training_stats(stats, out)
    except ForjadorError as e:
        formatter.print_error(str(e))
        sys.exit(EXIT_ERROR)


@click.command()
@click.option("--config", "-c", "config_path", required=True, help="Documento JSON de campaña")
@click.option("--resume", is_flag=True, help="Reanuda desde el último snapshot")
@click.option("--explain-config", is_flag=True, help="Muestra la configuración efectiva y sale")
@LOG_LEVEL_OPTION
def fuzz_command(config_path, resume, explain_config, log_level):
    """Ejecuta una campaña de fuzzing guiada por cobertura."""
    from src.application.use_cases.run_campaign import RunCampaignUseCase
    from src.infrastructure.settings import load_campaign_config
    from src.presentation.formatters.output_formatter import OutputFormatter

    settings = safe_init_settings()
    formatter = OutputFormatter()

    try:
        config = load_campaign_config(config_path)
    except ForjadorError as e:
        formatter.print_error(str(e))
        sys.exit(EXIT_ERROR)

    if explain_config:
        click.echo(json.dumps(config.model_dump(mode="json"), indent=2, sort_keys=True))
        return

    setup_logging(settings, log_level)
    try:
        report = RunCampaignUseCase(config, settings).execute(resume=resume)
        formatter.print_campaign_report(report, config.output_dir)
    except HarnessError as e:
        formatter.print_error(f"Error fatal del arnés: {e}")
        formatter.print_info(f"Snapshot guardado en {config.output_dir}; use --resume")
        sys.exit(EXIT_HARNESS)
    except ForjadorError as e:
        formatter.print_error(str(e))
        sys.exit(EXIT_ERROR)


@click.command()
@click.option("--campaign-dir", "-d", required=True, help="Directorio de la campaña")
def triage_command(campaign_dir):
    """Lista los buckets únicos de crash de una campaña."""
    from src.application.use_cases.triage_crashes import TriageCrashesUseCase
    from src.presentation.formatters.output_formatter import OutputFormatter

    formatter = OutputFormatter()
    try:
        table = TriageCrashesUseCase().execute(campaign_dir)
        formatter.print_crash_table(table)
    except ForjadorError as e:
        formatter.print_error(str(e))
        sys.exit(EXIT_ERROR)


@click.command()
@click.option("--groups", "-g", help="Archivo de grupos para coherencia")
@click.option("--tau", default=0.95, show_default=True, type=float, help="Umbral de casi duplicados")
@click.option(
    "--provider",
    default="endpoint",
    type=click.Choice(["endpoint", "hash"]),
    show_default=True,
    help="Proveedor de embeddings",
)
@click.option("--dim", default=16, show_default=True, help="Dimensión del proveedor hash")
@click.option("--coverage-a", help="coverage.json de la primera campaña")
@click.option("--coverage-b", help="coverage.json de la segunda campaña")
@click.option("--campaign", "campaign_dir", help="Directorio de campaña para validez")
@click.option("--out", "-o", help="Archivo JSONL de salida")
@LOG_LEVEL_OPTION
def metrics_command(groups, tau, provider, dim, coverage_a, coverage_b, campaign_dir, out, log_level):
    """Calcula redundancia, diámetro, Jaccard y validez."""
    from src.application.use_cases.compute_metrics import ComputeMetricsUseCase
    from src.infrastructure.llm.hash_embedding import HashEmbeddingProvider
    from src.infrastructure.llm.llm_client import LLMClient
    from src.presentation.formatters.output_formatter import OutputFormatter

    settings = safe_init_settings()
    setup_logging(settings, log_level)
    formatter = OutputFormatter()

    if bool(coverage_a) != bool(coverage_b):
        formatter.print_error("--coverage-a y --coverage-b se usan juntos")
        sys.exit(EXIT_ERROR)

    try:
        embedder = None
        if groups:
            embedder = HashEmbeddingProvider(dim=dim) if provider == "hash" else LLMClient(settings)
        result = ComputeMetricsUseCase(embedder).execute(
            groups_path=groups,
            coverage_a=coverage_a,
            coverage_b=coverage_b,
            campaign_dir=campaign_dir,
            tau=tau,
            out_path=out,
        )
        formatter.print_metrics(result)
    except (ForjadorError, ValueError) as e:
        formatter.print_error(str(e))
        sys.exit(EXIT_ERROR)


@click.command()
@click.option("--skip-tracker", is_flag=True, help="No probar el Bugzilla configurado")
def test_connection_command(skip_tracker):
    """Prueba la conexión con los endpoints de modelos y el tracker."""
    from src.application.use_cases.test_connection import TestConnectionUseCase
    from src.infrastructure.bugzilla.bugzilla_client import BugzillaClient
    from src.infrastructure.llm.llm_client import LLMClient
    from src.presentation.formatters.output_formatter import OutputFormatter

    settings = safe_init_settings()
    formatter = OutputFormatter()

    try:
        tracker = None if skip_tracker else BugzillaClient(settings)
        result = TestConnectionUseCase(LLMClient(settings), tracker).execute()
        formatter.print_connection_result(result)
    except ForjadorError as e:
        formatter.print_error(f"Error: {str(e)}")
        sys.exit(EXIT_ERROR)
    if not result["all_ok"]:
        sys.exit(EXIT_ERROR)
