"""Caso de uso para listar los buckets únicos de crash de una campaña."""

import pandas as pd

from src.infrastructure.file_system.campaign_store import CampaignStore, crash_table


class TriageCrashesUseCase:
    """Tabla de crashes únicos ordenada por tipo y clave."""

    def execute(self, campaign_dir: str, export_csv: bool = True) -> pd.DataFrame:
        store = CampaignStore(campaign_dir)
        crashes = list(store.load_state().crash_index.values())
        if export_csv:
            return store.write_crash_table(crashes)
        return crash_table(crashes)
