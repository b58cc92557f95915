from .config import ConfigError, DataError, DatasetSpec, RunConfig
from .harness import EvalReport, prequential, run_prequential
from .ingest import ingest
from .report import emit_report

__all__ = [
    "ConfigError",
    "DataError",
    "DatasetSpec",
    "EvalReport",
    "RunConfig",
    "emit_report",
    "ingest",
    "prequential",
    "run_prequential",
]
