"""Load process-level defaults from environment."""
import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# Paths
PROJECT_ROOT = Path(__file__).resolve().parent.parent
FIXTURES_DIR = Path(os.getenv("FIXTURES_DIR", str(PROJECT_ROOT / "fixtures")))
PUBLISHED_F1_PATH = FIXTURES_DIR / "published_f1.csv"
RESULTS_DIR = Path(os.getenv("RESULTS_DIR", "results"))

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()

# Matrix runs
MATRIX_WORKERS = int(os.getenv("MATRIX_WORKERS", "1"))
MATRIX_SEED = int(os.getenv("MATRIX_SEED", "0"))
# Report precision for f1 values, matching the published tables
REPORT_DECIMALS = 3


def validate_workers(workers: int) -> None:
    """Validate a worker count from env, config or CLI flag."""
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}. Set MATRIX_WORKERS or --workers.")
