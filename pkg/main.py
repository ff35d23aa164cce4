"""Entry: run, validate, aggregate, synth or plot from the command line."""
import sys

from src.config import LOG_LEVEL
from src.logging_utils import configure_logging


def main() -> None:
    configure_logging(LOG_LEVEL)
    from src.harness.cli import run_cli

    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
