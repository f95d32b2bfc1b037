"""
Main entry point for the grpdet command line tool.
"""
import sys
from pathlib import Path

# Add src to Python path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli import cli_main


if __name__ == "__main__":
    sys.exit(cli_main())
