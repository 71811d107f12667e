import os
import sys
from pathlib import Path

# --- BASE DIRECTORY ---
# Define the root of the project.
BASE_DIR = Path(__file__).resolve().parent
os.environ.setdefault('ZONOCALC_BASE_DIR', str(BASE_DIR))

# --- Imports ---
from zonocalc.cli import main

# ============================================================
# Main
# ============================================================

if __name__ == "__main__":
    sys.exit(main())
