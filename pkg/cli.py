#!/usr/bin/env python3
"""
Geometric Normalization - Command Line Interface

Runs the package CLI from a source checkout without installing it.
"""

import sys
from pathlib import Path

# Add src directory to Python path
src_path = Path(__file__).parent / "src"
sys.path.insert(0, str(src_path))

from geometric_normalization.cli import main


if __name__ == "__main__":
    main()
