#!/usr/bin/env python3
"""
Run every test file of geometric-normalization one by one

Usage: python tests/run_all_tests.py [--slow] [pattern ...]

--slow sets GEONORM_SLOW=1 so the high-precision constructions run too.
Patterns select test files by substring, e.g. "dynamics" or "cli".
"""

import os
import subprocess
import sys
import time
from pathlib import Path
from typing import Dict, List, Tuple

# Bottom-up: series before the code built on them
ORDER = [
    'test_series.py',
    'test_arithmetic.py',
    'test_dynamics.py',
    'test_involutions.py',
    'test_areapreserving.py',
    'test_constructions.py',
    'test_family.py',
    'test_diagnostics.py',
    'test_serialization.py',
    'test_cli.py',
]


def collect(tests_dir: Path, patterns: List[str]) -> List[Path]:
    """Known files in ORDER first, then any other test_*.py"""
    found = sorted(path.name for path in tests_dir.glob('test_*.py'))
    names = [name for name in ORDER if name in found] + [name for name in found if name not in ORDER]
    if patterns:
        names = [name for name in names if any(pattern in name for pattern in patterns)]
    return [tests_dir / name for name in names]


def run_test(test_file: Path, env: Dict[str, str]) -> Tuple[bool, float]:
    print(f"\n{'='*70}")
    print(f"Running: {test_file.name}")
    print('='*70)

    started = time.perf_counter()
    result = subprocess.run([sys.executable, str(test_file)], cwd=test_file.parent.parent, env=env)
    return result.returncode == 0, time.perf_counter() - started


def main(argv: List[str]) -> int:
    slow = '--slow' in argv
    patterns = [arg for arg in argv if arg != '--slow']
    env = dict(os.environ)
    if slow:
        env['GEONORM_SLOW'] = '1'

    test_files = collect(Path(__file__).parent, patterns)
    if not test_files:
        print(f"No test files match {patterns}")
        return 1

    print(f"Running {len(test_files)} test files{' (slow runs enabled)' if slow else ''}")
    results = {path.name: run_test(path, env) for path in test_files}

    print(f"\n{'='*70}")
    print("TEST SUMMARY")
    print('='*70)
    for name, (success, seconds) in results.items():
        print(f"  {'PASS' if success else 'FAIL'}: {name} ({seconds:.1f}s)")

    passed = sum(1 for success, _ in results.values() if success)
    total = len(results)
    print(f"\n{passed}/{total} test files passed")
    return 0 if passed == total else 1


if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
