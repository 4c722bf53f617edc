"""
setuptools shim for geometric-normalization.

Metadata, dependencies and the geonorm console script live in pyproject.toml;
this file only serves tools that still call setup.py directly.
"""

from setuptools import setup

setup()
