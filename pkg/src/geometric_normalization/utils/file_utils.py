"""
File Utilities - Reading input documents and writing results
"""

import json
import logging
from pathlib import Path
from typing import Any, Optional

import chardet

from geometric_normalization.exceptions import SeriesFormatError

logger = logging.getLogger(__name__)


def detect_file_encoding(file_path: str) -> str:
    """
    Detect the encoding of a text file

    Args:
        file_path: Path to the file

    Returns:
        Detected encoding name
    """
    try:
        with open(file_path, 'rb') as f:
            raw_data = f.read(10000)  # Read first 10KB
            result = chardet.detect(raw_data)
            encoding = result.get('encoding') or 'utf-8'
            confidence = result.get('confidence', 0)

            logger.debug(f"Detected encoding for {file_path}: {encoding} (confidence: {confidence:.2f})")

            # ASCII JSON is detected with low confidence on short files
            if confidence < 0.5:
                return 'utf-8'

            return encoding
    except OSError as e:
        logger.warning(f"Error detecting encoding for {file_path}: {e}")
        return 'utf-8'


def safe_read_text_file(file_path: str, encoding: Optional[str] = None) -> str:
    """
    Read a text file with encoding detection and fallbacks

    Raises:
        FileNotFoundError: the file does not exist
    """
    if not Path(file_path).exists():
        logger.error(f"Input file does not exist: {file_path}")
        raise FileNotFoundError(f"Input file does not exist: {file_path}")
    if not encoding:
        encoding = detect_file_encoding(file_path)

    try:
        with open(file_path, 'r', encoding=encoding) as f:
            return f.read()
    except (UnicodeDecodeError, LookupError):
        for fallback in ['utf-8', 'latin-1']:
            if fallback != encoding:
                try:
                    with open(file_path, 'r', encoding=fallback) as f:
                        logger.warning(f"Used fallback encoding {fallback} for {file_path}")
                        return f.read()
                except UnicodeDecodeError:
                    continue

        with open(file_path, 'r', encoding='utf-8', errors='ignore') as f:
            logger.warning(f"Reading {file_path} with error handling")
            return f.read()


def read_json_document(file_path: str) -> Any:
    """
    Parse a JSON input file

    Raises:
        SeriesFormatError: the content is not valid JSON
    """
    text = safe_read_text_file(file_path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        logger.error(f"Malformed JSON in {file_path}: {e}")
        raise SeriesFormatError(f"Malformed JSON in {file_path}: line {e.lineno}, column {e.colno}: {e.msg}")


def ensure_directory_exists(directory_path: str) -> bool:
    """
    Ensure a directory exists, creating it if necessary

    Returns:
        True if directory exists or was created successfully
    """
    try:
        Path(directory_path).mkdir(parents=True, exist_ok=True)
        return True
    except OSError as e:
        logger.error(f"Error creating directory {directory_path}: {e}")
        return False


def write_text_output(text: str, output_path: Optional[str] = None) -> None:
    """Write to a file, creating its directory, or to stdout when no path is given."""
    if not output_path:
        print(text)
        return
    path = Path(output_path)
    if str(path.parent) and not ensure_directory_exists(str(path.parent)):
        raise OSError(f"Cannot create output directory {path.parent}")
    path.write_text(text + "\n", encoding='utf-8')
    logger.info(f"Wrote {output_path}")
