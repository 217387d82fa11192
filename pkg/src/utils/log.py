# src/utils/log.py

import sys

from .config import VERBOSE


def log(tag: str, message: str) -> None:
    if VERBOSE:
        print(f"[{tag}] {message}", file=sys.stderr)


def warn(message: str) -> None:
    print(f"[WARNING] {message}", file=sys.stderr)
