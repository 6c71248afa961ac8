"""Shared plumbing: error types, canonical JSON output, bounded parallelism."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
U = TypeVar("U")


class ContractViolation(ValueError):
    """An operation was called with inputs that break its contract.

    Carries an optional ``report`` attribute with the violation details
    when the contract was checked by a validator.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class FormatError(ValueError):
    """An interchange document is malformed or cannot be parsed."""


def thread_count() -> int:
    """Worker count from DIALG_THREADS; unset, empty or invalid means 1."""
    raw = os.environ.get("DIALG_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def parallel_map(fn: Callable[[T], U], items: Sequence[T]) -> list[U]:
    """Map ``fn`` over ``items``, optionally on a thread pool.

    Results always come back in input order, so callers are bit-identical
    for every DIALG_THREADS setting.
    """
    n = thread_count()
    if n <= 1 or len(items) < 2 * n:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def dump_json(doc, pretty: bool = False) -> str:
    """Serialize a report document deterministically (sorted keys, utf-8)."""
    if pretty:
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    return json.dumps(doc, separators=(",", ":"), sort_keys=True, ensure_ascii=False) + "\n"


def load_json_file(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON in {path}: {exc}") from exc


def require(condition: bool, message: str) -> None:
    if not condition:
        raise ContractViolation(message)


def expect(doc: dict, key: str, kind: type | tuple[type, ...], where: str):
    """Fetch a required, type-checked field from an interchange document."""
    if not isinstance(doc, dict) or key not in doc:
        raise FormatError(f"{where}: missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise FormatError(f"{where}: field {key!r} has wrong type")
    return value
