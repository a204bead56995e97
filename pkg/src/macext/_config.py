"""Enumeration caps shared by every module.

All exhaustive sweeps in the package are exponential in the field size and
ambient dimension, so each one is guarded.  The environment variable
``MACEXT_CAP_SCALE`` multiplies every default cap (e.g. ``MACEXT_CAP_SCALE=4``).
"""

from __future__ import annotations

import os


class CapExceeded(RuntimeError):
    """An enumeration would exceed its configured cap."""


class BudgetExceeded(RuntimeError):
    """A brute-force search would exceed its candidate budget."""


def _scale() -> int:
    raw = os.environ.get("MACEXT_CAP_SCALE", "1")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"MACEXT_CAP_SCALE must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"MACEXT_CAP_SCALE must be a positive integer, got {raw!r}")
    return value


def field_cap() -> int:
    return 16 * _scale()


def subspace_cap() -> int:
    return 10**6 * _scale()


def point_cap() -> int:
    """Largest number of module points an exhaustive sweep may visit."""
    return 2**20 * _scale()


def group_cap() -> int:
    """Largest number of ell x ell matrices a GL enumeration may filter."""
    return 2**16 * _scale()


def check_cap(count: int, cap: int, what: str) -> None:
    if count > cap:
        raise CapExceeded(f"{what}: {count} exceeds cap {cap} (raise MACEXT_CAP_SCALE)")
