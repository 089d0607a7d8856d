"""Small shared helpers."""

from __future__ import annotations


def fmt_real(value: float) -> str:
    """Render a real with 17 significant digits (exact float64 round-trip)."""
    return format(float(value), ".17g")
