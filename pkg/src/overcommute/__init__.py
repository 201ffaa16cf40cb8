"""Exact verification of commutator and relator certificates in free groups,
with a Steinberg-group toolkit and an Alexander-module obstruction check."""

from __future__ import annotations

__version__ = "0.1.0"
