"""Exact generalized complex geometry on real flag manifolds of split real forms."""

from __future__ import annotations

__version__ = "0.1.0"
