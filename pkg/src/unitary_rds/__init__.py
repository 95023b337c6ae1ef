"""Exact verification toolkit for relative discrete series of U(E/F) \\ GL_2n(E)."""
from __future__ import annotations

__version__ = "0.1.0"
