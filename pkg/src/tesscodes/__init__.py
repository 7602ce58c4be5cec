"""Subsystem codes on hypergraphs built from coloured surface tessellations."""
from __future__ import annotations

__version__ = "0.1.0"
