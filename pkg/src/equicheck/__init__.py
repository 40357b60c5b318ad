"""Exact verification of Ga x| Gm actions on the plane and del Pezzo surfaces."""

__version__ = "0.1.0"
