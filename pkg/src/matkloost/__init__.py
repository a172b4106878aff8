"""Twisted matrix Kloosterman sums, Hall-Littlewood machinery and identity checks."""

__version__ = "0.1.0"
