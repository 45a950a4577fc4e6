"""momentlab: numerical checks for cubic moments of twisted modular L-functions."""

__version__ = "0.1.0"
