"""Steiner operations on ideal lattices of finite posets."""

from .types import ErrorKind, OutputMode, SelftestScope, Verdict

__version__ = "0.1.0"

__all__ = ["ErrorKind", "OutputMode", "SelftestScope", "Verdict", "__version__"]
