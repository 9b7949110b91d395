"""
Command line interface: `lorcomp gen`, `lorcomp check ...`, `lorcomp experiment ...`.
"""

from .config import RunConfig
from .main import cli, cli_app

__all__ = ["RunConfig", "cli", "cli_app"]
