"""pesmin: structural-relaxation optimizers, benchmark surfaces, and band pathways."""

__version__ = "0.1.0"

from . import neb, optimizers, potentials  # noqa: F401
