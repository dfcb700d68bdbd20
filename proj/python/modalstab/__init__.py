"""Spectral controllability and stabilizability analysis of the 1-D
advection-diffusion-reaction equation.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports its public surface.
"""

from ._core import (
    ConfigError,
    ModalstabError,
    NotStateStabilizableError,
    __version__,
    analyze,
    coefficient,
    critical_k,
    eigenvalue,
    simulate,
    sweep,
    synthesize,
)

__all__ = [
    "ConfigError",
    "ModalstabError",
    "NotStateStabilizableError",
    "__version__",
    "analyze",
    "coefficient",
    "critical_k",
    "eigenvalue",
    "simulate",
    "sweep",
    "synthesize",
]
