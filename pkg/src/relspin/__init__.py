"""Relativistic spin operators for Dirac particles and their expectation values
on hydrogen-like ground states."""

__version__ = "0.1.0"

from relspin.dirac import PhysicalConstants  # noqa: E402
from relspin.operators import SpinKind, spin_matrix, spin_vector  # noqa: E402
from relspin.quadrature import GridConfig  # noqa: E402

__all__ = ["GridConfig", "PhysicalConstants", "SpinKind", "__version__", "spin_matrix", "spin_vector"]
