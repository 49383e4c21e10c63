"""Exact and numeric tools for Frobenius manifolds: A_n singularities, semisimple
germs, spectra, dGBV algebras and their formal potentials, and quantum
cohomology type potentials."""

from .graded_core import DEFAULT_TOL, GradedSeries, GradedVariable
from .germs import SemisimpleGerm, compare_germs, tensor
from .dgbv import DGBVAlgebra, load_catalog, catalog_names
from .mc_frobenius import solve_master, potential, wdvv_check
from .qc_potential import QCSeries, p2_generate

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL", "GradedSeries", "GradedVariable", "SemisimpleGerm", "compare_germs", "tensor",
    "DGBVAlgebra", "load_catalog", "catalog_names", "solve_master", "potential", "wdvv_check",
    "QCSeries", "p2_generate",
]
