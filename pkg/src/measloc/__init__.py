"""Finite models of the duality between measure spaces and measurable locales.

Everything is exact: rationals and Gaussian rationals, finite lattices,
finite spaces.  See the README for the command line.
"""

from .cvna import Cvna, CvnaHom, PredualElement, chi_iso, mu_iso, proj_alg, step
from .duality import epsilon, lifting, ml, spec, tm
from .ems import EnhancedMeasurableSpace, Measure, PreMap, eq_ae, weak_eq_ae
from .errors import MeasLocError
from .lattice import FiniteLattice, LatticeMap, chain, powerset
from .measure_equiv import pentad, verify_pentad
from .scalars import GaussianRational
from .stone import ideal_frame, spectrum_points, stone_counit, stone_unit
from .topology import FiniteTopSpace
from .valuations import Valuation, hahn_jordan, validate_valuation

__all__ = [
    "Cvna", "CvnaHom", "EnhancedMeasurableSpace", "FiniteLattice", "FiniteTopSpace",
    "GaussianRational", "LatticeMap", "MeasLocError", "Measure", "PreMap",
    "PredualElement", "Valuation", "chain", "chi_iso", "epsilon", "eq_ae",
    "hahn_jordan", "ideal_frame", "lifting", "ml", "mu_iso", "pentad", "powerset",
    "proj_alg", "spec", "spectrum_points", "step", "stone_counit", "stone_unit",
    "tm", "validate_valuation", "verify_pentad", "weak_eq_ae",
]
