"""Exact-arithmetic toolkit for finite-dimensional quasi-bialgebras.

Everything is computed over the rationals with structure constants as
the universal input: axiom verification, the preantipode linear system,
gauge twisting, quasi-antipode recovery, and the coinvariants
decomposition of quasi-Hopf bimodules.
"""

from .algebra import Element, FinDimAlgebra, invert_element
from .errors import QhopfError
from .preantipode import Preantipode, solve_preantipode
from .quasiantipode import QuasiAntipode, recover_quasi_antipode_via_xi
from .quasibialgebra import (
    GaugeTransformation,
    QuasiBialgebra,
    VerificationReport,
    twist,
    verify_quasi_bialgebra,
)

__all__ = [
    "Element",
    "FinDimAlgebra",
    "GaugeTransformation",
    "Preantipode",
    "QhopfError",
    "QuasiAntipode",
    "QuasiBialgebra",
    "VerificationReport",
    "invert_element",
    "recover_quasi_antipode_via_xi",
    "solve_preantipode",
    "twist",
    "verify_quasi_bialgebra",
]

__version__ = "0.1.0"
