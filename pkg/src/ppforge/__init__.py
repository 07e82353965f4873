"""Exact computations with pre-Poisson algebras, their bialgebras, r-matrices
and Rota-Baxter operators over the rationals."""

from .algebras import (
    CheckReport,
    PoissonAlgebra,
    PrePoissonAlgebra,
    is_homomorphism,
    is_poisson,
    is_pre_poisson,
    sub_adjacent,
)
from .bialgebra import Cobracket, PrePoissonBialgebra, double_of_bialgebra, is_pre_poisson_bialgebra
from .errors import PPForgeError
from .geometry import SplitDecoration, is_manin_triple, is_phase_space, phase_space
from .rota_baxter import (
    QuadraticRBPrePoisson,
    RBSymplecticPoisson,
    factorizable_from_quadratic_rb,
    quadratic_rb_from_factorizable,
)
from .yang_baxter import RMatrix, canonical_double_r, classify_r

__version__ = "0.1.0"

__all__ = [
    "CheckReport", "PoissonAlgebra", "PrePoissonAlgebra", "is_homomorphism", "is_poisson",
    "is_pre_poisson", "sub_adjacent", "Cobracket", "PrePoissonBialgebra", "double_of_bialgebra",
    "is_pre_poisson_bialgebra", "PPForgeError", "SplitDecoration", "is_manin_triple",
    "is_phase_space", "phase_space", "QuadraticRBPrePoisson", "RBSymplecticPoisson",
    "factorizable_from_quadratic_rb", "quadratic_rb_from_factorizable", "RMatrix",
    "canonical_double_r", "classify_r",
]
