"""Exact Schur and Bogomolov multipliers of finite-dimensional Lie algebras."""
from .linalg import QQ, GF, FieldSpec, Matrix, Subspace
from .lie import LieAlgebra, validate
from .exterior import ExteriorSquare, schur_multiplier, schur_dim
from .bogomolov import Exhaustive, Sampled, Status, bogomolov_report
from .hopf import presentation, hopf_schur, hopf_bogomolov
from . import catalog

__all__ = [
    "QQ", "GF", "FieldSpec", "Matrix", "Subspace", "LieAlgebra", "validate",
    "ExteriorSquare", "schur_multiplier", "schur_dim", "Exhaustive", "Sampled",
    "Status", "bogomolov_report", "presentation", "hopf_schur", "hopf_bogomolov",
    "catalog",
]
