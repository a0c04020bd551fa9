from .assembly import LinearSystem, assemble_load, assemble_mass, assemble_stiffness, reduce_dirichlet
from .fields import DiscreteField, P2Field, nodal_interpolant, quadratic_interpolant
from .norms import DataNorms, energy_error, local_energy_error_sq, weighted_norms
from .poisson import solve_poisson
from .quadrature import quadrature_rule

__all__ = [
    "LinearSystem",
    "assemble_load",
    "assemble_mass",
    "assemble_stiffness",
    "reduce_dirichlet",
    "DiscreteField",
    "P2Field",
    "nodal_interpolant",
    "quadratic_interpolant",
    "DataNorms",
    "energy_error",
    "local_energy_error_sq",
    "weighted_norms",
    "solve_poisson",
    "quadrature_rule",
]
