from .pcg import SolveStats, SparseSym, as_sparse_sym, pcg_solve, solve_spd

__all__ = ["SolveStats", "SparseSym", "as_sparse_sym", "pcg_solve", "solve_spd"]
