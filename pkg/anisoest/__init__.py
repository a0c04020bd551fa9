"""anisoest: lower and upper a posteriori error estimators for P1 Poisson
solutions on structured anisotropic triangulations."""

__version__ = "0.1.0"
