"""Settings configuration for anisoest using Pydantic and environment variables."""

from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings


class SolverSettings(BaseSettings):
    """Linear solver configuration."""

    method: Literal["cg", "direct", "auto"] = Field(
        default="auto", description="cg, direct sparse factorization, or cg with direct fallback"
    )
    tol: float = Field(default=1e-10, description="Relative residual tolerance for PCG")
    maxit_factor: float = Field(default=50.0, description="maxit = maxit_factor * sqrt(n)")
    maxit: Optional[int] = Field(default=None, description="Hard iteration cap overriding maxit_factor")

    class Config:
        env_prefix = "ANISOEST_SOLVER_"
        env_file = ".env"
        env_file_encoding = "utf-8"


class EstimatorSettings(BaseSettings):
    """Constants of the node classification, short-edge rule and path extraction."""

    c0: float = Field(default=0.5, description="a << b means a < c0*b in the anisotropic-node test")
    c_short: float = Field(default=0.5, description="Short edge: |S| < c_short*diam(omega_S)")
    c_uni: Optional[float] = Field(default=None, description="min|T| >= c_uni*|omega_z|; None -> 1/(2*max fan size)")
    min_angle_deg: float = Field(default=20.0, description="Regular node: all fan angles above this")
    kappa_h: float = Field(default=2.0, description="Allowed H_z variation factor along a path")
    f_approx: Literal["lagrange", "average"] = Field(
        default="lagrange", description="f approximation in estimator volume terms"
    )
    diagonal: Literal["sw_ne", "nw_se", "criss_cross"] = Field(
        default="sw_ne", description="Cell split used by the experiment meshes"
    )

    class Config:
        env_prefix = "ANISOEST_ESTIMATOR_"
        env_file = ".env"
        env_file_encoding = "utf-8"


class AnisoSettings(BaseSettings):
    """Main anisoest settings."""

    solver: SolverSettings = Field(default_factory=SolverSettings)
    estimator: EstimatorSettings = Field(default_factory=EstimatorSettings)

    threads: int = Field(default=1, description="Worker threads for independent table rows")
    debug: bool = Field(default=False, description="Enable debug logging")
    desk_max_triangles: int = Field(default=1_000_000, description="Largest mesh run at desk scale")
    output_dir: str = Field(default=".", description="Where table files are written")

    class Config:
        env_prefix = "ANISOEST_"
        env_file = ".env"
        env_file_encoding = "utf-8"


# Global settings instance
settings = AnisoSettings()
