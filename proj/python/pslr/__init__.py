"""Saddle-point solvers built around a power-series Schur-complement
preconditioner with an Arnoldi low-rank correction."""

from ._pslr import (
    ConfigError,
    CsrMatrix,
    DimensionError,
    InvalidInputError,
    ParseError,
    PivotBreakdown,
    PslrPreconditioner,
    SaddleSign,
    SaddleSystem,
    SingularMatrixError,
    adi_solve,
    apply_pslr,
    bandwidth,
    build_pslr,
    cg,
    example1,
    from_triplets,
    gen_banded,
    gmres,
    identity,
    mm_read,
    mm_write,
    pinv_solve,
    random_saddle,
    rcm_order,
    solve_saddle,
    spectral_radius,
)

__all__ = [
    "ConfigError",
    "CsrMatrix",
    "DimensionError",
    "InvalidInputError",
    "ParseError",
    "PivotBreakdown",
    "PslrPreconditioner",
    "SaddleSign",
    "SaddleSystem",
    "SingularMatrixError",
    "adi_solve",
    "apply_pslr",
    "bandwidth",
    "build_pslr",
    "cg",
    "example1",
    "from_triplets",
    "gen_banded",
    "gmres",
    "identity",
    "mm_read",
    "mm_write",
    "pinv_solve",
    "random_saddle",
    "rcm_order",
    "solve_saddle",
    "spectral_radius",
]
