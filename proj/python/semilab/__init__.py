"""Grid semigroups: uncertain shift (dilation), G-heat, and their diagnostics."""

from ._core import (
    CFLViolation,
    DilationSemigroup,
    DomainError,
    Extension,
    GHeatConfig,
    GHeatScheme,
    GHeatSemigroup,
    Grid,
    GridFunction,
    GridMismatch,
    KernelTooWide,
    UsageError,
    dilate,
    dilate_naive,
    fd_evolve,
    gauss_convolve,
    generator_probe,
    lip_constant,
    nisio_evolve,
    run_scenario,
    sample,
    scenarios,
    sup_norm,
    window_radius,
)

__all__ = [
    "CFLViolation",
    "DilationSemigroup",
    "DomainError",
    "Extension",
    "GHeatConfig",
    "GHeatScheme",
    "GHeatSemigroup",
    "Grid",
    "GridFunction",
    "GridMismatch",
    "KernelTooWide",
    "UsageError",
    "dilate",
    "dilate_naive",
    "fd_evolve",
    "gauss_convolve",
    "generator_probe",
    "lip_constant",
    "nisio_evolve",
    "run_scenario",
    "sample",
    "scenarios",
    "sup_norm",
    "window_radius",
]
