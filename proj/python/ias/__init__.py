"""Improper affine maps: construction, transforms and verification."""

from ._core import (
    Error,
    InputError,
    Mesh,
    NumericalError,
    detect_period,
    examples,
    gallery,
    run_cli,
    singular_curves,
    transform,
    verify,
)

__all__ = [
    "Error",
    "InputError",
    "Mesh",
    "NumericalError",
    "detect_period",
    "examples",
    "gallery",
    "run_cli",
    "singular_curves",
    "transform",
    "verify",
]
