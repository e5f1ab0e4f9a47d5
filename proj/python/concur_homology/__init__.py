"""Homology of asynchronous transition systems and Petri nets."""

from ._core import (
    Error,
    FiringError,
    InputError,
    LimitError,
    certify,
    fire,
    fixture_homology,
    homology,
    refute,
    run_cli,
    smith_diagonal,
    verify_construction,
)

__all__ = [
    "Error",
    "FiringError",
    "InputError",
    "LimitError",
    "certify",
    "fire",
    "fixture_homology",
    "homology",
    "refute",
    "run_cli",
    "smith_diagonal",
    "verify_construction",
]
