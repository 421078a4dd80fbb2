"""Sheaves on finite posets: cohomology-preserving simplification and exact cohomology."""

from ._sheafcore import (
    SheafcoreError,
    __version__,
    cohomology,
    core,
    find_beats,
    homology,
    rank,
    run,
    simplify,
    smith_normal_form,
    validate,
)

__all__ = [
    "SheafcoreError",
    "cohomology",
    "core",
    "find_beats",
    "homology",
    "rank",
    "run",
    "simplify",
    "smith_normal_form",
    "validate",
]
