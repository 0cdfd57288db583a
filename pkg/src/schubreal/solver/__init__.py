from .fiber import FiberResult, UnsupportedTarget, fiber_of_p, fiber_of_wronskian, rational_roots
from .problem import NonSquareSystem, ProblemError, SchubertCondition, SchubertProblem, SolverConfig
from .solve import (
    SolutionCertificate,
    SolveResult,
    certify_real,
    certify_transverse,
    expected_count,
    solve,
)
from .system import SquareSystem, build_square_system
from .tracking import BACKENDS, DEFAULT_BACKEND

__all__ = [
    "BACKENDS",
    "DEFAULT_BACKEND",
    "FiberResult",
    "NonSquareSystem",
    "ProblemError",
    "SchubertCondition",
    "SchubertProblem",
    "SolutionCertificate",
    "SolveResult",
    "SolverConfig",
    "SquareSystem",
    "UnsupportedTarget",
    "build_square_system",
    "certify_real",
    "certify_transverse",
    "expected_count",
    "fiber_of_p",
    "fiber_of_wronskian",
    "rational_roots",
    "solve",
]
