"""ENO/WENO-JS finite difference schemes with multiquadric-RBF perturbed weights."""

from .grid import BoundarySpec, ConfigurationError, Field, Grid1D, Grid2D, fill_ghosts
from .physics import Advection, Burgers, EosParams, Euler, make_equation
from .problems import PROBLEMS, exact_solution, get_problem, riemann_reference
from .reconstruction import SCHEMES, reconstruct, reconstruct_interface
from .runner import RunResult, convergence, run_problem
from .timestepping import SchemeConfig, SolverError, TimeConfig, integrate

__all__ = [
    "Advection", "BoundarySpec", "Burgers", "ConfigurationError", "EosParams", "Euler", "Field",
    "Grid1D", "Grid2D", "PROBLEMS", "RunResult", "SCHEMES", "SchemeConfig", "SolverError",
    "TimeConfig", "convergence", "exact_solution", "fill_ghosts", "get_problem", "integrate",
    "make_equation", "reconstruct", "reconstruct_interface", "riemann_reference", "run_problem",
]

__version__ = "0.1.0"
