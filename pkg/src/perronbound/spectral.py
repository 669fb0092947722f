"""Dominant eigenpairs, a dense Jacobi oracle and the shifted SPD solve.

The principal eigenpair comes from power iteration on ``A + I``: the shift
makes the iteration matrix primitive for every connected graph, so bipartite
graphs (spectrum symmetric about 0) converge instead of oscillating.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConditioningError, ConvergenceError, DomainError, InputError
from .graph import Graph, _component_masks, connected_components

__all__ = [
    "SolverConfig",
    "SpectralResult",
    "principal_eigenpair",
    "spectral_radius_any",
    "OracleResult",
    "dense_eigen_oracle",
    "spd_solve",
]

log = logging.getLogger(__name__)

POWER_ITERATION = "power-iteration"
ORACLE_FALLBACK = "oracle-fallback"

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 50
SPD_MARGIN = 1e-12


@dataclass(frozen=True)
class SolverConfig:
    residual_tol: float = 1e-12
    max_iterations: int = 10**6
    verify_slack: float = 1e-9
    oracle_fallback: bool = True

    def __post_init__(self):
        if not self.residual_tol > 0:
            raise InputError("residual_tol must be positive")
        if self.max_iterations < 1:
            raise InputError("max_iterations must be at least 1")
        if not self.verify_slack >= 0:
            raise InputError("verify_slack must be non-negative")


@dataclass(frozen=True)
class SpectralResult:
    """Spectral radius and unit, entrywise-positive principal eigenvector."""

    rho: float
    eigenvector: np.ndarray
    iterations: int
    residual: float
    method: str = POWER_ITERATION

    @property
    def x_max(self) -> float:
        return float(np.max(self.eigenvector))


def _residual(a, x, rho):
    return float(np.max(np.abs(a @ x - rho * x))) if len(x) else 0.0


def _oracle_eigenpair(a, iterations, cfg):
    evals, evecs, _, ok = kernels.jacobi_eigh(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if not ok:
        raise ConvergenceError("dense oracle did not converge either", iterations)
    top = int(np.argmax(evals))
    x = evecs[:, top]
    x = np.abs(x) / np.linalg.norm(x)
    rho = float(x @ a @ x)
    res = _residual(a, x, rho)
    if res > cfg.residual_tol:
        raise ConvergenceError(
            f"oracle fallback residual {res:.3e} exceeds tolerance {cfg.residual_tol:.3e}",
            iterations, res)
    return SpectralResult(rho, x, iterations, res, ORACLE_FALLBACK)


def _eigenpair(a: np.ndarray, cfg: SolverConfig) -> SpectralResult:
    rho, x, it, res, ok = kernels.power_iteration(a, cfg.residual_tol, cfg.max_iterations)
    if ok:
        return SpectralResult(float(rho), x, int(it), float(res), POWER_ITERATION)
    if not cfg.oracle_fallback:
        raise ConvergenceError(
            f"power iteration stalled after {it} iterations (residual {res:.3e})", it, res)
    log.warning("power iteration stalled after %d iterations; using dense oracle", it)
    return _oracle_eigenpair(a, int(it), cfg)


def principal_eigenpair(g: Graph, cfg: SolverConfig = SolverConfig()) -> SpectralResult:
    """Spectral radius and principal eigenvector of a connected graph."""
    if g.n > 1:
        parts = connected_components(g)
        if len(parts) > 1:
            sizes = ", ".join(str(sorted(c)) for c in parts)
            raise DomainError(
                f"graph is disconnected (components {sizes}); use spectral_radius_any")
    return _eigenpair(g.adjacency_matrix(), cfg)


def spectral_radius_any(g: Graph, cfg: SolverConfig = SolverConfig()) -> float:
    """Largest adjacency eigenvalue of a possibly disconnected graph.

    Computed per connected component and maximized; components without
    edges contribute 0.
    """
    a = g.adjacency_matrix()
    best = 0.0
    for comp in _component_masks(g):
        members = [v for v in range(g.n) if comp >> v & 1]
        if len(members) < 2:
            continue
        best = max(best, _eigenpair(a[np.ix_(members, members)], cfg).rho)
    return best


@dataclass(frozen=True)
class OracleResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int


def dense_eigen_oracle(g: Graph) -> OracleResult:
    """Full spectrum by cyclic Jacobi; eigenvalues descending, vectors as columns."""
    a = g.adjacency_matrix()
    evals, evecs, sweeps, ok = kernels.jacobi_eigh(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if not ok:
        raise ConvergenceError(f"Jacobi exceeded {JACOBI_MAX_SWEEPS} sweeps", sweeps)
    order = np.argsort(-evals, kind="stable")
    return OracleResult(evals[order], evecs[:, order], int(sweeps))


def spd_solve(shift: float, b_graph: Graph, rhs, rho_b: float | None = None) -> np.ndarray:
    """Solve ``(shift*I - B) y = rhs`` with B the adjacency matrix of ``b_graph``.

    ``rho_b`` may pass an already computed spectral radius of ``b_graph``.
    """
    rhs = np.asarray(rhs, dtype=np.float64)
    if rhs.shape != (b_graph.n,):
        raise InputError(f"rhs has shape {rhs.shape}, expected ({b_graph.n},)")
    if rho_b is None:
        rho_b = spectral_radius_any(b_graph)
    if not shift > rho_b + SPD_MARGIN:
        raise ConditioningError(
            f"shift {shift!r} does not exceed lambda_max(B) = {rho_b!r}; "
            "the graph was not connected or the spectral radius is wrong")
    m = shift * np.eye(b_graph.n) - b_graph.adjacency_matrix()
    try:
        return kernels.cholesky_solve(m, rhs)
    except ValueError as exc:
        raise ConditioningError(str(exc)) from exc

