"""Per-vertex bounds on the principal eigenvector and their verification.

For vertex ``i`` with degree ``d``, spectral radius ``rho`` of the graph and
spectral radius ``rho_i`` of the graph with ``i`` deleted:

* Li-Wang-Van Mieghem lower bound   ``sqrt((rho - rho_i) / (2 rho))``
* gap lower bound ("new")           ``1 / sqrt(1 + d / (rho - rho_i)^2)``
* Cioaba-Gregory upper bound        ``1 / sqrt(1 + rho^2 / d)``
* Papendieck-Recht                  ``x_max <= 1/sqrt(2)``, equality only for stars

and the exact identity ``x_i^2 = 1 / (1 + ||(rho I - B)^{-1} b||^2)`` where
``B`` is the adjacency matrix of the vertex-deleted graph and ``b`` the
indicator of the neighbours of ``i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .graph import Graph, connected_components, delete_vertex, is_regular, is_star
from .graphio import encode_graph6
from .spectral import (SolverConfig, SpectralResult, principal_eigenpair,
                       spd_solve, spectral_radius_any)

__all__ = [
    "PR_UPPER",
    "lwm_lower",
    "new_lower",
    "cg_upper",
    "VertexBounds",
    "BoundsReport",
    "ProofChain",
    "Violation",
    "CHECKS",
    "vertex_bounds",
    "taovu_exact",
    "proof_chain_check",
    "check_cg_equality",
    "is_perron_aligned",
    "analyze",
    "verify_report",
    "block_margins",
    "cg_equality_flags",
    "comparison_sign",
    "winner",
    "degree_win_table",
]

PR_UPPER = 1.0 / math.sqrt(2.0)

EXACT_TOL = 1e-8
PR_EQUALITY_TOL = 1e-10
CG_EQUALITY_TOL = 1e-9
XMAX_TIE_TOL = 1e-10
WINNER_TIE_TOL = 1e-12
PERRON_ALIGN_TOL = 1e-9


def lwm_lower(rho, rho_del):
    return np.sqrt((rho - rho_del) / (2.0 * rho))


def new_lower(rho, rho_del, degree):
    return 1.0 / np.sqrt(1.0 + degree / (rho - rho_del) ** 2)


def cg_upper(rho, degree):
    return 1.0 / np.sqrt(1.0 + rho ** 2 / degree)


@dataclass(frozen=True)
class VertexBounds:
    vertex: int
    degree: int
    rho_deleted: float
    lower_lwm: float
    lower_new: float
    upper_cg: float
    exact_sq: float
    actual: float


@dataclass(frozen=True)
class BoundsReport:
    graph: Graph
    spectral: SpectralResult
    rows: tuple
    x_max: float
    pr_upper: float = PR_UPPER
    pr_equality: bool = False
    cg_equality_flags: tuple = ()
    winner_per_vertex: tuple = ()
    note: str = ""

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows], dtype=float)


@dataclass(frozen=True)
class ProofChain:
    """Terms of ``x^2 = 1/(1+t1) >= 1/(1+t2)`` at one vertex."""

    t1: float
    t2: float
    exact_sq: float
    actual_sq: float
    chain_ok: bool
    identity_ok: bool


@dataclass(frozen=True)
class Violation:
    graph: str
    vertex: Optional[int]
    inequality: str
    magnitude: float

    def __str__(self):
        where = f" vertex {self.vertex}" if self.vertex is not None else ""
        return (f"{self.graph}{where}: {self.inequality} ({CHECKS[self.inequality][2]}) "
                f"violated by {self.magnitude:.3e}")


# name -> (tolerance, or None for the configured slack; strict; description)
CHECKS = {
    "lwm_lower": (None, False, "x_i >= sqrt((rho - rho_i) / (2 rho)), Li-Wang-Van Mieghem"),
    "new_lower": (None, False, "x_i >= 1/sqrt(1 + d_i / (rho - rho_i)^2), gap bound"),
    "cg_upper": (None, False, "x_i <= 1/sqrt(1 + rho^2 / d_i), Cioaba-Gregory"),
    "pr_xmax": (None, False, "x_max <= 1/sqrt(2), Papendieck-Recht"),
    "taovu_exact": (EXACT_TOL, False, "x_i^2 = 1/(1 + ||(rho I - B)^-1 b||^2), Tao-Vu"),
    "interlacing": (0.0, True, "rho_i < rho for connected graphs"),
    "pr_equality": (PR_EQUALITY_TOL, False, "stars attain x_max = 1/sqrt(2)"),
    "cg_equality": (CG_EQUALITY_TOL, False, "Cioaba-Gregory equality case attains the bound"),
}


def _neighbor_indicator(g: Graph, v: int) -> np.ndarray:
    row = g.adjacency_matrix()[v]
    return np.delete(row, v)


def taovu_exact(g: Graph, spec: SpectralResult, v: int,
                rho_deleted: Optional[float] = None) -> float:
    """``x_v^2`` from the shifted solve on the vertex-deleted graph."""
    if g.n < 2:
        raise DomainError("the vertex-deleted graph of K_1 is empty")
    y = spd_solve(spec.rho, delete_vertex(g, v), _neighbor_indicator(g, v), rho_b=rho_deleted)
    return 1.0 / (1.0 + float(y @ y))


def vertex_bounds(g: Graph, spec: SpectralResult, v: int,
                  cfg: SolverConfig = SolverConfig()) -> VertexBounds:
    if g.n < 2:
        raise DomainError("per-vertex bounds need n >= 2 (rho_i undefined for K_1)")
    d = g.degree(v)
    rho = spec.rho
    rho_v = spectral_radius_any(delete_vertex(g, v), cfg)
    return VertexBounds(
        vertex=v,
        degree=d,
        rho_deleted=rho_v,
        lower_lwm=float(lwm_lower(rho, rho_v)),
        lower_new=float(new_lower(rho, rho_v, d)),
        upper_cg=float(cg_upper(rho, d)),
        exact_sq=taovu_exact(g, spec, v, rho_deleted=rho_v),
        actual=float(spec.eigenvector[v]),
    )


def proof_chain_check(g: Graph, spec: SpectralResult, v: int,
                      cfg: SolverConfig = SolverConfig()) -> ProofChain:
    """Evaluate the operator-norm step ``||(rho I - B)^-1 b||^2 <= d / (rho - rho_v)^2``."""
    if g.n < 2:
        raise DomainError("per-vertex bounds need n >= 2 (rho_i undefined for K_1)")
    deleted = delete_vertex(g, v)
    rho_v = spectral_radius_any(deleted, cfg)
    y = spd_solve(spec.rho, deleted, _neighbor_indicator(g, v), rho_b=rho_v)
    t1 = float(y @ y)
    t2 = g.degree(v) / (spec.rho - rho_v) ** 2
    exact = 1.0 / (1.0 + t1)
    actual_sq = float(spec.eigenvector[v]) ** 2
    return ProofChain(t1, t2, exact, actual_sq,
                      chain_ok=t1 <= t2 + cfg.verify_slack,
                      identity_ok=abs(exact - actual_sq) <= EXACT_TOL)


def is_perron_aligned(g: Graph, v: int, cfg: SolverConfig = SolverConfig()) -> bool:
    """True when the neighbour indicator of ``v`` is a top eigenvector of the deleted graph.

    This is exactly the case where the operator-norm step is an equality.
    """
    deleted = delete_vertex(g, v)
    b = _neighbor_indicator(g, v)
    rho_v = spectral_radius_any(deleted, cfg)
    return bool(np.max(np.abs(deleted.adjacency_matrix() @ b - rho_v * b)) <= PERRON_ALIGN_TOL)


def check_cg_equality(g: Graph, spec: SpectralResult, v: int) -> bool:
    """Cioaba-Gregory equality conditions, taken conjointly and verbatim:
    ``x_v = x_max``, ``d_v = n - 1`` and the deleted graph is regular."""
    if g.n < 2:
        raise DomainError("per-vertex bounds need n >= 2")
    x = spec.eigenvector
    return (g.degree(v) == g.n - 1
            and is_regular(delete_vertex(g, v)) is not None
            and bool(x[v] >= np.max(x) - XMAX_TIE_TOL))


def winner(lower_lwm, lower_new, tol=WINNER_TIE_TOL):
    diff = lower_new - lower_lwm
    if abs(diff) <= tol:
        return "tie"
    return "new" if diff > 0 else "lwm"


def comparison_sign(rho, rho_del, degree, tol=1e-10):
    """Sign of ``rho^2 - rho_i^2 - d_i``, which decides which lower bound is larger."""
    disc = np.asarray(rho) ** 2 - np.asarray(rho_del) ** 2 - np.asarray(degree)
    return np.where(np.abs(disc) <= tol, 0, np.sign(disc)).astype(int)


def analyze(g: Graph, cfg: SolverConfig = SolverConfig()) -> BoundsReport:
    """Full per-vertex bounds table for a connected graph."""
    parts = connected_components(g)
    if len(parts) > 1:
        comps = "; ".join(str(sorted(c)) for c in parts)
        raise DomainError(f"graph is disconnected; components: {comps}")
    spec = principal_eigenpair(g, cfg)
    x_max = spec.x_max
    if g.n == 1:
        return BoundsReport(g, spec, (), x_max,
                            note="K_1: rho = 0 and x = (1); per-vertex bounds need a "
                                 "non-empty vertex-deleted graph and are omitted")
    rows = tuple(vertex_bounds(g, spec, v, cfg) for v in range(g.n))
    return BoundsReport(
        graph=g,
        spectral=spec,
        rows=rows,
        x_max=x_max,
        pr_equality=is_star(g),
        cg_equality_flags=tuple(check_cg_equality(g, spec, v) for v in range(g.n)),
        winner_per_vertex=tuple(winner(r.lower_lwm, r.lower_new) for r in rows),
    )


def block_margins(rho, x, rho_del, degree, exact_sq, star, cg_flag) -> dict:
    """Signed margins of every check for a block of same-order graphs.

    Arrays are ``(G,)`` per graph or ``(G, n)`` per vertex. A margin is
    positive when the left-hand side exceeds what the check allows before
    tolerance; ``-inf`` marks checks that do not apply.
    """
    rho = np.asarray(rho, dtype=float)
    x = np.asarray(x, dtype=float)
    rho_del = np.asarray(rho_del, dtype=float)
    degree = np.asarray(degree, dtype=float)
    r = rho[:, None]
    x_max = x.max(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        lwm = lwm_lower(r, rho_del)
        new = new_lower(r, rho_del, degree)
        cg = cg_upper(r, degree)
    return {
        "lwm_lower": lwm - x,
        "new_lower": new - x,
        "cg_upper": x - cg,
        "pr_xmax": x_max - PR_UPPER,
        "taovu_exact": np.abs(np.asarray(exact_sq) - x ** 2),
        "interlacing": rho_del - r,
        "pr_equality": np.where(star, np.abs(x_max - PR_UPPER), -np.inf),
        "cg_equality": np.where(cg_flag, np.abs(x - cg), -np.inf),
    }


def violated(kind: str, margin, slack: float):
    tol, strict, _ = CHECKS[kind]
    if tol is None:
        tol = slack
    margin = np.asarray(margin)
    bad = margin >= tol if strict else margin > tol
    # NaN margins come from degenerate inputs and always count
    return bad | np.isnan(margin)


def cg_equality_flags(adj, x) -> np.ndarray:
    """Vectorized :func:`check_cg_equality` over ``(G, n, n)`` adjacency blocks."""
    adj = np.asarray(adj, dtype=bool)
    count, n, _ = adj.shape
    deg = adj.sum(axis=2)
    x = np.asarray(x)
    flags = np.zeros((count, n), dtype=bool)
    x_top = x.max(axis=1)
    for v in range(n):
        keep = [u for u in range(n) if u != v]
        deleted = deg[:, keep] - adj[:, keep, v]
        regular = deleted.min(axis=1) == deleted.max(axis=1) if keep else np.ones(count, bool)
        flags[:, v] = (deg[:, v] == n - 1) & regular & (x[:, v] >= x_top - XMAX_TIE_TOL)
    return flags


def _report_block(r: BoundsReport) -> dict:
    return dict(
        rho=np.array([r.spectral.rho]),
        x=r.spectral.eigenvector[None, :],
        rho_del=r.column("rho_deleted")[None, :],
        degree=r.column("degree")[None, :],
        exact_sq=r.column("exact_sq")[None, :],
        star=np.array([r.pr_equality]),
        cg_flag=np.array([r.cg_equality_flags], dtype=bool),
    )


def verify_report(r: BoundsReport, cfg: SolverConfig = SolverConfig()) -> list:
    """Every violated check in the report as a :class:`Violation` (empty if sound)."""
    name = encode_graph6(r.graph)
    out = []
    if not r.rows:
        if r.graph.n != 1:
            out.append(Violation(name, None, "interlacing", math.inf))
        return out
    if [row.vertex for row in r.rows] != list(range(r.graph.n)):
        raise ValueError("report rows do not cover every vertex exactly once")
    # the report's own actual column is authoritative (it may have been edited)
    block = _report_block(r)
    block["x"] = r.column("actual")[None, :]
    margins = block_margins(**block)
    for kind, margin in margins.items():
        margin = np.atleast_1d(margin[0])
        bad = violated(kind, margin, cfg.verify_slack)
        per_vertex = margin.shape[0] == r.graph.n and kind not in ("pr_xmax", "pr_equality")
        for idx in np.flatnonzero(bad):
            out.append(Violation(name, int(idx) if per_vertex else None, kind,
                                 float(margin[idx])))
    return out


def degree_win_table(degrees, lower_lwm, lower_new, tol=WINNER_TIE_TOL) -> dict:
    """``degree -> [vertices, new wins, lwm wins, ties]`` (descriptive statistic only)."""
    table = {}
    degrees = np.asarray(degrees).ravel().astype(int)
    diff = (np.asarray(lower_new) - np.asarray(lower_lwm)).ravel()
    for d in np.unique(degrees):
        sel = diff[degrees == d]
        table[int(d)] = [int(sel.size), int(np.sum(sel > tol)), int(np.sum(sel < -tol)),
                         int(np.sum(np.abs(sel) <= tol))]
    return table

