"""Bulk verification of the bounds over graph streams.

Exhaustive sweeps run the fused ``analyze_masks`` kernel over chunks of
edge bitmasks; arbitrary streams (random samples, graph6 files) go through
:func:`perronbound.bounds.analyze` one graph at a time. Both feed the same
:class:`SweepSummary` accumulator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from . import kernels
from .bounds import (PR_UPPER, BoundsReport, Violation, analyze, block_margins,
                     cg_equality_flags, comparison_sign, degree_win_table, lwm_lower,
                     new_lower, cg_upper, violated, WINNER_TIE_TOL)
from .errors import ConvergenceError, InputError
from .generators import DEFAULT_ENUMERATION_CAP, graph_from_mask, pair_order, random_connected
from .graphio import encode_graph6
from .spectral import SolverConfig

__all__ = ["SweepSummary", "sweep_exhaustive", "sweep_graphs", "random_stream",
           "masks_to_adjacency"]

MAX_STORED_VIOLATIONS = 50
COMPARISON_TOL = 1e-10
CHUNK = 1 << 15


def _worst(current, value, where):
    return (value, *where) if current is None or value > current[0] else current


def _least(current, value, where):
    return (value, *where) if current is None or value < current[0] else current


@dataclass
class SweepSummary:
    """Aggregate statistics of a verification sweep (order independent)."""

    graphs: int = 0
    vertices: int = 0
    violation_count: int = 0
    violations: list = field(default_factory=list)
    worst_margin: dict = field(default_factory=dict)
    tightest_gap: dict = field(default_factory=dict)
    taovu_max_error: float = 0.0
    comparison_mismatches: int = 0
    comparison_mismatch_examples: list = field(default_factory=list)
    comparison_ties: int = 0
    winners: dict = field(default_factory=lambda: {"new": 0, "lwm": 0, "tie": 0})
    degree_table: dict = field(default_factory=dict)
    stars: int = 0
    star_max_deviation: float = 0.0
    nonstar_min_gap: Optional[float] = None
    cg_equality_vertices: int = 0
    cg_equality_max_deviation: float = 0.0
    cg_strict_min_gap: Optional[float] = None
    max_power_iterations: int = 0
    resolved_per_graph: int = 0
    oracle_fallbacks: int = 0
    nonconverged: int = 0
    trivial_graphs: int = 0

    @property
    def ok(self) -> bool:
        return self.violation_count == 0 and self.nonconverged == 0

    def add_block(self, rho, x, rho_del, degree, exact_sq, star, cg_flag, name_of: Callable,
                  slack: float, iterations=None):
        """Fold a block of ``G`` graphs of equal order into the summary."""
        rho = np.asarray(rho, dtype=float)
        if rho.size == 0:
            return
        x = np.asarray(x, dtype=float)
        rho_del = np.asarray(rho_del, dtype=float)
        degree = np.asarray(degree, dtype=float)
        star = np.asarray(star, dtype=bool)
        cg_flag = np.asarray(cg_flag, dtype=bool)
        count, n = x.shape
        self.graphs += count
        self.vertices += count * n
        if iterations is not None and len(iterations):
            self.max_power_iterations = max(self.max_power_iterations, int(np.max(iterations)))

        margins = block_margins(rho, x, rho_del, degree, exact_sq, star, cg_flag)
        for kind, margin in margins.items():
            bad = violated(kind, margin, slack)
            if np.any(np.isfinite(margin)):
                idx = np.unravel_index(np.nanargmax(np.where(np.isfinite(margin), margin, -np.inf)),
                                       margin.shape)
                where = (int(idx[0]), int(idx[1]) if margin.ndim == 2 else None)
                val = float(margin[idx])
                cur = self.worst_margin.get(kind)
                if cur is None or val > cur[0]:
                    self.worst_margin[kind] = (val, name_of(where[0]), where[1])
            nbad = int(np.count_nonzero(bad))
            if nbad:
                self.violation_count += nbad
                for flat in np.flatnonzero(bad):
                    if len(self.violations) >= MAX_STORED_VIOLATIONS:
                        break
                    pos = np.unravel_index(flat, margin.shape)
                    vertex = int(pos[1]) if margin.ndim == 2 else None
                    self.violations.append(
                        Violation(name_of(pos[0]), vertex, kind, float(margin[pos])))

        self.taovu_max_error = max(self.taovu_max_error, float(np.max(margins["taovu_exact"])))

        r = rho[:, None]
        lwm = lwm_lower(r, rho_del)
        new = new_lower(r, rho_del, degree)
        cg = cg_upper(r, degree)
        x_max = x.max(axis=1)
        for name, gap in (("lwm_lower", x - lwm), ("new_lower", x - new), ("cg_upper", cg - x)):
            idx = np.unravel_index(np.argmin(gap), gap.shape)
            self.tightest_gap[name] = _least(self.tightest_gap.get(name), float(gap[idx]),
                                             (name_of(idx[0]), int(idx[1])))
        pr_gap = PR_UPPER - x_max
        g = int(np.argmin(pr_gap))
        self.tightest_gap["pr_xmax"] = _least(self.tightest_gap.get("pr_xmax"),
                                              float(pr_gap[g]), (name_of(g), None))

        nstar = int(np.count_nonzero(star))
        self.stars += nstar
        if nstar:
            self.star_max_deviation = max(self.star_max_deviation,
                                          float(np.max(np.abs(pr_gap[star]))))
        if nstar < count:
            m = float(np.min(pr_gap[~star]))
            self.nonstar_min_gap = m if self.nonstar_min_gap is None else min(self.nonstar_min_gap, m)

        neq = int(np.count_nonzero(cg_flag))
        self.cg_equality_vertices += neq
        if neq:
            self.cg_equality_max_deviation = max(self.cg_equality_max_deviation,
                                                 float(np.max(np.abs((cg - x)[cg_flag]))))
        if neq < cg_flag.size:
            m = float(np.min((cg - x)[~cg_flag]))
            self.cg_strict_min_gap = m if self.cg_strict_min_gap is None else min(self.cg_strict_min_gap, m)

        diff = new - lwm
        sign = comparison_sign(r, rho_del, degree, COMPARISON_TOL)
        ties = sign == 0
        match = np.where(ties, np.abs(diff) <= COMPARISON_TOL, np.sign(diff) == sign)
        self.comparison_ties += int(np.count_nonzero(ties))
        mism = np.argwhere(~match)
        self.comparison_mismatches += len(mism)
        for gi, v in mism[:max(0, 10 - len(self.comparison_mismatch_examples))]:
            self.comparison_mismatch_examples.append((name_of(gi), int(v), float(diff[gi, v])))

        self.winners["tie"] += int(np.count_nonzero(np.abs(diff) <= WINNER_TIE_TOL))
        self.winners["new"] += int(np.count_nonzero(diff > WINNER_TIE_TOL))
        self.winners["lwm"] += int(np.count_nonzero(diff < -WINNER_TIE_TOL))
        for d, row in degree_win_table(degree, lwm, new).items():
            acc = self.degree_table.setdefault(d, [0, 0, 0, 0])
            for k in range(4):
                acc[k] += row[k]

    def add_report(self, rep: BoundsReport, slack: float):
        if rep.spectral.method != "power-iteration":
            self.oracle_fallbacks += 1
        if not rep.rows:
            self.graphs += 1
            self.trivial_graphs += 1
            return
        name = encode_graph6(rep.graph)
        self.add_block(
            rho=[rep.spectral.rho],
            x=rep.spectral.eigenvector[None, :],
            rho_del=rep.column("rho_deleted")[None, :],
            degree=rep.column("degree")[None, :],
            exact_sq=rep.column("exact_sq")[None, :],
            star=[rep.pr_equality],
            cg_flag=np.array([rep.cg_equality_flags], dtype=bool),
            name_of=lambda _i: name,
            slack=slack,
            iterations=[rep.spectral.iterations],
        )

    def as_dict(self) -> dict:
        def loc(t):
            if t is None:
                return None
            return {"value": t[0], "graph": t[1], "vertex": t[2]}

        return {
            "graphs": self.graphs,
            "vertices": self.vertices,
            "violations": self.violation_count,
            "violation_examples": [str(v) for v in self.violations],
            "nonconverged": self.nonconverged,
            "worst_margin": {k: loc(v) for k, v in sorted(self.worst_margin.items())},
            "tightest_gap": {k: loc(v) for k, v in sorted(self.tightest_gap.items())},
            "taovu_max_error": self.taovu_max_error,
            "comparison_mismatches": self.comparison_mismatches,
            "comparison_ties": self.comparison_ties,
            "winners": dict(self.winners),
            "degree_table": {str(k): v for k, v in sorted(self.degree_table.items())},
            "stars": self.stars,
            "star_max_deviation": self.star_max_deviation,
            "nonstar_min_gap": self.nonstar_min_gap,
            "cg_equality_vertices": self.cg_equality_vertices,
            "cg_equality_max_deviation": self.cg_equality_max_deviation,
            "cg_strict_min_gap": self.cg_strict_min_gap,
            "max_power_iterations": self.max_power_iterations,
            "resolved_per_graph": self.resolved_per_graph,
            "oracle_fallbacks": self.oracle_fallbacks,
            "trivial_graphs": self.trivial_graphs,
        }


def masks_to_adjacency(n: int, masks) -> np.ndarray:
    """Boolean ``(G, n, n)`` adjacency tensor for a batch of edge bitmasks."""
    masks = np.asarray(masks, dtype=np.int64)
    pairs = pair_order(n)
    adj = np.zeros((masks.shape[0], n, n), dtype=bool)
    if pairs:
        bits = ((masks[:, None] >> np.arange(len(pairs), dtype=np.int64)) & 1).astype(bool)
        ii = np.array([p[0] for p in pairs])
        jj = np.array([p[1] for p in pairs])
        adj[:, ii, jj] = bits
        adj[:, jj, ii] = bits
    return adj


def sweep_exhaustive(n: int, cfg: SolverConfig = SolverConfig(),
                     cap: int = DEFAULT_ENUMERATION_CAP, chunk: int = CHUNK,
                     progress: Optional[Callable] = None) -> SweepSummary:
    """Verify every connected labelled graph on ``n`` vertices."""
    if n < 1:
        raise InputError(f"n must be at least 1, got {n}")
    if n > cap:
        raise InputError(
            f"n={n} exceeds the enumeration cap {cap}; pipe graph6 records into "
            "'verify --graph6 -' instead, or raise --cap")
    summary = SweepSummary()
    masks = kernels.connected_masks(n)
    if n == 1:
        summary.add_report(analyze(graph_from_mask(1, 0), cfg), cfg.verify_slack)
        return summary
    star_mask_deg = n - 1
    for start in range(0, masks.shape[0], chunk):
        block = masks[start:start + chunk]
        rho, x, rho_del, t1, iters, _res, status = kernels.analyze_masks(
            n, block, cfg.residual_tol, cfg.max_iterations)
        good = status == kernels.STATUS_OK
        adj = masks_to_adjacency(n, block[good])
        deg = adj.sum(axis=2)
        edges = deg.sum(axis=1) // 2
        star = (edges == n - 1) & (deg.max(axis=1) == star_mask_deg)
        sel = block[good]
        summary.add_block(
            rho[good], x[good], rho_del[good], deg, 1.0 / (1.0 + t1[good]), star,
            cg_equality_flags(adj, x[good]),
            name_of=lambda i, sel=sel: encode_graph6(graph_from_mask(n, sel[i])),
            slack=cfg.verify_slack,
            iterations=iters[good],
        )
        for mask in block[~good]:
            summary.resolved_per_graph += 1
            _add_single(summary, graph_from_mask(n, mask), cfg)
        if progress is not None:
            progress(min(start + chunk, masks.shape[0]), masks.shape[0])
    return summary


def _add_single(summary: SweepSummary, g, cfg: SolverConfig):
    try:
        rep = analyze(g, cfg)
    except ConvergenceError:
        summary.graphs += 1
        summary.nonconverged += 1
        return
    summary.add_report(rep, cfg.verify_slack)


def sweep_graphs(graphs: Iterable, cfg: SolverConfig = SolverConfig()) -> SweepSummary:
    """Verify an arbitrary stream of connected graphs one at a time."""
    summary = SweepSummary()
    for g in graphs:
        _add_single(summary, g, cfg)
    return summary


def random_stream(n: int, p: float, count: int, seed: int):
    """``count`` connected G(n, p) samples; sample ``k`` uses seed ``seed + k``."""
    for k in range(count):
        yield random_connected(n, p, seed + k)
