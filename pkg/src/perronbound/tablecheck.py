"""Internal-consistency check of the published nine-vertex example table.

The example graph itself is only shown as a figure, so the printed columns
are cross-checked arithmetically: the spectral radius is recovered by
inverting the Cioaba-Gregory column, each ``rho_i`` by inverting the
Li-Wang-Van Mieghem column, and the gap-bound column is then recomputed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import PR_UPPER, new_lower

__all__ = ["ExampleRow", "TableCheckResult", "EXAMPLE_TABLE", "table_check",
           "format_table_check", "as_dict"]

RHO_SPREAD_MAX = 5e-4
NEW_ERROR_MAX = 1e-4
# printed values carry five significant digits
ROUNDING_TOL = 1e-4


@dataclass(frozen=True)
class ExampleRow:
    name: str
    degree: int
    lwm: float
    new: float
    x: float
    cg: float


EXAMPLE_TABLE = (
    ExampleRow("b", 6, 0.39725, 0.45901, 0.49917, 0.5213),
    ExampleRow("c", 6, 0.374, 0.41636, 0.48264, 0.5213),
    ExampleRow("g", 4, 0.29584, 0.33114, 0.39818, 0.44634),
    ExampleRow("a", 3, 0.18076, 0.14959, 0.26109, 0.39654),
    ExampleRow("e", 3, 0.25233, 0.28276, 0.34415, 0.39654),
    ExampleRow("i", 3, 0.18904, 0.16325, 0.27064, 0.39654),
    ExampleRow("d", 2, 0.17415, 0.16949, 0.24485, 0.33261),
    ExampleRow("f", 2, 0.13045, 0.096049, 0.18786, 0.33261),
    ExampleRow("h", 1, 0.044799, 0.016093, 0.065114, 0.24198),
)


@dataclass(frozen=True)
class TableCheckResult:
    rows: tuple
    inferred_rho_per_row: tuple
    rho: float
    rho_spread: float
    inferred_rho_i: tuple
    recomputed_new: tuple
    new_errors: tuple
    max_abs_error_new: float
    ordering_ok: tuple
    passed: bool


def table_check(rows=EXAMPLE_TABLE) -> TableCheckResult:
    deg = np.array([r.degree for r in rows], dtype=float)
    cg = np.array([r.cg for r in rows])
    lwm = np.array([r.lwm for r in rows])
    printed_new = np.array([r.new for r in rows])

    # cg = 1/sqrt(1 + rho^2/d)  =>  rho = sqrt(d (1/cg^2 - 1))
    rho_rows = np.sqrt(deg * (1.0 / cg ** 2 - 1.0))
    # median: row c is printed with fewer digits
    rho = float(np.median(rho_rows))
    # lwm = sqrt((rho - rho_i)/(2 rho))  =>  rho_i = rho - 2 rho lwm^2
    rho_i = rho - 2.0 * rho * lwm ** 2
    recomputed = new_lower(rho, rho_i, deg)
    errors = np.abs(recomputed - printed_new)

    ordering = tuple(
        max(r.lwm, r.new) <= r.x + ROUNDING_TOL
        and r.x <= r.cg + ROUNDING_TOL
        and r.cg <= PR_UPPER + ROUNDING_TOL
        for r in rows
    )
    spread = float(rho_rows.max() - rho_rows.min())
    max_err = float(errors.max())
    passed = (spread <= RHO_SPREAD_MAX
              and max_err <= NEW_ERROR_MAX
              and all(ordering)
              and bool(np.all(rho_i < rho))
              and bool(np.all((recomputed > 0) & (recomputed < 1))))
    return TableCheckResult(
        rows=tuple(rows),
        inferred_rho_per_row=tuple(float(v) for v in rho_rows),
        rho=rho,
        rho_spread=spread,
        inferred_rho_i=tuple(float(v) for v in rho_i),
        recomputed_new=tuple(float(v) for v in recomputed),
        new_errors=tuple(float(v) for v in errors),
        max_abs_error_new=max_err,
        ordering_ok=ordering,
        passed=passed,
    )


def format_table_check(res: TableCheckResult) -> str:
    lines = [
        f"{'vertex':>6} {'degree':>6} {'rho(row)':>10} {'rho_i':>9} "
        f"{'new printed':>11} {'new recomp':>11} {'|err|':>9} order",
    ]
    for k, r in enumerate(res.rows):
        lines.append(
            f"{r.name:>6} {r.degree:>6d} {res.inferred_rho_per_row[k]:>10.6f} "
            f"{res.inferred_rho_i[k]:>9.5f} {r.new:>11.6g} {res.recomputed_new[k]:>11.6g} "
            f"{res.new_errors[k]:>9.2e} {'ok' if res.ordering_ok[k] else 'FAIL'}")
    lines += [
        f"rho (median of rows) = {res.rho:.6f}",
        f"rho spread           = {res.rho_spread:.3e}  (limit {RHO_SPREAD_MAX:g})",
        f"max |new error|      = {res.max_abs_error_new:.3e}  (limit {NEW_ERROR_MAX:g})",
        f"bound ordering       = {'all rows ok' if all(res.ordering_ok) else 'FAILED'}",
        f"example-table check: {'PASS' if res.passed else 'FAIL'}",
    ]
    return "\n".join(lines)


def as_dict(res: TableCheckResult) -> dict:
    return {
        "rho": res.rho,
        "rho_spread": res.rho_spread,
        "max_abs_error_new": res.max_abs_error_new,
        "passed": res.passed,
        "rows": [
            {"name": r.name, "degree": r.degree, "rho_row": res.inferred_rho_per_row[k],
             "rho_i": res.inferred_rho_i[k], "new_printed": r.new,
             "new_recomputed": res.recomputed_new[k], "ordering_ok": res.ordering_ok[k]}
            for k, r in enumerate(res.rows)
        ],
    }

