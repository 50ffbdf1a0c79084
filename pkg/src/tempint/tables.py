"""Regression gates against the published accuracy tables.

Stored reference values are the published (SSE, max |eps|) aggregates
for the bundled approximants and the literature models.  Each cell is
recomputed from scratch and compared at the acceptance tolerance:
2% for the three Arrhenius-integral baselines, 5% for every other
max-deviation cell, 10% for the bundled approximants' SSE cells (SSE
compounds the squared per-point differences of the underlying oracle).
"""

from __future__ import annotations

from dataclasses import dataclass

from tempint.harness import EvalGrid, compare, report

# degree -> (eps_max, sse) on the full grid
TABLE5 = {
    1: (1.12e-02, 1.34e-01),
    2: (6.26e-05, 3.21e-06),
    3: (1.72e-06, 1.80e-09),
    4: (6.18e-07, 3.77e-10),
}

# model -> (sse, eps_max) on the m = 0 line
TABLE7 = {
    "J": (3.45e-11, 5.66e-06),
    "O": (7.25e-11, 1.87e-06),
    "SY": (7.86e-09, 8.15e-05),
    "G1": (1.89e-03, 6.79e-03),
    "G2": (4.62e-08, 3.95e-05),
    "G3": (1.33e-11, 8.89e-07),
    "G4": (6.72e-12, 3.95e-07),
}
TABLE7_ORDERING = ("G4", "G3", "O", "J", "SY")   # ascending eps_max

# model -> ((sse, eps_max) narrow m-range, (sse, eps_max) full m-range)
TABLE10 = {
    "G": ((2.67e-01, 5.58e-02), (8.45e-01, 2.31e-01)),
    "W1": ((5.11e-02, 2.79e-02), (2.49e-01, 1.62e-01)),
    "W2": ((1.81e+00, 1.76e-01), (3.61e+00, 2.20e-01)),
    "C1": ((1.11e-03, 7.89e-03), (2.34e-02, 5.42e-02)),
    "C2": ((3.53e-05, 1.21e-03), (2.07e-02, 5.76e-02)),
    "C3": ((2.29e-03, 1.02e-02), (1.24e-02, 3.71e-02)),
    "Ch1": ((2.31e-04, 3.36e-03), (3.06e-01, 2.97e-01)),
    "Ch2": ((1.82e+00, 2.02e-01), (4.90e+00, 2.65e-01)),
    "Ch3": ((7.16e-02, 3.26e-02), (3.51e-01, 1.84e-01)),
    "Ch4": ((1.03e-02, 1.88e-02), (1.93e-02, 1.91e-02)),
    "Cp": ((4.39e-02, 5.58e-02), (2.12e-01, 1.04e-01)),
    "Cs": ((1.50e-03, 7.21e-03), (1.02e-02, 3.60e-02)),
    "L": ((1.36e-03, 4.43e-03), (1.21e-02, 3.90e-02)),
    "G1": ((7.67e-02, 7.13e-03), (1.34e-01, 1.12e-02)),
    "G2": ((1.73e-06, 6.25e-05), (3.21e-06, 6.26e-05)),
    "G3": ((6.80e-10, 1.29e-06), (1.80e-09, 1.72e-06)),
    "G4": ((2.13e-10, 5.19e-07), (3.77e-10, 6.18e-07)),
}
TABLE10_X_EPS_MAX = 6.14e-04   # over the tabulated m lines, narrow case

TOL_ARRHENIUS_BASELINE = 0.02
TOL_EPS_MAX = 0.05
TOL_SSE_LITERATURE = 0.05
TOL_SSE_BUNDLED = 0.10

_BUNDLED = ("G1", "G2", "G3", "G4")


@dataclass
class Cell:
    table: str
    row: str
    column: str
    expected: float
    actual: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return abs(self.actual / self.expected - 1.0) <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (f"[{status}] {self.table} {self.row} {self.column}: "
                f"expected {self.expected:.2E}, got {self.actual:.3E} "
                f"(tol {self.tolerance:.0%})")


def _sse_tol(model: str) -> float:
    return TOL_SSE_BUNDLED if model in _BUNDLED else TOL_SSE_LITERATURE


def reproduce_table5(cfg=None):
    grid = EvalGrid.from_spec("paper-eval")
    cells = []
    for n, (eps_max, sse) in TABLE5.items():
        r = report(f"G{n}", grid, **({"cfg": cfg} if cfg else {}))
        cells.append(Cell("table5", f"n={n}", "eps_max", eps_max,
                          r.eps_max_abs, TOL_EPS_MAX))
        cells.append(Cell("table5", f"n={n}", "sse", sse, r.sse,
                          TOL_SSE_BUNDLED))
    return cells


def reproduce_table7(cfg=None):
    grid = EvalGrid.from_spec("arrhenius")
    cells = []
    eps_by_model = {}
    for model, (sse, eps_max) in TABLE7.items():
        r = report(model, grid, **({"cfg": cfg} if cfg else {}))
        eps_by_model[model] = r.eps_max_abs
        tol = (TOL_ARRHENIUS_BASELINE if model in ("J", "O", "SY")
               else TOL_EPS_MAX)
        tol_sse = (TOL_ARRHENIUS_BASELINE if model in ("J", "O", "SY")
                   else _sse_tol(model))
        cells.append(Cell("table7", model, "sse", sse, r.sse, tol_sse))
        cells.append(Cell("table7", model, "eps_max", eps_max,
                          r.eps_max_abs, tol))
    ordered = all(
        eps_by_model[a] < eps_by_model[b]
        for a, b in zip(TABLE7_ORDERING, TABLE7_ORDERING[1:]))
    return cells, ordered


def reproduce_table10(cfg=None):
    kw = {"cfg": cfg} if cfg else {}
    cells = []
    for grid_name, col in (("paper-narrow", 0), ("paper-eval", 1)):
        grid = EvalGrid.from_spec(grid_name)
        for model, pairs in TABLE10.items():
            sse, eps_max = pairs[col]
            r = report(model, grid, **kw)
            cells.append(Cell("table10", model, f"sse[{grid_name}]",
                              sse, r.sse, _sse_tol(model)))
            cells.append(Cell("table10", model, f"eps_max[{grid_name}]",
                              eps_max, r.eps_max_abs, TOL_EPS_MAX))
    r = report("X", EvalGrid.from_spec("paper-narrow"), **kw)
    cells.append(Cell("table10", "X", "eps_max[tabulated m]",
                      TABLE10_X_EPS_MAX, r.eps_max_abs, TOL_EPS_MAX))
    return cells


def reproduce_all(cfg=None):
    """All cells plus the Arrhenius ordering flag."""
    t5 = reproduce_table5(cfg)
    t7, ordered = reproduce_table7(cfg)
    t10 = reproduce_table10(cfg)
    return t5 + t7 + t10, ordered
