"""Deviation reports, model comparisons and the segment-integral helper.

The accuracy metric is the signed relative deviation
eps = g_model / g_oracle - 1, aggregated as max |eps| and SSE (the
unnormalized sum of squared deviations) over a grid.  Grids are
endpoint-inclusive; the named presets reproduce the published point
counts exactly (81 x 97, 41 x 97, 1 x 97).
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from tempint import models
from tempint.oracle import (
    DEFAULT_CONFIG,
    DomainError,
    EvalPoint,
    OracleConfig,
    g_cf,
    h,
)
from tempint.rational import RationalApproximant, rational_eval_h_array

GRID_PRESETS = {
    "paper-eval": "m=-4:4:0.1,x=4:100:1",
    "paper-narrow": "m=-1.5:2.5:0.1,x=4:100:1",
    "arrhenius": "m=0:0:1,x=4:100:1",
    "coarse": "m=-4:4:0.5,x=4:100:4",
}


def _axis_values(lo: float, hi: float, step: float) -> tuple[float, ...]:
    if step <= 0.0:
        raise ValueError(f"step must be positive, got {step}")
    if hi < lo:
        raise ValueError(f"empty range [{lo}, {hi}]")
    values = []
    k = 0
    while True:
        v = lo + k * step
        if v > hi + 1e-9 * max(1.0, abs(hi)):
            break
        values.append(round(v, 12))
        k += 1
    return tuple(values)


@dataclass(frozen=True)
class EvalGrid:
    """Cartesian (m, x) evaluation grid, both endpoints inclusive."""

    m_values: tuple
    x_values: tuple
    spec: str = ""

    @classmethod
    def from_spec(cls, spec: str) -> "EvalGrid":
        """Parse ``m=<lo>:<hi>:<step>,x=<lo>:<hi>:<step>`` or a preset name."""
        if spec in GRID_PRESETS:
            grid = cls.from_spec(GRID_PRESETS[spec])
            return cls(grid.m_values, grid.x_values, spec)
        axes = {}
        for part in spec.split(","):
            name, _, rng = part.partition("=")
            name = name.strip()
            if name not in ("m", "x") or name in axes:
                raise ValueError(f"bad grid spec {spec!r}")
            try:
                lo, hi, step = (float(tok) for tok in rng.split(":"))
            except ValueError:
                raise ValueError(f"bad grid range {part!r}") from None
            axes[name] = _axis_values(lo, hi, step)
        if set(axes) != {"m", "x"}:
            raise ValueError(f"grid spec {spec!r} must define both m and x")
        return cls(axes["m"], axes["x"], spec)

    @property
    def size(self) -> int:
        return len(self.m_values) * len(self.x_values)

    def points(self):
        for m in self.m_values:
            for x in self.x_values:
                yield EvalPoint(m, x)

    def refined(self, factor: int) -> "EvalGrid":
        """Same ranges with each axis step divided by ``factor``."""
        if factor < 1:
            raise ValueError("factor must be >= 1")

        def refine(values):
            if len(values) == 1 or factor == 1:
                return tuple(values)
            step = (values[1] - values[0]) / factor
            return _axis_values(values[0], values[-1], step)

        return EvalGrid(refine(self.m_values), refine(self.x_values),
                        f"{self.spec}/refined{factor}")


_H_CACHE: dict = {}


def oracle_h(point: EvalPoint, cfg: OracleConfig = DEFAULT_CONFIG) -> float:
    """Cached oracle h; safe for concurrent readers (dict get/set of floats)."""
    key = (point.m, point.x, cfg.rel_tol)
    val = _H_CACHE.get(key)
    if val is None:
        val = h(point, cfg)
        _H_CACHE[key] = val
    return val


def oracle_h_row(m: float, x_values, cfg: OracleConfig = DEFAULT_CONFIG):
    return np.array([oracle_h(EvalPoint(m, x), cfg) for x in x_values])


def _model_label(model) -> str:
    if isinstance(model, RationalApproximant):
        return f"fit-n{model.degree}"
    return str(model)


def _model_h_row(model, m: float, x_values):
    xs = np.asarray(x_values, dtype=float)
    if isinstance(model, RationalApproximant):
        return rational_eval_h_array(model, m, xs)
    return np.asarray(models.model_h(model, m, xs), dtype=float)


@dataclass
class DeviationReport:
    model: str
    grid: EvalGrid
    m_lines: tuple             # m values actually evaluated
    eps: np.ndarray            # shape (len(m_lines), len(grid.x_values))
    eps_max_abs: float
    sse: float
    argmax_point: EvalPoint
    footnote: str = ""

    def per_point_rows(self, cfg: OracleConfig = DEFAULT_CONFIG):
        """Rows for the per-point CSV: model,m,x,g_oracle,g_model,eps."""
        for i, m in enumerate(self.m_lines):
            for k, x in enumerate(self.grid.x_values):
                point = EvalPoint(m, x)
                g_oracle = g_cf(point, cfg)
                g_model = g_oracle * (1.0 + self.eps[i, k])
                yield (self.model, m, x, g_oracle, g_model,
                       float(self.eps[i, k]))


def deviation(model, point: EvalPoint,
              cfg: OracleConfig = DEFAULT_CONFIG) -> float:
    """Signed relative deviation g_model/g_oracle - 1 at one point."""
    h_model = float(_model_h_row(model, point.m, [point.x])[0])
    return h_model / oracle_h(point, cfg) - 1.0


def report(model, grid: EvalGrid,
           cfg: OracleConfig = DEFAULT_CONFIG) -> DeviationReport:
    """Full per-point sweep with aggregates.

    Models must cover the whole grid; points outside a model's m-domain
    are a hard error rather than silently skipped.  The X model is the
    published exception: it is evaluated over its tabulated m lines
    only, and the report carries a footnote saying so.
    """
    label = _model_label(model)
    footnote = ""
    m_lines = grid.m_values
    if isinstance(model, str) and model == "X":
        m_lines = tuple(m for m in grid.m_values if models.admits_m("X", m))
        if not m_lines:
            raise models.ModelDomainError("X", grid.m_values[0],
                                          f"m in {sorted(models.X_MODEL_ROWS)}")
        if m_lines != grid.m_values:
            footnote = ("evaluated over tabulated m lines "
                        f"{list(m_lines)} only")
    eps = np.empty((len(m_lines), len(grid.x_values)))
    for i, m in enumerate(m_lines):
        h_model = _model_h_row(model, m, grid.x_values)
        h_true = oracle_h_row(m, grid.x_values, cfg)
        eps[i, :] = h_model / h_true - 1.0
    flat = int(np.argmax(np.abs(eps)))
    i, k = divmod(flat, len(grid.x_values))
    return DeviationReport(
        model=label, grid=grid, m_lines=m_lines, eps=eps,
        eps_max_abs=float(np.abs(eps).max()), sse=float((eps * eps).sum()),
        argmax_point=EvalPoint(m_lines[i], grid.x_values[k]),
        footnote=footnote)


def resolve_model_list(spec, grid: EvalGrid) -> list[str]:
    """Expand a model list; ``all`` means every model defined on the grid."""
    if spec == "all" or spec == ["all"]:
        out = []
        for info in models.list_models():
            if info.tag == "X":
                if any(models.admits_m("X", m) for m in grid.m_values):
                    out.append("X")
            elif all(models.admits_m(info.tag, m) for m in grid.m_values):
                out.append(info.tag)
        return out
    tags = spec if isinstance(spec, (list, tuple)) else spec.split(",")
    return [t.strip() for t in tags if t.strip()]


def compare(model_list, grid: EvalGrid,
            cfg: OracleConfig = DEFAULT_CONFIG) -> list[DeviationReport]:
    """One report per model, sorted by max |eps| ascending."""
    if not model_list:
        raise ValueError("empty model list")
    reports = [report(m, grid, cfg) for m in model_list]
    reports.sort(key=lambda r: r.eps_max_abs)
    return reports


def render_comparison_text(reports) -> str:
    out = io.StringIO()
    out.write(f"{'model':<10} {'points':>7} {'SSE':>10} {'|eps|max':>10} "
              f"{'at (m, x)':>16}\n")
    for r in reports:
        npts = len(r.m_lines) * len(r.grid.x_values)
        mark = " *" if r.footnote else ""
        out.write(f"{r.model:<10} {npts:>7} {r.sse:>10.2E} "
                  f"{r.eps_max_abs:>10.2E} "
                  f"({r.argmax_point.m:g}, {r.argmax_point.x:g}){mark}\n")
    for r in reports:
        if r.footnote:
            out.write(f"* {r.model}: {r.footnote}\n")
    return out.getvalue()


def render_comparison_csv(reports) -> str:
    lines = ["model,grid,points,sse,eps_max,arg_m,arg_x"]
    for r in reports:
        npts = len(r.m_lines) * len(r.grid.x_values)
        lines.append(f"{r.model},{r.grid.spec},{npts},{r.sse!r},"
                     f"{r.eps_max_abs!r},{r.argmax_point.m!r},"
                     f"{r.argmax_point.x!r}")
    return "\n".join(lines) + "\n"


def render_per_point_csv(report_obj: DeviationReport,
                         cfg: OracleConfig = DEFAULT_CONFIG) -> str:
    lines = ["model,m,x,g_oracle,g_model,eps"]
    for tag, m, x, g_o, g_m, eps in report_obj.per_point_rows(cfg):
        lines.append(f"{tag},{m!r},{x!r},{g_o!r},{g_m!r},{eps!r}")
    return "\n".join(lines) + "\n"


def vyazovkin_segment(e_over_r: float, t_lo: float, t_hi: float,
                      model="oracle",
                      cfg: OracleConfig = DEFAULT_CONFIG) -> float:
    """Segment integral (E/R) * [g(0, E/(R*T_hi)) - g(0, E/(R*T_lo))].

    Equals the integral of exp(-E/(R*T)) dT over [t_lo, t_hi].  The
    ``model`` argument selects how g(0, .) is evaluated: "oracle" or any
    model tag / fitted approximant.
    """
    if not 0.0 < t_lo <= t_hi:
        raise DomainError(f"need 0 < T_lo <= T_hi, got [{t_lo}, {t_hi}]")
    if t_lo == t_hi:
        return 0.0
    x_at_hi = e_over_r / t_hi
    x_at_lo = e_over_r / t_lo
    for xv in (x_at_hi, x_at_lo):
        if not 4.0 <= xv <= 100.0:
            raise DomainError(
                f"x = {xv:g} outside the approximation domain [4, 100]; "
                "use oracle mode with in-range temperatures")

    def g0(x):
        point = EvalPoint(0.0, x)
        if model == "oracle":
            return g_cf(point, cfg)
        if isinstance(model, RationalApproximant):
            hv = float(rational_eval_h_array(model, 0.0, np.array([x]))[0])
            return math.exp(-x - 2.0 * math.log(x)) * hv
        return models.eval_model(model, point)

    return e_over_r * (g0(x_at_hi) - g0(x_at_lo))
