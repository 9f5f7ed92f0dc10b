"""Grid scans, figure datasets and table verification, plus CSV/JSON output."""

import io
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._validation import check_distribution, check_positive_int, check_tau
from .information import SNAPSHOT_COLUMNS, info_curves
from .montecarlo import McConfig
from .rates import RATE_COLUMNS, rate_curves
from .thresholds import (
    DEFAULT_TAU_MAX,
    I_MAX_MODES,
    PANELS,
    QUBIT_PRIORS,
    QUTRIT_PRIORS,
    TABLE_QUBIT,
    TABLE_QUTRIT,
    reproduce_tables,
)

__all__ = [
    "ConfigError",
    "ScanConfig",
    "FigurePanel",
    "FigureDataset",
    "TableCheck",
    "FIGURES",
    "OUTPUT_KINDS",
    "TABLE_TOLERANCES",
    "run_scan",
    "scan_columns",
    "emit_figure_data",
    "emit_tables",
    "verify_tables",
    "format_csv",
    "format_float",
]

OUTPUT_KINDS = ("snapshots", "rates", "thresholds", "mc")
FORMATS = ("csv", "json")


class ConfigError(ValueError):
    """Invalid scan configuration; the message names the offending field."""


def _field_error(name, exc):
    return ConfigError(f"{name}: {exc}")


@dataclass(frozen=True)
class ScanConfig:
    prior: tuple
    tau_min: float = 0.0
    tau_max: float = DEFAULT_TAU_MAX
    points: int = 501
    outputs: tuple = ("snapshots",)
    i_max_mode: str = "window"
    mc: Optional[McConfig] = None
    format: str = "csv"

    def __post_init__(self):
        try:
            prior = check_distribution(self.prior)
        except ValueError as exc:
            raise _field_error("prior", exc) from None
        object.__setattr__(self, "prior", tuple(float(p) for p in prior))
        for name in ("tau_min", "tau_max"):
            try:
                value = check_tau(getattr(self, name), name=name)
            except ValueError as exc:
                raise _field_error(name, exc) from None
            if not isinstance(value, float):
                raise ConfigError(f"{name}: must be a number")
            object.__setattr__(self, name, value)
        if not self.tau_min < self.tau_max:
            raise ConfigError(
                f"tau_min: must be < tau_max ({self.tau_min!r} >= {self.tau_max!r})"
            )
        try:
            check_positive_int(self.points, "points")
        except ValueError as exc:
            raise _field_error("points", exc) from None
        if self.points < 2:
            raise ConfigError("points: need at least 2 grid points")
        outputs = (self.outputs,) if isinstance(self.outputs, str) else tuple(self.outputs)
        unknown = [o for o in outputs if o not in OUTPUT_KINDS]
        if unknown or not outputs:
            raise ConfigError(f"outputs: expected a non-empty subset of {OUTPUT_KINDS}, got {list(outputs)}")
        # canonical order so equal sets compare equal
        object.__setattr__(self, "outputs", tuple(o for o in OUTPUT_KINDS if o in outputs))
        if self.i_max_mode not in I_MAX_MODES:
            raise ConfigError(f"i_max_mode: expected one of {I_MAX_MODES}, got {self.i_max_mode!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format: expected one of {FORMATS}, got {self.format!r}")
        if "mc" in self.outputs and self.mc is None:
            raise ConfigError("mc: outputs include 'mc' but no mc section was given")

    @property
    def grid(self):
        return np.linspace(self.tau_min, self.tau_max, self.points)

    def to_dict(self):
        out = {
            "prior": list(self.prior),
            "tau_min": self.tau_min,
            "tau_max": self.tau_max,
            "points": self.points,
            "outputs": list(self.outputs),
            "i_max_mode": self.i_max_mode,
            "format": self.format,
        }
        if self.mc is not None:
            mc = self.mc.as_dict()
            mc.pop("prior")
            out["mc"] = mc
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown key(s): {', '.join(unknown)}")
        if "prior" not in data:
            raise ConfigError("prior: required")
        kwargs = dict(data)
        mc = kwargs.pop("mc", None)
        if mc is not None:
            if not isinstance(mc, dict):
                raise ConfigError("mc: must be an object")
            allowed = {"tau", "samples", "seed", "workers"}
            bad = sorted(set(mc) - allowed)
            if bad:
                raise ConfigError(f"mc: unknown key(s): {', '.join(bad)}")
            if "tau" not in mc:
                raise ConfigError("mc.tau: required")
            try:
                kwargs["mc"] = McConfig(prior=tuple(data["prior"]), **mc)
            except (TypeError, ValueError) as exc:
                raise _field_error("mc", exc) from None
        if "outputs" in kwargs and isinstance(kwargs["outputs"], list):
            kwargs["outputs"] = tuple(kwargs["outputs"])
        return cls(**kwargs)

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(data)


def scan_columns(rates=False):
    return SNAPSHOT_COLUMNS + (RATE_COLUMNS if rates else ())


def _columns(prior, taus, rates):
    cols = info_curves(prior, taus)
    if rates:
        r = rate_curves(prior, taus)
        cols.update({k: r[k] for k in RATE_COLUMNS})
    return cols


def run_scan(config):
    """Yield one row (a dict keyed by column name) per grid point, in tau order."""
    rates = "rates" in config.outputs
    cols = _columns(config.prior, config.grid, rates)
    names = scan_columns(rates)
    for i in range(config.points):
        yield {name: float(cols[name][i]) for name in names}


def format_float(x):
    # + 0.0 folds -0.0 into 0.0
    return format(x + 0.0, ".12g")


def format_csv(rows, columns):
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(format_float(row[c]) for c in columns) + "\n")
    return buf.getvalue()


# -- figures -----------------------------------------------------------------

FIGURES = {
    "fig1": (QUBIT_PRIORS, False),
    "fig2": (QUTRIT_PRIORS, False),
    "fig3": (QUBIT_PRIORS, True),
    "fig4": (QUTRIT_PRIORS, True),
}
FIGURE_TAU_MAX = 5.0
FIGURE_POINTS = 501


@dataclass(frozen=True)
class FigurePanel:
    panel: str
    prior: tuple
    columns: tuple
    data: dict = field(repr=False)

    def rows(self):
        for i in range(len(self.data["tau"])):
            yield {c: float(self.data[c][i]) for c in self.columns}


@dataclass(frozen=True)
class FigureDataset:
    figure_id: str
    panels: tuple

    def as_dict(self):
        return {
            "figure": self.figure_id,
            "panels": [
                {
                    "panel": p.panel,
                    "prior": list(p.prior),
                    "rows": list(p.rows()),
                }
                for p in self.panels
            ],
        }


def emit_figure_data(figure_id, points=FIGURE_POINTS, tau_max=FIGURE_TAU_MAX):
    """Curves for the four panels of a figure on ``[0, tau_max]``.

    ``fig1``/``fig2`` carry the static quantities; ``fig3``/``fig4`` add the
    rate columns.
    """
    try:
        priors, rates = FIGURES[figure_id]
    except KeyError:
        raise ValueError(f"unknown figure {figure_id!r}; choose from {sorted(FIGURES)}") from None
    taus = np.linspace(0.0, tau_max, points)
    panels = tuple(
        FigurePanel(
            panel=label,
            prior=tuple(prior),
            columns=scan_columns(rates),
            data=_columns(prior, taus, rates),
        )
        for label, prior in zip(PANELS, priors)
    )
    return FigureDataset(figure_id, panels)


# -- tables ------------------------------------------------------------------

#: Allowed distance from the published values per column.
TABLE_TOLERANCES = (0.02, 0.02, 0.05)
TABLE_COLUMNS = ("tau_fidelity_90", "tau_prev_50", "tau_info_90")


def emit_tables(i_max_mode="window", tau_max=DEFAULT_TAU_MAX):
    return reproduce_tables(QUBIT_PRIORS, QUTRIT_PRIORS, i_max_mode, tau_max)


@dataclass(frozen=True)
class TableCheck:
    table: str
    panel: str
    column: str
    computed: Optional[float]
    published: float
    tolerance: float

    @property
    def passed(self):
        return self.computed is not None and abs(self.computed - self.published) <= self.tolerance

    def line(self):
        got = "not reached" if self.computed is None else f"{self.computed:.4f}"
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.table}({self.panel}) {self.column}: "
            f"computed {got}, published {self.published:.3f}, tol {self.tolerance:g}"
        )


def verify_tables(i_max_mode="window", tau_max=DEFAULT_TAU_MAX):
    """Compare computed thresholds to the published tables, cell by cell."""
    qubit, qutrit = emit_tables(i_max_mode, tau_max)
    checks = []
    for table, reports, published in (
        ("qubit", qubit, TABLE_QUBIT),
        ("qutrit", qutrit, TABLE_QUTRIT),
    ):
        for panel, report, row in zip(PANELS, reports, published):
            for col, got, want, tol in zip(TABLE_COLUMNS, report.as_tuple(), row, TABLE_TOLERANCES):
                checks.append(TableCheck(table, panel, col, got, want, tol))
    return checks
