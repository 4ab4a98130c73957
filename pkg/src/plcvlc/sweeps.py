"""Parameter sweeps, figure presets, validation runs and their CSV output.

CSV files start with a comment block that echoes the full effective parameter
set; every number is written in shortest round-trip form, so a sweep with a
fixed config and seed is byte-identical across runs and worker counts.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from . import plc_link, relay, vlc_link
from .config import echo_lines
from .errors import ParameterError
from .montecarlo import Estimate, McConfig, estimate
from .relay import RelaySystemParams

__all__ = [
    "SWEEPABLE_VARIABLES",
    "FIGURE_PRESETS",
    "SweepSpec",
    "SweepRecord",
    "RunReport",
    "ValidationRow",
    "with_variable",
    "run_sweep",
    "report_csv",
    "run_validation",
    "validation_lines",
]

# Swept name -> (hop, params field); None targets the system level.
SWEEPABLE_VARIABLES: dict[str, tuple[str | None, str]] = {
    "relay_power": ("vlc", "tx_power_w"),
    "led_height": ("vlc", "height_m"),
    "cell_radius": ("vlc", "cell_radius_m"),
    "rate_threshold": (None, "rate_threshold_bits"),
    "source_power": ("plc", "tx_power_w"),
    "plc_distance": ("plc", "distance_m"),
}

CLOSED_VS_QUAD_RTOL = 1e-8


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable, with an optional second family variable."""

    variable: str
    start: float
    stop: float
    steps: int
    family_variable: str | None = None
    family_values: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.variable not in SWEEPABLE_VARIABLES:
            raise ParameterError(
                f"unknown sweep variable {self.variable!r}; "
                f"expected one of {sorted(SWEEPABLE_VARIABLES)}"
            )
        if not self.start < self.stop:
            raise ParameterError("SweepSpec.start must be strictly below stop")
        if self.steps < 2:
            raise ParameterError("SweepSpec.steps must be at least 2")
        if self.family_variable is not None:
            if self.family_variable not in SWEEPABLE_VARIABLES:
                raise ParameterError(f"unknown family variable {self.family_variable!r}")
            if self.family_variable == self.variable:
                raise ParameterError("family variable must differ from the swept variable")
            if not self.family_values:
                raise ParameterError("family_values must be nonempty when a family is given")
        elif self.family_values:
            raise ParameterError("family_values given without a family_variable")

    def grid(self) -> list[float]:
        step = (self.stop - self.start) / (self.steps - 1)
        return [self.start + i * step for i in range(self.steps)]


@dataclass(frozen=True)
class SweepRecord:
    """One grid point of a sweep: analytic values, sampled values, flags."""

    swept_value: float
    family_value: float | None
    plc_capacity: float
    vlc_capacity: float
    e2e_capacity_bound: float
    plc_outage: float
    vlc_outage: float
    e2e_outage: float
    mc_e2e_capacity: Estimate
    mc_e2e_outage: Estimate

    @property
    def outage_agrees(self) -> bool:
        return abs(self.e2e_outage - self.mc_e2e_outage.mean) <= 3.0 * self.mc_e2e_outage.std_error

    @property
    def capacity_within_bound(self) -> bool:
        return (
            self.mc_e2e_capacity.mean
            <= self.e2e_capacity_bound + 3.0 * self.mc_e2e_capacity.std_error
        )


@dataclass(frozen=True)
class RunReport:
    spec: SweepSpec
    records: tuple[SweepRecord, ...]

    @property
    def all_agree(self) -> bool:
        return all(r.outage_agrees and r.capacity_within_bound for r in self.records)


FIGURE_PRESETS: dict[int, SweepSpec] = {
    # Capacity vs relay power, one curve per LED height.
    2: SweepSpec("relay_power", 0.02, 0.5, 13, "led_height", (2.15, 2.5, 3.0)),
    # Capacity vs relay power, one curve per cell radius.
    3: SweepSpec("relay_power", 0.02, 0.5, 13, "cell_radius", (2.5, 3.6, 4.5)),
    # Outage vs rate threshold, one curve per LED height.
    4: SweepSpec("rate_threshold", 1.05, 1.8, 11, "led_height", (2.15, 2.5, 3.0)),
    # Outage vs rate threshold, one curve per relay power.
    5: SweepSpec("rate_threshold", 0.4, 2.2, 10, "relay_power", (0.05, 0.1, 0.2)),
}


def with_variable(system: RelaySystemParams, name: str, value: float) -> RelaySystemParams:
    """A copy of the system with one sweepable variable replaced."""
    hop, field = SWEEPABLE_VARIABLES[name]
    if hop is None:
        return dataclasses.replace(system, **{field: value})
    if hop == "plc":
        return dataclasses.replace(system, plc=dataclasses.replace(system.plc, **{field: value}))
    return dataclasses.replace(system, vlc=dataclasses.replace(system.vlc, **{field: value}))


def _evaluate_point(
    system: RelaySystemParams,
    mc: McConfig,
    swept_value: float,
    family_value: float | None,
    workers: int,
) -> SweepRecord:
    threshold = relay.rate_to_snr_threshold(system.rate_threshold_bits, system.duplex_factor)
    cap_plc = plc_link.avg_capacity(system.plc)
    cap_vlc = vlc_link.avg_capacity_closed(system.vlc)
    return SweepRecord(
        swept_value=swept_value,
        family_value=family_value,
        plc_capacity=cap_plc,
        vlc_capacity=cap_vlc,
        e2e_capacity_bound=system.duplex_factor * min(cap_plc, cap_vlc),
        plc_outage=plc_link.outage(system.plc, threshold),
        vlc_outage=vlc_link.outage(system.vlc, threshold),
        e2e_outage=relay.e2e_outage_analytic(system),
        mc_e2e_capacity=estimate("e2e_avg_capacity", system, mc, workers=workers),
        mc_e2e_outage=estimate("e2e_outage", system, mc, workers=workers),
    )


def run_sweep(
    spec: SweepSpec,
    system: RelaySystemParams,
    mc: McConfig,
    workers: int = 1,
) -> RunReport:
    """Evaluate every grid point (times every family value, when present)."""
    records: list[SweepRecord] = []
    family: tuple[float | None, ...] = spec.family_values or (None,)
    for swept_value in spec.grid():
        for family_value in family:
            point = with_variable(system, spec.variable, swept_value)
            if spec.family_variable is not None:
                point = with_variable(point, spec.family_variable, family_value)
            records.append(_evaluate_point(point, mc, swept_value, family_value, workers))
    return RunReport(spec=spec, records=tuple(records))


_CSV_COLUMNS = (
    "swept_variable",
    "swept_value",
    "family_variable",
    "family_value",
    "plc_capacity_analytic",
    "vlc_capacity_analytic",
    "e2e_capacity_bound",
    "plc_outage_analytic",
    "vlc_outage_analytic",
    "e2e_outage_analytic",
    "e2e_capacity_mc",
    "e2e_capacity_mc_se",
    "e2e_outage_mc",
    "e2e_outage_mc_se",
    "e2e_outage_agrees",
    "e2e_capacity_within_bound",
)


def report_csv(report: RunReport, system: RelaySystemParams, mc: McConfig) -> str:
    """Render a run report as CSV text with the parameter echo header."""
    spec = report.spec
    lines = ["# plcvlc sweep report"]
    lines.extend(echo_lines(system, mc))
    lines.append(f"# sweep.variable = {spec.variable}")
    lines.append(f"# sweep.start = {spec.start!r}")
    lines.append(f"# sweep.stop = {spec.stop!r}")
    lines.append(f"# sweep.steps = {spec.steps!r}")
    if spec.family_variable is not None:
        lines.append(f"# sweep.family_variable = {spec.family_variable}")
        lines.append(
            "# sweep.family_values = " + ",".join(repr(v) for v in spec.family_values)
        )
    lines.append(",".join(_CSV_COLUMNS))
    for r in report.records:
        row = (
            spec.variable,
            repr(r.swept_value),
            spec.family_variable or "",
            "" if r.family_value is None else repr(r.family_value),
            repr(r.plc_capacity),
            repr(r.vlc_capacity),
            repr(r.e2e_capacity_bound),
            repr(r.plc_outage),
            repr(r.vlc_outage),
            repr(r.e2e_outage),
            repr(r.mc_e2e_capacity.mean),
            repr(r.mc_e2e_capacity.std_error),
            repr(r.mc_e2e_outage.mean),
            repr(r.mc_e2e_outage.std_error),
            "true" if r.outage_agrees else "false",
            "true" if r.capacity_within_bound else "false",
        )
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ValidationRow:
    """One analytic-versus-reference comparison from a validation run."""

    name: str
    analytic: float
    reference: float
    std_error: float
    agrees: bool


def run_validation(
    system: RelaySystemParams,
    mc: McConfig,
    workers: int = 1,
) -> tuple[list[ValidationRow], bool]:
    """Compare all six metrics against Monte Carlo, plus closed form vs quadrature.

    A metric row agrees when |analytic - sampled| <= 3 standard errors; the
    closed-form row agrees when it matches the adaptive quadrature to
    ``CLOSED_VS_QUAD_RTOL`` relative.
    """
    threshold = relay.rate_to_snr_threshold(system.rate_threshold_bits, system.duplex_factor)
    analytic = {
        "plc_avg_capacity": plc_link.avg_capacity(system.plc),
        "vlc_avg_capacity": vlc_link.avg_capacity_closed(system.vlc),
        "e2e_avg_capacity": relay.e2e_avg_capacity_numeric(system),
        "plc_outage": plc_link.outage(system.plc, threshold),
        "vlc_outage": vlc_link.outage(system.vlc, threshold),
        "e2e_outage": relay.e2e_outage_analytic(system),
    }
    rows: list[ValidationRow] = []
    for metric, value in analytic.items():
        sampled = estimate(metric, system, mc, workers=workers)
        rows.append(
            ValidationRow(
                name=metric,
                analytic=value,
                reference=sampled.mean,
                std_error=sampled.std_error,
                agrees=abs(value - sampled.mean) <= 3.0 * sampled.std_error,
            )
        )
    closed = vlc_link.avg_capacity_closed(system.vlc)
    quad = vlc_link.avg_capacity_quad(system.vlc)
    rows.append(
        ValidationRow(
            name="vlc_capacity_closed_vs_quad",
            analytic=closed,
            reference=quad,
            std_error=0.0,
            agrees=math.isclose(closed, quad, rel_tol=CLOSED_VS_QUAD_RTOL, abs_tol=1e-300),
        )
    )
    return rows, all(row.agrees for row in rows)


def validation_lines(rows: list[ValidationRow]) -> list[str]:
    """Human-readable table for a validation run."""
    width = max(len(r.name) for r in rows)
    lines = [f"{'metric':<{width}}  {'analytic':>14}  {'reference':>14}  {'std_error':>12}  result"]
    for r in rows:
        verdict = "agree" if r.agrees else "DISAGREE"
        lines.append(
            f"{r.name:<{width}}  {r.analytic:>14.8g}  {r.reference:>14.8g}  "
            f"{r.std_error:>12.3g}  {verdict}"
        )
    return lines
