"""Parameter sweeps, CSV emission, and analytic-vs-Monte-Carlo validation.

A sweep varies one scenario parameter over a grid and records, for every
(grid value, architecture, method) combination, the secrecy capacity and
the two per-receiver ergodic capacities.  Grid points are independent and
may be evaluated concurrently; rows are emitted in a deterministic order
(sorted by value, architecture, method) so repeated runs produce
byte-identical files.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import capacity, channels, montecarlo
from .capacity import CapacityEstimate
from .channels import ScenarioIrs
from .montecarlo import McConfig
from .quadrature import AccuracyError, ContourDivergenceError

__all__ = [
    "ARCHITECTURES",
    "CSV_COLUMNS",
    "METHODS",
    "VARIABLES",
    "SweepRow",
    "SweepSpec",
    "ValidationReport",
    "figure_preset",
    "read_rows_csv",
    "rows_to_csv",
    "run_sweep",
    "validate",
]

ARCHITECTURES = ("irs", "df", "affg")
METHODS = ("analytic", "monte-carlo")
VARIABLES = (
    "tx_power_dbm",
    "eve_distance_m",
    "n_elements",
    "source_surface_distance_m",
)

CSV_COLUMNS = (
    "variable",
    "value",
    "architecture",
    "method",
    "secrecy_bps_hz",
    "ergodic_L",
    "ergodic_E",
    "std_error",
    "status",
)


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    step: float
    architectures: tuple[str, ...] = ARCHITECTURES
    methods: tuple[str, ...] = ("analytic",)

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise ValueError(f"variable must be one of {VARIABLES}")
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.start > self.stop:
            raise ValueError("sweep start must not exceed stop")
        if not self.architectures:
            raise ValueError("at least one architecture is required")
        for arch in self.architectures:
            if arch not in ARCHITECTURES:
                raise ValueError(f"unknown architecture {arch!r}")
        for method in self.methods:
            if method not in METHODS:
                raise ValueError(f"unknown method {method!r}")
        for value in self.grid():
            if self.variable == "n_elements" and (value != int(value) or value < 1):
                raise ValueError("n_elements sweeps must visit positive integers")
            elif self.variable != "tx_power_dbm" and value <= 0:
                raise ValueError(f"{self.variable} sweep values must be positive")

    def grid(self) -> list[float]:
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(count)]


@dataclass(frozen=True)
class SweepRow:
    variable: str
    value: float
    architecture: str
    method: str
    secrecy_bps_hz: float
    ergodic_l: float
    ergodic_e: float
    std_error: float
    status: str = "ok"


def _apply_variable(scenario, variable: str, value: float):
    if scenario is None:
        return None
    if variable == "tx_power_dbm":
        return dataclasses.replace(scenario, tx_power_dbm=value)
    if variable == "eve_distance_m":
        geo = dataclasses.replace(scenario.geometry, d_node_eve=value)
        return dataclasses.replace(scenario, geometry=geo)
    if variable == "source_surface_distance_m":
        geo = dataclasses.replace(scenario.geometry, d_source_node=value)
        return dataclasses.replace(scenario, geometry=geo)
    if variable == "n_elements":
        if isinstance(scenario, ScenarioIrs):
            return dataclasses.replace(scenario, n_elements=int(value))
        return scenario
    raise ValueError(f"unknown sweep variable {variable!r}")


def _branch_estimates(
    scenario, architecture: str, method: str, mc_cfg: McConfig
) -> tuple[CapacityEstimate, CapacityEstimate]:
    if method == "analytic":
        if architecture == "irs":
            return (
                capacity.ergodic_capacity_irs(scenario, "legit"),
                capacity.ergodic_capacity_irs(scenario, "eve"),
            )
        hops = channels.relay_hop_params(scenario)
        if architecture == "df":
            return (
                capacity.df_ergodic_capacity(hops["first"], hops["legit"]),
                capacity.df_ergodic_capacity(hops["first"], hops["eve"]),
            )
        l = capacity.affg_snr_constant(hops["first"])
        return (
            capacity.affg_ergodic_capacity(hops["first"], hops["legit"], l),
            capacity.affg_ergodic_capacity(hops["first"], hops["eve"], l),
        )
    return montecarlo.mc_branch_estimates(scenario, architecture, mc_cfg)


def _evaluate_point(
    parsed, variable: str, value: float, architecture: str, method: str, mc_cfg: McConfig
) -> SweepRow:
    scenario = (
        _apply_variable(parsed.scenario_irs, variable, value)
        if architecture == "irs"
        else _apply_variable(parsed.scenario_relay, variable, value)
    )
    if scenario is None:
        return SweepRow(
            variable, value, architecture, method,
            math.nan, math.nan, math.nan, math.nan,
            status="error: relay scenario unavailable (non-integer fading shapes)",
        )
    try:
        est_l, est_e = _branch_estimates(scenario, architecture, method, mc_cfg)
    except (AccuracyError, ContourDivergenceError, OverflowError) as exc:
        return SweepRow(
            variable, value, architecture, method,
            math.nan, math.nan, math.nan, math.nan,
            status=f"error: {exc}",
        )
    sec = capacity.secrecy_capacity(est_l, est_e)
    return SweepRow(
        variable,
        value,
        architecture,
        method,
        sec.bits_per_sec_hz,
        est_l.bits_per_sec_hz,
        est_e.bits_per_sec_hz,
        sec.std_error,
    )


def run_sweep(
    spec: SweepSpec,
    parsed,
    mc_cfg: McConfig | None = None,
    workers: int | None = None,
) -> list[SweepRow]:
    """Evaluate every grid point of the sweep; returns deterministic rows.

    Points run concurrently when ``workers`` > 1; ordering and numeric
    content are independent of the degree of parallelism.  Per-point
    numerical failures land in the row's status column instead of aborting
    the sweep.
    """
    mc_cfg = mc_cfg or parsed.mc
    tasks = [
        (value, arch, method)
        for value in spec.grid()
        for arch in spec.architectures
        for method in spec.methods
    ]

    def job(task):
        value, arch, method = task
        return _evaluate_point(parsed, spec.variable, value, arch, method, mc_cfg)

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(job, tasks))
    else:
        rows = [job(task) for task in tasks]
    rows.sort(key=lambda r: (r.value, r.architecture, r.method))
    return rows


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------

def rows_to_csv(rows: list[SweepRow]) -> str:
    """Render rows in the fixed column order at full round-trip precision."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow(
            [
                r.variable,
                repr(float(r.value)),
                r.architecture,
                r.method,
                repr(float(r.secrecy_bps_hz)),
                repr(float(r.ergodic_l)),
                repr(float(r.ergodic_e)),
                repr(float(r.std_error)),
                r.status,
            ]
        )
    return buf.getvalue()


def read_rows_csv(text: str) -> list[SweepRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {header!r}")
    rows = []
    for rec in reader:
        rows.append(
            SweepRow(
                variable=rec[0],
                value=float(rec[1]),
                architecture=rec[2],
                method=rec[3],
                secrecy_bps_hz=float(rec[4]),
                ergodic_l=float(rec[5]),
                ergodic_e=float(rec[6]),
                std_error=float(rec[7]),
                status=rec[8],
            )
        )
    return rows


# ---------------------------------------------------------------------------
# Figure presets
# ---------------------------------------------------------------------------

_FIGURE_IDS = (3, 4, 5, 6)


def figure_preset(
    fig_id: int,
    parsed,
    method: str = "analytic",
    workers: int | None = None,
) -> list[SweepRow]:
    """Qualitative reproductions of the published parameter studies.

    3: secrecy of all three architectures against transmit power;
    4: the two relaying disciplines against power, with their per-receiver
       ergodic capacities (the region-crossing study);
    5: secrecy against the eavesdropper distance at 20 dB;
    6: surface secrecy against the source-surface distance, one series per
       element count (architecture labeled irs-n{N}).
    """
    methods = ("analytic", "monte-carlo") if method == "both" else (method,)
    if fig_id == 3:
        spec = SweepSpec("tx_power_dbm", 0.0, 50.0, 2.0, ARCHITECTURES, methods)
        return run_sweep(spec, parsed, workers=workers)
    if fig_id == 4:
        spec = SweepSpec("tx_power_dbm", 0.0, 50.0, 2.0, ("df", "affg"), methods)
        return run_sweep(spec, parsed, workers=workers)
    if fig_id == 5:
        base = dataclasses.replace(parsed, scenario_irs=dataclasses.replace(parsed.scenario_irs, tx_power_dbm=20.0))
        if parsed.scenario_relay is not None:
            base = dataclasses.replace(
                base, scenario_relay=dataclasses.replace(parsed.scenario_relay, tx_power_dbm=20.0)
            )
        spec = SweepSpec("eve_distance_m", 2.0, 40.0, 2.0, ARCHITECTURES, methods)
        return run_sweep(spec, base, workers=workers)
    if fig_id == 6:
        rows: list[SweepRow] = []
        spec = SweepSpec("source_surface_distance_m", 2.0, 30.0, 2.0, ("irs",), methods)
        for n in (2, 8, 32, 64):
            variant = dataclasses.replace(
                parsed,
                scenario_irs=dataclasses.replace(
                    parsed.scenario_irs, n_elements=n, tx_power_dbm=10.0
                ),
            )
            for row in run_sweep(spec, variant, workers=workers):
                rows.append(dataclasses.replace(row, architecture=f"irs-n{n}"))
        rows.sort(key=lambda r: (r.value, r.architecture, r.method))
        return rows
    raise ValueError(f"figure id must be one of {_FIGURE_IDS}")


# ---------------------------------------------------------------------------
# Analytic vs Monte Carlo validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationRow:
    architecture: str
    tx_power_dbm: float
    receiver: str
    analytic: float
    monte_carlo: float
    std_error: float
    z_score: float
    passed: bool


@dataclass(frozen=True)
class ValidationReport:
    rows: tuple[ValidationRow, ...]
    passed: bool

    def to_text(self) -> str:
        lines = [
            f"{'arch':6} {'P(dB)':>6} {'rx':6} {'analytic':>12} {'monte-carlo':>12} "
            f"{'s.e.':>10} {'z':>8}  result"
        ]
        for r in self.rows:
            lines.append(
                f"{r.architecture:6} {r.tx_power_dbm:6.1f} {r.receiver:6} "
                f"{r.analytic:12.6f} {r.monte_carlo:12.6f} {r.std_error:10.2e} "
                f"{r.z_score:8.2f}  {'ok' if r.passed else 'FAIL'}"
            )
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def validate(
    parsed,
    powers_dbm: tuple[float, ...],
    mc_cfg: McConfig | None = None,
    architectures: tuple[str, ...] = ARCHITECTURES,
    analytic_offset: float = 0.0,
) -> ValidationReport:
    """Compare the closed forms against the simulator on a power grid.

    A point passes when |analytic - MC| <= max(3 s.e., 1% of the analytic
    value, 1e-9 bits); the absolute floor makes points where both methods
    are numerically zero trivially consistent.  ``analytic_offset`` shifts
    every analytic value and exists so the harness itself can be exercised
    (a corrupted value must be flagged).
    """
    mc_cfg = mc_cfg or parsed.mc
    rows: list[ValidationRow] = []
    for power in powers_dbm:
        for arch in architectures:
            scenario = parsed.scenario_irs if arch == "irs" else parsed.scenario_relay
            if scenario is None:
                continue
            scenario = dataclasses.replace(scenario, tx_power_dbm=power)
            ana_l, ana_e = _branch_estimates(scenario, arch, "analytic", mc_cfg)
            mc_l, mc_e = montecarlo.mc_branch_estimates(scenario, arch, mc_cfg)
            for receiver, ana, mc in (("legit", ana_l, mc_l), ("eve", ana_e, mc_e)):
                a = ana.bits_per_sec_hz + analytic_offset
                m = mc.bits_per_sec_hz
                se = mc.std_error
                gap = abs(a - m)
                z = gap / se if se > 0 else (0.0 if gap == 0 else math.inf)
                passed = gap <= max(3.0 * se, 0.01 * abs(a), 1e-9)
                rows.append(
                    ValidationRow(arch, power, receiver, a, m, se, z, passed)
                )
    return ValidationReport(rows=tuple(rows), passed=all(r.passed for r in rows))
