"""Flat key-value configuration files describing one physical scenario.

The format is declarative text with dotted section keys, one assignment
per line::

    geometry.d_node_eve = 20.0
    fading.source_node.alpha = 2

A single file describes the shared geometry/fading/power/noise of both
architectures; the surface and relay scenario objects are derived from it.
Parsing validates everything and reports the complete list of violations,
not just the first one found.
"""

from __future__ import annotations

from dataclasses import dataclass

from .channels import FadingParams, Geometry, ScenarioIrs, ScenarioRelay
from .montecarlo import McConfig
from .sweep import ARCHITECTURES, METHODS, VARIABLES, SweepSpec

__all__ = ["ConfigError", "ParsedConfig", "REFERENCE_CONFIG", "parse_config", "parse_config_text"]


class ConfigError(ValueError):
    """Carries every violation found in a configuration file."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__(
            "invalid configuration:\n" + "\n".join(f"  - {v}" for v in self.violations)
        )


@dataclass(frozen=True)
class ParsedConfig:
    scenario_irs: ScenarioIrs
    scenario_relay: ScenarioRelay | None
    sweep: SweepSpec | None
    mc: McConfig


# The documented reference scenario: distances in meters, noise powers in
# the same normalized units as the transmit power, unit-rate fading with
# shape 2 on every hop.  Calibrated so that the qualitative behavior of all
# three architectures (the surface winning at moderate power, the two
# relaying disciplines trading places as power grows) falls inside the
# default 0-50 dB sweep window.
REFERENCE_CONFIG = """\
# Reference scenario
geometry.d_source_node = 13.0
geometry.d_node_legit = 10.0
geometry.d_node_eve = 20.0
geometry.pathloss_exponent = 2.0

fading.source_node.alpha = 2
fading.source_node.beta = 1.0
fading.node_legit.alpha = 2
fading.node_legit.beta = 1.0
fading.node_eve.alpha = 2
fading.node_eve.beta = 1.0

power.tx_dbm = 20.0
noise.relay = 0.01
noise.legit = 0.01
noise.eve = 0.01

irs.n_elements = 4

sweep.variable = tx_power_dbm
sweep.from = 0.0
sweep.to = 50.0
sweep.step = 2.0
sweep.architectures = irs,df,affg
sweep.methods = analytic

mc.samples = 200000
mc.master_seed = 20240915
mc.chunk_size = 65536
"""

_FLOAT_KEYS = {
    "geometry.d_source_node",
    "geometry.d_node_legit",
    "geometry.d_node_eve",
    "geometry.pathloss_exponent",
    "fading.source_node.alpha",
    "fading.source_node.beta",
    "fading.node_legit.alpha",
    "fading.node_legit.beta",
    "fading.node_eve.alpha",
    "fading.node_eve.beta",
    "power.tx_dbm",
    "noise.relay",
    "noise.legit",
    "noise.eve",
    "sweep.from",
    "sweep.to",
    "sweep.step",
}
_INT_KEYS = {"irs.n_elements", "mc.samples", "mc.master_seed", "mc.chunk_size"}
_LIST_KEYS = {"sweep.architectures", "sweep.methods"}
_STR_KEYS = {"sweep.variable"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _LIST_KEYS | _STR_KEYS

_REQUIRED = sorted(
    k
    for k in _ALL_KEYS
    if k.startswith(("geometry.", "fading.", "power.", "noise.", "irs."))
)

_SWEEP_KEYS = ("sweep.variable", "sweep.from", "sweep.to", "sweep.step")

_MC_DEFAULTS = {"mc.samples": 200_000, "mc.master_seed": 20240915, "mc.chunk_size": 65536}

_METHOD_ALIASES = {"mc": "monte-carlo", "montecarlo": "monte-carlo"}


def _parse_lines(text: str, violations: list[str]) -> dict[str, object]:
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            violations.append(f"line {lineno}: expected 'key = value', got {line!r}")
            continue
        key, _, rhs = line.partition("=")
        key = key.strip()
        rhs = rhs.strip()
        if key not in _ALL_KEYS:
            violations.append(f"line {lineno}: unknown key {key!r}")
            continue
        if key in values:
            violations.append(f"line {lineno}: duplicate key {key!r}")
            continue
        try:
            if key in _FLOAT_KEYS:
                values[key] = float(rhs)
            elif key in _INT_KEYS:
                values[key] = int(rhs)
            elif key in _LIST_KEYS:
                values[key] = tuple(part.strip() for part in rhs.split(",") if part.strip())
            else:
                values[key] = rhs
        except ValueError:
            kind = "a number" if key in _FLOAT_KEYS else "an integer"
            violations.append(f"line {lineno}: {key}: expected {kind}, got {rhs!r}")
    return values


def parse_config_text(text: str) -> ParsedConfig:
    """Parse and validate configuration text; raises ConfigError with the
    full violation list on any problem."""
    violations: list[str] = []
    values = _parse_lines(text, violations)

    for key in _REQUIRED:
        if key not in values and key not in _MC_DEFAULTS:
            violations.append(f"{key}: required key is missing")

    def positive(key: str) -> bool:
        if key in values and not values[key] > 0:
            violations.append(f"{key}: must be positive, got {values[key]!r}")
            return False
        return key in values

    for key in (
        "geometry.d_source_node",
        "geometry.d_node_legit",
        "geometry.d_node_eve",
        "geometry.pathloss_exponent",
        "noise.relay",
        "noise.legit",
        "noise.eve",
        "fading.source_node.alpha",
        "fading.source_node.beta",
        "fading.node_legit.alpha",
        "fading.node_legit.beta",
        "fading.node_eve.alpha",
        "fading.node_eve.beta",
    ):
        positive(key)
    if "irs.n_elements" in values and values["irs.n_elements"] < 1:
        violations.append("irs.n_elements: must be a positive integer")

    architectures = values.get("sweep.architectures", ("irs", "df", "affg"))
    for arch in architectures:
        if arch not in ARCHITECTURES:
            violations.append(
                f"sweep.architectures: unknown architecture {arch!r}; "
                f"expected a subset of {','.join(ARCHITECTURES)}"
            )
    methods = tuple(_METHOD_ALIASES.get(m, m) for m in values.get("sweep.methods", ("analytic",)))
    for method in methods:
        if method not in METHODS:
            violations.append(
                f"sweep.methods: unknown method {method!r}; "
                f"expected a subset of {','.join(METHODS)}"
            )

    want_relay = any(a in ("df", "affg") for a in architectures)
    for key in ("fading.source_node.alpha", "fading.node_legit.alpha", "fading.node_eve.alpha"):
        alpha = values.get(key)
        if (
            want_relay
            and isinstance(alpha, float)
            and alpha > 0
            and not float(alpha).is_integer()
        ):
            violations.append(
                f"{key}: relay architectures use series expansions of the "
                f"hop distributions that require an integer shape; got {alpha!r}"
            )

    sweep_given = [k for k in _SWEEP_KEYS if k in values]
    sweep = None
    if sweep_given:
        missing = [k for k in _SWEEP_KEYS if k not in values]
        for key in missing:
            violations.append(f"{key}: required for a sweep section")
        if not missing:
            variable = values["sweep.variable"]
            if variable not in VARIABLES:
                violations.append(
                    f"sweep.variable: unknown variable {variable!r}; "
                    f"expected one of {','.join(VARIABLES)}"
                )
            elif not violations:
                try:
                    sweep = SweepSpec(
                        variable=variable,
                        start=values["sweep.from"],
                        stop=values["sweep.to"],
                        step=values["sweep.step"],
                        architectures=tuple(architectures),
                        methods=methods,
                    )
                except ValueError as exc:
                    violations.append(f"sweep: {exc}")

    if violations:
        raise ConfigError(violations)

    geometry = Geometry(
        d_source_node=values["geometry.d_source_node"],
        d_node_legit=values["geometry.d_node_legit"],
        d_node_eve=values["geometry.d_node_eve"],
        pathloss_exponent=values["geometry.pathloss_exponent"],
    )
    fading_src = FadingParams(values["fading.source_node.alpha"], values["fading.source_node.beta"])
    fading_leg = FadingParams(values["fading.node_legit.alpha"], values["fading.node_legit.beta"])
    fading_eve = FadingParams(values["fading.node_eve.alpha"], values["fading.node_eve.beta"])

    scenario_irs = ScenarioIrs(
        n_elements=values["irs.n_elements"],
        geometry=geometry,
        fading_ts=fading_src,
        fading_sl=fading_leg,
        fading_se=fading_eve,
        tx_power_dbm=values["power.tx_dbm"],
        noise_power_legit=values["noise.legit"],
        noise_power_eve=values["noise.eve"],
    )
    scenario_relay = None
    if all(f.integer_shape for f in (fading_src, fading_leg, fading_eve)):
        scenario_relay = ScenarioRelay(
            geometry=geometry,
            fading_1=fading_src,
            fading_2=fading_leg,
            fading_3=fading_eve,
            tx_power_dbm=values["power.tx_dbm"],
            noise_power_relay=values["noise.relay"],
            noise_power_legit=values["noise.legit"],
            noise_power_eve=values["noise.eve"],
        )

    mc = McConfig(
        samples=values.get("mc.samples", _MC_DEFAULTS["mc.samples"]),
        master_seed=values.get("mc.master_seed", _MC_DEFAULTS["mc.master_seed"]),
        chunk_size=values.get("mc.chunk_size", _MC_DEFAULTS["mc.chunk_size"]),
    )
    return ParsedConfig(
        scenario_irs=scenario_irs,
        scenario_relay=scenario_relay,
        sweep=sweep,
        mc=mc,
    )


def parse_config(path: str) -> ParsedConfig:
    """Parse and validate the configuration file at ``path``."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def reference_config() -> ParsedConfig:
    """The built-in reference scenario used by the figure presets."""
    return parse_config_text(REFERENCE_CONFIG)
