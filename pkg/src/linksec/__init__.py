"""Secrecy capacity of surface- and relay-assisted links under eavesdropping.

Closed-form ergodic/secrecy capacity evaluators for three architectures
(intelligent reflecting surface, decode-and-forward relay, fixed-gain
amplify-and-forward relay), an independent Monte Carlo channel simulator,
and a sweep/validation CLI.
"""

from .capacity import (
    CapacityEstimate,
    affg_ccdf,
    affg_ergodic_capacity,
    affg_secrecy,
    affg_snr_constant,
    df_ccdf,
    df_ergodic_capacity,
    df_secrecy,
    ergodic_capacity_irs,
    irs_secrecy,
    mgf_irs_element,
    secrecy_capacity,
)
from .channels import (
    FadingParams,
    GammaGammaParams,
    Geometry,
    ScenarioIrs,
    ScenarioRelay,
    gamma_ccdf_series,
    gamma_cdf,
    gamma_gamma_pdf,
    gamma_pdf,
    pathloss,
    sample_gamma,
    sample_gamma_gamma,
    snr_scaled_params,
)
from .config import ConfigError, ParsedConfig, parse_config, parse_config_text, reference_config
from .montecarlo import (
    McConfig,
    mc_branch_estimates,
    mc_ergodic_affg,
    mc_ergodic_df,
    mc_ergodic_irs,
    mc_secrecy,
)
from .quadrature import (
    AccuracyError,
    ContourDivergenceError,
    ContourSpec,
    QuadratureResult,
    integrate_finite,
    integrate_semi_infinite,
    integrate_vertical_contour,
)
from .specfun import (
    bessel_k,
    log_gamma,
    meijer_g_1_2_2_1,
    meijer_g_2_0_0_2,
    meijer_g_2_1_1_2,
    tricomi_u_integer,
    upper_incomplete_gamma,
)
from .sweep import (
    SweepRow,
    SweepSpec,
    figure_preset,
    read_rows_csv,
    rows_to_csv,
    run_sweep,
    validate,
)

__version__ = "0.1.0"
