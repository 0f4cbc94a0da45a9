"""How many positive results are false positives?

Bounds in terms of the significance level and the positivity ratio, the
one-sided z-test, the two-point Bayesian (UMPBT) model, and seeded Monte
Carlo checks of all of them.
"""

from .bayes import (
    BfInterval,
    BhPrior,
    bin_prob,
    false_positive_prob,
    gamma_star,
    h0_given_bf_in,
    johnson_table,
    log_bayes_factor,
    positive_prob,
    posterior_h0,
    posterior_hmu,
    umpbt_mu,
    umpbt_prior,
)
from .errors import DegenerateError, DomainError, QuadratureError
from .montecarlo import BhWorldConfig, WorldConfig, simulate_bh, simulate_world, verify_bound
from .normal import std_cdf, std_pdf, std_quantile, std_sf
from .positivity import (
    PositivityScenario,
    bound_table,
    decompose,
    fp_among_positives,
    fp_bound,
    format_percent,
    guidance,
    min_ratio_for_target,
    positivity_ratio,
)
from .ztest import GaussianZTest, SampleSummary, confidence_interval, decide, p_value, rejection_threshold

__version__ = "0.1.0"
