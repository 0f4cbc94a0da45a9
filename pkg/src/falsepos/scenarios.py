"""Deterministic demonstrations of why the automatic alternative ``mu(gamma, n)`` is unsound.

* ``extreme-bf``: a mean of 100 still "supports" an alternative mean of 0.165.
* ``gamma-dependence``: two analysts with different cuts back different alternatives
  on the same data.
* ``pooling``: merging two identical experiments changes the supported alternative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bayes import BhPrior, bf_threshold_in_xbar, log_bayes_factor, posterior_hmu, umpbt_mu
from .errors import DegenerateError, DomainError
from .ztest import SampleSummary

__all__ = ["ScenarioReport", "SCENARIOS", "extreme_bf", "gamma_dependence", "pooling_inconsistency"]

_LN10 = math.log(10.0)


@dataclass(frozen=True)
class ScenarioReport:
    scenario_id: str
    inputs: dict
    findings: list[tuple[str, float]] = field(default_factory=list)
    narrative: str = ""

    def __post_init__(self):
        if not self.findings:
            raise ValueError("a scenario report needs at least one finding")

    def finding(self, label: str) -> float:
        for name, value in self.findings:
            if name == label:
                return value
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario_id,
            "inputs": dict(self.inputs),
            "findings": {name: value for name, value in self.findings},
            "narrative": self.narrative,
        }


def _check_gamma(gamma):
    if not gamma > 1.0:
        raise DomainError(f"gamma must exceed 1, got {gamma!r}")


def extreme_bf(gamma: float, n: int, xbar: float) -> ScenarioReport:
    _check_gamma(gamma)
    mu = umpbt_mu(gamma, n)
    lbf = log_bayes_factor(BhPrior(mu, n), SampleSummary(n, xbar))
    log10_bf = lbf / _LN10
    findings = [
        ("mu", mu),
        ("log_bf", lbf),
        ("log10_bf", log10_bf),
        ("posterior_hmu", posterior_hmu(lbf)),
        ("xbar_minus_mu", abs(xbar - mu)),
    ]
    narrative = (
        f"With gamma={gamma:g} and n={n} the automatic alternative is mu={mu:.4g}. "
        f"An observed mean of {xbar:g} gives BF = 10^{log10_bf:.1f} in favour of mu={mu:.4g}, "
        f"a value {abs(xbar - mu):.4g} away from what was measured."
    )
    return ScenarioReport("extreme-bf", {"gamma": gamma, "n": n, "xbar": xbar}, findings, narrative)


def gamma_dependence(gamma1: float, gamma2: float, n: int) -> ScenarioReport:
    """Two cuts on the same data; both analysts claim support once ``xbar`` clears both cuts."""
    _check_gamma(gamma1)
    _check_gamma(gamma2)
    if gamma1 == gamma2:
        raise DegenerateError("the two thresholds coincide; nothing to compare")
    mu1, mu2 = umpbt_mu(gamma1, n), umpbt_mu(gamma2, n)
    # under the automatic alternative the cut BF = gamma sits exactly at xbar = mu
    t1 = bf_threshold_in_xbar(BhPrior(mu1, n), gamma1)
    t2 = bf_threshold_in_xbar(BhPrior(mu2, n), gamma2)
    joint = max(t1, t2)
    findings = [
        ("mu1", mu1),
        ("mu2", mu2),
        ("threshold1", t1),
        ("threshold2", t2),
        ("joint_support_from", joint),
    ]
    narrative = (
        f"Cuts {gamma1:g} and {gamma2:g} with n={n} give alternatives mu={mu1:.4g} and mu={mu2:.4g}. "
        f"Every observed mean at or above {joint:.4g} is strong support for both, "
        "although the two alternatives differ."
    )
    return ScenarioReport(
        "gamma-dependence", {"gamma1": gamma1, "gamma2": gamma2, "n": n}, findings, narrative
    )


def pooling_inconsistency(gamma: float, n: int) -> ScenarioReport:
    _check_gamma(gamma)
    mu_single = umpbt_mu(gamma, n)
    mu_pooled = umpbt_mu(gamma, 2 * n)
    findings = [
        ("mu_single", mu_single),
        ("mu_pooled", mu_pooled),
        ("ratio", mu_single / mu_pooled),
    ]
    narrative = (
        f"Each of two experiments with n={n} tests mu={mu_single:.4g}; pooled into 2n={2 * n} "
        f"they test mu={mu_pooled:.4g}, smaller by a factor sqrt(2)."
    )
    return ScenarioReport("pooling", {"gamma": gamma, "n": n}, findings, narrative)


SCENARIOS = {
    "extreme-bf": extreme_bf,
    "gamma-dependence": gamma_dependence,
    "pooling": pooling_inconsistency,
}
