"""Threshold formulas behind the guarantees, as pure functions.

These constants say where the asymptotic arguments switch on.  They are
evaluated exactly (arbitrary-precision rationals) whenever the exponents
work out to integers, and via logarithms otherwise; the feasibility flag
records whether a value is desk-scale (at most 10^6).  Surfacing them keeps
the test suite honest about which regimes are and are not reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

DESK_SCALE_LIMIT = 10**6


def _frac(value) -> Fraction:
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


@dataclass(frozen=True)
class ThresholdReport:
    name: str
    parameters: dict
    value: Fraction | None  # exact value when the exponent is integral
    log10: float
    exact: bool
    feasible_at_desk_scale: bool

    def approx(self) -> float:
        if self.value is not None:
            return float(self.value) if self.log10 < 300 else math.inf
        return 10.0**self.log10 if self.log10 < 300 else math.inf


def _power_report(name: str, params: dict, base: Fraction, exponent: Fraction, scale: Fraction) -> ThresholdReport:
    """scale * base**exponent, exact when the exponent is an integer."""
    if base <= 0:
        raise DomainError(f"{name}: base must be positive")
    log10 = float(
        math.log10(scale.numerator) - math.log10(scale.denominator)
        + float(exponent) * (math.log10(base.numerator) - math.log10(base.denominator))
    )
    if exponent.denominator == 1:
        value = scale * base ** int(exponent)
        feasible = value <= DESK_SCALE_LIMIT
        return ThresholdReport(name, params, value, log10, True, feasible)
    return ThresholdReport(name, params, None, log10, False, log10 <= 6)


def edge_disjoint_guarantee_threshold(eps) -> Fraction:
    """Smallest colour count at which the edge-disjoint (1+eps) guarantee is
    in force: 10^20 * eps^(-16/eps).  Exact rational arithmetic; raises on
    non-integral exponents (use the report form for those).
    """
    report = edge_disjoint_guarantee_report(eps)
    if report.value is None:
        raise DomainError(
            "16/eps is not an integer; exact evaluation impossible "
            "(threshold_table reports the magnitude instead)"
        )
    return report.value


def edge_disjoint_guarantee_report(eps) -> ThresholdReport:
    eps = _frac(eps)
    if not (0 < eps <= 1):
        raise DomainError("eps must be in (0, 1]")
    return _power_report(
        "edge_disjoint_guarantee_threshold",
        {"eps": eps},
        base=eps,
        exponent=-16 / eps,
        scale=Fraction(10) ** 20,
    )


def threshold_table(eps, m=None, k=None, k1=None) -> tuple[ThresholdReport, ...]:
    """Every named threshold at the given parameters, with feasibility flags."""
    eps = _frac(eps)
    if not (0 < eps <= 1):
        raise DomainError("eps must be in (0, 1]")
    reports = [edge_disjoint_guarantee_report(eps)]

    def exact_entry(name: str, params: dict, value: Fraction) -> ThresholdReport:
        if value > 0:
            log10 = math.log10(value.numerator) - math.log10(value.denominator)
        else:
            log10 = -math.inf
        return ThresholdReport(name, params, value, log10, True, value <= DESK_SCALE_LIMIT)

    connected_d = 40 / eps**2
    rainbow_d = 1280 / eps**2
    reports.append(exact_entry("connected_set_diameter", {"eps": eps}, connected_d))
    reports.append(exact_entry("rainbow_connected_set_diameter", {"eps": eps}, rainbow_d))
    if m is not None:
        reports.append(
            exact_entry(
                "two_hop_degree_threshold",
                {"eps": eps, "m": m},
                (5 * m + 4) / eps**2,
            )
        )
    if k is not None:
        reports.append(
            exact_entry(
                "connected_set_min_order", {"eps": eps, "k": k}, 32 * k / eps**2
            )
        )
        reports.append(
            exact_entry(
                "rainbow_connected_set_min_order",
                {"eps": eps, "k": k},
                1800 * k / eps**4,
            )
        )
        reports.append(
            exact_entry(
                "midpoint_bundle_size",
                {"eps": eps, "k": k},
                9 * rainbow_d + 3 * k,
            )
        )
    if k1 is not None:
        reports.append(
            exact_entry(
                "freeness_decay",
                {"eps0": eps, "k1": k1},
                Fraction(1, 10**6) * eps**2 * k1,
            )
        )
        reports.append(
            exact_entry("pin_budget_growth", {"eps0": eps}, 30 / eps)
        )
    reports.append(
        _power_report(
            "initial_pin_budget",
            {"eps": eps},
            base=Fraction(1, 10**6) / eps**2,
            exponent=2 / eps,
            scale=Fraction(1),
        )
    )
    return tuple(reports)
