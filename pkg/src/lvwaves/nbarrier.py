"""Closed-form maximum-principle bounds on alpha*u + beta*v and the barrier
construction behind them.

For positive weights alpha, beta, every positive traveling-wave solution of
the two-species system under strong or weak competition satisfies

    q_lower <= alpha u(x) + beta v(x) <= q_upper

with

    q_lower = min[alpha min(s1/c11, s2/c21), beta min(s2/c22, s1/c12)]
              * min(d1/d2, d2/d1)
    q_upper = max[alpha max(s1/c11, s2/c21), beta max(s2/c22, s1/c12)]
              * max(d1/d2, d2/d1).

The proof traps the orbit in the (u, v) plane between three lines (two
levels of alpha d1 u + beta d2 v and one of alpha u + beta v).  Under strong
competition those lines have explicit levels, tabulated here in four cases
per side; the combined weighted kinetics

    F(u, v) = alpha u (s1 - c11 u - c12 v) + beta v (s2 - c21 u - c22 v)

enters through the sign of its quadratic discriminant.

All bound computations stay in exact rational arithmetic when the inputs are
exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import RegimeError
from .model import Regime, TwoSpeciesParams, classify_regime
from .profiles import WaveProfile
from .rational import Number
from .report import CheckItem, CheckReport

__all__ = [
    "BoundPair",
    "ConicKind",
    "ConicClass",
    "BoundSide",
    "BarrierLines",
    "WaveProfile",
    "F_value",
    "lower_bound",
    "upper_bound",
    "bounds",
    "conic_classify",
    "construct_barrier",
    "verify_bounds_on_profile",
]

#: Relative tolerance (against the dominant squared term) below which the
#: conic discriminant counts as zero.
PARABOLA_TOL = 1e-9


@dataclass(frozen=True)
class BoundPair:
    """Two-sided bound on alpha*u + beta*v for one weight choice."""

    q_lower: Number
    q_upper: Number
    alpha: Number
    beta: Number


class ConicKind(Enum):
    HYPERBOLA = "Hyperbola"
    PARABOLA = "Parabola"
    ELLIPSE = "Ellipse"


@dataclass(frozen=True)
class ConicClass:
    discriminant: Number
    kind: ConicKind


class BoundSide(Enum):
    LOWER = "LowerBound"
    UPPER = "UpperBound"


@dataclass(frozen=True)
class BarrierLines:
    """One barrier instance: levels lambda1, lambda2 of alpha d1 u + beta d2 v
    and level eta of alpha u + beta v, plus which tabulated case produced it."""

    lambda1: Number
    lambda2: Number
    eta: Number
    side: BoundSide
    case_id: str

    def __post_init__(self):
        if self.side is BoundSide.LOWER and not self.lambda1 <= self.lambda2:
            raise ValueError("lower barrier requires lambda1 <= lambda2")
        if self.side is BoundSide.UPPER and not self.lambda1 >= self.lambda2:
            raise ValueError("upper barrier requires lambda1 >= lambda2")


def _check_weights(alpha: Number, beta: Number) -> None:
    if alpha <= 0 or beta <= 0:
        raise ValueError(f"weights must be positive, got alpha={alpha}, beta={beta}")


def _require_strong_or_weak(p: TwoSpeciesParams) -> Regime:
    regime = classify_regime(p)
    if regime not in (Regime.STRONG, Regime.WEAK):
        raise RegimeError(
            f"bounds require strong or weak competition, classification is {regime.value}"
        )
    return regime


def F_value(p: TwoSpeciesParams, alpha: Number, beta: Number, u: Number, v: Number) -> Number:
    """Weighted sum of the two kinetic terms at the point (u, v)."""
    _check_weights(alpha, beta)
    return alpha * u * (p.sigma1 - p.c11 * u - p.c12 * v) + beta * v * (
        p.sigma2 - p.c21 * u - p.c22 * v
    )


def lower_bound(p: TwoSpeciesParams, alpha: Number, beta: Number) -> Number:
    """Closed-form lower bound q_lower on alpha*u + beta*v."""
    _check_weights(alpha, beta)
    _require_strong_or_weak(p)
    inner = min(
        alpha * min(p.sigma1 / p.c11, p.sigma2 / p.c21),
        beta * min(p.sigma2 / p.c22, p.sigma1 / p.c12),
    )
    return inner * min(p.d1 / p.d2, p.d2 / p.d1)


def upper_bound(p: TwoSpeciesParams, alpha: Number, beta: Number) -> Number:
    """Closed-form upper bound q_upper on alpha*u + beta*v."""
    _check_weights(alpha, beta)
    _require_strong_or_weak(p)
    inner = max(
        alpha * max(p.sigma1 / p.c11, p.sigma2 / p.c21),
        beta * max(p.sigma2 / p.c22, p.sigma1 / p.c12),
    )
    return inner * max(p.d1 / p.d2, p.d2 / p.d1)


def bounds(p: TwoSpeciesParams, alpha: Number, beta: Number) -> BoundPair:
    return BoundPair(
        q_lower=lower_bound(p, alpha, beta),
        q_upper=upper_bound(p, alpha, beta),
        alpha=alpha,
        beta=beta,
    )


def conic_classify(
    p: TwoSpeciesParams, alpha: Number, beta: Number, tol: float = PARABOLA_TOL
) -> ConicClass:
    """Classify the quadratic curve F(u, v) = 0 by its discriminant.

    D = (alpha c12 + beta c21)^2 - 4 alpha beta c11 c22.  |D| within ``tol``
    of zero relative to the squared term classifies as a parabola.  Under
    strong competition D is provably positive (always a hyperbola).
    """
    _check_weights(alpha, beta)
    cross = alpha * p.c12 + beta * p.c21
    disc = cross * cross - 4 * alpha * beta * p.c11 * p.c22
    if abs(disc) <= tol * cross * cross:
        kind = ConicKind.PARABOLA
    elif disc > 0:
        kind = ConicKind.HYPERBOLA
    else:
        kind = ConicKind.ELLIPSE
    return ConicClass(discriminant=disc, kind=kind)


def construct_barrier(
    p: TwoSpeciesParams, alpha: Number, beta: Number, side: BoundSide
) -> BarrierLines:
    """Explicit barrier-line levels under strong competition.

    The case tables branch on the diffusion ordering d2 >= d1 and on one
    weighted cross product per side.  The upper-side case (i) level eta
    carries the beta factor (the dimensionally consistent choice matching
    the companion lower-side tables); see the package notes on this point.
    Outside strong competition no explicit table is available and
    :class:`RegimeError` is raised.
    """
    _check_weights(alpha, beta)
    regime = classify_regime(p)
    if regime is not Regime.STRONG:
        raise RegimeError(
            f"explicit barrier tables require strong competition, classification is {regime.value}"
        )
    d1, d2 = p.d1, p.d2
    s1, s2 = p.sigma1, p.sigma2
    if side is BoundSide.LOWER:
        if d2 >= d1:
            if beta * s1 * p.c21 * d2 >= alpha * s2 * p.c12 * d1:
                lam1 = alpha * s2 * d1 * d1 / (p.c21 * d2)
                lam2 = alpha * s2 * d1 / p.c21
                eta = alpha * s2 * d1 / (p.c21 * d2)
                case = "i"
            else:
                lam1 = beta * s1 * d1 / p.c12
                lam2 = beta * s1 * d2 / p.c12
                eta = beta * s1 / p.c12
                case = "ii"
        else:
            if beta * s1 * p.c21 * d2 >= alpha * s2 * p.c12 * d1:
                lam1 = alpha * s2 * d2 / p.c21
                lam2 = alpha * s2 * d1 / p.c21
                eta = alpha * s2 / p.c21
                case = "iii"
            else:
                lam1 = beta * s1 * d2 * d2 / (p.c12 * d1)
                lam2 = beta * s1 * d2 / p.c12
                eta = beta * s1 * d2 / (p.c12 * d1)
                case = "iv"
    else:
        if d2 >= d1:
            if beta * s2 * p.c11 * d2 >= alpha * s1 * p.c22 * d1:
                lam1 = beta * s2 * d2 * d2 / (p.c22 * d1)
                lam2 = beta * s2 * d2 / p.c22
                eta = beta * s2 * d2 / (p.c22 * d1)
                case = "i"
            else:
                lam1 = alpha * s1 * d2 / p.c11
                lam2 = alpha * s1 * d1 / p.c11
                eta = alpha * s1 / p.c11
                case = "ii"
        else:
            if beta * s2 * p.c11 * d2 >= alpha * s1 * p.c22 * d1:
                lam1 = beta * s2 * d1 / p.c22
                lam2 = beta * s2 * d2 / p.c22
                eta = beta * s2 / p.c22
                case = "iii"
            else:
                lam1 = alpha * s1 * d1 * d1 / (p.c11 * d2)
                lam2 = alpha * s1 * d1 / p.c11
                eta = alpha * s1 * d1 / (p.c11 * d2)
                case = "iv"
    return BarrierLines(lambda1=lam1, lambda2=lam2, eta=eta, side=side, case_id=case)


def verify_bounds_on_profile(
    profile: WaveProfile, alpha: Number, beta: Number, bound_pair: BoundPair
) -> CheckReport:
    """Pointwise audit of the two-sided bound on a sampled profile.

    Reports the extrema of alpha*u + beta*v over the grid and the signed
    margins to each bound.  The min/max reductions are order independent, so
    partitioning the grid across workers would give identical results.
    """
    _check_weights(alpha, beta)
    combo = float(alpha) * profile.u + float(beta) * profile.v
    i_min = int(np.argmin(combo))
    i_max = int(np.argmax(combo))
    lo = float(combo[i_min])
    hi = float(combo[i_max])
    lower_margin = lo - float(bound_pair.q_lower)
    upper_margin = float(bound_pair.q_upper) - hi
    items = (
        CheckItem(
            name="lower",
            passed=lower_margin >= 0,
            margin=lower_margin,
            details={
                "side": "lower",
                "extremum": lo,
                "argmin_x": float(profile.x[i_min]),
                "bound": float(bound_pair.q_lower),
            },
        ),
        CheckItem(
            name="upper",
            passed=upper_margin >= 0,
            margin=upper_margin,
            details={
                "side": "upper",
                "extremum": hi,
                "argmax_x": float(profile.x[i_max]),
                "bound": float(bound_pair.q_upper),
            },
        ),
    )
    passed = all(it.passed for it in items)
    verdict = "bounds hold on the sampled profile" if passed else "bound violated"
    return CheckReport(title="profile-bounds", passed=passed, items=items, verdict=verdict)
