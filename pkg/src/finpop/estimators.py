"""The seven mean estimators, applied coordinatewise to transformed study
values, plus the calibrated-weight solver behind the pseudo empirical
likelihood (PEML) estimator.

Closed forms, with d(i,s) the design weight (1/(N pi_i) for pi-based draws,
G_i/(N x_i) for RHC draws) and Xbar the known population mean of x:

  HT / RHC        sum_s d_i h_i
  Hajek           sum_s d_i h_i / sum_s d_i
  ratio           (sum_s d_i h_i / sum_s d_i x_i) * Xbar
  product         (sum_s d_i h_i)(sum_s d_i x_i) / Xbar
  GREG            weighted-least-squares calibration on x with weights d_i
  PEML            sum_s c_i h_i, with c maximizing sum_s d_i log c_i subject
                  to sum c_i = 1 and sum c_i (x_i - Xbar) = 0
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .designs import DesignKind, SampleDraw
from .errors import (
    CombinationError,
    ConvergenceError,
    DegenerateError,
    InfeasibleError,
    ParameterError,
)
from .population import Population

__all__ = [
    "EstimatorKind",
    "DesignWeights",
    "CalibratedWeights",
    "valid_pair",
    "design_weights",
    "peml_weights",
    "estimate_mean",
]


class EstimatorKind(enum.Enum):
    HT = "ht"
    HAJEK = "hajek"
    RATIO = "ratio"
    PRODUCT = "product"
    RHC_EST = "rhc"
    GREG = "greg"
    PEML = "peml"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


_PI_KINDS = frozenset(
    {
        EstimatorKind.HT,
        EstimatorKind.HAJEK,
        EstimatorKind.RATIO,
        EstimatorKind.PRODUCT,
        EstimatorKind.GREG,
        EstimatorKind.PEML,
    }
)
_RHC_KINDS = frozenset(
    {EstimatorKind.RHC_EST, EstimatorKind.GREG, EstimatorKind.PEML}
)


def valid_pair(kind: EstimatorKind, design: DesignKind) -> bool:
    """Whether ``kind`` is defined on draws from ``design``."""
    if design is DesignKind.RHC:
        return kind in _RHC_KINDS
    return kind in _PI_KINDS


def _require_valid(kind: EstimatorKind, design: DesignKind) -> None:
    if not valid_pair(kind, design):
        raise CombinationError(
            f"estimator {kind} is not defined under the {design} design"
        )


@dataclass(frozen=True)
class DesignWeights:
    """Per-sampled-unit design weights d(i,s); strictly positive and finite."""

    d: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.d, dtype=float).copy()
        if d.ndim != 1 or d.size == 0:
            raise ParameterError("weights must form a nonempty flat array")
        if not np.all(np.isfinite(d)) or np.any(d <= 0):
            raise ParameterError("design weights must be positive and finite")
        d.setflags(write=False)
        object.__setattr__(self, "d", d)


@dataclass(frozen=True)
class CalibratedWeights:
    """Positive weights summing to one and reproducing the known x mean."""

    c: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).copy()
        if c.ndim != 1 or np.any(c <= 0) or not np.all(np.isfinite(c)):
            raise ParameterError("calibrated weights must be positive and finite")
        if abs(float(c.sum()) - 1.0) > 1e-8:
            raise ParameterError("calibrated weights must sum to one")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)


def design_weights(sample: SampleDraw, pop: Population) -> DesignWeights:
    """d(i,s) = 1/(N pi_i) for pi-based draws, G_i/(N x_i) under RHC."""
    N = pop.n_units
    if sample.design.is_pi_based:
        return DesignWeights(1.0 / (N * sample.pi))
    x_s = pop.x[sample.indices]
    return DesignWeights(sample.g_totals / (N * x_s))


def peml_weights(
    d: DesignWeights | np.ndarray,
    x_sample: np.ndarray,
    x_bar: float,
    *,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> CalibratedWeights:
    """Maximize sum d_i log c_i subject to sum c = 1 and sum c (x - x_bar) = 0.

    Reduces to a one-dimensional dual root: c_i = d~_i / (1 + lam u_i) with
    u_i = x_i - x_bar and lam the unique zero of
    psi(lam) = sum d~_i u_i / (1 + lam u_i) on the interval keeping every
    denominator positive.  psi is strictly decreasing there, so a safeguarded
    Newton iteration (bisection fallback inside the bracket) always converges.
    """
    dv = d.d if isinstance(d, DesignWeights) else np.asarray(d, dtype=float)
    x_sample = np.asarray(x_sample, dtype=float)
    if dv.shape != x_sample.shape or dv.ndim != 1:
        raise ParameterError("weights and sample x values must align")
    if dv.size < 2:
        raise ParameterError("need at least two sampled units")
    dt = dv / dv.sum()
    u = x_sample - x_bar
    u_scale = float(np.max(np.abs(u))) if u.size else 0.0

    if u_scale == 0.0:
        # every sampled x equals x_bar: the x constraint is vacuous
        return CalibratedWeights(dt)
    if not (u.min() < 0 < u.max()):
        raise InfeasibleError(
            "x_bar lies outside the open hull of the sampled x values; "
            "no positive calibrated weights exist"
        )

    lo = -1.0 / u.max()  # psi -> +inf as lam -> lo+
    hi = -1.0 / u.min()  # psi -> -inf as lam -> hi-

    def psi(lam: float) -> tuple[float, float]:
        den = 1.0 + lam * u
        val = float(np.sum(dt * u / den))
        slope = -float(np.sum(dt * u * u / (den * den)))
        return val, slope

    lam = 0.0
    val, slope = psi(lam)
    blo, bhi = lo, hi
    target = tol * max(1.0, u_scale)
    best_lam, best_val = lam, abs(val)
    converged = abs(val) <= target
    for _ in range(max_iter):
        if val == 0.0:
            break
        if val > 0:
            blo = lam
        else:
            bhi = lam
        step = lam - val / slope if slope != 0 else np.nan
        new_lam = step if blo < step < bhi else 0.5 * (blo + bhi)
        if new_lam == lam:
            break  # float fixpoint; no further progress possible
        lam = new_lam
        val, slope = psi(lam)
        if abs(val) < best_val:
            best_lam, best_val = lam, abs(val)
        if abs(val) <= target:
            converged = True
            # keep polishing toward the float fixpoint so the weight
            # constraints hold as tightly as the arithmetic allows
    if not converged:
        raise ConvergenceError(
            f"calibration root search did not converge in {max_iter} iterations"
        )
    lam = best_lam

    c = dt / (1.0 + lam * u)
    resid_sum = abs(float(c.sum()) - 1.0)
    resid_x = abs(float(c @ x_sample) - x_bar) / max(1.0, abs(x_bar))
    if resid_sum > 1e-10 or resid_x > 1e-10 or np.any(c <= 0):
        raise ConvergenceError(
            f"calibration residuals too large (sum: {resid_sum:.2e}, "
            f"x: {resid_x:.2e})"
        )
    return CalibratedWeights(c)


def estimate_mean(
    kind: EstimatorKind,
    sample: SampleDraw,
    pop: Population,
    h_values: np.ndarray,
) -> float | np.ndarray:
    """Estimate the population mean of h given its values at the sampled units.

    ``h_values`` may be (n,) or (n, p); the estimate has matching shape
    (scalar or (p,)).  Each column is treated as its own study variable.
    """
    _require_valid(kind, sample.design)
    h = np.asarray(h_values, dtype=float)
    scalar = h.ndim == 1
    if scalar:
        h = h[:, None]
    if h.shape[0] != sample.n:
        raise ParameterError("h_values must have one row per sampled unit")

    d = design_weights(sample, pop).d
    x_s = pop.x[sample.indices]
    x_bar = pop.x_bar()
    dh = d @ h  # (p,)

    if kind in (EstimatorKind.HT, EstimatorKind.RHC_EST):
        est = dh
    elif kind is EstimatorKind.HAJEK:
        est = dh / d.sum()
    elif kind is EstimatorKind.RATIO:
        est = dh / (d @ x_s) * x_bar
    elif kind is EstimatorKind.PRODUCT:
        est = dh * (d @ x_s) / x_bar
    elif kind is EstimatorKind.GREG:
        dsum = d.sum()
        h_star = dh / dsum
        x_star = (d @ x_s) / dsum
        xc = x_s - x_star
        denom = d @ (xc * xc)
        if denom <= 0:
            raise DegenerateError(
                "weighted x variance is zero; regression calibration undefined"
            )
        beta = ((d * xc) @ (h - h_star)) / denom
        est = h_star + beta * (x_bar - x_star)
    elif kind is EstimatorKind.PEML:
        c = peml_weights(design_weights(sample, pop), x_s, x_bar).c
        est = c @ h
    else:  # pragma: no cover - exhaustive enum
        raise CombinationError(f"unknown estimator {kind}")

    return float(est[0]) if scalar else est
