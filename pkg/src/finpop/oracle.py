"""Exact design expectations on tiny populations.

Walks the full sample space of an enumerable design and evaluates a plug-in
estimator at every support point, yielding its exact design expectation and
MSE.  This is the ground truth used to verify unbiasedness claims and to
sanity-check the asymptotic MSE formulas at desk scale.  Exact mode tolerates
no undefined estimate: any failure on a support point propagates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .asymptotics import AsymptoticContext, delta_sq, equivalence_class
from .designs import DesignKind, enumerate_design
from .errors import FinpopError
from .estimators import EstimatorKind
from .functionals import Functional, plug_in, population_value
from .population import Population

__all__ = ["ExactSummary", "exact_moments", "exact_vs_formula"]


@dataclass(frozen=True)
class ExactSummary:
    """Exact design expectation and MSE of a plug-in estimator."""

    expectation: float
    mse: float
    support_size: int
    truth: float

    @property
    def bias(self) -> float:
        return self.expectation - self.truth

    @property
    def variance(self) -> float:
        return self.mse - self.bias**2


def exact_moments(
    design: DesignKind,
    pop: Population,
    n: int,
    kind: EstimatorKind,
    f: Functional,
) -> ExactSummary:
    """Exact expectation and MSE over the design's full sample space."""
    support = enumerate_design(design, pop, n)
    truth = population_value(f, pop)
    values = np.empty(len(support))
    probs = np.empty(len(support))
    for i, (sample, prob) in enumerate(support):
        try:
            values[i] = plug_in(f, kind, sample, pop)
        except FinpopError as exc:
            raise FinpopError(
                f"estimate undefined on support point {i} "
                f"(units {sample.indices.tolist()}): {exc}"
            ) from exc
        probs[i] = prob
    expectation = float(probs @ values)
    mse = float(probs @ (values - truth) ** 2)
    return ExactSummary(
        expectation=expectation, mse=mse, support_size=len(support), truth=truth
    )


def exact_vs_formula(
    design: DesignKind,
    pop: Population,
    n: int,
    f: Functional,
    kind: EstimatorKind,
) -> tuple[float, float]:
    """(exact n * MSE, class asymptotic MSE) for directional comparison."""
    summary = exact_moments(design, pop, n, kind, f)
    ctx = AsymptoticContext.compute(pop, f, n)
    return n * summary.mse, delta_sq(equivalence_class(kind, design), ctx)
