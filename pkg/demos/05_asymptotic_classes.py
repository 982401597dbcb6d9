"""Equivalence classes of (estimator, design) pairs and their asymptotic MSEs.

Pairs in the same class share one large-sample MSE.  Evaluated on a concrete
population, class 1 (GREG/PEML under SRSWOR or LMS) is never worse than
classes 2-4, which is the ordering the Monte Carlo benchmark reproduces.
"""

from finpop import (
    AsymptoticContext,
    DesignKind,
    EstimatorKind,
    MEAN,
    MomentSummary,
    check_c6,
    default_univariate_spec,
    delta_sq,
    equivalence_class,
    generate_univariate,
    valid_pair,
)

pop = generate_univariate(default_univariate_spec(), 5000, seed=4)
n = 100
ctx = AsymptoticContext.compute(pop, MEAN, n)

print(f"N = {pop.n_units}, n = {n}: gamma = {ctx.gamma:.6f} "
      f"(n*gamma = {n * ctx.gamma:.4f}), phi = {ctx.phi:.2f}\n")

print("class MSEs of sqrt(n) * (estimate - mean):")
for cid in range(1, 10):
    print(f"  class {cid}: {delta_sq(cid, ctx):12.1f}")

print("\n(estimator, design) -> class:")
for design in DesignKind:
    row = [
        f"{kind.value}:{equivalence_class(kind, design)}"
        for kind in EstimatorKind
        if valid_pair(kind, design)
    ]
    print(f"  {design.value:8s} {'  '.join(row)}")

print("\nwith a vanishing sampling fraction, the RHC classes merge:")
print("  PEML under RHC ->",
      equivalence_class(EstimatorKind.PEML, DesignKind.RHC, lambda_zero=True))
print("  RHC estimator  ->",
      equivalence_class(EstimatorKind.RHC_EST, DesignKind.RHC, lambda_zero=True))

m = MomentSummary.from_values(pop.x / pop.x.std())
print(f"\nmoment predicate on the standardized size variable: "
      f"xi = {m.xi:.3f}, satisfied = {check_c6(m)}")
