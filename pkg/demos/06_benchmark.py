"""Desk-scale Monte Carlo benchmark of mean estimators across designs.

Reproduces the shape of the published relative-efficiency table: every cell
is compared against PEML under SRSWOR, which ends up the most efficient.
Pass a replicate count to trade speed for precision (default 300; the
acceptance suite runs 1000).
"""

import sys
import time

from finpop import (
    Cell,
    DesignKind,
    EstimatorKind,
    ExperimentConfig,
    MEAN,
    default_univariate_spec,
    generate_univariate,
    run_experiment,
)

replicates = int(sys.argv[1]) if len(sys.argv) > 1 else 300
pop = generate_univariate(default_univariate_spec(), 5000, seed=4)

S, R, H = DesignKind.SRSWOR, DesignKind.RAO_SAMPFORD, DesignKind.RHC
E = EstimatorKind
cells = (
    Cell(S, E.PEML, MEAN), Cell(S, E.GREG, MEAN),
    Cell(R, E.HT, MEAN), Cell(R, E.HAJEK, MEAN),
    Cell(R, E.PEML, MEAN), Cell(R, E.GREG, MEAN),
    Cell(H, E.RHC_EST, MEAN), Cell(H, E.PEML, MEAN), Cell(H, E.GREG, MEAN),
)
cfg = ExperimentConfig(
    population=pop, cells=cells, sample_sizes=(75, 100, 125),
    replicates=replicates, seed=1, baseline=0,
)

t0 = time.perf_counter()
report = run_experiment(cfg)
print(f"{replicates} replicates x 3 sample sizes in "
      f"{time.perf_counter() - t0:.1f}s\n")

print("relative efficiency of PEML under SRSWOR against every other cell")
print("(values above 1 mean PEML/SRSWOR has the smaller empirical MSE)\n")
header = f"{'reference cell':24s}" + "".join(
    f"  n={n:<6d}" for n in cfg.sample_sizes
)
print(header)
for cell in cells[1:]:
    values = [report.re_for(cells[0], cell, n) for n in cfg.sample_sizes]
    print(f"{cell.label():24s}" + "".join(f"  {v:8.4f}" for v in values))

print("\ninterval statistics at n = 125:")
for cell in (cells[0], cells[2], cells[6]):
    r = report.result_for(cell, 125)
    print(f"  {cell.label():24s} coverage {r.coverage:.3f}  "
          f"mean length {r.ci_mean_length:8.2f}")
