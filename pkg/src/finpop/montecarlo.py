"""Seeded replicate runner: empirical MSEs, relative efficiencies, interval
lengths and coverage for a grid of (design, estimator, functional) cells.

Every replicate draws one sample per design present in the grid, from a
dedicated random substream derived by mixing (seed, sample size, design id,
replicate index) through ``numpy.random.SeedSequence``; all cells sharing a
design evaluate the identical draw.  Reports are therefore pure functions of
the configuration, independent of execution order or worker count.

Replicates where an estimate is undefined (infeasible calibration, undefined
correlation, ...) are dropped from that cell's moments and counted as
failures instead of propagating NaNs into the ratios.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import nan

import numpy as np

from .designs import DesignKind, draw
from .errors import FinpopError, ParameterError
from .estimators import EstimatorKind, valid_pair
from .functionals import Functional, FunctionalKind, plug_in, population_value
from .inference import (
    confidence_interval,
    jackknife_bc,
    supports_variance_estimate,
    variance_estimate,
)
from .population import Population

__all__ = [
    "Cell",
    "ExperimentConfig",
    "CellResult",
    "REEntry",
    "ExperimentReport",
    "empirical_mse",
    "relative_efficiency",
    "run_experiment",
]

_DESIGN_ID = {
    DesignKind.SRSWOR: 0,
    DesignKind.LMS: 1,
    DesignKind.RAO_SAMPFORD: 2,
    DesignKind.RHC: 3,
}


@dataclass(frozen=True)
class Cell:
    """One (design, estimator, functional) combination under study."""

    design: DesignKind
    estimator: EstimatorKind
    functional: Functional

    def label(self) -> str:
        return f"{self.estimator}/{self.design}/{self.functional.name}"


@dataclass(frozen=True)
class ExperimentConfig:
    """Inputs of one simulation study.

    ``baseline`` indexes the cell whose MSE sits in the denominator of every
    reported relative efficiency (subject cell); pass ``re_pairs`` for an
    explicit list of (subject, reference) cell index pairs instead.
    """

    population: Population
    cells: tuple[Cell, ...]
    sample_sizes: tuple[int, ...]
    replicates: int
    seed: int
    ci_level: float = 0.95
    jackknife: bool = False
    baseline: int | None = 0
    re_pairs: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        object.__setattr__(self, "sample_sizes", tuple(int(n) for n in self.sample_sizes))
        if self.re_pairs is not None:
            object.__setattr__(
                self, "re_pairs", tuple((int(a), int(b)) for a, b in self.re_pairs)
            )
        if not self.cells:
            raise ParameterError("at least one cell is required")
        if len(set(self.cells)) != len(self.cells):
            raise ParameterError("cells must be distinct")
        if self.replicates < 1:
            raise ParameterError("replicates must be at least 1")
        if self.seed < 0:
            raise ParameterError("seed must be a nonnegative integer")
        if not 0 < self.ci_level < 1:
            raise ParameterError("ci_level must lie strictly between 0 and 1")
        N = self.population.n_units
        for n in self.sample_sizes:
            if not 2 <= n < N:
                raise ParameterError(f"sample size {n} invalid for N={N}")
        for cell in self.cells:
            if not valid_pair(cell.estimator, cell.design):
                raise ParameterError(
                    f"invalid cell {cell.label()}: estimator/design mismatch"
                )
            if cell.functional.kind in (
                FunctionalKind.CORRELATION,
                FunctionalKind.REGRESSION,
            ) and cell.estimator not in (EstimatorKind.HAJEK, EstimatorKind.PEML):
                raise ParameterError(
                    f"invalid cell {cell.label()}: this functional requires the "
                    "Hajek or PEML estimator"
                )
            if cell.functional.d != self.population.d:
                raise ParameterError(
                    f"cell {cell.label()} expects d={cell.functional.d} study "
                    f"coordinates; population has d={self.population.d}"
                )
        if self.baseline is not None and not 0 <= self.baseline < len(self.cells):
            raise ParameterError("baseline must index a cell")
        if self.re_pairs is not None:
            for a, b in self.re_pairs:
                if not (0 <= a < len(self.cells) and 0 <= b < len(self.cells)):
                    raise ParameterError("re_pairs must index cells")


def empirical_mse(estimates, truth: float) -> float:
    """Mean squared deviation of the estimates from the true value."""
    arr = np.asarray(list(estimates), dtype=float)
    if arr.size == 0:
        raise ParameterError("empirical MSE of an empty list is undefined")
    return float(np.mean((arr - truth) ** 2))


def relative_efficiency(mse_subject: float, mse_reference: float) -> float:
    """MSE(reference cell) / MSE(subject cell); > 1 favors the subject."""
    if mse_subject <= 0:
        raise ParameterError("subject-cell MSE must be positive for a ratio")
    return mse_reference / mse_subject


@dataclass
class CellResult:
    """Per-(cell, n) Monte Carlo summary."""

    cell: Cell
    n: int
    truth: float
    replicates: int
    failures: int
    mean_estimate: float
    mse: float
    ci_count: int
    coverage: float
    ci_mean_length: float
    ci_sd_length: float
    bc_failures: int | None = None
    bc_mean: float | None = None
    bc_mse: float | None = None

    @property
    def flagged(self) -> bool:
        """More than half the replicates failed; treat the cell with suspicion."""
        return self.failures > self.replicates / 2


@dataclass(frozen=True)
class REEntry:
    n: int
    subject: Cell
    reference: Cell
    value: float


@dataclass
class ExperimentReport:
    """Everything a benchmark run produced, keyed by cell and sample size."""

    seed: int
    replicates: int
    cells: list[CellResult] = field(default_factory=list)
    relative_efficiencies: list[REEntry] = field(default_factory=list)

    def result_for(self, cell: Cell, n: int) -> CellResult:
        for r in self.cells:
            if r.cell == cell and r.n == n:
                return r
        raise KeyError(f"no result for {cell.label()} at n={n}")

    def re_for(self, subject: Cell, reference: Cell, n: int) -> float:
        for e in self.relative_efficiencies:
            if e.subject == subject and e.reference == reference and e.n == n:
                return e.value
        raise KeyError(
            f"no relative efficiency for {subject.label()} vs "
            f"{reference.label()} at n={n}"
        )

    def summary(self) -> str:
        lines = [f"seed={self.seed} replicates={self.replicates}", "", "cells:"]
        for r in self.cells:
            line = (
                f"  {r.cell.label():34s} n={r.n:<5d} truth={r.truth:.6g} "
                f"mean={r.mean_estimate:.6g} mse={r.mse:.6g} fail={r.failures}"
            )
            if r.flagged:
                line += " FLAGGED"
            if r.ci_count:
                line += (
                    f" cover={r.coverage:.6g} ci_len={r.ci_mean_length:.6g}"
                    f" (sd {r.ci_sd_length:.6g})"
                )
            if r.bc_mse is not None:
                line += f" bc_mse={r.bc_mse:.6g}"
            lines.append(line)
        if self.relative_efficiencies:
            lines += ["", "relative efficiencies (reference MSE / subject MSE):"]
            for e in self.relative_efficiencies:
                lines.append(
                    f"  n={e.n:<5d} {e.subject.label()} vs "
                    f"{e.reference.label():34s} RE={e.value:.6g}"
                )
        return "\n".join(lines)


def _replicate_rng(seed: int, n: int, design: DesignKind, replicate: int):
    ss = np.random.SeedSequence([seed, n, _DESIGN_ID[design], replicate])
    return np.random.default_rng(ss)


@dataclass
class _Accumulator:
    estimates: list[float] = field(default_factory=list)
    failures: int = 0
    lengths: list[float] = field(default_factory=list)
    covered: int = 0
    bc_estimates: list[float] = field(default_factory=list)
    bc_failures: int = 0


def _run_one_replicate(
    cfg: ExperimentConfig,
    n: int,
    replicate: int,
    designs_needed: list[DesignKind],
    truths: list[float],
) -> list[tuple[float | None, tuple[float, bool] | None, float | None]]:
    """One replicate: per cell (estimate | None, (ci length, covered) | None,
    bias-corrected estimate | None)."""
    pop = cfg.population
    draws = {
        design: draw(design, pop, n, _replicate_rng(cfg.seed, n, design, replicate))
        for design in designs_needed
    }
    out = []
    for cell, truth in zip(cfg.cells, truths):
        sample = draws[cell.design]
        try:
            est = plug_in(cell.functional, cell.estimator, sample, pop)
        except FinpopError:
            out.append((None, None, None))
            continue
        ci_info = None
        if supports_variance_estimate(cell.estimator, cell.design):
            try:
                var = variance_estimate(sample, pop, cell.functional, cell.estimator)
                ci = confidence_interval(est, max(var, 0.0), n, cfg.ci_level)
                ci_info = (ci.length, ci.contains(truth))
            except FinpopError:
                ci_info = None
        bc = None
        if cfg.jackknife:
            try:
                bc = jackknife_bc(sample, pop, cell.functional, cell.estimator)
            except FinpopError:
                bc = None
        out.append((est, ci_info, bc))
    return out


def run_experiment(cfg: ExperimentConfig, threads: int = 1) -> ExperimentReport:
    """Run the full replicate grid and assemble the report.

    ``threads`` caps concurrent replicate evaluation; the report is identical
    for any value because every replicate owns an independent substream and
    results are reduced in replicate order.
    """
    pop = cfg.population
    designs_needed = list(dict.fromkeys(c.design for c in cfg.cells))
    truths = {c: population_value(c.functional, pop) for c in cfg.cells}
    truths_list = [truths[c] for c in cfg.cells]
    report = ExperimentReport(seed=cfg.seed, replicates=cfg.replicates)

    for n in cfg.sample_sizes:
        accs = {cell: _Accumulator() for cell in cfg.cells}

        def task(replicate: int):
            return _run_one_replicate(cfg, n, replicate, designs_needed, truths_list)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                all_results = list(pool.map(task, range(cfg.replicates)))
        else:
            all_results = [task(r) for r in range(cfg.replicates)]

        for per_cell in all_results:
            for cell, (est, ci_info, bc) in zip(cfg.cells, per_cell):
                acc = accs[cell]
                if est is None:
                    acc.failures += 1
                else:
                    acc.estimates.append(est)
                if ci_info is not None:
                    acc.lengths.append(ci_info[0])
                    acc.covered += bool(ci_info[1])
                if cfg.jackknife:
                    if bc is None:
                        acc.bc_failures += 1
                    else:
                        acc.bc_estimates.append(bc)

        for cell in cfg.cells:
            acc = accs[cell]
            truth = truths[cell]
            n_ok = len(acc.estimates)
            ci_count = len(acc.lengths)
            result = CellResult(
                cell=cell,
                n=n,
                truth=truth,
                replicates=cfg.replicates,
                failures=acc.failures,
                mean_estimate=float(np.mean(acc.estimates)) if n_ok else nan,
                mse=empirical_mse(acc.estimates, truth) if n_ok else nan,
                ci_count=ci_count,
                coverage=acc.covered / ci_count if ci_count else nan,
                ci_mean_length=float(np.mean(acc.lengths)) if ci_count else nan,
                ci_sd_length=(
                    float(np.std(acc.lengths, ddof=1)) if ci_count > 1 else nan
                ),
            )
            if cfg.jackknife:
                result.bc_failures = acc.bc_failures
                result.bc_mean = (
                    float(np.mean(acc.bc_estimates)) if acc.bc_estimates else nan
                )
                result.bc_mse = (
                    empirical_mse(acc.bc_estimates, truth)
                    if acc.bc_estimates
                    else nan
                )
            report.cells.append(result)

        pairs: list[tuple[int, int]] = []
        if cfg.re_pairs is not None:
            pairs = list(cfg.re_pairs)
        elif cfg.baseline is not None:
            pairs = [
                (cfg.baseline, j)
                for j in range(len(cfg.cells))
                if j != cfg.baseline
            ]
        for a, b in pairs:
            mse_a = report.result_for(cfg.cells[a], n).mse
            mse_b = report.result_for(cfg.cells[b], n).mse
            if not (np.isfinite(mse_a) and np.isfinite(mse_b)) or mse_a <= 0:
                value = nan
            else:
                value = relative_efficiency(mse_a, mse_b)
            report.relative_efficiencies.append(
                REEntry(n=n, subject=cfg.cells[a], reference=cfg.cells[b], value=value)
            )

    return report
