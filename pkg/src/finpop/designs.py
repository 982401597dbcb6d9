"""Sampling designs: SRSWOR, Lahiri-Midzuno-Sen, Rao-Sampford and
Rao-Hartley-Cochran.

Each design can draw a sample (given an externally supplied random
generator), report its inclusion probabilities where those are fixed, and --
except for Rao-Sampford -- enumerate its whole sample space with exact
probabilities for oracle-style verification on tiny populations.

Conventions:
  * unit indices are 0-based positions into the population arrays;
  * pi-based draws carry per-unit inclusion probabilities ``pi``;
  * Rao-Hartley-Cochran draws instead carry ``g_totals``, the x-total of the
    random group each selected unit came from.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import comb, factorial
from typing import Iterator

import numpy as np

from .errors import (
    DrawFailureError,
    EnumerationTooLargeError,
    InfeasibleError,
    ParameterError,
    UnsupportedQueryError,
)
from .population import Population

__all__ = [
    "DesignKind",
    "SampleDraw",
    "inclusion_probabilities",
    "rhc_group_sizes",
    "draw",
    "enumerate_design",
    "ENUMERATION_CAP",
    "RS_RETRY_CAP",
]

ENUMERATION_CAP = 1_000_000
RS_RETRY_CAP = 1_000_000


class DesignKind(enum.Enum):
    """The four supported sampling designs."""

    SRSWOR = "srswor"
    LMS = "lms"
    RAO_SAMPFORD = "rs"
    RHC = "rhc"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value

    @property
    def is_pi_based(self) -> bool:
        return self is not DesignKind.RHC


@dataclass(frozen=True)
class SampleDraw:
    """A drawn sample with its per-unit design metadata.

    ``indices`` are distinct 0-based unit indices.  ``pi`` holds the selected
    units' inclusion probabilities for pi-based designs (None for RHC);
    ``g_totals`` holds the selected units' group x-totals for RHC (None
    otherwise).
    """

    design: DesignKind
    indices: np.ndarray
    pi: np.ndarray | None = None
    g_totals: np.ndarray | None = None

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.intp)
        if idx.ndim != 1 or idx.size == 0:
            raise ParameterError("indices must be a nonempty flat array")
        if np.unique(idx).size != idx.size:
            raise ParameterError("sample indices must be distinct")
        idx = idx.copy()
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)
        if self.design.is_pi_based:
            if self.pi is None or self.g_totals is not None:
                raise ParameterError(f"{self.design} draws carry pi, not g_totals")
            pi = np.asarray(self.pi, dtype=float).copy()
            if pi.shape != idx.shape:
                raise ParameterError("pi must align with indices")
            if np.any(pi <= 0) or np.any(pi > 1):
                raise ParameterError("inclusion probabilities must lie in (0, 1]")
            pi.setflags(write=False)
            object.__setattr__(self, "pi", pi)
        else:
            if self.g_totals is None or self.pi is not None:
                raise ParameterError("RHC draws carry g_totals, not pi")
            g = np.asarray(self.g_totals, dtype=float).copy()
            if g.shape != idx.shape:
                raise ParameterError("g_totals must align with indices")
            if np.any(g <= 0):
                raise ParameterError("group totals must be positive")
            g.setflags(write=False)
            object.__setattr__(self, "g_totals", g)

    @property
    def n(self) -> int:
        return self.indices.size

    def drop(self, position: int) -> "SampleDraw":
        """The same draw with the unit at ``position`` removed (for jackknifing)."""
        keep = np.ones(self.n, dtype=bool)
        keep[position] = False
        return SampleDraw(
            design=self.design,
            indices=self.indices[keep],
            pi=None if self.pi is None else self.pi[keep],
            g_totals=None if self.g_totals is None else self.g_totals[keep],
        )


def _check_n(pop: Population, n: int) -> None:
    if not 2 <= n < pop.n_units:
        raise ParameterError(
            f"sample size must satisfy 2 <= n < N, got n={n}, N={pop.n_units}"
        )


def _pps_probs(pop: Population, n: int) -> np.ndarray:
    p = pop.x / pop.x_total()
    pi = n * p
    if np.any(pi >= 1):
        bad = np.flatnonzero(pi >= 1).tolist()
        raise InfeasibleError(
            f"n * x_i / sum(x) >= 1 for unit(s) {bad}; "
            "probability-proportional-to-size sampling is infeasible"
        )
    return pi


def inclusion_probabilities(design: DesignKind, pop: Population, n: int) -> np.ndarray:
    """First-order inclusion probabilities of every population unit.

    SRSWOR: n/N everywhere.  LMS: (n-1)/(N-1) + (x_i/sum x) (N-n)/(N-1).
    Rao-Sampford: n x_i / sum x.  RHC has no fixed per-unit probabilities at
    this interface (its metadata is draw-specific), so asking is an error.
    """
    _check_n(pop, n)
    N = pop.n_units
    if design is DesignKind.SRSWOR:
        return np.full(N, n / N)
    if design is DesignKind.LMS:
        return (n - 1) / (N - 1) + (pop.x / pop.x_total()) * ((N - n) / (N - 1))
    if design is DesignKind.RAO_SAMPFORD:
        return _pps_probs(pop, n)
    raise UnsupportedQueryError(
        "RHC sampling is not characterized by fixed inclusion probabilities; "
        "use the g_totals carried by each draw"
    )


def rhc_group_sizes(N: int, n: int) -> np.ndarray:
    """Random-group sizes: all N/n when it divides evenly, else a nondecreasing
    mix of floor(N/n) and floor(N/n)+1 summing to N."""
    if not 2 <= n < N:
        raise ParameterError(f"need 2 <= n < N, got n={n}, N={N}")
    base = N // n
    if N % n == 0:
        return np.full(n, base, dtype=int)
    k = n * (base + 1) - N  # number of groups of size floor(N/n)
    return np.array([base] * k + [base + 1] * (n - k), dtype=int)


def _draw_srswor(pop: Population, n: int, rng: np.random.Generator) -> SampleDraw:
    idx = rng.choice(pop.n_units, size=n, replace=False)
    return SampleDraw(DesignKind.SRSWOR, idx, pi=np.full(n, n / pop.n_units))


def _draw_lms(pop: Population, n: int, rng: np.random.Generator) -> SampleDraw:
    # First unit proportional to x, then SRSWOR among the rest: realizes
    # P(s) = (xbar_s / Xbar) / C(N, n).
    N = pop.n_units
    p = pop.x / pop.x_total()
    first = int(rng.choice(N, p=p))
    others = np.delete(np.arange(N), first)
    rest = rng.choice(others, size=n - 1, replace=False)
    idx = np.concatenate(([first], rest))
    pi_all = inclusion_probabilities(DesignKind.LMS, pop, n)
    return SampleDraw(DesignKind.LMS, idx, pi=pi_all[idx])


def _cut_points(u: np.ndarray, cdf: np.ndarray) -> np.ndarray:
    # u in [0, 1); the minimum guards the pathological rounding u*total == total
    return np.minimum(np.searchsorted(cdf, u * cdf[-1], side="right"), cdf.size - 1)


def _draw_rao_sampford(pop: Population, n: int, rng: np.random.Generator) -> SampleDraw:
    # Sampford's rejective scheme: one draw proportional to p, n-1 draws with
    # replacement proportional to p/(1 - n p); accept only all-distinct sets.
    pi = _pps_probs(pop, n)
    p = pi / n
    q = p / (1.0 - n * p)
    cdf_p = np.cumsum(p)
    cdf_q = np.cumsum(q)
    for _ in range(RS_RETRY_CAP):
        first = _cut_points(rng.random(1), cdf_p)
        rest = _cut_points(rng.random(n - 1), cdf_q)
        idx = np.concatenate((first, rest))
        if np.unique(idx).size == n:
            return SampleDraw(DesignKind.RAO_SAMPFORD, idx, pi=pi[idx])
    raise DrawFailureError(
        f"Rao-Sampford rejection did not accept a sample in {RS_RETRY_CAP} attempts"
    )


def _draw_rhc(pop: Population, n: int, rng: np.random.Generator) -> SampleDraw:
    # Random grouping by cutting a shuffled permutation into the prescribed
    # sizes (group labels are exchangeable), then one PPS pick per group.
    N = pop.n_units
    sizes = rhc_group_sizes(N, n)
    perm = rng.permutation(N)
    x_perm = pop.x[perm]
    ends = np.cumsum(sizes)
    starts = ends - sizes
    cum = np.cumsum(x_perm)
    lower = np.where(starts > 0, cum[starts - 1], 0.0)
    totals = cum[ends - 1] - lower
    targets = lower + rng.random(n) * totals
    pos = np.searchsorted(cum, targets, side="right")
    pos = np.minimum(pos, ends - 1)  # guard against float roundoff at group edges
    idx = perm[pos]
    return SampleDraw(DesignKind.RHC, idx, g_totals=totals)


def draw(
    design: DesignKind, pop: Population, n: int, rng: np.random.Generator
) -> SampleDraw:
    """Draw one sample of size ``n`` under ``design``."""
    _check_n(pop, n)
    if design is DesignKind.SRSWOR:
        return _draw_srswor(pop, n, rng)
    if design is DesignKind.LMS:
        return _draw_lms(pop, n, rng)
    if design is DesignKind.RAO_SAMPFORD:
        return _draw_rao_sampford(pop, n, rng)
    return _draw_rhc(pop, n, rng)


def _iter_groupings(
    units: tuple[int, ...], sizes: tuple[int, ...]
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All partitions of ``units`` into unlabeled blocks of the given sizes.

    Each partition is produced exactly once: the smallest unassigned unit is
    placed in a block of each remaining *distinct* size in turn.
    """
    if not sizes:
        yield ()
        return
    anchor = units[0]
    others = units[1:]
    tried: set[int] = set()
    for i, size in enumerate(sizes):
        if size in tried:
            continue
        tried.add(size)
        rest_sizes = sizes[:i] + sizes[i + 1 :]
        for members in itertools.combinations(others, size - 1):
            block = (anchor, *members)
            remaining = tuple(u for u in others if u not in members)
            for tail in _iter_groupings(remaining, rest_sizes):
                yield (block, *tail)


def _count_groupings(N: int, sizes: np.ndarray) -> int:
    total = 1
    remaining = N
    for s in sizes:
        total *= comb(remaining, int(s))
        remaining -= int(s)
    mult = 1
    for s in set(sizes.tolist()):
        mult *= factorial(int(np.sum(sizes == s)))
    return total // mult


def enumerate_design(
    design: DesignKind, pop: Population, n: int
) -> list[tuple[SampleDraw, float]]:
    """The full sample space of an enumerable design with exact probabilities.

    SRSWOR and LMS enumerate all C(N, n) subsets; RHC enumerates every
    (grouping, within-group selection) outcome.  Rao-Sampford has no
    closed-form sample probabilities here and is rejected.
    """
    _check_n(pop, n)
    N = pop.n_units
    if design is DesignKind.RAO_SAMPFORD:
        raise UnsupportedQueryError(
            "Rao-Sampford sample probabilities are not enumerable here"
        )
    if design in (DesignKind.SRSWOR, DesignKind.LMS):
        n_outcomes = comb(N, n)
        if n_outcomes > ENUMERATION_CAP:
            raise EnumerationTooLargeError(
                f"{n_outcomes} subsets exceed the cap of {ENUMERATION_CAP}"
            )
        out: list[tuple[SampleDraw, float]] = []
        x_bar = pop.x_bar()
        pi_all = inclusion_probabilities(design, pop, n)
        for subset in itertools.combinations(range(N), n):
            idx = np.array(subset, dtype=np.intp)
            if design is DesignKind.SRSWOR:
                prob = 1.0 / n_outcomes
            else:
                prob = (pop.x[idx].mean() / x_bar) / n_outcomes
            out.append((SampleDraw(design, idx, pi=pi_all[idx]), prob))
        return out

    sizes = rhc_group_sizes(N, n)
    n_groupings = _count_groupings(N, sizes)
    n_outcomes = n_groupings * int(np.prod(sizes))
    if n_outcomes > ENUMERATION_CAP:
        raise EnumerationTooLargeError(
            f"{n_outcomes} grouping/selection outcomes exceed the cap "
            f"of {ENUMERATION_CAP}"
        )
    p_grouping = 1.0 / n_groupings
    out = []
    units = tuple(range(N))
    sizes_key = tuple(int(s) for s in sizes)
    for grouping in _iter_groupings(units, sizes_key):
        totals = [float(pop.x[list(block)].sum()) for block in grouping]
        for picks in itertools.product(*grouping):
            prob = p_grouping
            for j, unit in enumerate(picks):
                prob *= pop.x[unit] / totals[j]
            idx = np.array(picks, dtype=np.intp)
            out.append(
                (SampleDraw(DesignKind.RHC, idx, g_totals=np.array(totals)), prob)
            )
    return out
