"""Monte Carlo measurements: how often is the stable matching unique?

Balanced n-by-n markets are sampled uniformly; the unbalanced variant adds one
extra firm (n workers, n+1 firms, complete lists) and decides uniqueness by
running deferred acceptance from both sides, never through the normal-form
machinery, whose data model is balanced-only.  Every trial draws its own
stream from (seed, trial index), so results are reproducible bit for bit and
identical whether trials run sequentially or in parallel.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Iterator

from .model import Instance, all_instances, random_instance
from .reduction import normal_form
from .stability import deferred_acceptance_lists, is_unique_via_da

#: Two-sided 95% normal quantile, used by the Wilson score interval.
Z_95 = 1.959963984540054

FRACTION_CSV_HEADER = ("n", "extra_firms", "trials", "unique_count", "fraction", "ci_low", "ci_high", "seed")
STATS_CSV_HEADER = ("n", "trials", "seed", "metric", "value", "count")


def wilson_interval(successes: int, trials: int, z: float = Z_95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("need at least one trial")
    p = successes / trials
    denom = 1 + z * z / trials
    centre = p + z * z / (2 * trials)
    spread = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
    low = max(0.0, (centre - spread) / denom)
    high = min(1.0, (centre + spread) / denom)
    # The interval brackets the point estimate; keep that true under rounding.
    return min(low, p), max(high, p)


@dataclass(frozen=True)
class FractionEstimate:
    n: int
    extra_firms: int
    trials: int
    unique_count: int
    fraction: float
    ci_low: float
    ci_high: float
    seed: int

    def csv_row(self) -> tuple:
        return (
            self.n,
            self.extra_firms,
            self.trials,
            self.unique_count,
            self.fraction,
            self.ci_low,
            self.ci_high,
            self.seed,
        )


def _sample_lists(sides: tuple[int, int], rng: random.Random) -> tuple[list[list[int]], list[list[int]]]:
    """Uniform complete preference lists for a (workers, firms) market."""
    n_workers, n_firms = sides
    worker_prefs = []
    for _ in range(n_workers):
        row = list(range(n_firms))
        rng.shuffle(row)
        worker_prefs.append(row)
    firm_prefs = []
    for _ in range(n_firms):
        row = list(range(n_workers))
        rng.shuffle(row)
        firm_prefs.append(row)
    return worker_prefs, firm_prefs


def _trial_is_unique(index: int, n: int, extra_firms: int, seed: int) -> bool:
    """One trial: sample a market from stream (seed, index), compare both runs.

    With an extra firm every worker is matched and one firm is not; the two
    proposing sides still bracket the stable set, so equality of the two
    worker assignments decides uniqueness.
    """
    rng = random.Random(f"{seed}:{index}")
    worker_prefs, firm_prefs = _sample_lists((n, n + extra_firms), rng)
    workers_best = deferred_acceptance_lists(worker_prefs, firm_prefs)
    firms_best = deferred_acceptance_lists(firm_prefs, worker_prefs)
    matched_from_firms = [-1] * n
    for f, w in enumerate(firms_best):
        if w != -1:
            matched_from_firms[w] = f
    return workers_best == matched_from_firms


def uniqueness_fraction(
    n: int,
    extra_firms: int,
    trials: int,
    seed: int,
    workers: int = 1,
) -> FractionEstimate:
    """Estimate the fraction of sampled markets with a unique stable matching.

    ``extra_firms`` must be 0 (balanced) or 1 (one surplus firm).  The result
    carries a Wilson 95% interval and depends only on (n, extra_firms, trials,
    seed); ``workers`` > 1 fans trials out over processes without changing the
    outcome.
    """
    if extra_firms not in (0, 1):
        raise ValueError("extra_firms must be 0 or 1")
    if trials < 1:
        raise ValueError("need at least one trial")
    trial = partial(_trial_is_unique, n=n, extra_firms=extra_firms, seed=seed)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            unique_count = sum(pool.map(trial, range(trials), chunksize=max(1, trials // (8 * workers))))
    else:
        unique_count = sum(map(trial, range(trials)))
    low, high = wilson_interval(unique_count, trials)
    return FractionEstimate(n, extra_firms, trials, unique_count, unique_count / trials, low, high, seed)


def uniqueness_census(n: int) -> tuple[int, int]:
    """(unique, total) over every balanced instance of size n; exact, n <= 3."""
    unique = 0
    total = 0
    for inst in all_instances(n):
        total += 1
        unique += is_unique_via_da(inst)
    return unique, total


@dataclass(frozen=True)
class NormalFormStats:
    """Distribution of survivor counts and round counts over sampled markets."""

    n: int
    trials: int
    seed: int | None
    size_counts: dict[int, int]
    round_counts: dict[int, int]

    def csv_rows(self) -> Iterator[tuple]:
        seed = "" if self.seed is None else self.seed
        for value in sorted(self.size_counts):
            yield (self.n, self.trials, seed, "survivors", value, self.size_counts[value])
        for value in sorted(self.round_counts):
            yield (self.n, self.trials, seed, "rounds", value, self.round_counts[value])

    def mean_size(self) -> float:
        return sum(v * c for v, c in self.size_counts.items()) / max(1, self.trials)


def _tally(instances: Iterator[Instance], n: int, trials: int, seed: int | None) -> NormalFormStats:
    size_counts: dict[int, int] = {}
    round_counts: dict[int, int] = {}
    for inst in instances:
        nf = normal_form(inst)
        size = nf.digraph.alive_count()
        size_counts[size] = size_counts.get(size, 0) + 1
        round_counts[nf.rounds] = round_counts.get(nf.rounds, 0) + 1
    return NormalFormStats(n, trials, seed, size_counts, round_counts)


def normal_form_size_stats(n: int, trials: int, seed: int) -> NormalFormStats:
    """Sample balanced markets and tally normal-form sizes and round counts."""
    draws = (random_instance(n, f"{seed}:{i}") for i in range(trials))
    return _tally(draws, n, trials, seed)


def normal_form_size_census(n: int) -> NormalFormStats:
    """The same tally over every instance of size n; exact, n <= 3."""
    total = 0

    def counted() -> Iterator[Instance]:
        nonlocal total
        for inst in all_instances(n):
            total += 1
            yield inst

    stats = _tally(counted(), n, 0, None)
    return NormalFormStats(n, total, None, stats.size_counts, stats.round_counts)
