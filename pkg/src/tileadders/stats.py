"""Probability helpers behind the average-case and continuous-time analyses.

Monte Carlo routines draw from numpy's PCG64.  Trials are processed in
fixed-size chunks and chunk ``c`` gets its own stream seeded by
``(rng_seed, c)``, so results depend only on the seed and the trial count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from .templates import LengthMismatch

Z95 = 1.959963984540054
Z99_ONE_SIDED = 2.3263478740408408
CHUNK = 1024


@dataclass(frozen=True)
class RunStats:
    mean: float
    variance: float
    ci95_half: float
    trials: int

    @classmethod
    def from_samples(cls, samples) -> "RunStats":
        x = np.asarray(samples, dtype=float)
        if len(x) < 2:
            raise ValueError("need at least two samples")
        var = float(x.var(ddof=1))
        return cls(float(x.mean()), var, Z95 * math.sqrt(var / len(x)), len(x))

    @property
    def stderr(self) -> float:
        return math.sqrt(self.variance / self.trials)


@dataclass(frozen=True)
class MaxSumsConfig:
    m: int
    k_list: Tuple[int, ...]
    lam: float = 1.0
    trials: int = 10_000

    def __post_init__(self):
        object.__setattr__(self, "k_list", tuple(self.k_list))
        if len(self.k_list) != self.m:
            raise ValueError(f"k_list has {len(self.k_list)} entries for m={self.m}")
        if any(k < 1 for k in self.k_list):
            raise ValueError("chain lengths must be at least 1")
        if self.lam <= 0:
            raise ValueError("lambda must be positive")

    @classmethod
    def uniform(cls, m: int, k: int, lam: float = 1.0, trials: int = 10_000) -> "MaxSumsConfig":
        return cls(m, (k,) * m, lam, trials)


def _chunks(trials: int, rng_seed: int) -> Iterator[Tuple[int, np.random.Generator]]:
    for c, start in enumerate(range(0, trials, CHUNK)):
        yield min(CHUNK, trials - start), np.random.Generator(np.random.PCG64([rng_seed, c]))


def longest_run(bits: Sequence[int]) -> int:
    best = cur = 0
    for b in bits:
        cur = cur + 1 if b else 0
        best = max(best, cur)
    return best


def longest_propagate_run(a: Sequence[int], b: Sequence[int]) -> int:
    """Longest stretch of positions where a and b differ (propagate pairs)."""
    if len(a) != len(b):
        raise LengthMismatch(f"{len(a)} vs {len(b)} bits")
    best = cur = 0
    for x, y in zip(a, b):
        cur = cur + 1 if x != y else 0
        best = max(best, cur)
    return best


def _longest_runs(block: np.ndarray) -> np.ndarray:
    """Row-wise longest run of ones in a 2D 0/1 array."""
    cur = np.zeros(block.shape[0], dtype=np.int64)
    best = np.zeros_like(cur)
    for col in block.T:
        cur = (cur + 1) * col
        np.maximum(best, cur, out=best)
    return best


def expected_longest_run_mc(n: int, trials: int = 10_000, rng_seed: int = 0) -> RunStats:
    if n < 1:
        raise ValueError("n must be positive")
    if trials < 100:
        raise ValueError("use at least 100 trials")
    runs = [_longest_runs(g.integers(0, 2, size=(size, n), dtype=np.int64))
            for size, g in _chunks(trials, rng_seed)]
    return RunStats.from_samples(np.concatenate(runs))


def chernoff_exp_bound(n: int, delta: float) -> float:
    """Upper bound ((1+delta)/e^delta)^n on Pr[sum of n Exp(lam) > (1+delta) n/lam]."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    return math.exp(n * (math.log1p(delta) - delta))


def exp_sum_samples(n: int, samples: int, lam: float = 1.0, rng_seed: int = 0) -> np.ndarray:
    """Sums of ``n`` independent Exp(lam) draws."""
    out = [g.exponential(1.0 / lam, size=(size, n)).sum(axis=1) for size, g in _chunks(samples, rng_seed)]
    return np.concatenate(out)


def empirical_tail(n: int, delta: float, samples: int, lam: float = 1.0,
                   rng_seed: int = 0) -> Tuple[float, float]:
    """Fraction of exponential sums above (1+delta) n/lam, with its std. error."""
    x = exp_sum_samples(n, samples, lam, rng_seed)
    p = float(np.mean(x > (1 + delta) * n / lam))
    return p, math.sqrt(max(p * (1 - p), 1e-300) / samples)


def max_exp_sums_estimate(cfg: MaxSumsConfig, rng_seed: int = 0) -> RunStats:
    """Mean of max over chains of the sum of k_i Exp(lam) draws."""
    if cfg.trials < 100:
        raise ValueError("use at least 100 trials")
    ks = np.array(cfg.k_list, dtype=float)
    out = []
    for size, g in _chunks(cfg.trials, rng_seed):
        # a sum of k exponentials is Gamma(k, 1/lam)
        out.append(g.gamma(ks, 1.0 / cfg.lam, size=(size, cfg.m)).max(axis=1))
    return RunStats.from_samples(np.concatenate(out))


def harmonic(m: int) -> float:
    return sum(1.0 / i for i in range(1, m + 1))


def linear_fit(x: Sequence[float], y: Sequence[float]) -> Tuple[float, float, float]:
    """Least-squares (slope, intercept, R^2)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2


def log_fit(ns: Sequence[int], means: Sequence[float]) -> Tuple[float, float, float]:
    """Fit mean = c1 * log2(n) + c0; returns (c1, c0, R^2)."""
    return linear_fit([math.log2(n) for n in ns], means)


def random_bits(n: int, rng: np.random.Generator) -> Tuple[int, ...]:
    return tuple(int(v) for v in rng.integers(0, 2, size=n))


def random_pairs(n: int, count: int, rng_seed: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    g = np.random.Generator(np.random.PCG64([rng_seed, n]))
    return [(random_bits(n, g), random_bits(n, g)) for _ in range(count)]
