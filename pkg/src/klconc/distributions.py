"""Probability vectors, count vectors, and add-constant estimators."""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "Measure",
    "Pmf",
    "Counts",
    "uniform_pmf",
    "zipf_pmf",
    "two_point_pmf",
    "load_pmf",
    "empirical_estimate",
    "add_t_estimate",
    "pseudo_estimate",
]

PMF_SUM_TOL = 1e-9


def _as_weight_array(values, what: str) -> np.ndarray:
    w = np.asarray(values, dtype=np.float64)
    if w.ndim != 1:
        raise ValueError(f"{what} must be a one-dimensional sequence")
    if w.size == 0:
        raise ValueError(f"{what} must have length >= 1")
    if not np.all(np.isfinite(w)):
        bad = int(np.flatnonzero(~np.isfinite(w))[0])
        raise ValueError(f"{what} has non-finite entry at index {bad}")
    if np.any(w < 0):
        bad = int(np.flatnonzero(w < 0)[0])
        raise ValueError(f"{what} has negative entry {w[bad]!r} at index {bad}")
    return w


class Measure:
    """Nonnegative weight vector over a finite alphabet; total mass unconstrained.

    Immutable after construction (the backing array is read-only), so
    instances are safe to share across threads.
    """

    __slots__ = ("_weights",)

    def __init__(self, weights):
        w = _as_weight_array(weights, "weights").copy()
        w.flags.writeable = False
        self._weights = w

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    def sum(self) -> float:
        """Total mass, accumulated with compensated summation."""
        return math.fsum(self._weights)

    def __len__(self) -> int:
        return self._weights.size

    def __getitem__(self, i: int) -> float:
        return float(self._weights[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Measure):
            return NotImplemented
        return self._weights.shape == other._weights.shape and bool(
            np.all(self._weights == other._weights)
        )

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._weights.tolist()!r})"


class Pmf(Measure):
    """Probability vector: nonnegative entries summing to 1.

    Inputs whose sum deviates from 1 by more than ``PMF_SUM_TOL`` (absolute)
    are rejected; anything inside the tolerance is renormalized exactly once
    so downstream code can rely on ``sum() == 1`` to machine precision.
    """

    __slots__ = ()

    def __init__(self, probs):
        super().__init__(probs)
        s = math.fsum(self._weights)
        if abs(s - 1.0) > PMF_SUM_TOL:
            raise ValueError(f"probabilities must sum to 1 within {PMF_SUM_TOL}; sum = {s!r}")
        w = self._weights / s
        w.flags.writeable = False
        self._weights = w

    @property
    def probs(self) -> np.ndarray:
        return self._weights


class Counts:
    """Occurrence counts per symbol plus the total number of draws.

    ``total`` always equals the sum of the counts; it is the multinomial
    sample size n, or the realized Poisson total N under Poissonized
    sampling. Counts are stored as int64, so count/total ratios stay exact
    in double precision for totals up to 2**53.
    """

    __slots__ = ("_counts", "_total")

    def __init__(self, counts, total: int | None = None):
        c = np.asarray(counts, dtype=np.int64)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("counts must be a one-dimensional sequence of length >= 1")
        if np.any(c < 0):
            bad = int(np.flatnonzero(c < 0)[0])
            raise ValueError(f"negative count {int(c[bad])} at index {bad}")
        s = int(c.sum())
        if total is None:
            total = s
        elif int(total) != s:
            raise ValueError(f"total {total} does not match sum of counts {s}")
        c = c.copy()
        c.flags.writeable = False
        self._counts = c
        self._total = int(total)

    @property
    def counts(self) -> np.ndarray:
        return self._counts

    @property
    def total(self) -> int:
        return self._total

    def __len__(self) -> int:
        return self._counts.size

    def __repr__(self) -> str:
        return f"Counts({self._counts.tolist()!r}, total={self._total})"


def uniform_pmf(k: int) -> Pmf:
    """Uniform distribution over a k-symbol alphabet."""
    if k < 1:
        raise ValueError(f"alphabet size must be >= 1, got {k}")
    return Pmf(np.full(k, 1.0 / k))


def zipf_pmf(k: int, s: float = 1.0) -> Pmf:
    """Power-law distribution with weight i**(-s) on symbol i (1-based), normalized."""
    if k < 1:
        raise ValueError(f"alphabet size must be >= 1, got {k}")
    if not math.isfinite(s):
        raise ValueError("exponent must be finite")
    w = np.arange(1, k + 1, dtype=np.float64) ** (-s)
    return Pmf(w / math.fsum(w))


def two_point_pmf(k: int, mass: float) -> Pmf:
    """Puts ``mass`` on symbol 1 and spreads the remaining mass uniformly."""
    if k < 2:
        raise ValueError(f"two-point distribution needs k >= 2, got {k}")
    if not 0.0 <= mass <= 1.0:
        raise ValueError(f"mass must lie in [0, 1], got {mass}")
    w = np.full(k, (1.0 - mass) / (k - 1))
    w[0] = mass
    return Pmf(w)


def load_pmf(path) -> Pmf:
    """Read a distribution file: one nonnegative decimal weight per line.

    Blank lines are ignored. The weights must satisfy the ``Pmf`` rules
    (sum to 1 within tolerance); offending entries raise ValueError.
    """
    weights = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                weights.append(float(text))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: not a decimal weight: {text!r}") from None
    if not weights:
        raise ValueError(f"{path}: no weights found")
    return Pmf(weights)


def empirical_estimate(c: Counts) -> Pmf:
    """Maximum-likelihood estimate: entry i is count_i / total."""
    if c.total < 1:
        raise ValueError("empirical estimate requires at least one draw")
    return Pmf(c.counts / c.total)


def add_t_estimate(c: Counts, t: float = 1.0) -> Pmf:
    """Add-constant estimate: entry i is (count_i + t) / (total + k*t).

    t=1 is the add-one (Laplace) rule and t=1/2 the Krichevsky-Trofimov
    rule; t=0 reduces to the empirical estimate (valid only when at least
    one draw was observed). Every entry is strictly positive when t > 0.
    """
    if not (t >= 0 and math.isfinite(t)):
        raise ValueError(f"smoothing constant must be a finite nonnegative real, got {t}")
    if t == 0:
        return empirical_estimate(c)
    return Pmf((c.counts + t) / (c.total + len(c) * t))


def pseudo_estimate(c: Counts, n: int) -> Measure:
    """Add-one numerator over the fixed denominator n + k: (count_i + 1) / (n + k).

    Unlike :func:`add_t_estimate`, the denominator uses the nominal sample
    size n rather than the realized total, so the result is a plain
    ``Measure``: its mass is (total + k) / (n + k), which equals 1 only
    when the realized total equals n.
    """
    if n < 1:
        raise ValueError(f"nominal sample size must be >= 1, got {n}")
    return Measure((c.counts + 1.0) / (n + len(c)))
