"""Deterministic enumeration and sampling of tuples over a finite ring.

Quantified scans are exhaustive when the search space fits the budget and
otherwise draw a seeded sample; the returned ``Coverage`` records which.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

DEFAULT_SEED = 0
MATRIX_BUDGET = 12**4  # exhaustive over all 2x2 matrices for |R| <= 12
SAMPLE_SIZE = 400


@dataclass(frozen=True)
class Coverage:
    exhaustive: bool
    count: int

    def __str__(self):
        return "exhaustive" if self.exhaustive else f"sampled:{self.count}"

    def merge(self, other: "Coverage") -> "Coverage":
        return Coverage(self.exhaustive and other.exhaustive, self.count + other.count)


EMPTY = Coverage(True, 0)


def rng_for(*labels, seed=DEFAULT_SEED) -> np.random.Generator:
    key = "|".join(str(x) for x in (seed,) + labels).encode()
    return np.random.default_rng(int.from_bytes(hashlib.sha256(key).digest()[:8], "little"))


def grid(n: int, k: int) -> list[np.ndarray]:
    """All k-tuples over range(n), lexicographic, as k flat index arrays."""
    return [x.ravel() for x in np.meshgrid(*[np.arange(n)] * k, indexing="ij")]


def tuples(R, k: int, filt=None, budget=MATRIX_BUDGET, sample=SAMPLE_SIZE, label="", seed=DEFAULT_SEED):
    """k-tuples of element indices satisfying ``filt`` (vectorized predicate).

    Exhaustive when ``|R|^k <= budget``; otherwise ``sample`` hits drawn by
    seeded rejection sampling, distinct and in draw order.
    """
    n = R.order
    if n**k <= budget:
        cols = grid(n, k)
        if filt is not None:
            keep = filt(*cols)
            cols = [c[keep] for c in cols]
        return cols, Coverage(True, len(cols[0]))
    rng = rng_for(R.spec, label, k, seed=seed)
    found = [np.empty(0, dtype=np.int64) for _ in range(k)]
    tries = 0
    while len(found[0]) < sample and tries < 200:
        draw = [rng.integers(0, n, size=4 * sample) for _ in range(k)]
        keep = filt(*draw) if filt is not None else np.ones(4 * sample, dtype=bool)
        found = _distinct([np.concatenate([f, d[keep]]) for f, d in zip(found, draw)], n)
        tries += 1
    found = [f[:sample] for f in found]
    return found, Coverage(False, len(found[0]))


def _distinct(cols, n):
    """Drop repeated tuples, keeping first occurrences in draw order."""
    if not len(cols[0]):
        return cols
    codes = np.zeros(len(cols[0]), dtype=np.int64)
    for f in cols:
        codes = codes * n + f
    _, first = np.unique(codes, return_index=True)
    keep = np.sort(first)
    return [f[keep] for f in cols]


def chunks(total: int, per_item: int, limit: int = 1 << 21):
    step = max(1, limit // max(per_item, 1))
    for start in range(0, total, step):
        yield slice(start, min(total, start + step))
