"""Cycle types of uniform permutations and exact partition / composition laws."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .core import CapacityExceeded, InvalidInput, RngStream, as_stream


def multiplicities(blocks: Sequence[int]) -> dict:
    """``{j: a_j}`` where ``a_j`` is the number of blocks of size ``j``."""
    return dict(sorted(Counter(blocks).items()))


def as_partition(blocks: Sequence[int]) -> tuple:
    blocks = tuple(int(b) for b in blocks)
    if any(b < 1 for b in blocks):
        raise InvalidInput("blocks must be positive")
    return tuple(sorted(blocks, reverse=True))


def as_composition(blocks: Sequence[int]) -> tuple:
    blocks = tuple(int(b) for b in blocks)
    if not blocks or any(b < 1 for b in blocks):
        raise InvalidInput("a composition needs at least one positive block")
    return blocks


def partitions(n: int, largest: int | None = None) -> Iterator[tuple]:
    """All partitions of ``n`` as non-increasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def compositions(n: int) -> Iterator[tuple]:
    """All compositions of ``n`` (ordered), ``2**(n-1)`` of them."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def refines(fine: Sequence[int], coarse: Sequence[int]) -> bool:
    """True iff every block of ``coarse`` is a union of consecutive blocks of ``fine``."""
    cuts = set(np.cumsum(fine).tolist())
    return sum(fine) == sum(coarse) and set(np.cumsum(coarse).tolist()) <= cuts


def sample_cycle_lengths(n: int, rng: RngStream) -> tuple:
    """Cycle type of a uniform permutation of ``[n]`` by uniform stick breaking."""
    if n < 1:
        raise InvalidInput("n must be at least 1")
    rng = as_stream(rng)
    parts = []
    rest = n
    while rest:
        piece = rng.integer(1, rest)
        parts.append(piece)
        rest -= piece
    return tuple(sorted(parts, reverse=True))


def ewens_partition_prob(p: Sequence[int]) -> Fraction:
    """Probability that a uniform permutation has cycle type ``p``."""
    p = as_partition(p)
    out = Fraction(1)
    for j, a in multiplicities(p).items():
        out /= j**a * math.factorial(a)
    return out


@lru_cache(maxsize=None)
def _stirling_rows(n: int) -> tuple:
    rows = [(1,)]
    for m in range(1, n + 1):
        prev = rows[-1]
        row = [0] * (m + 1)
        for k in range(1, m + 1):
            row[k] = (prev[k - 1] if k - 1 < len(prev) else 0) + (m - 1) * (prev[k] if k < len(prev) else 0)
        rows.append(tuple(row))
    return tuple(rows)


def stirling_first(n: int, k: int) -> int:
    """Unsigned Stirling number of the first kind ``|s(n, k)|``."""
    if n > 64:
        raise CapacityExceeded("n is limited to 64")
    if not 0 <= k <= n:
        return 0
    return _stirling_rows(n)[n][k]


def block_count_law(n: int) -> dict:
    """``{k: |s(n,k)| / n!}``, the law of the number of cycles."""
    fact = math.factorial(n)
    return {k: Fraction(stirling_first(n, k), fact) for k in range(1, n + 1)}


def composition_prob_cauchy(c: Sequence[int]) -> Fraction:
    """Face-composition probability for Cauchy increments, ``1/(k! prod n_i)``."""
    c = as_composition(c)
    return Fraction(1, math.factorial(len(c)) * math.prod(c))


@dataclass(frozen=True)
class Estimate:
    value: float
    se: float
    samples: int

    def within(self, target: float, k: float = 3.0) -> bool:
        return abs(self.value - target) <= k * self.se


def _ordered_fraction(model, c: tuple, samples: int, gen, chunk: int = 1 << 16) -> int:
    n = sum(c)
    edges = np.cumsum((0,) + c[:-1])
    lengths = np.asarray(c, dtype=float)
    hits = 0
    left = samples
    while left:
        m = min(chunk, left)
        x = np.asarray(model.draw(m * n, gen), dtype=float).reshape(m, n)
        means = np.add.reduceat(x, edges, axis=1) / lengths
        hits += int(np.all(means[:, :-1] > means[:, 1:], axis=1).sum())
        left -= m
    return hits


def composition_prob_mc(model, c: Sequence[int], samples: int, rng: RngStream) -> Estimate:
    """Monte Carlo face-composition probability for i.i.d. increments.

    Estimates the chance that block means along ``c`` are strictly
    decreasing and multiplies by ``prod 1/n_i``.
    """
    c = as_composition(c)
    weight = 1.0 / math.prod(c)
    if len(c) == 1:
        return Estimate(weight, 0.0, samples)
    hits = _ordered_fraction(model, c, samples, as_stream(rng).generator)
    phat = hits / samples
    se = math.sqrt(max(phat * (1 - phat), 1.0 / samples) / samples)
    return Estimate(phat * weight, se * weight, samples)
