"""Exact enumeration oracles and goodness-of-fit tests.

The enumerations here deliberately avoid the fast paths of the samplers:
valid rotations are found by checking every rotation, and laws are built by
summing exact rational weights over all randomness.
"""
from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy import stats

from .core import (CapacityExceeded, FiniteSupport, InvalidTest, Rademacher, build_walk,
                   check_assumption_a)
from .hull import Majorant, concave_majorant
from .randperm import ewens_partition_prob, partitions


class ExactDistribution(dict):
    """Map outcome -> exact probability; the masses sum to one."""

    def __init__(self, masses: Mapping = (), check: bool = True):
        super().__init__({k: Fraction(v) for k, v in dict(masses).items() if v != 0})
        if check and sum(self.values(), Fraction(0)) != 1:
            raise ValueError("masses do not sum to one")

    def mean(self) -> Fraction:
        return sum((Fraction(k) * p for k, p in self.items()), Fraction(0))


def _normalise(masses: Mapping) -> ExactDistribution:
    total = sum(masses.values(), Fraction(0))
    return ExactDistribution({k: v / total for k, v in masses.items()})


# ---------------------------------------------------------------------------
# transform enumeration


def _brute_valid_rotations(block: Sequence[Fraction]) -> list:
    m = len(block)
    total = sum(block, Fraction(0))
    good = []
    for r in range(m):
        rot = list(block[r:]) + list(block[:r])
        acc = Fraction(0)
        ok = True
        for j, x in enumerate(rot, 1):
            acc += x
            if acc * m > total * j:
                ok = False
                break
        if ok:
            good.append(r)
    return good


def _tie_orders(means: list) -> list:
    """All block orders sorted by decreasing mean, with their uniform weight."""
    groups = defaultdict(list)
    for b, mu in enumerate(means):
        groups[mu].append(b)
    levels = [groups[mu] for mu in sorted(groups, reverse=True)]
    weight = Fraction(1, math.prod(math.factorial(len(g)) for g in levels))
    out = []
    for choice in product(*(permutations(g) for g in levels)):
        out.append([b for grp in choice for b in grp])
    return [(o, weight) for o in out]


def transform_outcomes(values: Sequence) -> list:
    """Every outcome of the block/shift transform on a fixed sequence.

    Returns ``(weight, output sequence, segment composition)`` triples whose
    weights sum to one.
    """
    vals = [Fraction(v) for v in values]
    n = len(vals)
    out = []
    for part in partitions(n):
        w_part = ewens_partition_prob(part)
        blocks = []
        s = 0
        for size in part:
            blocks.append(vals[s:s + size])
            s += size
        means = [sum(b, Fraction(0)) / len(b) for b in blocks]
        rots = [_brute_valid_rotations(b) for b in blocks]
        for order, w_tie in _tie_orders(means):
            choices = [rots[b] for b in order]
            w_shift = Fraction(1, math.prod(len(c) for c in choices))
            for shifts in product(*choices):
                seq = []
                for b, r in zip(order, shifts):
                    seq += blocks[b][r:] + blocks[b][:r]
                out.append((w_part * w_tie * w_shift, tuple(seq),
                            tuple(len(blocks[b]) for b in order)))
    return out


def enumerate_transform_distribution(increments: Sequence) -> ExactDistribution:
    """Exact output law of the block/shift transform on exchangeable input.

    The input is a uniformly random ordering of ``increments`` (sampling
    without replacement); the result maps each output sequence to its mass.
    """
    vals = [Fraction(v) for v in increments]
    n = len(vals)
    distinct = check_assumption_a(vals) if n <= 24 else False
    if n > (7 if distinct else 6):
        raise CapacityExceeded("enumeration limited to n <= 7 (n <= 6 with ties)")
    if n == 0:
        return ExactDistribution({(): 1})
    law = defaultdict(Fraction)
    w_order = Fraction(1, math.factorial(n))
    cache = {}
    for sigma in permutations(range(n)):
        seq = tuple(vals[i] for i in sigma)
        if seq not in cache:
            cache[seq] = transform_outcomes(seq)
        for w, out, _ in cache[seq]:
            law[out] += w_order * w
    return ExactDistribution(law)


def multiset_law(increments: Sequence) -> ExactDistribution:
    """Law of a uniformly random ordering of ``increments``."""
    vals = [Fraction(v) for v in increments]
    n = len(vals)
    counts = Counter(permutations(vals))
    return ExactDistribution({k: Fraction(c, math.factorial(n)) for k, c in counts.items()})


# ---------------------------------------------------------------------------
# lattice walk enumeration


def enumerate_walks(model: FiniteSupport, n: int, limit: int = 1 << 16):
    atoms = model.atoms
    if len(atoms) ** n > limit:
        raise CapacityExceeded(f"{len(atoms)}^{n} walks exceed the enumeration limit")
    for combo in product(range(len(atoms)), repeat=n):
        p = math.prod((atoms[i][1] for i in combo), start=Fraction(1))
        yield tuple(atoms[i][0] for i in combo), p


def enumerate_H_F_distribution(n: int, model: FiniteSupport | None = None) -> tuple:
    """Exact laws of ``H_n`` and ``F_n`` by listing every walk of length ``n``."""
    model = model or Rademacher()
    if n > 16:
        raise CapacityExceeded("n is limited to 16")
    h = defaultdict(Fraction)
    f = defaultdict(Fraction)
    for incs, p in enumerate_walks(model, n):
        maj = concave_majorant(build_walk(incs))
        h[maj.H] += p
        f[maj.F] += p
    return ExactDistribution(h), ExactDistribution(f)


def enumerate_conditional_walks(majorant: Majorant, model: FiniteSupport) -> ExactDistribution:
    """Law of the increments given that the walk's majorant equals ``majorant``."""
    target = majorant.key()
    law = {}
    for incs, p in enumerate_walks(model, majorant.n):
        if concave_majorant(build_walk(incs)).key() == target:
            law[incs] = p
    if not law:
        raise ValueError("the majorant has probability zero")
    return _normalise(law)


def enumerate_transform_given(model: FiniteSupport, n: int, event: Callable) -> ExactDistribution:
    """Joint law of (output increments, segment composition) given ``event(output)``.

    The input walk has i.i.d. increments from ``model``.
    """
    law = defaultdict(Fraction)
    for incs, p in enumerate_walks(model, n):
        for w, out, seg in transform_outcomes(incs):
            if event(out):
                law[(out, seg)] += p * w
    return _normalise(law)


def total_variation(p: Mapping, q: Mapping) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(float(p.get(k, 0)) - float(q.get(k, 0))) for k in keys)


# ---------------------------------------------------------------------------
# statistical tests


@dataclass
class TestResult:
    name: str
    statistic: float
    p_value: float
    passed: bool
    effect: float = 0.0
    detail: dict = field(default_factory=dict)
    threshold: float | None = None  # alpha for p-value gates, k for SE gates, bound for distances

    __test__ = False  # not a pytest class

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return (f"{tag} {self.name}: statistic={self.statistic:.4g} "
                f"p={self.p_value:.4g} effect={self.effect:.4g}")


def poisson_law(mean: float, tail: float = 1e-12) -> dict:
    out = {}
    k = 0
    pk = math.exp(-mean)
    acc = 0.0
    while acc < 1 - tail and k < 10_000:
        out[k] = pk
        acc += pk
        k += 1
        pk *= mean / k
    return out


def geometric_law(success: float, tail: float = 1e-12) -> dict:
    """``P(N = k) = success (1 - success)^k`` for ``k >= 0``."""
    out = {}
    k = 0
    while (1 - success) ** k > tail:
        out[k] = success * (1 - success) ** k
        k += 1
    return out


def chi_square_test(observed: Mapping, expected: Mapping, alpha: float = 0.01,
                    name: str = "chi-square", min_expected: float = 5.0) -> TestResult:
    """Goodness of fit of outcome counts to a law given as outcome -> probability.

    Outcomes absent from ``expected`` share an implicit "rest" cell carrying
    the missing mass.  Cells with expected count below ``min_expected`` are
    pooled together.
    """
    total = sum(observed.values())
    if total == 0:
        raise InvalidTest("no observations")
    probs = {k: float(v) for k, v in expected.items()}
    keep, pooled_obs, pooled_p = [], 0, 0.0
    for k, p in probs.items():
        if p * total >= min_expected:
            keep.append(k)
        else:
            pooled_obs += observed.get(k, 0)
            pooled_p += p
    pooled_obs += sum(c for k, c in observed.items() if k not in probs)
    pooled_p += max(0.0, 1.0 - sum(probs.values()))
    obs = [observed.get(k, 0) for k in keep]
    exp_p = [probs[k] for k in keep]
    if pooled_p * total >= min_expected or (pooled_obs and not keep):
        obs.append(pooled_obs)
        exp_p.append(pooled_p)
    elif keep and (pooled_p > 0 or pooled_obs):
        # too little pooled mass for its own cell: merge into the smallest kept cell
        i = int(np.argmin(exp_p))
        obs[i] += pooled_obs
        exp_p[i] += pooled_p
    if len(obs) < 2:
        raise InvalidTest("a single cell carries no information")
    exp_p = np.asarray(exp_p) / np.sum(exp_p)
    res = stats.chisquare(np.asarray(obs, dtype=float), exp_p * total)
    effect = math.sqrt(res.statistic / total)
    return TestResult(name, float(res.statistic), float(res.pvalue), bool(res.pvalue > alpha),
                      effect, {"cells": len(obs), "n": total}, alpha)


def chi_square_two_sample(counts_a: Mapping, counts_b: Mapping, alpha: float = 0.01,
                          name: str = "chi-square two-sample", min_count: int = 10) -> TestResult:
    """Homogeneity test of two count tables; sparse cells are pooled."""
    keys = sorted(set(counts_a) | set(counts_b), key=repr)
    rows = [[], []]
    rest = [0, 0]
    for k in keys:
        a, b = counts_a.get(k, 0), counts_b.get(k, 0)
        if a + b >= min_count:
            rows[0].append(a)
            rows[1].append(b)
        else:
            rest[0] += a
            rest[1] += b
    if sum(rest):
        rows[0].append(rest[0])
        rows[1].append(rest[1])
    if len(rows[0]) < 2:
        raise InvalidTest("a single cell carries no information")
    table = np.asarray(rows, dtype=float)
    res = stats.chi2_contingency(table, correction=False)
    effect = math.sqrt(res.statistic / table.sum())
    return TestResult(name, float(res.statistic), float(res.pvalue), bool(res.pvalue > alpha),
                      effect, {"cells": table.shape[1]}, alpha)


def ks_test(sample: Sequence[float], cdf, alpha: float = 0.01, name: str = "KS") -> TestResult:
    """One-sample Kolmogorov-Smirnov test against a continuous ``cdf``."""
    sample = np.asarray(sample, dtype=float)
    if sample.size == 0:
        raise InvalidTest("empty sample")
    res = stats.kstest(sample, cdf)
    return TestResult(name, float(res.statistic), float(res.pvalue), bool(res.pvalue > alpha),
                      float(res.statistic), {"n": int(sample.size)}, alpha)


def ks_two_sample(a: Sequence[float], b: Sequence[float], alpha: float = 0.01,
                  name: str = "KS two-sample") -> TestResult:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise InvalidTest("empty sample")
    res = stats.ks_2samp(a, b)
    return TestResult(name, float(res.statistic), float(res.pvalue), bool(res.pvalue > alpha),
                      float(res.statistic), {"n": (int(a.size), int(b.size))}, alpha)


def within_se(value: float, target: float, se: float, k: float = 3.0,
              name: str = "within SE") -> TestResult:
    """Pass iff ``|value - target| <= k * se``; the statistic is the z-score."""
    z = (value - target) / se if se > 0 else (0.0 if value == target else math.inf)
    return TestResult(name, float(z), float(2 * stats.norm.sf(abs(z))), bool(abs(z) <= k),
                      float(value - target), {"value": value, "target": target, "se": se}, k)


def proportion(hits: int, total: int) -> tuple:
    """Sample proportion and its binomial standard error."""
    p = hits / total
    return p, math.sqrt(max(p * (1 - p), 1.0 / total) / total)
