"""Walks, increment models and the seeded randomness every sampler consumes.

Two numeric representations are used and never mixed inside one walk:
Python ``float`` for continuous increment laws and ``fractions.Fraction``
for lattice laws and exact oracles.  Floats are always interpreted as the
exact dyadic rationals they denote, so order decisions on float walks are
made on exact partial sums (see :meth:`WalkPath.scaled_sums`).
"""
from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from itertools import accumulate
from typing import ClassVar, Sequence, Union

import numpy as np
from scipy import special

Numeric = Union[float, Fraction]


class MajorantError(Exception):
    """Base class for errors raised by this package."""


class InvalidModel(MajorantError):
    pass


class InvalidInput(MajorantError):
    pass


class InvalidParameter(MajorantError):
    pass


class CapacityExceeded(MajorantError):
    pass


class EmptyWalk(MajorantError):
    pass


class DegenerateInput(MajorantError):
    pass


class UseLatticeModule(MajorantError):
    pass


class NotInSupport(MajorantError):
    pass


class NoMass(MajorantError):
    pass


class SamplingFailed(MajorantError):
    pass


class InvalidTest(MajorantError):
    pass


# ---------------------------------------------------------------------------
# randomness


class RngStream:
    """Seeded stream of pseudo-random draws with labelled forking.

    A child created by :meth:`fork` is seeded from the root seed, the chain of
    fork positions and the labels, never from the parent's generator state, so
    replaying the same seed and the same sequence of forks reproduces every
    draw.  Unknown attributes are forwarded to the underlying
    :class:`numpy.random.Generator`.
    """

    def __init__(self, seed: int = 0, _key: tuple = ()):
        self.seed = int(seed)
        self._key = tuple(_key)
        self._forks = 0
        seq = np.random.SeedSequence(self.seed, spawn_key=self._key)
        self.generator = np.random.Generator(np.random.PCG64(seq))

    def fork(self, label: str) -> "RngStream":
        key = self._key + (self._forks, zlib.crc32(label.encode()))
        self._forks += 1
        return RngStream(self.seed, key)

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in ``[low, high]`` (both ends included)."""
        return int(self.generator.integers(low, high + 1))

    def pick(self, items: Sequence):
        return items[int(self.generator.integers(len(items)))]

    def permuted(self, items: Sequence) -> list:
        order = self.generator.permutation(len(items))
        return [items[i] for i in order]

    def __getattr__(self, name):
        return getattr(self.generator, name)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, key={self._key})"


def as_stream(rng) -> RngStream:
    if isinstance(rng, RngStream):
        return rng
    if rng is None:
        return RngStream(0)
    return RngStream(int(rng))


# ---------------------------------------------------------------------------
# increment models


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _norm_cdf(x):
    return 0.5 * special.erfc(-np.asarray(x, dtype=float) / math.sqrt(2.0))


@dataclass(frozen=True)
class Gaussian:
    mean: float = 0.0
    sd: float = 1.0
    continuous: ClassVar[bool] = True

    def __post_init__(self):
        if not self.sd > 0:
            raise InvalidModel("Gaussian sd must be positive")

    def draw(self, size, gen) -> np.ndarray:
        return gen.normal(self.mean, self.sd, size)

    def sum_cdf(self, j: int, x):
        """P(S_j <= x)."""
        return _norm_cdf((np.asarray(x, dtype=float) - j * self.mean) / (self.sd * math.sqrt(j)))

    def positive_part_mean(self, j: int) -> float:
        """E(S_j v 0) in closed form."""
        m, s = j * self.mean, self.sd * math.sqrt(j)
        z = m / s
        return m * float(_norm_cdf(z)) + s * math.exp(-0.5 * z * z) / math.sqrt(2 * math.pi)


@dataclass(frozen=True)
class Cauchy:
    location: float = 0.0
    scale: float = 1.0
    continuous: ClassVar[bool] = True

    def __post_init__(self):
        if not self.scale > 0:
            raise InvalidModel("Cauchy scale must be positive")

    @property
    def mean(self):
        raise InvalidModel("the Cauchy law has no mean")

    def draw(self, size, gen) -> np.ndarray:
        return self.location + self.scale * gen.standard_cauchy(size)

    def sum_cdf(self, j: int, x):
        z = (np.asarray(x, dtype=float) - j * self.location) / (j * self.scale)
        return 0.5 + np.arctan(z) / math.pi


@dataclass(frozen=True)
class Uniform:
    a: float = -1.0
    b: float = 1.0
    continuous: ClassVar[bool] = True

    def __post_init__(self):
        if not self.b > self.a:
            raise InvalidModel("Uniform needs a < b")

    @property
    def mean(self) -> float:
        return 0.5 * (self.a + self.b)

    def draw(self, size, gen) -> np.ndarray:
        return gen.uniform(self.a, self.b, size)


@dataclass(frozen=True)
class SymmetricStable:
    """Symmetric alpha-stable law, sampled by Chambers-Mallows-Stuck."""

    alpha: float
    scale: float = 1.0
    continuous: ClassVar[bool] = True

    def __post_init__(self):
        if not 0 < self.alpha <= 2:
            raise InvalidModel("stability index must lie in (0, 2]")

    def draw(self, size, gen) -> np.ndarray:
        a = self.alpha
        v = gen.uniform(-0.5 * math.pi, 0.5 * math.pi, size)
        w = gen.exponential(1.0, size)
        if a == 1.0:
            x = np.tan(v)
        else:
            x = (np.sin(a * v) / np.cos(v) ** (1.0 / a)
                 * (np.cos((1.0 - a) * v) / w) ** ((1.0 - a) / a))
        return self.scale * x


@dataclass(frozen=True)
class FiniteSupport:
    """Atomic law on finitely many rational values."""

    atoms: tuple  # ((value, probability), ...)
    continuous: ClassVar[bool] = False

    def __post_init__(self):
        merged: dict = {}
        for v, p in self.atoms:
            p = _q(p)
            if p <= 0:
                raise InvalidModel("atom probabilities must be positive")
            merged[_q(v)] = merged.get(_q(v), Fraction(0)) + p
        if sum(merged.values()) != 1:
            raise InvalidModel("atom probabilities must sum to 1 exactly")
        object.__setattr__(self, "atoms", tuple(sorted(merged.items())))

    def support(self) -> list:
        return list(self.atoms)

    @property
    def mean(self) -> Fraction:
        return sum((v * p for v, p in self.atoms), Fraction(0))

    def draw_index(self, size, gen) -> np.ndarray:
        return gen.choice(len(self.atoms), size=size, p=[float(p) for _, p in self.atoms])

    def draw(self, size, gen) -> np.ndarray:
        values = np.array([float(v) for v, _ in self.atoms])
        return values[self.draw_index(size, gen)]

    def draw_exact(self, n: int, gen) -> list:
        values = [v for v, _ in self.atoms]
        return [values[i] for i in self.draw_index(n, gen)]


def Rademacher() -> FiniteSupport:
    return FiniteSupport(((Fraction(-1), Fraction(1, 2)), (Fraction(1), Fraction(1, 2))))


def BernoulliLattice(p) -> FiniteSupport:
    """Steps +1 with probability p and -1 otherwise."""
    p = _q(p)
    if not 0 < p < 1:
        raise InvalidModel("p must lie strictly between 0 and 1")
    return FiniteSupport(((Fraction(1), p), (Fraction(-1), 1 - p)))


@dataclass(frozen=True)
class Empirical:
    """A fixed list of values visited in uniformly random order."""

    values: tuple
    continuous: ClassVar[bool] = False

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(_q(v) for v in self.values))


IncrementModel = Union[Gaussian, Cauchy, Uniform, SymmetricStable, FiniteSupport, Empirical]


def model_mean(model) -> Numeric:
    if isinstance(model, Empirical):
        return sum(model.values, Fraction(0)) / len(model.values)
    return model.mean


# ---------------------------------------------------------------------------
# walks


def _kind(x) -> str:
    if isinstance(x, bool):
        raise InvalidInput("booleans are not increments")
    if isinstance(x, (Fraction, int, np.integer)):
        return "exact"
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise InvalidInput("increments must be finite")
        return "float"
    raise InvalidInput(f"unsupported increment type {type(x).__name__}")


@dataclass(frozen=True)
class WalkPath:
    """Walk with ``values[0] = 0`` and ``values[j] = x_1 + ... + x_j``.

    For float walks ``values[j]`` is the exact partial sum rounded once to
    the nearest float; all geometric decisions use :meth:`scaled_sums`.
    """

    increments: tuple
    values: tuple = field(compare=False)

    @property
    def n(self) -> int:
        return len(self.increments)

    @property
    def exact(self) -> bool:
        return not self.increments or isinstance(self.increments[0], Fraction)

    @cached_property
    def scaled_sums(self) -> tuple:
        """``(P, D)`` with integers ``P[j] = D * S_j`` exactly."""
        return scale_to_integers(self.increments)

    def exact_value(self, j: int) -> Fraction:
        p, d = self.scaled_sums
        return Fraction(p[j], d)

    def __len__(self):
        return self.n


def scale_to_integers(increments: Sequence[Numeric]) -> tuple:
    """Return ``(P, D)``: integer prefix sums of the increments times ``D``."""
    if not increments:
        return (0,), 1
    if isinstance(increments[0], Fraction):
        d = reduce(math.lcm, (x.denominator for x in increments), 1)
        ints = [x.numerator * (d // x.denominator) for x in increments]
    else:
        ratios = [x.as_integer_ratio() for x in increments]
        d = max(den for _, den in ratios)
        ints = [num * (d // den) for num, den in ratios]
    return tuple(accumulate(ints, initial=0)), d


def build_walk(increments: Sequence) -> WalkPath:
    increments = list(increments)
    kinds = {_kind(x) for x in increments}
    if len(kinds) > 1:
        raise InvalidInput("a walk cannot mix exact and float increments")
    if kinds == {"float"}:
        incs = tuple(float(x) for x in increments)
        p, d = scale_to_integers(incs)
        vals = tuple(c / d for c in p)  # int true division rounds correctly
        walk = WalkPath(incs, vals)
        walk.__dict__["scaled_sums"] = (p, d)
        return walk
    incs = tuple(_q(int(x)) if isinstance(x, np.integer) else _q(x) for x in increments)
    vals = tuple(accumulate(incs, initial=Fraction(0)))
    return WalkPath(incs, vals)


def sample_increments(model, n: int, rng: RngStream) -> list:
    if n < 0:
        raise InvalidInput("n must be non-negative")
    gen = as_stream(rng).generator
    if isinstance(model, Empirical):
        if len(model.values) != n:
            raise InvalidModel("an Empirical model must supply exactly n values")
        return [model.values[i] for i in gen.permutation(n)]
    if n == 0:
        return []
    if isinstance(model, FiniteSupport):
        return model.draw_exact(n, gen)
    return [float(x) for x in model.draw(n, gen)]


def sample_walk(model, n: int, rng: RngStream) -> WalkPath:
    return build_walk(sample_increments(model, n, rng))


def check_assumption_a(increments: Sequence) -> bool:
    """True iff all nonempty subsets of the increments have distinct means."""
    n = len(increments)
    if n > 24:
        raise CapacityExceeded("subset scan limited to n <= 24")
    if n == 0:
        return True
    exact = [x if isinstance(x, Fraction) else Fraction(x) for x in increments]
    d = reduce(math.lcm, (x.denominator for x in exact), 1)
    ints = [int(x * d) for x in exact]
    big = math.lcm(*range(1, n + 1))
    # subset mean times `big` is an integer: sum * (big // size)
    if max(abs(v) for v in ints) * n * big < 2**62:
        sums = np.zeros(1, dtype=np.int64)
        sizes = np.zeros(1, dtype=np.int64)
        for v in ints:
            sums = np.concatenate([sums, sums + v])
            sizes = np.concatenate([sizes, sizes + 1])
        sums, sizes = sums[1:], sizes[1:]
        keys = sums * (big // sizes)
        return np.unique(keys).size == keys.size
    seen = set()
    subsets = [(0, 0)]
    for v in ints:
        subsets += [(s + v, k + 1) for s, k in subsets]
    for s, k in subsets[1:]:
        key = s * (big // k)
        if key in seen:
            return False
        seen.add(key)
    return True
