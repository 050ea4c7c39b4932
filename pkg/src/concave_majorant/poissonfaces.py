"""Faces of walks with a geometric number of steps as a Poisson point process.

For a walk of length ``n(q)`` with ``P(n(q) >= n) = q^n`` and a continuous
step law, the number of faces of length ``j`` is Poisson with mean
``q^j / j``, independently over ``j``, and a length-``j`` face has the
increment law of ``S_j``.  This module samples those processes exactly,
rebuilds walks from them and checks the identities for the maximum that
follow from reading off the faces of positive slope.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import (DegenerateInput, FiniteSupport, InvalidModel, InvalidParameter, RngStream,
                   SamplingFailed, UseLatticeModule, WalkPath, as_stream, build_walk,
                   scale_to_integers)
from .hull import Face, HullBatch, hull_batch
from .lattice import point_mass_table
from .randperm import Estimate, multiplicities, partitions
from .transform import rotate, valid_cyclic_shifts
from .verify import TestResult, chi_square_test, within_se

RETRY_CAP = 10**6


def _check_q(q: float) -> None:
    if not 0 < q < 1:
        raise InvalidParameter("q must lie strictly between 0 and 1")


def _require_continuous(model) -> None:
    if not getattr(model, "continuous", False):
        raise UseLatticeModule("atomic step laws are handled by the lattice module")


# ---------------------------------------------------------------------------
# face counts


def _cutoff(q: float) -> int:
    return max(4, math.ceil(math.log(0.01) / math.log(q)))


def _tail_law(q: float, J: int) -> tuple:
    """Lengths ``j > J`` and their masses ``q^j / j`` down to double precision."""
    js, ws = [], []
    j = J + 1
    w = q**j / j
    while w > 1e-18 * (ws[0] if ws else w) or not ws:
        js.append(j)
        ws.append(w)
        j += 1
        w = q**j / j
    return np.array(js), np.array(ws)


@dataclass
class FaceCountBatch:
    """Independent draws of the face-count sequence ``(A_1, A_2, ...)``.

    ``dense[i, j-1]`` holds ``A_j`` of draw ``i`` for ``j <= J``; counts
    beyond the cutoff are listed as ``(owner, length)`` pairs.
    """

    q: float
    dense: np.ndarray
    tail_owner: np.ndarray
    tail_length: np.ndarray

    def __len__(self):
        return self.dense.shape[0]

    def count(self, j: int) -> np.ndarray:
        if j <= self.dense.shape[1]:
            return self.dense[:, j - 1].copy()
        return np.bincount(self.tail_owner[self.tail_length == j], minlength=len(self))

    def totals(self) -> np.ndarray:
        """Realised walk lengths ``sum_j j A_j``."""
        J = self.dense.shape[1]
        out = self.dense @ np.arange(1, J + 1)
        np.add.at(out, self.tail_owner, self.tail_length)
        return out

    def faces(self) -> np.ndarray:
        out = self.dense.sum(axis=1)
        np.add.at(out, self.tail_owner, 1)
        return out

    def as_dict(self, i: int) -> dict:
        out = {j + 1: int(c) for j, c in enumerate(self.dense[i]) if c}
        for j in self.tail_length[self.tail_owner == i]:
            out[int(j)] = out.get(int(j), 0) + 1
        return dict(sorted(out.items()))


def sample_face_counts_batch(q: float, size: int, rng: RngStream) -> FaceCountBatch:
    """``size`` independent draws of ``A_j ~ Poisson(q^j / j)``, all ``j >= 1``.

    Lengths up to a cutoff ``J`` are drawn directly.  The number of points
    beyond ``J`` is Poisson with the total tail mass and each such point is
    placed at ``j`` with probability proportional to ``q^j / j``, which is
    the same process without truncation.
    """
    _check_q(q)
    gen = as_stream(rng).generator
    J = _cutoff(q)
    means = q ** np.arange(1, J + 1) / np.arange(1, J + 1)
    dense = gen.poisson(means, size=(size, J))
    js, ws = _tail_law(q, J)
    extra = gen.poisson(ws.sum(), size=size)
    owner = np.repeat(np.arange(size), extra)
    cdf = np.cumsum(ws) / ws.sum()
    idx = np.minimum(np.searchsorted(cdf, gen.random(owner.size), side="right"), js.size - 1)
    return FaceCountBatch(q, dense, owner, js[idx])


def sample_face_counts(q: float, rng: RngStream) -> dict:
    """One draw of ``{j: A_j}`` (nonzero counts only)."""
    return sample_face_counts_batch(q, 1, rng).as_dict(0)


def geometric_length(q: float, rng: RngStream, size=None):
    """``n(q)`` with ``P(n(q) >= n) = q^n``."""
    _check_q(q)
    gen = as_stream(rng).generator
    return gen.geometric(1 - q, size=size) - 1


# ---------------------------------------------------------------------------
# point processes of faces


@dataclass(frozen=True)
class FacePoint:
    length: int
    increment: float
    segment: tuple | None = None


@dataclass(frozen=True)
class FacePointProcess:
    q: float
    points: tuple

    @property
    def n(self) -> int:
        return sum(p.length for p in self.points)

    def counts(self) -> dict:
        return dict(sorted(Counter(p.length for p in self.points).items()))

    def key(self) -> Counter:
        """Multiset of exact ``(length, increment)`` pairs."""
        return Counter((p.length, Fraction(p.increment)) for p in self.points)


def _segment_sum(steps: Sequence[float]) -> float:
    return math.fsum(steps)  # correctly rounded exact sum


def below_chord(steps: Sequence[float]) -> list:
    """Rotate ``steps`` by their unique valid cyclic shift."""
    shifts = valid_cyclic_shifts(steps)
    if len(shifts) != 1:
        raise DegenerateInput("segment has no unique valid rotation")
    return rotate(steps, shifts[0])


def sample_face_point_process(q: float, model, rng: RngStream,
                              with_paths: bool = False) -> FacePointProcess:
    """Faces of a Geometric(1 - q)-length walk as marked Poisson points.

    Each length-``j`` point carries an independent copy of ``S_j``; with
    ``with_paths`` the ``j`` steps are kept, rotated to lie below their chord.
    """
    _check_q(q)
    _require_continuous(model)
    rng = as_stream(rng)
    counts = sample_face_counts(q, rng)
    gen = rng.fork("increments").generator
    points = []
    for j, a in counts.items():
        draws = np.asarray(model.draw(j * a, gen), dtype=float).reshape(a, j)
        for row in draws:
            steps = [float(x) for x in row]
            seg = tuple(below_chord(steps)) if with_paths else None
            points.append(FacePoint(j, _segment_sum(steps), seg))
    return FacePointProcess(q, tuple(points))


def assemble_walk_from_faces(process: FacePointProcess, rng: RngStream | None = None) -> WalkPath:
    """Concatenate the segments of ``process`` in decreasing order of slope.

    The order is deterministic, so ``rng`` is accepted only for interface
    symmetry with the samplers.
    """
    if any(p.segment is None for p in process.points):
        raise InvalidModel("the process was sampled without paths")
    keyed = []
    for p in process.points:
        sums, d = scale_to_integers(list(p.segment))
        keyed.append((Fraction(sums[-1], d * p.length), p.segment))
    keyed.sort(key=lambda item: item[0], reverse=True)
    if any(a[0] == b[0] for a, b in zip(keyed, keyed[1:])):
        raise DegenerateInput("two faces share a slope")
    steps = [x for _, seg in keyed for x in seg]
    return build_walk(steps)


# ---------------------------------------------------------------------------
# geometric-length walks simulated directly


def geometric_walks(q: float, model, size: int, rng: RngStream) -> HullBatch:
    """Majorants of ``size`` independent walks of length ``n(q)``."""
    rng = as_stream(rng)
    lengths = geometric_length(q, rng.fork("lengths"), size=size)
    gen = rng.fork("steps").generator
    flat = np.asarray(model.draw(int(lengths.sum()), gen), dtype=float)
    rows = np.split(flat, np.cumsum(lengths)[:-1])
    return hull_batch(rows)


def walk_statistics(batch: HullBatch) -> dict:
    """Per-walk ``n, S_n, M, L, F`` arrays."""
    return {"n": batch.lengths(), "S": batch.endpoints(), "M": batch.maxima(),
            "L": batch.argmax(), "F": batch.face_counts()}


# ---------------------------------------------------------------------------
# infinite horizon


def sample_infinite_majorant(model, mu: float, j_max: int, rng: RngStream) -> list:
    """Faces of length at most ``j_max`` of the majorant on ``[0, infinity)``.

    Length-``j`` faces are Poisson with mean ``P(S_j > j mu) / j`` and carry
    ``S_j`` conditioned on ``S_j > j mu`` (by rejection).  This is a
    truncation: longer faces are not produced.
    """
    if not hasattr(model, "sum_cdf"):
        raise InvalidModel("the model needs a closed-form law of S_j")
    gen = as_stream(rng).generator
    faces = []
    for j in range(1, j_max + 1):
        p = 1.0 - float(model.sum_cdf(j, j * mu))
        count = int(gen.poisson(p / j))
        for _ in range(count):
            for _attempt in range(RETRY_CAP):
                s = math.fsum(model.draw(j, gen))
                if s > j * mu:
                    break
            else:
                raise SamplingFailed("rejection cap exceeded")
            faces.append((s / j, j, s))
    faces.sort(key=lambda f: f[0], reverse=True)
    out, t = [], 0
    for slope, j, s in faces:
        out.append(Face(j, s, slope, t, t + j))
        t += j
    return out


def infinite_face_mean(model, mu: float, j: int) -> float:
    return (1.0 - float(model.sum_cdf(j, j * mu))) / j


# ---------------------------------------------------------------------------
# the maximum


def hunt_rhs(model, n: int, rng: RngStream | None = None, samples: int = 10**5) -> float:
    """``sum_{l=1}^n E(S_l^+) / l``.

    Closed form for Gaussian steps, exact for atomic steps, Monte Carlo
    otherwise.
    """
    if n <= 0:
        return 0.0
    if hasattr(model, "positive_part_mean"):
        return sum(model.positive_part_mean(j) / j for j in range(1, n + 1))
    if isinstance(model, FiniteSupport):
        return float(hunt_rhs_exact(model, n))
    gen = as_stream(rng).generator
    total = 0.0
    for j in range(1, n + 1):
        s = np.asarray(model.draw(samples * j, gen), dtype=float).reshape(samples, j).sum(axis=1)
        total += np.maximum(s, 0).mean() / j
    return total


def hunt_rhs_exact(model: FiniteSupport, n: int) -> Fraction:
    table = point_mass_table(model, n)
    return sum((sum((v * p for v, p in table.rows[j].items() if v > 0), Fraction(0)) / j
                for j in range(1, n + 1)), Fraction(0))


def spitzer_compound_poisson_batch(q: float, model, size: int, rng: RngStream) -> np.ndarray:
    """``size`` draws of ``sum_k sum_{i <= N_k} S_{k,i}^+`` with ``N_k ~ Poisson(q^k / k)``."""
    rng = as_stream(rng)
    counts = sample_face_counts_batch(q, size, rng)
    gen = rng.fork("sums").generator
    out = np.zeros(size)
    for j in range(1, counts.dense.shape[1] + 1):
        a = counts.dense[:, j - 1]
        total = int(a.sum())
        if total:
            s = np.asarray(model.draw(total * j, gen), dtype=float).reshape(total, j).sum(axis=1)
            np.add.at(out, np.repeat(np.arange(size), a), np.maximum(s, 0.0))
    for owner, j in zip(counts.tail_owner, counts.tail_length):
        out[owner] += max(float(np.sum(model.draw(int(j), gen))), 0.0)
    return out


def spitzer_compound_poisson_sample(q: float, model, rng: RngStream) -> float:
    return float(spitzer_compound_poisson_batch(q, model, 1, rng)[0])


def rising(p, n: int):
    out = Fraction(1) if isinstance(p, (int, Fraction)) else 1.0
    for i in range(n):
        out *= p + i
    return out


def ewens_pplus_prob(partition: Sequence[int], p_plus) -> Fraction | float:
    """Ewens sampling probability with parameter ``p_plus`` of a partition of ``l``.

    ``l! / (p (p+1) ... (p+l-1)) * prod_j p^{a_j} / (j^{a_j} a_j!)``; exact
    when ``p_plus`` is rational.
    """
    ell = sum(partition)
    out = math.factorial(ell) / rising(p_plus, ell)
    for j, a in multiplicities(partition).items():
        out *= p_plus**a / (j**a * math.factorial(a))
    return out


def argmax_time_prob(ell: int, q: float, p_plus: float) -> float:
    """``P(L_{n(q)} = l)`` when ``P(S_j > 0) = p_plus`` for every ``j``."""
    return math.exp(math.lgamma(p_plus + ell) - math.lgamma(p_plus) - math.lgamma(ell + 1)
                    + ell * math.log(q) + p_plus * math.log1p(-q))


def positive_face_partitions(batch: HullBatch, walks: Sequence[int]) -> list:
    """Partition formed by the lengths of the positive-increment faces of each walk."""
    out = []
    for w in walks:
        s = batch.starts[w]
        vt = batch.walk_vertices(w)
        vals = batch.values[s + vt]
        lengths = np.diff(vt)[np.diff(vals) > 0]
        out.append(tuple(sorted(lengths.tolist(), reverse=True)))
    return out


@dataclass
class MaxSplitResult:
    ell: int
    conditioned: int
    observed: Counter
    expected: dict
    test: TestResult
    detail: dict = field(default_factory=dict)


def max_split_conditional_test(model, q: float, ell: int, samples: int, rng: RngStream,
                               p_plus=Fraction(1, 2), alpha: float = 0.01,
                               batch: HullBatch | None = None) -> MaxSplitResult:
    """Partition of positive-face lengths given that the maximum occurs at ``ell``.

    Simulates ``samples`` walks of length ``n(q)``, keeps those whose first
    argmax is ``ell`` and compares the partition counts with the Ewens law
    of parameter ``p_plus``.
    """
    if batch is None:
        batch = geometric_walks(q, model, samples, rng)
    keep = np.flatnonzero(batch.argmax() == ell)
    observed = Counter(positive_face_partitions(batch, keep))
    expected = {p: ewens_pplus_prob(p, p_plus) for p in partitions(ell)}
    if ell == 0:
        ok = set(observed) <= {()}
        test = TestResult("Ewens law given L=0", 0.0, 1.0, ok)
    else:
        test = chi_square_test(observed, expected, alpha, name=f"Ewens law given L={ell}")
    return MaxSplitResult(ell, int(keep.size), observed, expected, test)


def max_split_independence(batch: HullBatch, k: float = 3.0) -> TestResult:
    """Correlation between the numbers of faces before and after the maximum."""
    owner, _, inc = batch.face_table()
    pre = np.bincount(owner, weights=inc > 0, minlength=len(batch))
    post = np.bincount(owner, weights=inc <= 0, minlength=len(batch))
    r = float(np.corrcoef(pre, post)[0, 1])
    se = 1.0 / math.sqrt(len(batch))
    return within_se(r, 0.0, se, k, name="pre/post maximum face counts uncorrelated")


def zero_max_probability(samples: np.ndarray) -> Estimate:
    hits = int(np.count_nonzero(samples == 0))
    p = hits / samples.size
    return Estimate(p, math.sqrt(max(p * (1 - p), 1 / samples.size) / samples.size), samples.size)
