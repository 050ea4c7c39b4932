"""Walks with atomic increments: exact point masses, slope series, face laws.

Everything here works on ``FiniteSupport`` models.  Slopes ``x`` are the
rationals ``v/k`` with ``P(S_k = v) > 0``; the slope index lists them ordered
by ``(denominator, value)``.  For atomic laws every walk segment has such a
slope, so the non-atomic part ``mu_0`` of the face intensity vanishes; it is
still computed (as the complement of the slope series) as a consistency check.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from typing import Sequence

import numpy as np

from .core import (CapacityExceeded, FiniteSupport, InvalidInput, InvalidModel,
                   InvalidParameter, NoMass, NotInSupport, RngStream, SamplingFailed,
                   WalkPath, as_stream, build_walk)
from .hull import Majorant, concave_majorant, trivial_majorant
from .randperm import compositions, refines
from .series import BivariateSeries, UnivariateSeries
from .transform import rotate, valid_cyclic_shifts
from .verify import enumerate_walks

REJECTION_CAP = 10**6


def _require_atomic(model) -> FiniteSupport:
    if not isinstance(model, FiniteSupport):
        raise InvalidModel("this operation needs a FiniteSupport model")
    return model


def _integer_atoms(model: FiniteSupport) -> tuple:
    """Atoms as integers ``value * d`` with their probabilities, and ``d``."""
    d = reduce(math.lcm, (v.denominator for v, _ in model.atoms), 1)
    return [(int(v * d), p) for v, p in model.atoms], d


# ---------------------------------------------------------------------------
# point masses and slopes


@dataclass(frozen=True)
class PointMassTable:
    """``rows[k]`` maps each value ``v`` to ``P(S_k = v)`` exactly, ``k <= k_max``."""

    rows: tuple
    k_max: int

    def mass(self, k: int, value) -> Fraction:
        return self.rows[k].get(Fraction(value), Fraction(0))


@lru_cache(maxsize=64)
def point_mass_table(model: FiniteSupport, k_max: int) -> PointMassTable:
    """Exact laws of ``S_1, ..., S_k_max`` by repeated convolution."""
    model = _require_atomic(model)
    if k_max > 64:
        raise CapacityExceeded("k_max is limited to 64")
    atoms, d = _integer_atoms(model)
    rows = [{0: Fraction(1)}]
    for _ in range(k_max):
        nxt = defaultdict(Fraction)
        for v, p in rows[-1].items():
            for a, pa in atoms:
                nxt[v + a] += p * pa
        rows.append(dict(nxt))
    exact_rows = tuple({Fraction(v, d): p for v, p in sorted(r.items())} for r in rows)
    return PointMassTable(exact_rows, k_max)


def slope_index(model: FiniteSupport, k_max: int) -> list:
    """Distinct slopes realised by ``S_k / k`` for ``k <= k_max``, ordered by (denominator, value)."""
    table = point_mass_table(model, k_max)
    slopes = {v / k for k in range(1, k_max + 1) for v in table.rows[k]}
    return sorted(slopes, key=lambda x: (x.denominator, x))


def mu_series(model: FiniteSupport, x, order: int) -> UnivariateSeries:
    """``sum_k q^k P(S_k = k x) / k`` truncated at ``q^order``."""
    x = Fraction(x)
    table = point_mass_table(model, order)
    coeffs = [Fraction(0)] + [table.mass(k, k * x) / k for k in range(1, order + 1)]
    return UnivariateSeries(coeffs, order)


def all_mu_series(model: FiniteSupport, order: int) -> dict:
    """``{slope: mu series}`` for every slope in the index, in index order."""
    table = point_mass_table(model, order)
    coeffs = defaultdict(lambda: [Fraction(0)] * (order + 1))
    for k in range(1, order + 1):
        for v, p in table.rows[k].items():
            coeffs[v / k][k] += p / k
    return {x: UnivariateSeries(coeffs[x], order) for x in slope_index(model, order)}


def mu0_series(model, order: int) -> UnivariateSeries:
    """``-log(1 - q)`` minus the slope series: the non-atomic face intensity."""
    total = UnivariateSeries.neg_log_one_minus(order)
    if not isinstance(model, FiniteSupport):
        return total
    for mu in all_mu_series(model, order).values():
        total = total - mu
    return total


# ---------------------------------------------------------------------------
# generating functions of H_n, K_n, F_n


def gf_HKF(model, order_s: int, order_t: int) -> tuple:
    """Bivariate generating functions ``sum P(X_n = m) s^n t^m`` for X = H, K, F.

    Continuous (non-atomic) models have no ties, so all three coincide with
    the segment-count series ``(1 - s)^(-t)``.
    """
    if order_s < 0 or order_t < 0:
        raise InvalidParameter("orders must be non-negative")
    log1 = UnivariateSeries.neg_log_one_minus(order_s)
    K = BivariateSeries.from_t_linear(log1, order_s, order_t).exp()
    if not isinstance(model, FiniteSupport) or order_s == 0:
        return K, K, K
    mus = all_mu_series(model, order_s)
    mu0 = log1
    h_terms = defaultdict(lambda: UnivariateSeries.zero(order_s))
    f_terms = defaultdict(lambda: UnivariateSeries.zero(order_s))
    for mu in mus.values():
        mu0 = mu0 - mu
        lowest = next(k for k, c in enumerate(mu.coeffs) if c)
        pi = -((-mu).exp() - UnivariateSeries([1], order_s))     # 1 - e^{-mu}
        rho = mu.exp() - UnivariateSeries([1], order_s)          # e^{mu} - 1
        p_pow, r_pow = pi, rho
        for m in range(1, min(order_t, order_s // lowest) + 1):
            h_terms[m] = h_terms[m] + p_pow.scale(Fraction(1, m))
            f_terms[m] = f_terms[m] + r_pow.scale(Fraction((-1) ** (m + 1), m))
            p_pow, r_pow = p_pow * pi, r_pow * rho
    h_terms[1] = h_terms[1] + mu0
    f_terms[1] = f_terms[1] + mu0
    H = BivariateSeries.from_t_powers(dict(h_terms), order_s, order_t).exp()
    F = BivariateSeries.from_t_powers(dict(f_terms), order_s, order_t).exp()
    return H, K, F


# ---------------------------------------------------------------------------
# numeric slope intensities


def _float_rows(model: FiniteSupport, k_max: int):
    """Float point masses of the scaled integer sums, ``(offset, array)`` per k."""
    atoms, d = _integer_atoms(model)
    lo = min(a for a, _ in atoms)
    step = np.zeros(max(a for a, _ in atoms) - lo + 1)
    for a, p in atoms:
        step[a - lo] = float(p)
    rows = [(0, np.ones(1))]
    for k in range(1, k_max + 1):
        off, arr = rows[-1]
        rows.append((off + lo, np.convolve(arr, step)))
    return rows, d


def _horizon(q: float, tol: float) -> int:
    """A ``K`` with ``sum_{k > K} q^k / k <= q^(K+1) / ((K+1)(1-q)) < tol``."""
    k = 1
    while q ** (k + 1) / ((k + 1) * (1 - q)) >= tol:
        k += 1
        if k > 100_000:
            raise CapacityExceeded("q too close to 1")
    return k


def mu_coefficients(model: FiniteSupport, x, k_max: int) -> np.ndarray:
    """Float ``c_k = P(S_k = k x) / k`` for ``k = 0..k_max`` (``c_0 = 0``)."""
    x = Fraction(x)
    rows, d = _float_rows(_require_atomic(model), k_max)
    out = np.zeros(k_max + 1)
    for k in range(1, k_max + 1):
        target = k * x * d
        if target.denominator == 1:
            off, arr = rows[k]
            i = int(target) - off
            if 0 <= i < arr.size:
                out[k] = arr[i] / k
    return out


def _series_exp(c: np.ndarray) -> np.ndarray:
    n = c.size - 1
    g = np.zeros(n + 1)
    g[0] = math.exp(c[0])
    k = np.arange(n + 1)
    for m in range(1, n + 1):
        g[m] = np.dot(k[1:m + 1] * c[1:m + 1], g[m - 1::-1][:m]) / m
    return g


@dataclass(frozen=True)
class SlopeLaws:
    """Laws attached to one slope ``x`` for a walk of length Geometric(1 - q).

    ``H`` (excursions of slope x) is geometric, ``K`` (segments) Poisson,
    ``F`` (presence of a face) Bernoulli, and the number of excursions in a
    segment is log-series.
    """

    x: Fraction
    q: float
    coefficients: np.ndarray  # q^k P(S_k = k x) / k

    @property
    def mu(self) -> float:
        return float(self.coefficients.sum())

    @property
    def pi(self) -> float:
        return -math.expm1(-self.mu)

    @property
    def geometric_parameter(self) -> float:
        """``exp(-mu)``: the success probability of ``H``."""
        return math.exp(-self.mu)

    @property
    def poisson_mean(self) -> float:
        return self.mu

    @property
    def bernoulli_parameter(self) -> float:
        return self.pi

    @property
    def log_series_parameter(self) -> float:
        return self.pi

    def pmf_H(self, h: int) -> float:
        return (1 - self.pi) * self.pi**h

    def pmf_K(self, k: int) -> float:
        return math.exp(-self.mu) * self.mu**k / math.factorial(k)

    def pmf_F(self, f: int) -> float:
        return self.pi if f == 1 else (1 - self.pi if f == 0 else 0.0)

    def pmf_E(self, i: int) -> float:
        return self.pi**i / (i * self.mu) if i >= 1 else 0.0

    def segment_length_pgf(self, z: float) -> float:
        """Generating function of the length of one segment, ``mu(zq) / mu(q)``."""
        k = np.arange(self.coefficients.size)
        return float(np.dot(self.coefficients, z**k)) / self.mu

    def excursion_length_pgf(self, z: float) -> float:
        k = np.arange(self.coefficients.size)
        return -math.expm1(-float(np.dot(self.coefficients, z**k))) / self.pi

    def segment_length_pmf(self) -> np.ndarray:
        return self.coefficients / self.mu

    def excursion_length_pmf(self) -> np.ndarray:
        pmf = -_series_exp(-self.coefficients)
        pmf[0] = 0.0
        return pmf / self.pi

    @property
    def expected_face_length(self) -> float:
        k = np.arange(self.coefficients.size)
        return float(np.dot(k, self.coefficients))


def face_slope_laws(q: float, model: FiniteSupport, x, tol: float = 1e-15) -> SlopeLaws:
    if not 0 < q < 1:
        raise InvalidParameter("q must lie in (0, 1)")
    k_max = _horizon(q, tol)
    c = mu_coefficients(model, x, k_max)
    c = c * q ** np.arange(k_max + 1)
    return SlopeLaws(Fraction(x), q, c)


# ---------------------------------------------------------------------------
# nested compositions


@dataclass(frozen=True)
class NestedCompositions:
    """Excursion, segment and face compositions (``H`` finest, ``F`` coarsest)."""

    H: tuple
    K: tuple
    F: tuple
    slopes: tuple  # one per face

    @property
    def n(self) -> int:
        return sum(self.F)

    def is_nested(self) -> bool:
        return refines(self.H, self.K) and refines(self.K, self.F)


class NestedCompositionSampler:
    """Draws the nested compositions of a Geometric(1 - q)-length lattice walk.

    Slopes first realised beyond the horizon ``K`` (where the remaining
    face intensity is below ``tol``) are dropped.
    """

    def __init__(self, q: float, model: FiniteSupport, tol: float = 1e-13):
        if not 0 < q < 1:
            raise InvalidParameter("q must lie in (0, 1)")
        self.q, self.model = q, _require_atomic(model)
        k_max = _horizon(q, tol)
        rows, d = _float_rows(model, k_max)
        coeffs = defaultdict(lambda: np.zeros(k_max + 1))
        for k in range(1, k_max + 1):
            off, arr = rows[k]
            qk = q**k / k
            for i in np.flatnonzero(arr > 0):
                coeffs[Fraction(int(i) + off, k * d)][k] += qk * arr[i]
        self.slopes = sorted(coeffs, reverse=True)
        self.laws = [SlopeLaws(x, q, coeffs[x]) for x in self.slopes]
        self.mu = np.array([law.mu for law in self.laws])
        self._excursion_pmf = {}

    def _excursion_lengths(self, j: int, size: int, gen) -> np.ndarray:
        if j not in self._excursion_pmf:
            pmf = np.clip(self.laws[j].excursion_length_pmf(), 0.0, None)
            self._excursion_pmf[j] = pmf / pmf.sum()
        pmf = self._excursion_pmf[j]
        return gen.choice(pmf.size, size=size, p=pmf)

    def draw(self, rng: RngStream) -> NestedCompositions:
        gen = as_stream(rng).generator
        segments = gen.poisson(self.mu)
        H, K, F, slopes = [], [], [], []
        for j in np.flatnonzero(segments):
            face = 0
            for _ in range(int(segments[j])):
                e = int(gen.logseries(self.laws[j].pi))
                lengths = self._excursion_lengths(j, e, gen).tolist()
                H += lengths
                K.append(sum(lengths))
                face += K[-1]
            F.append(face)
            slopes.append(self.slopes[j])
        return NestedCompositions(tuple(H), tuple(K), tuple(F), tuple(slopes))


def sample_nested_compositions(q: float, model: FiniteSupport, rng: RngStream) -> NestedCompositions:
    return NestedCompositionSampler(q, model).draw(rng)


# ---------------------------------------------------------------------------
# walks conditioned on their majorant


def _exact_faces(majorant: Majorant) -> list:
    vt, vv = majorant.vertex_times, majorant.scaled_vertex_values
    return [(vt[i + 1] - vt[i], Fraction(vv[i + 1] - vv[i], majorant.scale))
            for i in range(len(vt) - 1)]


def _face_of_blocks(c: Sequence[int], faces: list) -> list | None:
    """Index of the face holding each block, or None if ``c`` does not refine the faces."""
    if not refines(c, [length for length, _ in faces]):
        return None
    owner, f, used = [], 0, 0
    for b in c:
        if used == faces[f][0]:
            f, used = f + 1, 0
        owner.append(f)
        used += b
    return owner


def conditional_composition_weight(majorant: Majorant, c: Sequence[int],
                                   model: FiniteSupport) -> Fraction:
    """Unnormalised weight of block composition ``c`` given the majorant.

    ``1 / (prod n_i prod_j k_j!)`` times the chance that every block of
    length ``n_i`` ends on its face line, ``k_j`` being the number of blocks
    in face ``j``.  Compositions that do not refine the faces get weight zero.
    Summed over compositions the weights give ``P(majorant = majorant)``.
    """
    faces = _exact_faces(majorant)
    owner = _face_of_blocks(c, faces)
    if owner is None:
        return Fraction(0)
    table = point_mass_table(model, max(c))
    w = Fraction(1, math.prod(c))
    for j in set(owner):
        w /= math.factorial(owner.count(j))
    for b, j in zip(c, owner):
        length, inc = faces[j]
        w *= table.mass(b, inc * b / length)
    return w


def _face_composition_law(length: int, slope: Fraction, table: PointMassTable) -> tuple:
    """Compositions of one face with weights ``prod (u_{n_i} / n_i) / k!``."""
    comps, weights = [], []
    for c in compositions(length):
        w = Fraction(1, math.prod(c) * math.factorial(len(c)))
        for b in c:
            w *= table.mass(b, slope * b)
            if not w:
                break
        if w:
            comps.append(c)
            weights.append(w)
    return comps, weights


def _bridge(model: FiniteSupport, m: int, target: Fraction, gen) -> list:
    """``m`` i.i.d. increments conditioned to sum to ``target``."""
    values = [v for v, _ in model.atoms]
    if len(values) == 1:
        if values[0] * m != target:
            raise NotInSupport("block end unreachable")
        return [values[0]] * m
    if len(values) == 2:
        a, b = values
        ups = (target - m * a) / (b - a)
        if ups.denominator != 1 or not 0 <= ups <= m:
            raise NotInSupport("block end unreachable")
        seq = [b] * int(ups) + [a] * (m - int(ups))
        return [seq[i] for i in gen.permutation(m)]
    for _ in range(REJECTION_CAP):
        draw = model.draw_exact(m, gen)
        if sum(draw) == target:
            return draw
    raise SamplingFailed("bridge rejection cap exceeded")


def _fill_blocks(blocks: list, model: FiniteSupport, gen) -> list:
    """Bridge each ``(length, increment)`` block and turn it by a uniform valid shift."""
    out = []
    for m, inc in blocks:
        seg = _bridge(model, m, inc, gen)
        shifts = valid_cyclic_shifts(seg)
        out += rotate(seg, shifts[int(gen.integers(len(shifts)))])
    return out


class ConditionedWalkSampler:
    """Walks with i.i.d. atomic increments conditioned on their concave majorant.

    The block composition is drawn face by face from the normalised weights
    of :func:`conditional_composition_weight` (which factorise over faces),
    each block is filled by a bridge ending on the face line and rotated by a
    uniformly chosen valid cyclic shift.
    """

    def __init__(self, majorant: Majorant, model: FiniteSupport):
        self.model = _require_atomic(model)
        if majorant.n > 24:
            raise CapacityExceeded("n is limited to 24")
        self.majorant = majorant
        self.faces = _exact_faces(majorant)
        table = point_mass_table(model, max(length for length, _ in self.faces))
        self.face_laws = []
        for length, inc in self.faces:
            comps, weights = _face_composition_law(length, inc / length, table)
            if not comps:
                raise NotInSupport("a face of the majorant cannot be realised")
            total = sum(weights)
            self.face_laws.append((comps, [w / total for w in weights]))

    def composition_law(self) -> dict:
        """Exact normalised law of the block composition."""
        law = {}
        for choice in product(*(zip(c, p) for c, p in self.face_laws)):
            comp = tuple(b for c, _ in choice for b in c)
            law[comp] = math.prod((p for _, p in choice), start=Fraction(1))
        return law

    def draw(self, rng: RngStream) -> WalkPath:
        gen = as_stream(rng).generator
        blocks = []
        for (length, inc), (comps, probs) in zip(self.faces, self.face_laws):
            c = comps[int(gen.choice(len(comps), p=[float(p) for p in probs]))]
            blocks += [(b, inc * b / length) for b in c]
        return build_walk(_fill_blocks(blocks, self.model, gen))


def conditioned_walk_given_majorant(majorant: Majorant, model: FiniteSupport,
                                    rng: RngStream) -> WalkPath:
    return ConditionedWalkSampler(majorant, model).draw(rng)


@lru_cache(maxsize=32)
def trivial_composition_law(model: FiniteSupport, n: int) -> tuple:
    """Compositions of ``n`` with normalised weights ``prod (P(S_{n_i} = 0) / n_i) / k!``."""
    model = _require_atomic(model)
    if n < 1:
        raise InvalidInput("n must be at least 1")
    if n > 24:
        raise CapacityExceeded("n is limited to 24")
    table = point_mass_table(model, n)
    comps, weights = _face_composition_law(n, Fraction(0), table)
    if not comps:
        raise NoMass("the walk never returns to zero within n steps")
    total = sum(weights)
    return tuple(comps), tuple(w / total for w in weights)


def conditioned_trivial_walk(model: FiniteSupport, n: int, rng: RngStream) -> WalkPath:
    """Walk conditioned to have the flat majorant ``C = 0`` on ``[0, n]``."""
    comps, probs = trivial_composition_law(model, n)
    gen = as_stream(rng).generator
    c = comps[int(gen.choice(len(comps), p=[float(p) for p in probs]))]
    return build_walk(_fill_blocks([(b, Fraction(0)) for b in c], model, gen))


def majorant_probability(majorant: Majorant, model: FiniteSupport) -> Fraction:
    """``P(the walk has this majorant)`` as the total composition weight."""
    model = _require_atomic(model)
    if majorant.n > 24:
        raise CapacityExceeded("n is limited to 24")
    table = point_mass_table(model, majorant.n)
    out = Fraction(1)
    for length, inc in _exact_faces(majorant):
        out *= sum(_face_composition_law(length, inc / length, table)[1], Fraction(0))
    return out


def trivial_majorant_probability(model: FiniteSupport, n: int) -> Fraction:
    """``P(majorant of S on [0, n] is the zero line)``."""
    if n < 1:
        raise InvalidInput("n must be at least 1")
    return majorant_probability(trivial_majorant(n), model)
