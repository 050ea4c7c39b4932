"""Concave majorant of a walk: faces, touch points, excursions, maximum split."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Optional, Sequence

import numpy as np

from ._fasthull import hull_vertices_flat, segment_argmax, segment_cumsum
from .core import EmptyWalk, InvalidInput, Numeric, WalkPath, build_walk


@dataclass(frozen=True)
class Face:
    length: int
    increment: Numeric
    slope: Numeric
    start_time: int
    end_time: int


@dataclass(frozen=True)
class Majorant:
    """Faces of the least concave majorant, in order of appearance.

    Faces are maximal runs of equal slope, so ``F`` counts distinct slopes;
    ``touch_times`` also records walk points lying on a face interior.
    """

    faces: tuple
    vertex_times: tuple
    touch_times: tuple
    scaled_vertex_values: tuple = ()
    scale: int = 1

    @property
    def n(self) -> int:
        return self.vertex_times[-1]

    @property
    def F(self) -> int:
        return len(self.faces)

    @property
    def H(self) -> int:
        return len(self.touch_times) - 1

    @property
    def composition(self) -> tuple:
        return tuple(f.length for f in self.faces)

    def key(self) -> tuple:
        """Hashable identity: face lengths and exact face increments."""
        return tuple((f.length, Fraction(f.increment)) for f in self.faces)

    def value_at(self, t) -> Fraction:
        """Exact value of the majorant at time ``t`` (any rational in [0, n])."""
        t = Fraction(t)
        if not 0 <= t <= self.n:
            raise InvalidInput("time outside [0, n]")
        vt, vv = self.vertex_times, self.scaled_vertex_values
        for i in range(len(vt) - 1):
            if t <= vt[i + 1]:
                frac = (t - vt[i]) / (vt[i + 1] - vt[i])
                return (vv[i] + frac * (vv[i + 1] - vv[i])) / self.scale
        return Fraction(vv[-1], self.scale)


def _upper_hull(p: Sequence[int]) -> list:
    hull: list = []
    for k, pk in enumerate(p):
        while len(hull) >= 2:
            i, j = hull[-2], hull[-1]
            if (p[j] - p[i]) * (k - i) - (pk - p[i]) * (j - i) <= 0:
                hull.pop()
            else:
                break
        hull.append(k)
    return hull


def _make_face(walk: WalkPath, g: int, d: int, p, scale) -> Face:
    if walk.exact:
        inc = Fraction(p[d] - p[g], scale)
        return Face(d - g, inc, inc / (d - g), g, d)
    inc = (p[d] - p[g]) / scale
    return Face(d - g, inc, inc / (d - g), g, d)


def concave_majorant(walk: WalkPath) -> Majorant:
    if not isinstance(walk, WalkPath):
        walk = build_walk(walk)
    if walk.n == 0:
        raise EmptyWalk("the majorant needs at least one step")
    p, scale = walk.scaled_sums
    verts = _upper_hull(p)
    touch = []
    for g, d in zip(verts, verts[1:]):
        touch.append(g)
        rise, run = p[d] - p[g], d - g
        for j in range(g + 1, d):
            if (p[j] - p[g]) * run == rise * (j - g):
                touch.append(j)
    touch.append(verts[-1])
    faces = tuple(_make_face(walk, g, d, p, scale) for g, d in zip(verts, verts[1:]))
    return Majorant(faces, tuple(verts), tuple(touch),
                    tuple(p[v] for v in verts), scale)


def majorant_from_faces(lengths: Sequence[int], increments: Sequence) -> Majorant:
    """Build a majorant description from face lengths and increments.

    Slopes must be strictly decreasing.  Used to state conditioning events.
    """
    incs = [Fraction(x) for x in increments]
    if len(lengths) != len(incs) or not lengths or min(lengths) < 1:
        raise InvalidInput("need matching positive face lengths and increments")
    slopes = [x / n for x, n in zip(incs, lengths)]
    if any(a <= b for a, b in zip(slopes, slopes[1:])):
        raise InvalidInput("face slopes must be strictly decreasing")
    times = [0]
    vals = [Fraction(0)]
    for n, x in zip(lengths, incs):
        times.append(times[-1] + n)
        vals.append(vals[-1] + x)
    scale = reduce(lcm, (v.denominator for v in vals), 1)
    faces = tuple(Face(n, x, x / n, t, t + n) for n, x, t in zip(lengths, incs, times))
    return Majorant(faces, tuple(times), tuple(times),
                    tuple(int(v * scale) for v in vals), scale)


def trivial_majorant(n: int, slope=0) -> Majorant:
    return majorant_from_faces([n], [Fraction(slope) * n])


@dataclass(frozen=True)
class ExcursionDecomposition:
    blocks: tuple
    excursions: tuple
    slopes: tuple


def excursion_decomposition(walk: WalkPath, majorant: Optional[Majorant] = None) -> ExcursionDecomposition:
    if not isinstance(walk, WalkPath):
        walk = build_walk(walk)
    maj = majorant or concave_majorant(walk)
    tt = maj.touch_times
    blocks = tuple(b - a for a, b in zip(tt, tt[1:]))
    excursions = tuple(build_walk(walk.increments[a:b]) for a, b in zip(tt, tt[1:]))
    p, scale = walk.scaled_sums
    if walk.exact:
        slopes = tuple(Fraction(p[b] - p[a], scale * (b - a)) for a, b in zip(tt, tt[1:]))
    else:
        slopes = tuple((p[b] - p[a]) / scale / (b - a) for a, b in zip(tt, tt[1:]))
    return ExcursionDecomposition(blocks, excursions, slopes)


@dataclass(frozen=True)
class MaxSplit:
    L: int
    M: Numeric
    pre_faces: tuple
    post_faces: tuple


def argmax_decomposition(walk: WalkPath, majorant: Optional[Majorant] = None) -> MaxSplit:
    """First time of the maximum, its value and the faces either side.

    Faces of positive slope precede the maximum; faces of slope zero or less
    follow it.
    """
    if not isinstance(walk, WalkPath):
        walk = build_walk(walk)
    maj = majorant or concave_majorant(walk)
    p, _ = walk.scaled_sums
    top = max(p)
    L = p.index(top)
    M = walk.values[L]
    pre = tuple(f for f in maj.faces if f.increment > 0)
    post = tuple(f for f in maj.faces if not f.increment > 0)
    return MaxSplit(L, M, pre, post)


def max_identity_holds(walk: WalkPath, majorant: Optional[Majorant] = None) -> bool:
    """Check M = sum of nonnegative face increments and L = sum of positive face lengths.

    Both sides are compared exactly, on the scaled integer partial sums.
    """
    maj = majorant or concave_majorant(walk)
    p, _ = walk.scaled_sums
    top = max(p)
    L = p.index(top)
    vt = maj.vertex_times
    rises = [p[d] - p[g] for g, d in zip(vt, vt[1:])]
    m_side = sum(r for r in rises if r >= 0)
    l_side = sum(d - g for g, d, r in zip(vt, vt[1:], rises) if r > 0)
    return m_side == top and l_side == L


# ---------------------------------------------------------------------------
# batches of float walks


@dataclass
class HullBatch:
    """Vertex times of many float walks packed end to end.

    ``vertices[starts[w]:starts[w] + counts[w]]`` are the vertex times of walk
    ``w`` and ``values[starts[w]:starts[w+1]]`` its partial sums.
    """

    values: np.ndarray
    starts: np.ndarray
    vertices: np.ndarray
    counts: np.ndarray
    rows: object
    exact_rechecks: int

    def __len__(self):
        return self.counts.size

    def lengths(self) -> np.ndarray:
        return np.diff(self.starts) - 1

    def row(self, w: int) -> list:
        return [float(x) for x in self.rows[w]]

    def walk_vertices(self, w: int) -> np.ndarray:
        s = self.starts[w]
        return self.vertices[s:s + self.counts[w]]

    def face_table(self):
        """Flat arrays ``(walk, length, increment)`` over all faces."""
        face_counts = self.counts - 1
        total = int(face_counts.sum())
        owner = np.repeat(np.arange(len(self)), face_counts)
        pos = np.arange(total) - np.repeat(np.cumsum(face_counts) - face_counts, face_counts)
        base = self.starts[owner]
        g = self.vertices[base + pos]
        d = self.vertices[base + pos + 1]
        inc = self.values[base + d] - self.values[base + g]
        return owner, d - g, inc

    def face_counts(self) -> np.ndarray:
        return self.counts - 1

    def argmax(self) -> np.ndarray:
        return segment_argmax(self.values, self.starts)

    def maxima(self) -> np.ndarray:
        return self.values[self.starts[:-1] + self.argmax()]

    def endpoints(self) -> np.ndarray:
        return self.values[self.starts[1:] - 1]

    def composition_codes(self) -> np.ndarray:
        """Face composition of each walk as a bit mask of its interior vertex times.

        Bit ``t - 1`` is set when ``t`` is a vertex with ``0 < t < n``; see
        :func:`decode_composition`.  Walks must have fewer than 63 steps.
        """
        owner = np.repeat(np.arange(len(self)), self.counts)
        pos = np.arange(owner.size) - np.repeat(np.cumsum(self.counts) - self.counts, self.counts)
        v = self.vertices[self.starts[owner] + pos]
        interior = (pos > 0) & (pos < self.counts[owner] - 1)
        codes = np.zeros(len(self), dtype=np.int64)
        np.bitwise_or.at(codes, owner[interior], np.left_shift(1, v[interior] - 1))
        return codes

    def compositions(self) -> list:
        return [tuple(np.diff(self.walk_vertices(w)).tolist()) for w in range(len(self))]


def decode_composition(code: int, n: int) -> tuple:
    cuts = [t for t in range(1, n) if code >> (t - 1) & 1] + [n]
    return tuple(b - a for a, b in zip([0] + cuts, cuts))


def encode_composition(c) -> int:
    code, t = 0, 0
    for b in c[:-1]:
        t += b
        code |= 1 << (t - 1)
    return code


def _pack(increment_rows) -> tuple:
    if isinstance(increment_rows, np.ndarray) and increment_rows.ndim == 2:
        m, n = increment_rows.shape
        vals = np.zeros((m, n + 1))
        np.cumsum(increment_rows, axis=1, out=vals[:, 1:])
        absums = np.zeros((m, n + 1))
        np.cumsum(np.abs(increment_rows), axis=1, out=absums[:, 1:])
        starts = np.arange(m + 1, dtype=np.int64) * (n + 1)
        return vals.ravel(), absums.ravel(), starts
    rows = [np.asarray(r, dtype=np.float64) for r in increment_rows]
    sizes = np.array([r.size + 1 for r in rows], dtype=np.int64)
    starts = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
    flat = np.concatenate([np.concatenate([[0.0], r]) for r in rows]) if rows else np.zeros(0)
    vals = segment_cumsum(flat, starts)
    absums = segment_cumsum(np.abs(flat), starts)
    return vals, absums, starts


def hull_batch(increment_rows) -> HullBatch:
    """Majorant vertices for a 2-D array (or list) of float increment rows.

    Walks whose float orientation tests are inconclusive are recomputed with
    exact arithmetic, so the vertex sets are exact for every walk.
    """
    vals, absums, starts = _pack(increment_rows)
    out, counts, flags = hull_vertices_flat(vals, absums, starts)
    batch = HullBatch(vals, starts, out, counts, increment_rows, 0)
    for w in np.flatnonzero(flags):
        batch.exact_rechecks += 1
        maj = concave_majorant(build_walk(batch.row(w)))
        vt = np.array(maj.vertex_times, dtype=np.int64)
        s = starts[w]
        out[s:s + vt.size] = vt
        counts[w] = vt.size
    return batch


def batch_max_identity_violations(batch: HullBatch) -> int:
    """Count walks whose faces disagree with the running maximum.

    The positive-increment faces must end exactly at the first argmax.  Any
    walk where the float comparison disagrees is re-examined exactly with
    :func:`max_identity_holds`.
    """
    owner, length, inc = batch.face_table()
    pos_len = np.bincount(owner, weights=length * (inc > 0), minlength=len(batch))
    suspects = np.flatnonzero(pos_len.astype(np.int64) != batch.argmax())
    return sum(not max_identity_holds(build_walk(batch.row(w))) for w in suspects)
