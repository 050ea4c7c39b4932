"""Path rearrangements: valid cyclic shifts, the block/shift transform and the 3214 map.

Shift convention: shift ``r`` of a block ``(x_1, ..., x_m)`` is the rotation
starting at increment ``r + 1``, i.e. ``block[r:] + block[:r]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (DegenerateInput, InvalidInput, RngStream, WalkPath, as_stream,
                   build_walk, scale_to_integers)
from .hull import concave_majorant
from .randperm import sample_cycle_lengths


def _scaled(increments: Sequence) -> tuple:
    incs = list(increments)
    if incs and not isinstance(incs[0], Fraction) and isinstance(incs[0], int):
        incs = [Fraction(x) for x in incs]
    return scale_to_integers(incs)


def valid_cyclic_shifts(block_increments: Sequence) -> list:
    """Shifts ``r`` whose rotation stays weakly below the chord of the block.

    With ``P_i`` the partial sums and ``T`` the total, the rotation starting
    at ``r + 1`` has all partial means at most ``T/m`` exactly when
    ``m P_r - r T`` is maximal over ``0 <= r < m``.
    """
    m = len(block_increments)
    if m == 0:
        raise InvalidInput("a block needs at least one increment")
    p, _ = _scaled(block_increments)
    total = p[m]
    key = [m * p[i] - i * total for i in range(m)]
    top = max(key)
    return [r for r in range(m) if key[r] == top]


def rotate(block: Sequence, r: int) -> list:
    block = list(block)
    return block[r:] + block[:r]


@dataclass(frozen=True)
class TransformResult:
    permutation: tuple          # output position -> input index (0-based)
    walk: WalkPath
    segment_composition: tuple  # block lengths in output order
    face_composition: tuple
    partition: tuple            # sampled cycle lengths, non-increasing


def block_means(increments: Sequence, partition: Sequence[int]) -> list:
    """Exact block means of the sequential cut of ``increments``, in cut order."""
    p, d = _scaled(increments)
    out = []
    start = 0
    for size in partition:
        out.append(Fraction(p[start + size] - p[start], d * size))
        start += size
    return out


def order_blocks(means: Sequence, tie_rank: Sequence[int]) -> list:
    """Block indices by decreasing mean; equal means ordered by ``tie_rank``."""
    return sorted(range(len(means)), key=lambda b: (-means[b], tie_rank[b]))


def theorem1_transform(increments: Sequence, rng: RngStream) -> TransformResult:
    """Rearrange increments so that the output walk has the input's law.

    Cycle lengths of a uniform permutation cut the sequence into blocks,
    blocks are sorted by decreasing mean (ties in uniform random order) and
    each block is turned by a uniformly chosen valid cyclic shift.
    """
    incs = list(increments)
    if not incs:
        raise InvalidInput("need at least one increment")
    rng = as_stream(rng)
    partition = sample_cycle_lengths(len(incs), rng)
    tie_rng = rng.fork("tie-order")
    shift_rng = rng.fork("shift-choice")

    tie_rank = tie_rng.permutation(len(partition)).tolist()
    order = order_blocks(block_means(incs, partition), tie_rank)
    starts = [sum(partition[:b]) for b in range(len(partition))]
    perm = []
    for b in order:
        idx = list(range(starts[b], starts[b] + partition[b]))
        r = shift_rng.pick(valid_cyclic_shifts([incs[i] for i in idx]))
        perm += rotate(idx, r)
    walk = build_walk([incs[i] for i in perm])
    faces = concave_majorant(walk).composition
    seg = tuple(partition[b] for b in order)
    return TransformResult(tuple(perm), walk, seg, faces, tuple(partition))


# ---------------------------------------------------------------------------
# the 3214 rearrangement


def _face_of(walk: WalkPath, U: int, maj=None) -> tuple:
    maj = maj or concave_majorant(walk)
    if maj.touch_times != maj.vertex_times:
        raise DegenerateInput("a walk point lies inside a face: subset means are not distinct")
    for f in maj.faces:
        if f.start_time < U <= f.end_time:
            return f.start_time, f.end_time
    raise InvalidInput("U outside [1, n]")  # pragma: no cover


def transform_3214_order(walk: WalkPath, U: int, majorant=None) -> tuple:
    """``(k, order)``: the face length and the output order of input indices.

    ``majorant`` may be passed to reuse the hull across several ``U``.
    """
    if not isinstance(walk, WalkPath):
        walk = build_walk(walk)
    n = walk.n
    if not 1 <= U <= n:
        raise InvalidInput("U must lie in [1, n]")
    g, d = _face_of(walk, U, majorant)
    idx = list(range(n))
    order = idx[U:d] + idx[g:U] + idx[:g] + idx[d:]
    return d - g, tuple(order)


def path_transform_3214(walk: WalkPath, U: int, majorant=None) -> tuple:
    """Move the face containing step ``U`` to the front, rotated to start after ``U``.

    With ``g < U <= d`` the ends of that face, the output increments are
    ``x[U:d] + x[g:U] + x[:g] + x[d:]`` (0-based slices).  Returns
    ``(d - g, transformed walk)``.
    """
    if not isinstance(walk, WalkPath):
        walk = build_walk(walk)
    k, order = transform_3214_order(walk, U, majorant)
    return k, build_walk([walk.increments[i] for i in order])


def invert_3214(k: int, walk: WalkPath) -> tuple:
    """Recover ``(U, original)`` from the output of :func:`path_transform_3214`."""
    if not isinstance(walk, WalkPath):
        walk = build_walk(walk)
    n = walk.n
    if not 1 <= k <= n:
        raise InvalidInput("k must lie in [1, n]")
    incs = list(walk.increments)
    head, rem = incs[:k], incs[k:]
    shifts = valid_cyclic_shifts(head)
    if len(shifts) != 1:
        raise DegenerateInput("the leading block has no unique valid rotation")
    r = shifts[0]
    face = rotate(head, r)
    t = (k - r) % k or k

    p, d = _scaled(incs)
    moved = Fraction(p[k], d * k)
    g = 0
    if rem:
        rest = concave_majorant(build_walk(rem))
        vt, vv = rest.vertex_times, rest.scaled_vertex_values
        for i in range(rest.F):
            slope = Fraction(vv[i + 1] - vv[i], rest.scale * (vt[i + 1] - vt[i]))
            if slope == moved:
                raise DegenerateInput("two faces share a slope")
            if slope < moved:
                break
            g = vt[i + 1]
    original = build_walk(rem[:g] + face + rem[g:])
    return g + t, original
