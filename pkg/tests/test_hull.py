from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from concave_majorant import (EmptyWalk, Gaussian, RngStream, argmax_decomposition, build_walk,
                              concave_majorant, excursion_decomposition, hull_batch,
                              majorant_from_faces, max_identity_holds, sample_increments,
                              trivial_majorant)
from concave_majorant.hull import (batch_max_identity_violations, decode_composition,
                                   encode_composition)

F = Fraction


def brute_majorant_scaled(values):
    """``L * C(t)`` with ``L = lcm(1..n)`` for every row of integer partial sums.

    The majorant at ``t`` is the maximum over all chords ``a <= t <= b``; an
    O(n^2) scan per point done for all rows at once, kept in integers.
    """
    rows, n1 = values.shape
    n = n1 - 1
    L = int(np.lcm.reduce(np.arange(1, n + 1)))
    out = values * L
    for a in range(n1):
        for b in range(a + 1, n1):
            step = (values[:, b] - values[:, a]) * (L // (b - a))
            for t in range(a + 1, b):
                out[:, t] = np.maximum(out[:, t], values[:, a] * L + step * (t - a))
    return out, L


def test_example_three_steps():
    m = concave_majorant(build_walk([1, -2, 3]))
    assert [(f.length, f.increment, f.slope) for f in m.faces] == [(1, 1, 1), (2, 1, F(1, 2))]
    assert m.touch_times == (0, 1, 3) and m.F == 2 and m.H == 2


def test_single_step():
    m = concave_majorant(build_walk([5]))
    assert [(f.length, f.increment, f.slope) for f in m.faces] == [(1, 5, 5)]


def test_flat_face_with_interior_touch():
    m = concave_majorant(build_walk([-1, 1, -1, 1]))
    assert [(f.length, f.increment) for f in m.faces] == [(4, 0)]
    assert m.touch_times == (0, 2, 4) and m.F == 1 and m.H == 2


def test_empty_walk():
    with pytest.raises(EmptyWalk):
        concave_majorant(build_walk([]))


def test_excursions():
    e = excursion_decomposition(build_walk([-1, 1, -1, 1]))
    assert e.blocks == (2, 2) and e.slopes == (0, 0)
    assert excursion_decomposition(build_walk([1, -2, 3])).blocks == (1, 2)


def test_argmax_examples():
    s = argmax_decomposition(build_walk([1, -2, 3]))
    assert (s.L, s.M, len(s.pre_faces)) == (3, 2, 2)
    s = argmax_decomposition(build_walk([-1, -2, -3]))
    assert (s.L, s.M, s.pre_faces) == (0, 0, ())
    w = build_walk([2, -3, 1])
    s = argmax_decomposition(w)
    assert [f.slope for f in concave_majorant(w).faces] == [2, -1]
    assert (s.M, s.L) == (2, 1) and max_identity_holds(w)


def test_brute_force_all_rademacher_paths():
    for n in range(1, 15):
        steps = np.array(list(product((-1, 1), repeat=n)), dtype=np.int64)
        values = np.hstack([np.zeros((len(steps), 1), dtype=np.int64), np.cumsum(steps, axis=1)])
        brute, L = brute_majorant_scaled(values)
        check = range(len(steps)) if n <= 8 else RngStream(n).generator.choice(len(steps), 400, replace=False)
        for i in check:
            m = concave_majorant(build_walk([int(x) for x in steps[i]]))
            assert [m.value_at(t) * L for t in range(n + 1)] == list(brute[i])
            assert m.touch_times == tuple(np.flatnonzero(brute[i] == values[i] * L))
        batch = hull_batch(steps.astype(float))
        for i in range(len(steps)):
            vt = batch.walk_vertices(i)
            # the batch hull's vertices are touch points of the brute-force majorant
            assert np.all(brute[i][vt] == values[i][vt] * L)
        assert batch_max_identity_violations(batch) == 0


def check_invariants(w, m):
    slopes = [f.slope for f in m.faces]
    assert all(a > b for a, b in zip(slopes, slopes[1:]))
    assert sum(f.length for f in m.faces) == w.n
    vv = m.scaled_vertex_values
    assert F(vv[-1] - vv[0], m.scale) == w.exact_value(w.n)
    assert [F(f.increment) for f in m.faces] == [F(b - a, m.scale) for a, b in zip(vv, vv[1:])] or not w.exact
    assert set(m.vertex_times) <= set(m.touch_times)
    for t in range(w.n + 1):
        assert m.value_at(t) >= w.exact_value(t)
        assert (m.value_at(t) == w.exact_value(t)) == (t in m.touch_times)


def test_gaussian_invariants(rng):
    for _ in range(300):
        w = build_walk(sample_increments(Gaussian(), 50, rng))
        m = concave_majorant(w)
        check_invariants(w, m)
        assert max_identity_holds(w, m)


def test_gaussian_batch_invariants(rng):
    rows = Gaussian().draw((10**5, 50), rng.generator)
    batch = hull_batch(rows)
    assert np.all(batch.lengths() >= 1)
    assert batch_max_identity_violations(batch) == 0
    for w in range(0, 10**5, 9973):
        m = concave_majorant(build_walk([float(x) for x in rows[w]]))
        assert tuple(batch.walk_vertices(w)) == m.vertex_times


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=25))
def test_invariants_integer_walks(incs):
    w = build_walk(incs)
    m = concave_majorant(w)
    check_invariants(w, m)
    assert max_identity_holds(w, m)
    assert majorant_from_faces([f.length for f in m.faces], [f.increment for f in m.faces]).key() == m.key()


@given(st.lists(st.integers(1, 6), min_size=1, max_size=8))
def test_composition_code_roundtrip(c):
    assert decode_composition(encode_composition(c), sum(c)) == tuple(c)


def test_trivial_majorant():
    m = trivial_majorant(4)
    assert m.key() == ((4, 0),)
