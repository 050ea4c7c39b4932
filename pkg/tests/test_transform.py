from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from concave_majorant import (DegenerateInput, Gaussian, RngStream, build_walk, concave_majorant,
                              invert_3214, path_transform_3214, sample_increments,
                              theorem1_transform, valid_cyclic_shifts)
from concave_majorant.hull import excursion_decomposition
from concave_majorant.randperm import refines
from concave_majorant.transform import block_means, rotate, transform_3214_order
from concave_majorant.verify import enumerate_transform_distribution

F = Fraction


@pytest.mark.parametrize("block, shifts", [([3, -1, -2], [1]), ([1, -1, 1, -1], [1, 3]), ([5], [0])])
def test_valid_shifts(block, shifts):
    assert sorted(valid_cyclic_shifts(block)) == shifts


def brute_shifts(block):
    m, total = len(block), sum(block)
    out = []
    for r in range(m):
        rot = block[r:] + block[:r]
        s = 0
        ok = True
        for j, x in enumerate(rot, 1):
            s += x
            ok &= s * m <= j * total
        if ok:
            out.append(r)
    return out


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=12))
def test_valid_shifts_match_brute_force(block):
    assert sorted(valid_cyclic_shifts(block)) == brute_shifts(block)


def test_rotate_convention():
    assert rotate([1, 2, 3], 1) == [2, 3, 1]


def test_n2_enumeration():
    law = enumerate_transform_distribution([F(2), F(-1)])
    assert law == {(2, -1): F(1, 2), (-1, 2): F(1, 2)}


def test_n3_uniform():
    law = enumerate_transform_distribution([F(4), F(-1), F(-2)])
    assert len(law) == 6 and set(law.values()) == {F(1, 6)}


def test_ties_get_exchangeable_mass():
    law = enumerate_transform_distribution([F(1), F(-1), F(1), F(-1)])
    assert len(law) == 6 and set(law.values()) == {F(1, 6)}
    assert enumerate_transform_distribution([F(1), F(1)]) == {(1, 1): 1}


def check_result(incs, res):
    assert sorted(res.walk.increments) == sorted(incs)
    assert [incs[i] for i in res.permutation] == list(res.walk.increments)
    H = excursion_decomposition(res.walk).blocks
    assert refines(H, res.segment_composition) and refines(res.segment_composition, res.face_composition)
    means = block_means(res.walk.increments, res.segment_composition)
    assert all(a >= b for a, b in zip(means, means[1:]))
    assert res.face_composition == concave_majorant(res.walk).composition


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=14), st.integers(0, 2**32))
@settings(max_examples=200)
def test_transform_invariants_lattice(incs, seed):
    incs = [F(x) for x in incs]
    check_result(incs, theorem1_transform(incs, RngStream(seed)))


def test_transform_invariants_gaussian(rng):
    for _ in range(200):
        incs = sample_increments(Gaussian(), 15, rng)
        check_result(incs, theorem1_transform(incs, rng))


def test_3214_example():
    k, out = path_transform_3214(build_walk([2, -3, 1]), 2)
    assert k == 2 and list(out.values) == [0, 1, -2, 0]
    U, orig = invert_3214(2, out)
    assert U == 2 and list(orig.values) == [0, 2, -1, 0]


def test_3214_unit_face_is_identity():
    w = build_walk([5, 1, -4])
    # every face has length one; only the first face stays put
    assert path_transform_3214(w, 1) == (1, w)
    assert path_transform_3214(w, 2) == (1, build_walk([1, 5, -4]))
    assert invert_3214(1, build_walk([1, 5, -4])) == (2, w)
    assert path_transform_3214(build_walk([7]), 1) == (1, build_walk([7]))
    assert invert_3214(1, build_walk([7])) == (1, build_walk([7]))


def test_3214_rejects_ties():
    with pytest.raises(DegenerateInput):
        path_transform_3214(build_walk([-1, 1, -1, 1]), 2)


def test_3214_bijection_n5():
    vals = [F(10**i) - F(10**5, 7) for i in range(5)]
    image = set()
    for sigma in permutations(range(5)):
        walk = build_walk([vals[i] for i in sigma])
        for U in range(1, 6):
            k, order = transform_3214_order(walk, U)
            image.add((k, tuple(sigma[i] for i in order)))
    assert len(image) == 5 * 120


def test_3214_roundtrip_gaussian(rng):
    for _ in range(300):
        w = build_walk(sample_increments(Gaussian(), 20, rng))
        for U in range(1, 21):
            k, out = path_transform_3214(w, U)
            assert invert_3214(k, out) == (U, w)
