import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from concave_majorant import (DegenerateInput, Gaussian, InvalidParameter, Rademacher, RngStream,
                              UseLatticeModule, assemble_walk_from_faces, build_walk,
                              concave_majorant, ewens_pplus_prob, geometric_walks, hunt_rhs,
                              sample_face_counts, sample_face_point_process,
                              sample_infinite_majorant, spitzer_compound_poisson_sample)
from concave_majorant.poissonfaces import (FacePoint, FacePointProcess, argmax_time_prob,
                                           below_chord, geometric_length, hunt_rhs_exact,
                                           infinite_face_mean, max_split_conditional_test,
                                           sample_face_counts_batch, spitzer_compound_poisson_batch,
                                           zero_max_probability)
from concave_majorant.randperm import partitions
from conftest import ALPHA
from concave_majorant.verify import chi_square_test, geometric_law, ks_test, poisson_law

F = Fraction


def test_face_count_means(rng):
    b = sample_face_counts_batch(0.5, 10**5, rng)
    for j, mean in ((1, 0.5), (2, 0.125), (3, 1 / 24)):
        c = b.count(j)
        assert abs(c.mean() - mean) < 4 * math.sqrt(mean / len(c))


@pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
def test_totals_geometric_and_faces_poisson(q, rng):
    b = sample_face_counts_batch(q, 10**5, rng)
    assert chi_square_test(Counter(b.totals().tolist()), geometric_law(1 - q), ALPHA).passed
    assert chi_square_test(Counter(b.faces().tolist()), poisson_law(-math.log1p(-q)), ALPHA).passed


def test_tail_counts_are_used(rng):
    # at q close to 1 the cutoff is small relative to the mass beyond it
    b = sample_face_counts_batch(0.95, 20000, rng)
    assert b.tail_owner.size > 0
    assert chi_square_test(Counter(b.totals().tolist()), geometric_law(0.05), ALPHA).passed


def test_small_q_no_faces(rng):
    b = sample_face_counts_batch(0.01, 10**5, rng)
    p = float(np.mean(b.faces() == 0))
    assert abs(p - 0.99) < 3 * math.sqrt(0.99 * 0.01 / 10**5)


def test_q_validation(rng):
    for q in (0.0, 1.0, 1.2):
        with pytest.raises(InvalidParameter):
            sample_face_counts(q, rng)


def test_lattice_model_rejected(rng):
    with pytest.raises(UseLatticeModule):
        sample_face_point_process(0.5, Rademacher(), rng)


def test_point_process_segments(rng):
    for _ in range(200):
        proc = sample_face_point_process(0.7, Gaussian(), rng, with_paths=True)
        for p in proc.points:
            assert len(p.segment) == p.length
            assert p.increment == math.fsum(p.segment)
            w = build_walk(list(p.segment))
            m = concave_majorant(w)
            assert m.key() == ((p.length, F(p.increment)),) and m.H == 1


def test_j3_increments_are_unconditional(rng):
    sums = []
    gen = rng.fork("p")
    while len(sums) < 3000:
        proc = sample_face_point_process(0.9, Gaussian(), gen)
        sums += [p.increment for p in proc.points if p.length == 3]
    assert ks_test(sums, stats.norm(scale=math.sqrt(3)).cdf, ALPHA).passed


def test_assembly_roundtrip(rng):
    for _ in range(2000):
        proc = sample_face_point_process(0.5, Gaussian(), rng, with_paths=True)
        if proc.n == 0:
            continue
        w = assemble_walk_from_faces(proc)
        assert w.n == proc.n
        assert Counter(concave_majorant(w).key()) == proc.key()


def test_assembly_single_face_and_ties():
    seg = (0.3, -1.1, 2.7)
    proc = FacePointProcess(0.5, (FacePoint(3, math.fsum(seg), tuple(below_chord(list(seg)))),))
    assert list(assemble_walk_from_faces(proc).increments) == below_chord(list(seg))
    tie = FacePointProcess(0.5, (FacePoint(1, 1.0, (1.0,)), FacePoint(1, 1.0, (1.0,))))
    with pytest.raises(DegenerateInput):
        assemble_walk_from_faces(tie)


def test_infinite_horizon():
    # a centred step law with the drift -1 passed separately gives P(X > -1)
    assert abs(infinite_face_mean(Gaussian(), -1, 1) - stats.norm.cdf(1)) < 1e-12
    assert abs(infinite_face_mean(Gaussian(-1), -1, 1) - 0.5) < 1e-12
    assert sample_infinite_majorant(Gaussian(-1), -1, 0, RngStream(0)) == []
    faces = sample_infinite_majorant(Gaussian(-1), -1, 6, RngStream(1))
    slopes = [f.slope for f in faces]
    assert slopes == sorted(slopes, reverse=True) and all(s > -1 for s in slopes)


def test_hunt_values():
    assert abs(hunt_rhs(Gaussian(), 4) - 1.110838) < 5e-7
    assert hunt_rhs(Gaussian(), 0) == 0
    assert hunt_rhs_exact(Rademacher(), 2) == F(3, 4)


def test_hunt_identity_mc(rng):
    n, m = 16, 2 * 10**5
    rows = Gaussian().draw((m, n), rng.generator)
    maxima = np.maximum(np.cumsum(rows, axis=1).max(axis=1), 0)
    se = maxima.std() / math.sqrt(m)
    assert abs(maxima.mean() - hunt_rhs(Gaussian(), n)) < 3 * se


def test_compound_poisson_zero_probability(rng):
    s = spitzer_compound_poisson_batch(0.75, Gaussian(), 10**5, rng)
    est = zero_max_probability(s)
    assert est.within(0.5)
    assert spitzer_compound_poisson_sample(0.3, Gaussian(), rng) >= 0


def test_ewens_pplus_examples():
    h = F(1, 2)
    assert ewens_pplus_prob((2,), h) == F(2, 3) and ewens_pplus_prob((1, 1), h) == F(1, 3)
    assert ewens_pplus_prob((), h) == 1
    for ell in range(1, 7):
        assert sum(ewens_pplus_prob(p, F(1, 3)) for p in partitions(ell)) == 1


def test_argmax_law_sums_to_one():
    total = sum(argmax_time_prob(ell, 0.6, 0.5) for ell in range(400))
    assert abs(total - 1) < 1e-12


def test_max_split_ell0_and_ell2(rng):
    batch = geometric_walks(0.8, Gaussian(), 10**5, rng)
    r0 = max_split_conditional_test(Gaussian(), 0.8, 0, 0, rng, batch=batch)
    assert r0.test.passed and set(r0.observed) == {()}
    r2 = max_split_conditional_test(Gaussian(), 0.8, 2, 0, rng, batch=batch)
    assert r2.test.passed
    expected = argmax_time_prob(2, 0.8, 0.5)
    assert abs(r2.conditioned / 10**5 - expected) < 4 * math.sqrt(expected / 10**5)


def test_geometric_length(rng):
    n = geometric_length(0.5, rng, size=10**5)
    assert n.min() == 0 and abs(n.mean() - 1) < 0.02
