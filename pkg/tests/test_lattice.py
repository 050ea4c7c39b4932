import math
from collections import Counter
from fractions import Fraction

import pytest

from concave_majorant import (BernoulliLattice, CapacityExceeded, ConditionedWalkSampler,
                              FiniteSupport, Gaussian, NoMass, NotInSupport, Rademacher, RngStream,
                              build_walk, concave_majorant, conditional_composition_weight,
                              conditioned_trivial_walk, conditioned_walk_given_majorant,
                              face_slope_laws, gf_HKF, NestedCompositionSampler, majorant_from_faces, majorant_probability,
                              mu_series, sample_nested_compositions, stirling_first,
                              trivial_majorant, trivial_majorant_probability)
from concave_majorant.lattice import (all_mu_series, mu0_series, point_mass_table, slope_index,
                                      trivial_composition_law)
from concave_majorant.series import UnivariateSeries
from concave_majorant.verify import (enumerate_H_F_distribution, enumerate_conditional_walks,
                                     enumerate_walks, total_variation)

F = Fraction
THREE = FiniteSupport(((-1, F(1, 4)), (0, F(1, 2)), (1, F(1, 4))))


def test_point_masses():
    t = point_mass_table(Rademacher(), 4)
    assert t.rows[2] == {-2: F(1, 4), 0: F(1, 2), 2: F(1, 4)}
    assert t.mass(4, 0) == F(3, 8)
    assert t.rows[1] == {-1: F(1, 2), 1: F(1, 2)}
    assert all(sum(r.values()) == 1 for r in point_mass_table(THREE, 10).rows)
    with pytest.raises(CapacityExceeded):
        point_mass_table(Rademacher(), 65)


def test_mu_series_examples():
    assert mu_series(Rademacher(), 0, 6).coeffs == [0, 0, F(1, 4), 0, F(3, 32), 0, F(5, 96)]
    half = UnivariateSeries.neg_log_one_minus(8).coeffs
    assert mu_series(Rademacher(), 1, 8).coeffs == [c / 2**k for k, c in enumerate(half)]
    assert mu_series(Rademacher(), 2, 8) == UnivariateSeries.zero(8)


@pytest.mark.parametrize("model", [Rademacher(), BernoulliLattice(F(1, 3)), THREE])
def test_mu_sum_identity(model):
    order = 32 if model is not THREE else 16
    total = mu0_series(model, order)
    assert total == UnivariateSeries.zero(order)
    assert len(slope_index(model, 6)) == len(all_mu_series(model, 6))


def test_gf_examples():
    H, K, F_ = gf_HKF(Rademacher(), 4, 4)
    assert K.coeff(4, 2) == F(11, 24)
    assert H.row(2) == {1: F(1, 4), 2: F(3, 4)}
    assert F_.row(2) == {1: F(3, 4), 2: F(1, 4)}
    H0, K0, F0 = gf_HKF(Rademacher(), 0, 0)
    assert H0.grid == K0.grid == F0.grid == [[1]]


@pytest.mark.parametrize("model, n_max", [(Rademacher(), 10), (BernoulliLattice(F(1, 3)), 9), (THREE, 6)])
def test_gf_rows_equal_enumeration(model, n_max):
    H, K, F_ = gf_HKF(model, n_max, n_max)
    for n in range(1, n_max + 1):
        h, f = enumerate_H_F_distribution(n, model)
        assert H.row(n) == dict(h) and F_.row(n) == dict(f)
        assert K.row(n) == {k: F(stirling_first(n, k), math.factorial(n)) for k in range(1, n + 1)}


def test_gf_continuous_model_gives_stirling():
    H, K, F_ = gf_HKF(Gaussian(), 5, 5)
    assert H == K == F_


def test_slope_laws_sum_to_one():
    law = face_slope_laws(0.5, Rademacher(), 0)
    exact_mu = float(mu_series(Rademacher(), 0, 60)(0.5))
    assert abs(law.mu - exact_mu) < 1e-14
    assert abs(sum(law.pmf_H(h) for h in range(200)) - 1) < 1e-12
    assert abs(sum(law.pmf_E(i) for i in range(1, 200)) - 1) < 1e-12
    assert abs(law.segment_length_pmf().sum() - 1) < 1e-12
    assert abs(law.excursion_length_pmf().sum() - 1) < 1e-12
    assert abs(law.excursion_length_pgf(1.0) - 1) < 1e-12
    assert abs(law.segment_length_pgf(1.0) - 1) < 1e-12


def test_nested_compositions(rng):
    seen_empty = False
    sampler = NestedCompositionSampler(0.5, Rademacher())
    assert sample_nested_compositions(0.5, Rademacher(), rng).is_nested()
    for _ in range(3000):
        c = sampler.draw(rng)
        assert c.is_nested()
        assert list(c.slopes) == sorted(c.slopes, reverse=True) and len(set(c.slopes)) == len(c.slopes)
        seen_empty |= c.F == ()
    assert seen_empty


def test_conditional_weights_flat_n4():
    R = Rademacher()
    triv = trivial_majorant(4)
    w4 = conditional_composition_weight(triv, (4,), R)
    w22 = conditional_composition_weight(triv, (2, 2), R)
    assert (w4, w22) == (F(3, 32), F(1, 32))
    assert w4 / (w4 + w22) == F(3, 4)
    assert w4 + w22 == trivial_majorant_probability(R, 4) == F(2, 16)
    assert conditional_composition_weight(triv, (1, 3), R) == 0
    assert conditional_composition_weight(triv, (3, 1), R) == 0


@pytest.mark.parametrize("model, walk", [
    (Rademacher(), [1, -1, -1, 1, -1, 1]),
    (Rademacher(), [-1, 1, 1, 1, -1, -1, 1]),
    (BernoulliLattice(F(1, 3)), [1, 1, -1, -1, -1, 1]),
    (THREE, [0, 1, -1, 0, -1]),
])
def test_sampler_law_is_exact_conditional_law(model, walk):
    maj = concave_majorant(build_walk(walk))
    hits = sum((p for incs, p in enumerate_walks(model, maj.n)
                if concave_majorant(build_walk(incs)).key() == maj.key()), F(0))
    assert majorant_probability(maj, model) == hits
    sampler = ConditionedWalkSampler(maj, model)
    assert sum(sampler.composition_law().values()) == 1


def test_trivial_sampler(rng):
    R = Rademacher()
    comps, probs = trivial_composition_law(R, 4)
    assert dict(zip(comps, probs)) == {(4,): F(3, 4), (2, 2): F(1, 4)}
    assert all(conditioned_trivial_walk(R, 2, rng).increments == (-1, 1) for _ in range(50))
    m = 20000
    draws = Counter(conditioned_trivial_walk(R, 4, rng).increments for _ in range(m))
    assert set(draws) == {(-1, -1, 1, 1), (-1, 1, -1, 1)}
    assert abs(draws[(-1, -1, 1, 1)] / m - 0.5) < 3 * math.sqrt(0.25 / m)
    with pytest.raises(NoMass):
        conditioned_trivial_walk(FiniteSupport(((1, F(1, 2)), (2, F(1, 2)))), 4, rng)


def test_general_sampler_agrees_with_trivial(rng):
    R = Rademacher()
    m = 20000
    sampler = ConditionedWalkSampler(trivial_majorant(4), R)
    a = Counter(sampler.draw(rng).increments for _ in range(m))
    b = Counter(conditioned_trivial_walk(R, 4, rng).increments for _ in range(m))
    assert total_variation({k: v / m for k, v in a.items()}, {k: v / m for k, v in b.items()}) < 0.02


def test_sampler_reproduces_majorant(rng):
    R = Rademacher()
    maj = majorant_from_faces([2, 2], [0, -2])
    sampler = ConditionedWalkSampler(maj, R)
    for _ in range(500):
        assert concave_majorant(sampler.draw(rng)).key() == maj.key()
    one = majorant_from_faces([1], [1])
    assert conditioned_walk_given_majorant(one, R, rng).increments == (1,)
    with pytest.raises(NotInSupport):
        ConditionedWalkSampler(majorant_from_faces([1], [3]), R)


def test_conditional_law_small_exhaustive(rng):
    maj = concave_majorant(build_walk([1, -1, 1, 1, -1, -1]))
    exact = enumerate_conditional_walks(maj, Rademacher())
    sampler = ConditionedWalkSampler(maj, Rademacher())
    m = 20000
    emp = Counter(sampler.draw(rng).increments for _ in range(m))
    assert total_variation({k: v / m for k, v in emp.items()}, exact) < 0.02
