"""The acceptance suite: thirteen end-to-end checks with pinned seeds.

Each ``criterion_*`` function returns a :class:`CriterionResult` holding
the individual checks.  Every criterion that samples walks also checks,
walk by walk, that the maximum equals the sum of the nonnegative face
increments and that its first time equals the total length of the
positive faces; the number of violations is reported and must be zero.

``scale`` shrinks every sample size (for smoke runs); the acceptance tests
use ``scale=1``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import numpy as np

from .core import (BernoulliLattice, Cauchy, FiniteSupport, Gaussian, Rademacher, RngStream,
                   build_walk, check_assumption_a)
from .hull import (batch_max_identity_violations, concave_majorant, decode_composition,
                   hull_batch, majorant_from_faces, trivial_majorant)
from .lattice import (ConditionedWalkSampler, conditional_composition_weight,
                      conditioned_trivial_walk, face_slope_laws, gf_HKF, mu0_series,
                      majorant_probability, trivial_composition_law,
                      trivial_majorant_probability)
from .poissonfaces import (argmax_time_prob, assemble_walk_from_faces, geometric_walks,
                           hunt_rhs, infinite_face_mean, max_split_conditional_test,
                           max_split_independence, sample_face_counts_batch,
                           sample_face_point_process, sample_infinite_majorant,
                           spitzer_compound_poisson_batch, walk_statistics, zero_max_probability)
from .randperm import (composition_prob_cauchy, composition_prob_mc, ewens_partition_prob,
                       partitions, stirling_first)
from .transform import invert_3214, path_transform_3214, theorem1_transform, transform_3214_order
from .verify import (TestResult, enumerate_walks, chi_square_test, chi_square_two_sample, enumerate_conditional_walks,
                     enumerate_H_F_distribution, enumerate_transform_distribution,
                     enumerate_transform_given, geometric_law, ks_two_sample, multiset_law,
                     poisson_law, proportion, total_variation, within_se)

DEFAULT_SEED = 20240601


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list = field(default_factory=list)
    max_identity_violations: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and self.max_identity_violations == 0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        failed = [c.name for c in self.checks if not c.passed]
        extra = f" failed: {failed}" if failed else ""
        return (f"[{tag}] criterion {self.number}: {self.title} "
                f"({len(self.checks)} checks, max-identity violations={self.max_identity_violations}){extra}")

    def report(self) -> dict:
        return {"criterion": self.number, "title": self.title, "pass": self.passed,
                "max_identity_violations": self.max_identity_violations,
                "checks": [{"name": c.name, "statistic": c.statistic, "p_value": c.p_value,
                            "threshold": c.threshold, "pass": c.passed, "effect": c.effect}
                           for c in self.checks]}


def _n(x: float, scale: float) -> int:
    return max(int(x * scale), 1000)


def _exact_check(name: str, ok: bool, detail: dict | None = None) -> TestResult:
    return TestResult(name, 0.0, 1.0 if ok else 0.0, bool(ok), 0.0, detail or {})


def distinct_mean_increments(n: int) -> list:
    """Rational increments of both signs with pairwise distinct subset means."""
    vals = [Fraction(10**i) - Fraction(10**n, 7) for i in range(n)]
    assert check_assumption_a(vals)
    return vals


def _batched(make, total: int, chunk: int):
    """Yield ``make(size, index)`` over fixed-size chunks (deterministic split)."""
    done, i = 0, 0
    while done < total:
        size = min(chunk, total - done)
        yield make(size, i)
        done += size
        i += 1


# ---------------------------------------------------------------------------


def criterion_1(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(1, "exact uniformity of the block/shift transform")
    for n in range(2, 8):
        incs = distinct_mean_increments(n)
        law = enumerate_transform_distribution(incs)
        target = Fraction(1, math.factorial(n))
        ok = len(law) == math.factorial(n) and all(p == target for p in law.values())
        res.checks.append(_exact_check(f"distinct means n={n}: every order has mass 1/{n}!", ok))
    for incs in ([1, 1], [1, -1, 1, -1], [2, 0, 0, -2, 1], [1, 1, -1, -1, 0, 2]):
        law = enumerate_transform_distribution(incs)
        res.checks.append(_exact_check(f"tied increments {incs}: mass = multiplicity/n!",
                                       law == multiset_law(incs)))
    return res


def criterion_2(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(2, "face-length partition law, Gaussian n=8")
    n, m = 8, _n(1e5, scale)
    gen = RngStream(seed).fork("criterion-2").generator
    batch = hull_batch(gen.normal(size=(m, n)))
    res.max_identity_violations = batch_max_identity_violations(batch)
    parts = Counter(tuple(sorted(decode_composition(c, n), reverse=True))
                    for c in batch.composition_codes().tolist())
    expected = {p: ewens_partition_prob(p) for p in partitions(n)}
    res.checks.append(chi_square_test(parts, expected, name="partition vs cycle-type law"))
    faces = Counter(batch.face_counts().tolist())
    stirling = {k: Fraction(stirling_first(n, k), math.factorial(n)) for k in range(1, n + 1)}
    res.checks.append(chi_square_test(faces, stirling, name="face count vs Stirling law"))
    return res


_UNIVERSAL = {
    (1, 1): Fraction(1, 2), (2,): Fraction(1, 2),
    (3,): Fraction(1, 3), (2, 1): Fraction(1, 4), (1, 2): Fraction(1, 4), (1, 1, 1): Fraction(1, 6),
    (4,): Fraction(1, 4), (1, 3): Fraction(1, 6), (3, 1): Fraction(1, 6), (2, 2): Fraction(1, 8),
    (1, 1, 1, 1): Fraction(1, 24),
}
TWO_P121_GAUSSIAN = 0.25 + math.asin(-1.0 / 3.0) / (2 * math.pi)  # 0.195913276


def _composition_freqs(model, n: int, m: int, gen, chunk: int = 1 << 17) -> tuple:
    counts = Counter()
    violations = 0
    for batch in _batched(lambda size, _: hull_batch(np.asarray(model.draw(size * n, gen)).reshape(size, n)),
                          m, chunk):
        violations += batch_max_identity_violations(batch)
        counts.update(batch.composition_codes().tolist())
    return {decode_composition(c, n): k for c, k in counts.items()}, violations


def criterion_3(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(3, "composition probabilities for small n")
    m = _n(1e6, scale)
    rng = RngStream(seed).fork("criterion-3")
    gen = rng.fork("gaussian").generator
    freqs = {}
    for n in (2, 3, 4):
        freqs[n], v = _composition_freqs(Gaussian(), n, m, gen)
        res.max_identity_violations += v
    for c, p in _UNIVERSAL.items():
        phat, se = proportion(freqs[sum(c)].get(c, 0), m)
        res.checks.append(within_se(phat, float(p), se, name=f"universal p{c} = {p}"))
    cgen = rng.fork("cauchy").generator
    cauchy, v = _composition_freqs(Cauchy(), 4, m, cgen)
    res.max_identity_violations += v
    for label, table, value in (("Gaussian", freqs[4], TWO_P121_GAUSSIAN),
                                ("Cauchy", cauchy, float(2 * composition_prob_cauchy((1, 2, 1))))):
        phat, se = proportion(table.get((1, 2, 1), 0), m)
        res.checks.append(within_se(2 * phat, value, 2 * se, name=f"{label} 2 p(1,2,1)"))
        three = sum(table.get(c, 0) for c in ((1, 1, 2), (2, 1, 1), (1, 2, 1)))
        phat, se = proportion(three, m)
        res.checks.append(within_se(phat, 0.25, se, name=f"{label} p(1,1,2)+p(2,1,1)+p(1,2,1) = 1/4"))
    est = composition_prob_mc(Gaussian(), (1, 2, 1), m, rng.fork("ordering"))
    res.checks.append(within_se(2 * est.value, TWO_P121_GAUSSIAN, 2 * est.se,
                                name="Gaussian 2 p(1,2,1) from block-mean ordering"))
    return res


def criterion_4(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(4, "Poisson face counts for geometric length")
    m = _n(1e5, scale)
    rng = RngStream(seed).fork("criterion-4")
    for q in (0.3, 0.5, 0.8):
        b = sample_face_counts_batch(q, m, rng.fork(f"q={q}"))
        for j in range(1, 5):
            res.checks.append(chi_square_test(Counter(b.count(j).tolist()), poisson_law(q**j / j),
                                              name=f"q={q} A_{j} ~ Poisson(q^{j}/{j})"))
        res.checks.append(chi_square_test(Counter(b.faces().tolist()), poisson_law(-math.log1p(-q)),
                                          name=f"q={q} F ~ Poisson(-log(1-q))"))
        res.checks.append(chi_square_test(Counter(b.totals().tolist()), geometric_law(1 - q),
                                          name=f"q={q} total length ~ Geometric(1-q)"))
    return res


def criterion_5(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(5, "walks assembled from Poisson faces vs direct simulation")
    q, m = 0.5, _n(1e5, scale)
    rng = RngStream(seed).fork("criterion-5")
    prng = rng.fork("assembled")
    rows = []
    round_trip = True
    for i in range(m):
        proc = sample_face_point_process(q, Gaussian(), prng, with_paths=True)
        if proc.n == 0:
            rows.append(np.zeros(0))
            continue
        walk = assemble_walk_from_faces(proc)
        if i < 10_000:
            round_trip &= Counter(concave_majorant(walk).key()) == proc.key()
        rows.append(np.asarray(walk.increments))
    assembled = hull_batch(rows)
    direct = geometric_walks(q, Gaussian(), m, rng.fork("direct"))
    res.max_identity_violations = (batch_max_identity_violations(assembled)
                                   + batch_max_identity_violations(direct))
    res.checks.append(_exact_check("faces of assembled walks equal the sampled points", round_trip))
    a, d = walk_statistics(assembled), walk_statistics(direct)
    res.checks.append(chi_square_two_sample(Counter(a["n"].tolist()), Counter(d["n"].tolist()),
                                            name="n"))
    res.checks.append(chi_square_two_sample(Counter(a["F"].tolist()), Counter(d["F"].tolist()),
                                            name="F"))
    res.checks.append(chi_square_two_sample(Counter((a["M"] == 0).tolist()),
                                            Counter((d["M"] == 0).tolist()), name="P(M = 0)"))
    res.checks.append(ks_two_sample(a["S"][a["n"] > 0], d["S"][d["n"] > 0], name="S_n given n > 0"))
    res.checks.append(ks_two_sample(a["M"][a["M"] > 0], d["M"][d["M"] > 0], name="M given M > 0"))
    return res


def criterion_6(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(6, "mean maximum of Gaussian walks")
    m = _n(1e6, scale)
    rng = RngStream(seed).fork("criterion-6")
    for n in (4, 16, 64):
        gen = rng.fork(f"n={n}").generator
        total = 0.0
        for batch in _batched(lambda size, _: hull_batch(gen.normal(size=(size, n))), m, 1 << 16):
            res.max_identity_violations += batch_max_identity_violations(batch)
            total += float(batch.maxima().sum())
        mean = total / m
        target = hunt_rhs(Gaussian(), n)
        rel = abs(mean - target) / target
        res.checks.append(TestResult(f"n={n}: E M_n vs sum E(S_l^+)/l", rel, float("nan"), rel < 0.01,
                                     rel, {"mean": mean, "target": target}, 0.01))
    return res


def criterion_7(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(7, "compound Poisson law of the maximum")
    m = _n(1e5, scale)
    rng = RngStream(seed).fork("criterion-7")
    cp = spitzer_compound_poisson_batch(0.5, Gaussian(), m, rng.fork("compound"))
    direct = geometric_walks(0.5, Gaussian(), m, rng.fork("direct"))
    res.max_identity_violations = batch_max_identity_violations(direct)
    dm = direct.maxima()
    res.checks.append(ks_two_sample(cp[cp > 0], dm[dm > 0], name="q=0.5 M given M > 0"))
    res.checks.append(chi_square_two_sample(Counter((cp == 0).tolist()), Counter((dm == 0).tolist()),
                                            name="q=0.5 P(M = 0)"))
    cp75 = spitzer_compound_poisson_batch(0.75, Gaussian(), m, rng.fork("q=0.75"))
    est = zero_max_probability(cp75)
    res.checks.append(within_se(est.value, math.sqrt(0.25), est.se, name="q=0.75 P(M = 0) = 1/2"))
    return res


def criterion_8(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(8, "faces on the infinite horizon, Gaussian mean -1")
    model, mu = Gaussian(-1.0, 1.0), -1.0
    n, reps = 10_000, _n(1e4, scale)
    gen = RngStream(seed).fork("criterion-8").generator
    counts = {j: Counter() for j in (1, 2, 3)}
    for batch in _batched(lambda size, _: hull_batch(gen.normal(mu, 1.0, size=(size, n))), reps, 250):
        res.max_identity_violations += batch_max_identity_violations(batch)
        owner, length, inc = batch.face_table()
        steep = inc > length * mu
        for j in counts:
            counts[j].update(np.bincount(owner[steep & (length == j)], minlength=len(batch)).tolist())
    for j in counts:
        res.checks.append(chi_square_test(counts[j], poisson_law(infinite_face_mean(model, mu, j)),
                                          name=f"length-{j} faces ~ Poisson(P(S_j > j mu)/j)"))
    rng = RngStream(seed).fork("criterion-8-sampler")
    sampled = {j: Counter() for j in (1, 2, 3)}
    for _ in range(reps):
        faces = sample_infinite_majorant(model, mu, 3, rng)
        c = Counter(f.length for f in faces)
        for j in sampled:
            sampled[j][c.get(j, 0)] += 1
    for j in sampled:
        res.checks.append(chi_square_two_sample(sampled[j], counts[j],
                                                name=f"sampler vs long walks, length {j}"))
    return res


def criterion_9(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(9, "positive faces given the time of the maximum")
    q, m = 0.8, _n(2e5, scale)
    batch = geometric_walks(q, Gaussian(), m, RngStream(seed).fork("criterion-9"))
    res.max_identity_violations = batch_max_identity_violations(batch)
    for ell in (2, 3):
        out = max_split_conditional_test(Gaussian(), q, ell, m, None, Fraction(1, 2), batch=batch)
        res.checks.append(out.test)
        phat, se = proportion(out.conditioned, m)
        res.checks.append(within_se(phat, argmax_time_prob(ell, q, 0.5), se, name=f"P(L = {ell})"))
    res.checks.append(max_split_independence(batch))
    return res


def criterion_10(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(10, "generating functions of H_n, K_n, F_n")
    N = 12
    for label, model in (("Rademacher", Rademacher()), ("Bernoulli(1/3)", BernoulliLattice(Fraction(1, 3)))):
        H, K, F = gf_HKF(model, N, N)
        ok_h = ok_f = True
        for n in range(1, N + 1):
            h, f = enumerate_H_F_distribution(n, model)
            ok_h &= H.row(n) == dict(h)
            ok_f &= F.row(n) == dict(f)
        res.checks.append(_exact_check(f"{label}: H rows n<=12 equal enumeration", ok_h))
        res.checks.append(_exact_check(f"{label}: F rows n<=12 equal enumeration", ok_f))
        ok_k = all(K.row(n) == {k: Fraction(stirling_first(n, k), math.factorial(n))
                                for k in range(1, n + 1)} for n in range(1, N + 1))
        res.checks.append(_exact_check(f"{label}: K rows equal Stirling/n!", ok_k))
        mu0 = mu0_series(model, 32)
        res.checks.append(_exact_check(f"{label}: slope series sum to -log(1-q) to order 32",
                                       all(c == 0 for c in mu0.coeffs)))
    return res


def _slope_zero_statistics(q: float, m: int, rng: RngStream) -> dict:
    """Slope-0 structure of transformed geometric-length Rademacher walks."""
    model = Rademacher()
    lengths = rng.fork("lengths").generator.geometric(1 - q, size=m) - 1
    steps = rng.fork("steps")
    trng = rng.fork("transform")
    H, K, F, E, face_len, unique_min = [], [], [], [], [], 0
    for n in lengths.tolist():
        if n == 0:
            for seq in (H, K, F, face_len):
                seq.append(0)
            unique_min += 1
            continue
        out = theorem1_transform(model.draw_exact(n, steps.generator), trng)
        walk = out.walk
        vals = walk.values
        unique_min += vals.count(min(vals)) == 1
        maj = concave_majorant(walk)
        touch = set(maj.touch_times)
        zero_face = [f for f in maj.faces if f.increment == 0]
        F.append(len(zero_face))
        face_len.append(zero_face[0].length if zero_face else 0)
        h = 0
        if zero_face:
            g, d = zero_face[0].start_time, zero_face[0].end_time
            h = sum(1 for t in touch if g < t <= d)
        H.append(h)
        k, t = 0, 0
        for size in out.segment_composition:
            if vals[t + size] == vals[t]:
                k += 1
                E.append(sum(1 for u in touch if t < u <= t + size))
            t += size
        K.append(k)
    return {"H": H, "K": K, "F": F, "E": E, "face_length": face_len, "unique_min": unique_min}


def criterion_11(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(11, "slope-0 laws for Rademacher walks, q=0.5")
    q, m = 0.5, _n(1e5, scale)
    stats_ = _slope_zero_statistics(q, m, RngStream(seed).fork("criterion-11"))
    law = face_slope_laws(q, Rademacher(), 0)
    top = 60
    res.checks.append(chi_square_test(Counter(stats_["H"]), {h: law.pmf_H(h) for h in range(top)},
                                      name="H ~ geometric"))
    res.checks.append(chi_square_test(Counter(stats_["K"]), {k: law.pmf_K(k) for k in range(top)},
                                      name="K ~ Poisson"))
    res.checks.append(chi_square_test(Counter(stats_["F"]), {0: law.pmf_F(0), 1: law.pmf_F(1)},
                                      name="F ~ Bernoulli"))
    res.checks.append(chi_square_test(Counter(stats_["E"]), {i: law.pmf_E(i) for i in range(1, top)},
                                      name="excursions per segment ~ log-series"))
    phat, se = proportion(stats_["unique_min"], m)
    res.checks.append(within_se(phat, math.exp(-law.mu), se, name="P(unique minimum) = exp(-mu_0)"))
    fl = np.asarray(stats_["face_length"], dtype=float)
    res.checks.append(within_se(fl.mean(), law.expected_face_length, fl.std(ddof=1) / math.sqrt(m),
                                name="expected slope-0 face length"))
    return res


def criterion_12(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(12, "walks conditioned on their majorant")
    R = Rademacher()
    rng = RngStream(seed).fork("criterion-12")
    m = _n(1e5, scale)
    triv = trivial_majorant(4)
    w4 = conditional_composition_weight(triv, (4,), R)
    w22 = conditional_composition_weight(triv, (2, 2), R)
    res.checks.append(_exact_check("q((4)) = 3/4 from normalised weights", w4 / (w4 + w22) == Fraction(3, 4)))
    res.checks.append(_exact_check("total trivial weight equals P(flat majorant) = 1/8",
                                   w4 + w22 == Fraction(1, 8)
                                   and trivial_majorant_probability(R, 4) == Fraction(1, 8)))
    comps, probs = trivial_composition_law(R, 4)
    res.checks.append(_exact_check("trivial sampler composition law", dict(zip(comps, probs))
                                   == {(4,): Fraction(3, 4), (2, 2): Fraction(1, 4)}))
    oracle = enumerate_transform_given(R, 4, lambda out: concave_majorant(build_walk(out)).key() == triv.key())
    seg_law = Counter()
    for (_, seg), p in oracle.items():
        seg_law[seg] += p
    res.checks.append(_exact_check("segment law given trivial majorant (exhaustive)",
                                   seg_law[(4,)] == Fraction(3, 4)))
    trng = rng.fork("trivial")
    paths = Counter(conditioned_trivial_walk(R, 4, trng).increments for _ in range(m))
    for path in ((-1, -1, 1, 1), (-1, 1, -1, 1)):
        phat, se = proportion(paths[tuple(Fraction(x) for x in path)], m)
        res.checks.append(within_se(phat, 0.5, se, name=f"trivial sampler P{path} = 1/2"))
    res.checks.append(_exact_check("trivial sampler only returns admissible paths",
                                   sum(paths.values()) == paths[tuple(map(Fraction, (-1, -1, 1, 1)))]
                                   + paths[tuple(map(Fraction, (-1, 1, -1, 1)))]))
    three = FiniteSupport(((-1, Fraction(1, 4)), (0, Fraction(1, 2)), (1, Fraction(1, 4))))
    cases = [
        ("Rademacher trivial n=6", R, trivial_majorant(6)),
        ("Rademacher n=6", R, concave_majorant(build_walk([1, -1, 1, 1, -1, -1]))),
        ("Bernoulli(1/3) n=6", BernoulliLattice(Fraction(1, 3)),
         concave_majorant(build_walk([1, 1, -1, -1, -1, 1]))),
        ("three-point n=5", three, concave_majorant(build_walk([0, 1, -1, 0, -1]))),
        ("Rademacher two faces n=4", R, majorant_from_faces([2, 2], [0, -2])),
    ]
    for label, model, maj in cases:
        sampler = ConditionedWalkSampler(maj, model)
        hits = sum((p for incs, p in enumerate_walks(model, maj.n)
                    if concave_majorant(build_walk(incs)).key() == maj.key()), Fraction(0))
        res.checks.append(_exact_check(f"{label}: total composition weight equals P(majorant)",
                                       majorant_probability(maj, model) == hits))
        grng = rng.fork(label)
        draws = [sampler.draw(grng) for _ in range(m)]
        same = sum(concave_majorant(w).key() == maj.key() for w in draws)
        res.checks.append(_exact_check(f"{label}: majorant reproduced on every draw", same == m,
                                       {"matches": same}))
        exact = enumerate_conditional_walks(maj, model)
        emp = Counter(w.increments for w in draws)
        tv = total_variation({k: v / m for k, v in emp.items()}, exact)
        res.checks.append(TestResult(f"{label}: TV to exhaustive conditional law < 0.01", tv,
                                     float("nan"), tv < 0.01, tv, {"support": len(exact)}, 0.01))
    return res


def criterion_13(seed: int = DEFAULT_SEED, scale: float = 1.0) -> CriterionResult:
    res = CriterionResult(13, "the 3214 rearrangement is a bijection")
    for n in range(1, 8):
        vals = distinct_mean_increments(n)
        image = set()
        ok = True
        for sigma in permutations(range(n)):
            walk = build_walk([vals[i] for i in sigma])
            maj = concave_majorant(walk)
            for U in range(1, n + 1):
                k, order = transform_3214_order(walk, U, maj)
                image.add((k, tuple(sigma[i] for i in order)))
                ok &= 1 <= k <= n
        size = n * math.factorial(n)
        res.checks.append(_exact_check(f"n={n}: {size} inputs map onto {size} distinct outputs",
                                       ok and len(image) == size))
    gen = RngStream(seed).fork("criterion-13").generator
    walks = _n(1e4, scale)
    good = 0
    for _ in range(walks):
        walk = build_walk([float(x) for x in gen.normal(size=20)])
        maj = concave_majorant(walk)
        ok = True
        for U in range(1, 21):
            k, out = path_transform_3214(walk, U, maj)
            U2, back = invert_3214(k, out)
            ok &= U2 == U and back.increments == walk.increments
        good += ok
    res.checks.append(_exact_check(f"round trip on {walks} Gaussian walks, n=20, all U", good == walks,
                                   {"good": good}))
    return res


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 14)}

SUITES = {
    "all": list(range(1, 14)),
    "transform-exact": [1, 13],
    "exact": [1, 10, 13],
    "transform": [1, 13],
    "randperm": [2, 3],
    "poissonfaces": [4, 5, 6, 7, 8, 9],
    "lattice": [10, 11, 12],
}
SUITES.update({f"criterion-{i}": [i] for i in range(1, 14)})


def run_suite(name: str, seed: int = DEFAULT_SEED, scale: float = 1.0) -> list:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return [CRITERIA[i](seed, scale) for i in SUITES[name]]
