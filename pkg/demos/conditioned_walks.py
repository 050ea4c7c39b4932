"""Sample simple random walks conditioned to have a given concave majorant."""
from collections import Counter

from concave_majorant import (ConditionedWalkSampler, Rademacher, RngStream, build_walk,
                              concave_majorant, majorant_probability)
from concave_majorant.verify import enumerate_conditional_walks

model = Rademacher()
maj = concave_majorant(build_walk([1, -1, -1, 1, -1, 1]))
print("majorant faces:", [(f.length, f.increment) for f in maj.faces])
print("P(walk has this majorant) =", majorant_probability(maj, model))
sampler = ConditionedWalkSampler(maj, model)
print("block composition law:", {c: str(p) for c, p in sampler.composition_law().items()})
rng, m = RngStream(3), 50_000
counts = Counter(sampler.draw(rng).increments for _ in range(m))
exact = enumerate_conditional_walks(maj, model)
for path, p in sorted(exact.items()):
    print(f"  {[int(x) for x in path]}  simulated {counts[path] / m:.4f}  exact {float(p):.4f}")
