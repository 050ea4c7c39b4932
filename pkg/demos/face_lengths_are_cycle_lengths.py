"""Face lengths of a Gaussian walk against the cycle type of a uniform permutation."""
from collections import Counter

import numpy as np

from concave_majorant import RngStream, ewens_partition_prob, hull_batch
from concave_majorant.hull import decode_composition

n, m = 6, 200_000
gen = RngStream(1).generator
batch = hull_batch(gen.normal(size=(m, n)))
parts = Counter(tuple(sorted(decode_composition(c, n), reverse=True))
                for c in batch.composition_codes().tolist())
print(f"{'partition':<20}{'simulated':>12}{'exact':>12}")
for p, count in sorted(parts.items(), key=lambda kv: -kv[1]):
    print(f"{str(p):<20}{count / m:>12.4f}{float(ewens_partition_prob(p)):>12.4f}")
