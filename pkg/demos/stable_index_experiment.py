"""2 p(1,2,1) for symmetric stable steps as the index varies (1/6 at the Cauchy point)."""
from concave_majorant import RngStream, SymmetricStable, composition_prob_mc

root = RngStream(11)
for alpha in (0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0):
    est = composition_prob_mc(SymmetricStable(alpha), (1, 2, 1), 400_000, root.fork(str(alpha)))
    print(f"alpha={alpha:<5} 2p(1,2,1) = {2 * est.value:.5f} +- {2 * est.se:.5f}")
