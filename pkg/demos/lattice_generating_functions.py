"""Exact laws of H_n and F_n for the simple random walk from their generating functions."""
from concave_majorant import Rademacher, gf_HKF

H, K, F = gf_HKF(Rademacher(), 8, 8)
for n in range(1, 9):
    print(f"n={n}")
    print("  P(H_n = m):", {m: str(p) for m, p in H.row(n).items()})
    print("  P(K_n = m):", {m: str(p) for m, p in K.row(n).items()})
    print("  P(F_n = m):", {m: str(p) for m, p in F.row(n).items()})
