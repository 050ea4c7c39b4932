"""Build a geometric-length walk from Poisson faces and read the faces back off its hull."""
from collections import Counter

from concave_majorant import (Gaussian, RngStream, assemble_walk_from_faces, concave_majorant,
                              sample_face_point_process)

rng = RngStream(7)
proc = sample_face_point_process(0.9, Gaussian(), rng, with_paths=True)
while proc.n == 0:
    proc = sample_face_point_process(0.9, Gaussian(), rng, with_paths=True)
walk = assemble_walk_from_faces(proc)
maj = concave_majorant(walk)
print(f"n(q) = {proc.n}, {len(proc.points)} faces")
for p in sorted(proc.points, key=lambda p: p.increment / p.length, reverse=True):
    print(f"  length {p.length:>3}  increment {p.increment:+.4f}  slope {p.increment / p.length:+.4f}")
print("hull recovers the points exactly:", Counter(maj.key()) == proc.key())
