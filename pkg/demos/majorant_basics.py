"""Faces, touch points and the split at the maximum for a few small walks."""
from concave_majorant import (argmax_decomposition, build_walk, concave_majorant,
                              excursion_decomposition)

for steps in ([1, -2, 3], [-1, 1, -1, 1], [2, -3, 1]):
    walk = build_walk(steps)
    maj = concave_majorant(walk)
    split = argmax_decomposition(walk, maj)
    print(f"steps {steps}  values {[str(v) for v in walk.values]}")
    for f in maj.faces:
        print(f"  face [{f.start_time}, {f.end_time}] length {f.length} slope {f.slope}")
    print(f"  touch times {maj.touch_times}  excursions {excursion_decomposition(walk, maj).blocks}")
    print(f"  max {split.M} at time {split.L}; F={maj.F}, H={maj.H}")
