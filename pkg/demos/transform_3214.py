"""The 3214 map: move the face containing step U to the front, then invert it."""
from concave_majorant import build_walk, concave_majorant, invert_3214, path_transform_3214

walk = build_walk([2, -1, 3, -4, 1, -2])
print("input  ", [int(x) for x in walk.increments],
      "faces", [(f.start_time, f.end_time) for f in concave_majorant(walk).faces])
for U in range(1, walk.n + 1):
    k, out = path_transform_3214(walk, U)
    back_U, back = invert_3214(k, out)
    print(f"U={U}  k={k}  output {[int(x) for x in out.increments]}"
          f"  inverse recovers U={back_U}, walk {back.increments == walk.increments}")
