"""Batch upper-hull kernel for float walks.

The orientation test runs in binary64 with a forward error bound.  Whenever
the computed determinant is within the bound of zero the walk is flagged and
the caller recomputes it with exact integer arithmetic.  Unflagged walks
therefore have exactly the hull of their exact partial sums, and no point off
the vertex list touches the majorant.
"""
import numpy as np
from numba import njit

_U = 2.0 ** -53


@njit(cache=True, nogil=True)
def _hull_flat(vals, absums, starts, out, counts, flags):
    m = starts.size - 1
    for w in range(m):
        s = starts[w]
        e = starts[w + 1]
        top = 0
        for k in range(e - s):
            while top >= 2:
                i = out[s + top - 2]
                j = out[s + top - 1]
                a = vals[s + j] - vals[s + i]
                b = vals[s + k] - vals[s + i]
                det = a * (k - i) - b * (j - i)
                # rounding in the cumulative sums plus the determinant itself
                ei = 1.01 * i * _U * absums[s + i]
                ej = 1.01 * j * _U * absums[s + j]
                ek = 1.01 * k * _U * absums[s + k]
                bound = (2.0 * (k - i) * (ej + ei) + 2.0 * (j - i) * (ek + ei)
                         + 8.0 * _U * (abs(a) * (k - i) + abs(b) * (j - i)))
                if abs(det) <= bound:
                    flags[w] = True
                if det <= 0.0:
                    top -= 1
                else:
                    break
            out[s + top] = k
            top += 1
        counts[w] = top


def hull_vertices_flat(values, absums, starts):
    """Vertex times of many walks packed end to end.

    ``values[starts[w]:starts[w+1]]`` holds ``S_0 .. S_n`` of walk ``w`` and
    ``absums`` the matching cumulative sums of ``|x_i|``.  Returns
    ``(out, counts, flags)`` where the vertex times of walk ``w`` are
    ``out[starts[w]:starts[w] + counts[w]]``.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    absums = np.ascontiguousarray(absums, dtype=np.float64)
    starts = np.ascontiguousarray(starts, dtype=np.int64)
    out = np.empty(values.size, dtype=np.int64)
    counts = np.zeros(starts.size - 1, dtype=np.int64)
    flags = np.zeros(starts.size - 1, dtype=np.bool_)
    _hull_flat(values, absums, starts, out, counts, flags)
    return out, counts, flags


@njit(cache=True, nogil=True)
def _segment_argmax(vals, starts, out):
    for w in range(starts.size - 1):
        s = starts[w]
        best = s
        for i in range(s + 1, starts[w + 1]):
            if vals[i] > vals[best]:
                best = i
        out[w] = best - s


def segment_argmax(values, starts):
    """First argmax inside each packed segment."""
    out = np.empty(starts.size - 1, dtype=np.int64)
    _segment_argmax(np.ascontiguousarray(values, dtype=np.float64), starts, out)
    return out


@njit(cache=True, nogil=True)
def _segment_cumsum(flat, starts, out):
    for w in range(starts.size - 1):
        acc = 0.0
        for i in range(starts[w], starts[w + 1]):
            acc += flat[i]
            out[i] = acc


def segment_cumsum(flat, starts):
    """Running sums restarted at each segment start, summed left to right."""
    out = np.empty(flat.size, dtype=np.float64)
    _segment_cumsum(np.ascontiguousarray(flat, dtype=np.float64), starts, out)
    return out
