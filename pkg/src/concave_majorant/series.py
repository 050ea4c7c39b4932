"""Truncated power series with exact rational coefficients, in one or two variables."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import InvalidInput

_ZERO = Fraction(0)


def _trunc(c: Sequence, order: int) -> list:
    c = [Fraction(x) for x in c[:order + 1]]
    return c + [_ZERO] * (order + 1 - len(c))


class UnivariateSeries:
    """``sum_k c[k] q^k`` for ``k <= order``."""

    def __init__(self, coeffs: Sequence, order: int):
        self.order = order
        self.coeffs = _trunc(list(coeffs), order)

    @classmethod
    def zero(cls, order: int):
        return cls([], order)

    @classmethod
    def neg_log_one_minus(cls, order: int):
        """``-log(1 - q) = sum q^k / k``."""
        return cls([_ZERO] + [Fraction(1, k) for k in range(1, order + 1)], order)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.order else _ZERO

    def __add__(self, other):
        return UnivariateSeries([a + b for a, b in zip(self.coeffs, other.coeffs)],
                                min(self.order, other.order))

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "UnivariateSeries":
        c = Fraction(c)
        return UnivariateSeries([c * a for a in self.coeffs], self.order)

    def __mul__(self, other):
        if not isinstance(other, UnivariateSeries):
            return self.scale(other)
        order = min(self.order, other.order)
        out = [_ZERO] * (order + 1)
        for i, a in enumerate(self.coeffs[:order + 1]):
            if a:
                for j in range(order + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return UnivariateSeries(out, order)

    __rmul__ = __mul__

    def exp(self) -> "UnivariateSeries":
        if self.coeffs[0]:
            raise InvalidInput("exp needs a zero constant term")
        f, n = self.coeffs, self.order
        g = [Fraction(1)] + [_ZERO] * n
        for m in range(1, n + 1):
            g[m] = sum((k * f[k] * g[m - k] for k in range(1, m + 1)), _ZERO) / m
        return UnivariateSeries(g, n)

    def log(self) -> "UnivariateSeries":
        if self.coeffs[0] != 1:
            raise InvalidInput("log needs constant term 1")
        f, n = self.coeffs, self.order
        g = [_ZERO] * (n + 1)
        for m in range(1, n + 1):
            g[m] = f[m] - sum((k * g[k] * f[m - k] for k in range(1, m)), _ZERO) / m
        return UnivariateSeries(g, n)

    def reciprocal(self) -> "UnivariateSeries":
        if not self.coeffs[0]:
            raise InvalidInput("reciprocal needs a nonzero constant term")
        f, n = self.coeffs, self.order
        g = [1 / f[0]] + [_ZERO] * n
        for m in range(1, n + 1):
            g[m] = -sum((f[k] * g[m - k] for k in range(1, m + 1)), _ZERO) / f[0]
        return UnivariateSeries(g, n)

    def __call__(self, q: float) -> float:
        return sum(float(c) * q**k for k, c in enumerate(self.coeffs))

    def __eq__(self, other):
        return (isinstance(other, UnivariateSeries) and self.order == other.order
                and self.coeffs == other.coeffs)

    def __repr__(self):
        terms = [f"{c}*q^{k}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


class BivariateSeries:
    """``sum c[n][m] s^n t^m`` for ``n <= order_s`` and ``m <= order_t``."""

    def __init__(self, grid: Sequence[Sequence], order_s: int, order_t: int):
        self.order_s, self.order_t = order_s, order_t
        rows = [_trunc(list(r), order_t) for r in list(grid)[:order_s + 1]]
        rows += [[_ZERO] * (order_t + 1) for _ in range(order_s + 1 - len(rows))]
        self.grid = rows

    @classmethod
    def from_t_linear(cls, f: UnivariateSeries, order_s: int, order_t: int):
        """The series ``t f(s)``."""
        return cls([[_ZERO, f[n]] for n in range(order_s + 1)], order_s, order_t)

    @classmethod
    def from_t_powers(cls, terms: dict, order_s: int, order_t: int):
        """``sum_m t^m f_m(s)`` from ``{m: UnivariateSeries}``."""
        grid = [[_ZERO] * (order_t + 1) for _ in range(order_s + 1)]
        for m, f in terms.items():
            if m <= order_t:
                for n in range(order_s + 1):
                    grid[n][m] += f[n]
        return cls(grid, order_s, order_t)

    def coeff(self, n: int, m: int) -> Fraction:
        if 0 <= n <= self.order_s and 0 <= m <= self.order_t:
            return self.grid[n][m]
        return _ZERO

    def row(self, n: int) -> dict:
        """``{m: [s^n t^m]}`` over nonzero coefficients."""
        return {m: c for m, c in enumerate(self.grid[n]) if c}

    def _tmul(self, a: list, b: list) -> list:
        out = [_ZERO] * (self.order_t + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(self.order_t + 1 - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return out

    def __add__(self, other):
        return BivariateSeries([[x + y for x, y in zip(r, o)] for r, o in zip(self.grid, other.grid)],
                               self.order_s, self.order_t)

    def __mul__(self, other):
        out = [[_ZERO] * (self.order_t + 1) for _ in range(self.order_s + 1)]
        for i in range(self.order_s + 1):
            for j in range(self.order_s + 1 - i):
                prod = self._tmul(self.grid[i], other.grid[j])
                out[i + j] = [x + y for x, y in zip(out[i + j], prod)]
        return BivariateSeries(out, self.order_s, self.order_t)

    def exp(self) -> "BivariateSeries":
        """``exp`` of a series with no pure-``t`` part (zero ``s^0`` row)."""
        if any(self.grid[0]):
            raise InvalidInput("exp needs the s^0 row to vanish")
        f = self.grid
        g = [[Fraction(1)] + [_ZERO] * self.order_t]
        for n in range(1, self.order_s + 1):
            acc = [_ZERO] * (self.order_t + 1)
            for k in range(1, n + 1):
                prod = self._tmul(f[k], g[n - k])
                acc = [a + k * p for a, p in zip(acc, prod)]
            g.append([a / n for a in acc])
        return BivariateSeries(g, self.order_s, self.order_t)

    def __eq__(self, other):
        return isinstance(other, BivariateSeries) and self.grid == other.grid

    def __repr__(self):
        return f"BivariateSeries(order_s={self.order_s}, order_t={self.order_t})"
