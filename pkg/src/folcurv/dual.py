"""Forward-mode dual numbers with vector tangents.

A ``Dual`` carries a value and a gradient row; seeding the coordinates of a
point with the identity tangent basis evaluates a function together with its
full Jacobian in one sweep.  Exact (to rounding) for the polynomial vector
fields differentiated here; ``sqrt`` extends the reach to normalized fields.
``CDual`` packs two duals into a complex scalar with the few operations the
sphere fields need: products, multiplication by i, and squared modulus.
"""

from __future__ import annotations

import numpy as np

__all__ = ["Dual", "CDual", "seed_point"]


class Dual:
    __slots__ = ("value", "grad")

    def __init__(self, value: float, grad):
        self.value = float(value)
        self.grad = np.asarray(grad, dtype=float)

    @classmethod
    def constant(cls, value: float, n: int) -> "Dual":
        return cls(value, np.zeros(n))

    def _coerce(self, other):
        if isinstance(other, Dual):
            return other
        if isinstance(other, CDual):
            return NotImplemented
        return Dual(float(other), np.zeros_like(self.grad))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Dual(self.value + o.value, self.grad + o.grad)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Dual(self.value - o.value, self.grad - o.grad)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Dual(o.value - self.value, o.grad - self.grad)

    def __neg__(self):
        return Dual(-self.value, -self.grad)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Dual(self.value * o.value, self.value * o.grad + o.value * self.grad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        inv = 1.0 / o.value
        return Dual(self.value * inv, (self.grad - self.value * inv * o.grad) * inv)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__truediv__(self)

    def sqrt(self) -> "Dual":
        r = np.sqrt(self.value)
        return Dual(r, self.grad / (2.0 * r))

    def __repr__(self):
        return f"Dual({self.value}, grad={self.grad})"


class CDual:
    """Complex scalar with dual-number real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Dual, im: Dual):
        self.re = re
        self.im = im

    def __add__(self, other: "CDual") -> "CDual":
        return CDual(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "CDual") -> "CDual":
        return CDual(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "CDual":
        return CDual(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, CDual):
            return CDual(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        # real scalar or Dual
        return CDual(self.re * other, self.im * other)

    __rmul__ = __mul__

    def times_i(self) -> "CDual":
        return CDual(-self.im, self.re)

    def abs2(self) -> Dual:
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        return f"CDual({self.re.value}+{self.im.value}j)"


def seed_point(x: np.ndarray) -> list[CDual]:
    """Lift interleaved real coordinates [x0, y0, x1, y1, ...] to CDual
    coordinates seeded with the identity tangent basis."""
    n = x.shape[0]
    eye = np.eye(n)
    return [
        CDual(Dual(x[2 * k], eye[2 * k]), Dual(x[2 * k + 1], eye[2 * k + 1]))
        for k in range(n // 2)
    ]
