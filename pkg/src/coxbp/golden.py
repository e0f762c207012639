"""Exact arithmetic in the golden-ratio ring Z[phi].

Elements are a + b*phi with integer a, b, where phi = (1 + sqrt(5))/2
satisfies phi**2 = phi + 1.  This is the scalar ring needed for the
reflection representations of H3, H4 and I2(5): the off-diagonal entries
-2*cos(pi/m) for m in {2, 3, 5} are 0, -1 and -phi.

Sign tests are exact (no floats): for b > 0, a + b*phi > 0 iff
b*sqrt(5) > -(2a + b), decided by comparing squares.
"""

from __future__ import annotations

__all__ = ["GoldenInt", "PHI"]


class GoldenInt:
    """An element a + b*phi of Z[phi], phi the golden ratio."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int = 0):
        self.a = a
        self.b = b

    def __add__(self, other):
        if isinstance(other, int):
            return GoldenInt(self.a + other, self.b)
        return GoldenInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return GoldenInt(self.a - other, self.b)
        return GoldenInt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return GoldenInt(-self.a, -self.b)

    def __mul__(self, other):
        # (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
        if isinstance(other, int):
            return GoldenInt(self.a * other, self.b * other)
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return GoldenInt(a * c + bd, a * d + b * c + bd)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, GoldenInt):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def sign(self) -> int:
        """Exact sign of a + b*phi as a real number."""
        a, b = self.a, self.b
        if b == 0:
            return 0 if a == 0 else (1 if a > 0 else -1)
        if b > 0:
            if a >= 0:
                return 1
            # a + b phi > 0  iff  b sqrt(5) > -(2a + b)
            rhs = -(2 * a + b)
            if rhs < 0:
                return 1
            return 1 if 5 * b * b > rhs * rhs else -1
        return -(-self).sign()

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}phi"
        return f"{self.a}{self.b:+d}phi"


PHI = GoldenInt(0, 1)
