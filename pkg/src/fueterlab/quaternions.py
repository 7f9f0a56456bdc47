"""Quaternion arithmetic, the complex-pair identification, and the
hypercomplex structures acting on real covectors.

A quaternion ``q = x0 + i x1 + j x2 + k x3`` is identified with the pair
``(z1, z2) = (x0 + i x1, x2 + i x3)`` via ``q = z1 + z2 j``; under that
identification the commutation rule reads ``a j = j conj(a)`` for complex
``a``.  Components may be ``Fraction`` (exact backend) or ``float``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .scalars import GaussianRational, is_exact_scalar


def _split(scalar):
    """Real and imaginary parts of a backend complex scalar."""
    if isinstance(scalar, GaussianRational):
        return scalar.re, scalar.im
    z = complex(scalar)
    return z.real, z.imag


def _join(re, im):
    if isinstance(re, (int, Fraction)) and isinstance(im, (int, Fraction)):
        return GaussianRational(re, im)
    return complex(re, im)


@dataclass(frozen=True)
class Quaternion:
    x0: object
    x1: object
    x2: object
    x3: object

    @classmethod
    def exact(cls, x0=0, x1=0, x2=0, x3=0) -> "Quaternion":
        return cls(Fraction(x0), Fraction(x1), Fraction(x2), Fraction(x3))

    @classmethod
    def of_floats(cls, x0=0.0, x1=0.0, x2=0.0, x3=0.0) -> "Quaternion":
        return cls(float(x0), float(x1), float(x2), float(x3))

    @classmethod
    def from_complex_pair(cls, z1, z2) -> "Quaternion":
        a, b = _split(z1)
        c, d = _split(z2)
        return cls(a, b, c, d)

    def to_complex_pair(self) -> "ComplexPair":
        return ComplexPair(_join(self.x0, self.x1), _join(self.x2, self.x3))

    @property
    def components(self):
        return (self.x0, self.x1, self.x2, self.x3)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.x0, -self.x1, -self.x2, -self.x3)

    def norm_sq(self):
        return self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3

    def __abs__(self) -> float:
        return math.sqrt(float(self.norm_sq()))

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __add__(self, other) -> "Quaternion":
        return Quaternion(self.x0 + other.x0, self.x1 + other.x1,
                          self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other) -> "Quaternion":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a0, a1, a2, a3 = self.components
            b0, b1, b2, b3 = other.components
            return Quaternion(
                a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
            )
        if isinstance(other, (int, float, Fraction)):
            return Quaternion(self.x0 * other, self.x1 * other,
                              self.x2 * other, self.x3 * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, Fraction)):
            return self * other
        return NotImplemented

    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.components)

    def to_floats(self) -> "Quaternion":
        return Quaternion.of_floats(*(float(c) for c in self.components))


Q_ONE = Quaternion.exact(1, 0, 0, 0)
Q_I = Quaternion.exact(0, 1, 0, 0)
Q_J = Quaternion.exact(0, 0, 1, 0)
Q_K = Quaternion.exact(0, 0, 0, 1)


def mul_complex_pair(q: Quaternion, r: Quaternion) -> Quaternion:
    """Product computed through the complex-pair formula
    ``(a1 + a2 j)(b1 + b2 j) = (a1 b1 - a2 conj(b2)) + (a1 b2 + a2 conj(b1)) j``,
    used as an independent cross-check of the Hamilton table.
    """
    a = q.to_complex_pair()
    b = r.to_complex_pair()
    c1 = a.z1 * b.z1 - a.z2 * b.z2.conjugate()
    c2 = a.z1 * b.z2 + a.z2 * b.z1.conjugate()
    return Quaternion.from_complex_pair(c1, c2)


@dataclass(frozen=True)
class ComplexPair:
    """A point of C^2, the complex-coordinate face of a quaternion."""

    z1: object
    z2: object

    @classmethod
    def exact(cls, re1=0, im1=0, re2=0, im2=0) -> "ComplexPair":
        return cls(GaussianRational(re1, im1), GaussianRational(re2, im2))

    @classmethod
    def of_floats(cls, z1, z2) -> "ComplexPair":
        return cls(complex(z1), complex(z2))

    @classmethod
    def from_quaternion(cls, q: Quaternion) -> "ComplexPair":
        return q.to_complex_pair()

    def to_quaternion(self) -> Quaternion:
        return Quaternion.from_complex_pair(self.z1, self.z2)

    def norm_sq(self):
        return (self.z1 * self.z1.conjugate() + self.z2 * self.z2.conjugate()).real


@dataclass(frozen=True)
class ImaginaryUnit:
    """Point of the two-sphere of imaginary unit quaternions p1 i + p2 j + p3 k."""

    p1: object
    p2: object
    p3: object

    def __post_init__(self):
        n = self.p1 * self.p1 + self.p2 * self.p2 + self.p3 * self.p3
        if isinstance(n, (int, Fraction)):
            if n != 1:
                raise ValueError(f"not a unit imaginary quaternion: |p|^2 = {n}")
        elif abs(n - 1.0) > 1e-12:
            raise ValueError(f"not a unit imaginary quaternion: |p|^2 = {n}")

    @classmethod
    def exact(cls, p1, p2, p3) -> "ImaginaryUnit":
        return cls(Fraction(p1), Fraction(p2), Fraction(p3))

    @property
    def components(self):
        return (self.p1, self.p2, self.p3)

    def as_quaternion(self) -> Quaternion:
        return Quaternion(0 * self.p1, self.p1, self.p2, self.p3)

    def as_complex_pair(self):
        """The pair (c1, c2) with p = c1 + c2 j, i.e. (i p1, p2 + i p3)."""
        zero = self.p1 - self.p1
        return _join(zero, self.p1), _join(self.p2, self.p3)

    def dot(self, other: "ImaginaryUnit"):
        return (self.p1 * other.p1 + self.p2 * other.p2 + self.p3 * other.p3)

    def cross(self, other: "ImaginaryUnit") -> "ImaginaryUnit":
        """The product p*q of orthogonal imaginary units, again imaginary."""
        return ImaginaryUnit(
            self.p2 * other.p3 - self.p3 * other.p2,
            self.p3 * other.p1 - self.p1 * other.p3,
            self.p1 * other.p2 - self.p2 * other.p1,
        )


UNIT_I = ImaginaryUnit.exact(1, 0, 0)
UNIT_J = ImaginaryUnit.exact(0, 1, 0)
UNIT_K = ImaginaryUnit.exact(0, 0, 1)


@dataclass(frozen=True)
class Covector4:
    """Covector c0 dx0 + c1 dx1 + c2 dx2 + c3 dx3 with scalar coefficients.

    Coefficients may be real, complex, or polynomial-valued; the structure
    maps below only negate, permute, and rescale them.
    """

    c0: object
    c1: object
    c2: object
    c3: object

    @property
    def components(self):
        return (self.c0, self.c1, self.c2, self.c3)

    def __add__(self, other):
        return type(self)(*(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other):
        return type(self)(*(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return type(self)(*(-a for a in self.components))

    def scale(self, s):
        return type(self)(*(a * s for a in self.components))

    def is_zero(self) -> bool:
        return all(not _nonzero(a) for a in self.components)


def _nonzero(a) -> bool:
    z = getattr(a, "is_zero", None)
    if z is not None:
        flag = z() if callable(z) else z
        return not flag
    return bool(a)


# Structure tables on basis covectors, entry k -> (target, sign) for
# J dx_k = sign * dx_target.  The four entries stated for J1, J2 plus the
# two for J3 pin the rest through J^2 = -id and J3 = J1 J2:
#   J1: dx0 -> -dx1, dx1 -> dx0, dx2 -> -dx3, dx3 -> dx2
#   J2: dx0 -> -dx2, dx1 -> dx3, dx2 -> dx0, dx3 -> -dx1
#   J3: dx0 -> dx3, dx1 -> dx2, dx2 -> -dx1, dx3 -> -dx0
J1_TABLE = ((1, -1), (0, 1), (3, -1), (2, 1))
J2_TABLE = ((2, -1), (3, 1), (0, 1), (1, -1))
J3_TABLE = ((3, 1), (2, 1), (1, -1), (0, -1))


def apply_j_table(table, comps):
    out = [None] * 4
    for k, (target, sign) in enumerate(table):
        out[target] = comps[k] if sign > 0 else -comps[k]
    return tuple(out)


def j1(u):
    """Works on any 4-component carrier (Covector4, one-forms, ...)."""
    return type(u)(*apply_j_table(J1_TABLE, u.components))


def j2(u):
    return type(u)(*apply_j_table(J2_TABLE, u.components))


def j3(u):
    return type(u)(*apply_j_table(J3_TABLE, u.components))


def jp(p: ImaginaryUnit, u):
    """J_p = p1 J1 + p2 J2 + p3 J3 for a unit imaginary quaternion p."""
    a = j1(u).scale(p.p1)
    b = j2(u).scale(p.p2)
    c = j3(u).scale(p.p3)
    return a + b + c
