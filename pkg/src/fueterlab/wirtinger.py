"""Exact polynomial calculus in Wirtinger coordinates.

:class:`WPoly` is a sparse polynomial in the four symbols
``z1, conj(z1), z2, conj(z2)``; an exponent key ``(a, b, c, d)`` stands for
``z1^a conj(z1)^b z2^c conj(z2)^d``.  :class:`QFunction` is the pair
``(f1, f2)`` representing the quaternion-valued function ``f = f1 + f2 j``;
it is always stored as complex components so that the commutation rule
``a j = j conj(a)`` lives in one place, the derived formulas below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scalars import (
    GR_I,
    GaussianRational,
    coeff_from_strings,
    coeff_to_strings,
)
from .quaternions import (
    Covector4,
    ImaginaryUnit,
    Quaternion,
    j1,
    j2,
    j3,
    jp,
)

_WHICH = {"z1": 0, "z1b": 1, "z2": 2, "z2b": 3}


def grlex_key(e):
    return (e[0] + e[1] + e[2] + e[3], e)


class WPoly:
    """Sparse complex-coefficient polynomial in z1, conj(z1), z2, conj(z2)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[e] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "WPoly":
        return cls()

    @classmethod
    def monomial(cls, exps, coeff) -> "WPoly":
        e = tuple(int(x) for x in exps)
        if len(e) != 4 or min(e) < 0:
            raise ValueError(f"bad exponent quadruple {exps!r}")
        return cls({e: coeff})

    @classmethod
    def constant(cls, coeff) -> "WPoly":
        return cls({(0, 0, 0, 0): coeff})

    # -- ring operations ----------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return all(isinstance(c, GaussianRational) for c in self.terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, WPoly):
            return NotImplemented
        return (self - other).is_zero

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "WPoly") -> "WPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return WPoly(out)

    def __neg__(self) -> "WPoly":
        return WPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "WPoly") -> "WPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, WPoly):
            out = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                    s = out.get(e, 0) + c1 * c2
                    if s:
                        out[e] = s
                    else:
                        out.pop(e, None)
            return WPoly(out)
        if isinstance(other, (int, float, complex, Fraction, GaussianRational)):
            return WPoly({e: c * other for e, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "WPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = WPoly.constant(GaussianRational(1) if self.is_exact() else 1.0)
        for _ in range(n):
            out = out * self
        return out

    # -- conjugation and real structure --------------------------------

    def conj(self) -> "WPoly":
        """Polynomial whose values are the complex conjugates: swap
        z <-> conj(z) exponents and conjugate coefficients."""
        return WPoly({(e[1], e[0], e[3], e[2]): c.conjugate()
                      for e, c in self.terms.items()})

    def gamma(self) -> "WPoly":
        """Pullback under (z1, z2) -> (z1, conj(z2)): swap the z2 exponents."""
        return WPoly({(e[0], e[1], e[3], e[2]): c for e, c in self.terms.items()})

    def is_real_valued(self) -> bool:
        return (self - self.conj()).is_zero

    def _half(self):
        return Fraction(1, 2) if self.is_exact() else 0.5

    def _unit_im(self):
        return GR_I if self.is_exact() else 1j

    def real(self) -> "WPoly":
        return (self + self.conj()) * self._half()

    def imag(self) -> "WPoly":
        return (self - self.conj()) * (-self._unit_im() * self._half())

    # -- differentiation ------------------------------------------------

    def wirt(self, which: str) -> "WPoly":
        """Formal Wirtinger partial derivative, which in
        {"z1", "z1b", "z2", "z2b"}."""
        i = _WHICH[which]
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        return WPoly(out)

    def dx(self, k: int) -> "WPoly":
        """Real partial d/dx_k through the Wirtinger combinations
        d/dx0 = d/dz1 + d/dz1b, d/dx1 = i (d/dz1 - d/dz1b), and likewise
        for x2, x3 with z2."""
        if k == 0:
            return self.wirt("z1") + self.wirt("z1b")
        if k == 1:
            return (self.wirt("z1") - self.wirt("z1b")) * self._unit_im()
        if k == 2:
            return self.wirt("z2") + self.wirt("z2b")
        if k == 3:
            return (self.wirt("z2") - self.wirt("z2b")) * self._unit_im()
        raise ValueError(f"coordinate index {k} out of range")

    def laplacian(self) -> "WPoly":
        """4 (d2/dz1 dz1b + d2/dz2 dz2b), the R^4 Laplace operator."""
        return (self.wirt("z1").wirt("z1b") + self.wirt("z2").wirt("z2b")) * 4

    def is_harmonic(self) -> bool:
        return self.laplacian().is_zero

    def is_holomorphic(self) -> bool:
        return all(e[1] == 0 and e[3] == 0 for e in self.terms)

    # -- structure queries ----------------------------------------------

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def bidegree_components(self) -> dict:
        """Split into pieces homogeneous of degree p in (z1, z2) and q in
        the conjugates; keys are (p, q)."""
        out = {}
        for e, c in self.terms.items():
            key = (e[0] + e[2], e[1] + e[3])
            out.setdefault(key, {})[e] = c
        return {k: WPoly(v) for k, v in sorted(out.items())}

    def homogeneous_components(self) -> dict:
        out = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {d: WPoly(v) for d, v in sorted(out.items())}

    # -- evaluation -------------------------------------------------------

    def evaluate(self, z1, z2):
        z1b = z1.conjugate()
        z2b = z2.conjugate()
        total = None
        for e, c in self.terms.items():
            v = c * z1 ** e[0] * z1b ** e[1] * z2 ** e[2] * z2b ** e[3]
            total = v if total is None else total + v
        if total is None:
            return 0j if not self.is_exact() else GaussianRational(0)
        return total

    def eval_grid(self, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
        z1 = np.asarray(z1, dtype=np.complex128)
        z2 = np.asarray(z2, dtype=np.complex128)
        z1b = np.conj(z1)
        z2b = np.conj(z2)
        out = np.zeros_like(z1)
        for e, c in self.terms.items():
            out += complex(c) * z1 ** e[0] * z1b ** e[1] * z2 ** e[2] * z2b ** e[3]
        return out

    def to_float(self) -> "WPoly":
        return WPoly({e: complex(c) for e, c in self.terms.items()})

    # -- serialization -----------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]))

    def to_json_terms(self) -> list:
        out = []
        for e, c in self.sorted_terms():
            re, im = coeff_to_strings(c)
            out.append({"e": list(e), "re": re, "im": im})
        return out

    @classmethod
    def from_json_terms(cls, records) -> "WPoly":
        terms = {}
        for rec in records:
            e = tuple(int(x) for x in rec["e"])
            terms[e] = coeff_from_strings(rec["re"], rec["im"])
        return cls(terms)

    def __repr__(self) -> str:
        if self.is_zero:
            return "WPoly(0)"
        names = ("z1", "z1b", "z2", "z2b")
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"{n}^{p}" if p > 1 else n
                            for n, p in zip(names, e) if p)
            if isinstance(c, GaussianRational):
                cs = f"({c.re}{'+' if c.im >= 0 else ''}{c.im}i)"
            else:
                cs = f"({complex(c)})"
            bits.append(f"{cs}{'*' + mono if mono else ''}")
        return "WPoly(" + " + ".join(bits) + ")"


# Exact coordinate polynomials.
Z1 = WPoly.monomial((1, 0, 0, 0), GaussianRational(1))
Z1B = WPoly.monomial((0, 1, 0, 0), GaussianRational(1))
Z2 = WPoly.monomial((0, 0, 1, 0), GaussianRational(1))
Z2B = WPoly.monomial((0, 0, 0, 1), GaussianRational(1))
X0 = (Z1 + Z1B) * Fraction(1, 2)
X1 = (Z1 - Z1B) * GaussianRational(0, Fraction(-1, 2))
X2 = (Z2 + Z2B) * Fraction(1, 2)
X3 = (Z2 - Z2B) * GaussianRational(0, Fraction(-1, 2))
NORM_SQ = Z1 * Z1B + Z2 * Z2B
ONE = WPoly.constant(GaussianRational(1))


def monomial_divides(m, e) -> bool:
    return all(mi <= ei for mi, ei in zip(m, e))


def normal_form(f: WPoly, g: WPoly) -> WPoly:
    """Remainder of f under division by the single polynomial g with the
    graded lexicographic monomial order; the unique normal form, so the
    remainder is zero exactly when f lies in the principal ideal (g)."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    mg = max(g.terms, key=grlex_key)
    cg = g.terms[mg]
    work = dict(f.terms)
    remainder = {}
    while work:
        m = max(work, key=grlex_key)
        c = work.pop(m)  # leading term of g cancels it exactly
        if monomial_divides(mg, m):
            q = tuple(mi - gi for mi, gi in zip(m, mg))
            factor = c / cg
            for e2, c2 in g.terms.items():
                if e2 == mg:
                    continue
                target = tuple(qi + ei for qi, ei in zip(q, e2))
                s = work.get(target, 0) - factor * c2
                if s:
                    work[target] = s
                else:
                    work.pop(target, None)
        else:
            remainder[m] = c
    return WPoly(remainder)


def reduces_to_zero(f: WPoly, g: WPoly) -> bool:
    return normal_form(f, g).is_zero


@dataclass(frozen=True)
class QFunction:
    """Quaternion-valued polynomial function f = f1 + f2 j."""

    f1: WPoly
    f2: WPoly

    @classmethod
    def zero(cls) -> "QFunction":
        return cls(WPoly.zero(), WPoly.zero())

    @classmethod
    def from_complex(cls, f1: WPoly) -> "QFunction":
        return cls(f1, WPoly.zero())

    @classmethod
    def from_real_components(cls, f0: WPoly, f1: WPoly, f2: WPoly, f3: WPoly) -> "QFunction":
        exact = all(g.is_exact() for g in (f0, f1, f2, f3))
        i = GR_I if exact else 1j
        return cls(f0 + f1 * i, f2 + f3 * i)

    def real_components(self):
        """(f^0, f^1, f^2, f^3) with f = f^0 + i f^1 + j f^2 + k f^3."""
        return (self.f1.real(), self.f1.imag(), self.f2.real(), self.f2.imag())

    @property
    def is_zero(self) -> bool:
        return self.f1.is_zero and self.f2.is_zero

    def is_exact(self) -> bool:
        return self.f1.is_exact() and self.f2.is_exact()

    def degree(self) -> int:
        return max(self.f1.degree(), self.f2.degree())

    def __add__(self, other: "QFunction") -> "QFunction":
        return QFunction(self.f1 + other.f1, self.f2 + other.f2)

    def __sub__(self, other: "QFunction") -> "QFunction":
        return QFunction(self.f1 - other.f1, self.f2 - other.f2)

    def __neg__(self) -> "QFunction":
        return QFunction(-self.f1, -self.f2)

    def __mul__(self, other):
        # Pointwise quaternion product:
        # (f1 + f2 j)(g1 + g2 j) = (f1 g1 - f2 conj(g2)) + (f1 g2 + f2 conj(g1)) j
        if isinstance(other, QFunction):
            return QFunction(
                self.f1 * other.f1 - self.f2 * other.f2.conj(),
                self.f1 * other.f2 + self.f2 * other.f1.conj(),
            )
        if isinstance(other, (int, float, Fraction)):
            return QFunction(self.f1 * other, self.f2 * other)
        return NotImplemented

    def scale(self, s) -> "QFunction":
        return QFunction(self.f1 * s, self.f2 * s)

    def right_mul(self, c1, c2) -> "QFunction":
        """f * c for the constant quaternion c = c1 + c2 j."""
        return QFunction(
            self.f1 * c1 - self.f2 * c2.conjugate(),
            self.f1 * c2 + self.f2 * c1.conjugate(),
        )

    def right_mul_quat(self, c: Quaternion) -> "QFunction":
        pair = c.to_complex_pair()
        return self.right_mul(pair.z1, pair.z2)

    def left_mul(self, c1, c2) -> "QFunction":
        """c * f for the constant quaternion c = c1 + c2 j; by the
        commutation rule this is (c1 f1 - c2 conj(f2)) + (c1 f2 + c2 conj(f1)) j."""
        return QFunction(
            self.f1 * c1 - self.f2.conj() * c2,
            self.f2 * c1 + self.f1.conj() * c2,
        )

    def conj_q(self) -> "QFunction":
        """Quaternionic conjugate: conj(f1 + f2 j) = conj(f1) - f2 j."""
        return QFunction(self.f1.conj(), -self.f2)

    def gamma(self) -> "QFunction":
        return QFunction(self.f1.gamma(), self.f2.gamma())

    def is_harmonic(self) -> bool:
        return self.f1.is_harmonic() and self.f2.is_harmonic()

    def is_holomorphic_pair(self) -> bool:
        return self.f1.is_holomorphic() and self.f2.is_holomorphic()

    def evaluate(self, z1, z2) -> Quaternion:
        return Quaternion.from_complex_pair(
            self.f1.evaluate(z1, z2), self.f2.evaluate(z1, z2))

    def eval_grid(self, z1, z2):
        return self.f1.eval_grid(z1, z2), self.f2.eval_grid(z1, z2)

    def to_float(self) -> "QFunction":
        return QFunction(self.f1.to_float(), self.f2.to_float())

    def to_json(self) -> dict:
        return {"f1": self.f1.to_json_terms(), "f2": self.f2.to_json_terms()}

    @classmethod
    def from_json(cls, obj) -> "QFunction":
        return cls(WPoly.from_json_terms(obj["f1"]), WPoly.from_json_terms(obj["f2"]))


@dataclass(frozen=True)
class QOneForm:
    """One-form with QFunction coefficients on dx0..dx3."""

    c0: QFunction
    c1: QFunction
    c2: QFunction
    c3: QFunction

    @property
    def components(self):
        return (self.c0, self.c1, self.c2, self.c3)

    def __add__(self, other):
        return QOneForm(*(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other):
        return QOneForm(*(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return QOneForm(*(-a for a in self.components))

    def scale(self, s):
        return QOneForm(*(a.scale(s) for a in self.components))

    def left_mul(self, c1, c2):
        return QOneForm(*(a.left_mul(c1, c2) for a in self.components))

    def is_zero(self) -> bool:
        return all(a.is_zero for a in self.components)


# ---------------------------------------------------------------------------
# The two Cauchy-Riemann-Fueter operators in complex components.
#
# Lemma (derived once from a j = j conj(a)):
#   (1/2) D'f = (df1/dz1b - d conj(f2)/dz2)  + (df2/dz1b + d conj(f1)/dz2)  j
#   (1/2) D f = (df1/dz1b - d conj(f2)/dz2b) + (df2/dz1b + d conj(f1)/dz2b) j
# where D  = d/dx0 + i d/dx1 + j d/dx2 + k d/dx3 = 2 (d/dz1b + j d/dz2)
# and   D' = d/dx0 + i d/dx1 + j d/dx2 - k d/dx3 = 2 (d/dz1b + j d/dz2b).
# ---------------------------------------------------------------------------


def psi_d(f: QFunction) -> QFunction:
    """The structural operator D' whose kernel is the psi-regular functions."""
    comp1 = f.f1.wirt("z1b") - f.f2.conj().wirt("z2")
    comp2 = f.f2.wirt("z1b") + f.f1.conj().wirt("z2")
    return QFunction(comp1 * 2, comp2 * 2)


def fueter_d(f: QFunction) -> QFunction:
    """The left Cauchy-Riemann-Fueter operator D."""
    comp1 = f.f1.wirt("z1b") - f.f2.conj().wirt("z2b")
    comp2 = f.f2.wirt("z1b") + f.f1.conj().wirt("z2b")
    return QFunction(comp1 * 2, comp2 * 2)


def is_psi_regular(f: QFunction) -> bool:
    return psi_d(f).is_zero


def is_regular(f: QFunction) -> bool:
    return fueter_d(f).is_zero


def gamma_pullback(f: QFunction) -> QFunction:
    """Composition with the reflection (z1, z2) -> (z1, conj(z2)); an
    involution exchanging regular and psi-regular functions."""
    return f.gamma()


def differential(f: QFunction) -> QOneForm:
    return QOneForm(*(QFunction(f.f1.dx(k), f.f2.dx(k)) for k in range(4)))


_I_PAIR = (GR_I, GaussianRational(0))
_J_PAIR = (GaussianRational(0), GaussianRational(1))
_K_PAIR = (GaussianRational(0), GR_I)


def q_holomorphic_residual(f: QFunction) -> QOneForm:
    """df + i J1(df) + j J2(df) + k J3(df); vanishes exactly on the
    psi-regular functions."""
    df = differential(f)
    return (df
            + j1(df).left_mul(*_I_PAIR)
            + j2(df).left_mul(*_J_PAIR)
            + j3(df).left_mul(*_K_PAIR))


def _covector_d(g: WPoly) -> Covector4:
    return Covector4(g.dx(0), g.dx(1), g.dx(2), g.dx(3))


def jp_lift(f0: WPoly, f1: WPoly, p: ImaginaryUnit) -> QFunction:
    """Build f0 + p f1 as a quaternion function; psi-regular whenever the
    complex pair (f0, f1) is J_p-holomorphic."""
    for g in (f0, f1):
        if g.is_exact() and not g.is_real_valued():
            raise ValueError("lift inputs must be real-valued")
    c1, c2 = p.as_complex_pair()
    return QFunction(f0 + f1 * c1, f1 * c2)


def jp_recover(ft: QFunction, p: ImaginaryUnit):
    """Recover (f0, f1) from f0 + p f1 via Re and Re(-p *)."""
    c1, c2 = p.as_complex_pair()
    f0 = ft.f1.real()
    f1 = ft.left_mul(-c1, -c2).f1.real()
    return f0, f1


def jp_holomorphic_residual(f0: WPoly, f1: WPoly, p: ImaginaryUnit) -> Covector4:
    """d f0 - J_p(d f1); zero exactly when f0 + i f1 is J_p-holomorphic."""
    return _covector_d(f0) - jp(p, _covector_d(f1))


def general_basis_residual(f: QFunction, p: ImaginaryUnit, q: ImaginaryUnit):
    """Residual of the Cauchy-Riemann system in the basis {1, p, q, pq}:
    dbar_p f1 - J_q(del_p conj(f2)), returned as the pair of real-coefficient
    one-forms (A, B) standing for A + p B.  Requires p, q orthonormal."""
    dot = p.dot(q)
    exact = isinstance(dot, (int, Fraction))
    if (dot != 0) if exact else (abs(dot) > 1e-12):
        raise ValueError("p and q must be orthogonal imaginary units")
    r = p.cross(q)
    f0c, f1c, f2c, f3c = f.real_components()

    def blend(u: ImaginaryUnit) -> WPoly:
        return f1c * u.p1 + f2c * u.p2 + f3c * u.p3

    g0, g1, g2, g3 = f0c, blend(p), blend(q), blend(r)
    dg0, dg1, dg2, dg3 = (_covector_d(g) for g in (g0, g1, g2, g3))
    half = Fraction(1, 2) if f.is_exact() else 0.5
    a = (dg0 - jp(p, dg1) - jp(q, dg2) + jp(q, jp(p, dg3))).scale(half)
    b = (dg1 + jp(p, dg0) + jp(q, dg3) + jp(q, jp(p, dg2))).scale(half)
    return a, b


def wpoly_to_json(f: WPoly) -> list:
    return f.to_json_terms()


def wpoly_from_json(records) -> WPoly:
    return WPoly.from_json_terms(records)
