"""Seeded generation of harmonic test functions.

Positives come from three constructions that are psi-regular by theory:
holomorphic pairs, lifts of complex-structure-holomorphic pairs along a
rational imaginary unit, and conjugate-harmonic completions from the
Neumann solve.  Negatives add a harmonic non-CR monomial to one component.
Every member is verified against the exact differential operator at
generation time, so corpus labels are ground truth, not intent.

The PRNG is a 64-bit splitmix so that corpora are reproducible across
platforms and Python versions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .neumann import bigraded_harmonic_basis, operator_R
from .quaternions import ImaginaryUnit, Covector4, jp
from .scalars import GaussianRational
from .wirtinger import (
    QFunction,
    WPoly,
    X0,
    X1,
    X2,
    X3,
    is_psi_regular,
    jp_lift,
)

_MASK = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator (splitmix finalizer)."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi]."""
        return lo + self.next_u64() % (hi - lo + 1)

    def choice(self, seq):
        return seq[self.next_u64() % len(seq)]

    def fraction(self) -> Fraction:
        num = self.randint(-4, 4)
        if num == 0:
            num = 1
        return Fraction(num, self.randint(1, 4))

    def gaussian_rational(self) -> GaussianRational:
        return GaussianRational(self.fraction(), self.fraction())


# Rational points on the two-sphere used as imaginary units.
S2_RATIONAL = tuple(
    ImaginaryUnit.exact(*p) for p in [
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (Fraction(3, 5), Fraction(4, 5), 0),
        (0, Fraction(3, 5), Fraction(4, 5)),
        (Fraction(4, 5), 0, Fraction(3, 5)),
        (Fraction(2, 3), Fraction(2, 3), Fraction(1, 3)),
        (Fraction(1, 3), Fraction(2, 3), Fraction(2, 3)),
        (Fraction(2, 7), Fraction(3, 7), Fraction(6, 7)),
        (Fraction(6, 7), Fraction(3, 7), Fraction(2, 7)),
        (Fraction(1, 9), Fraction(4, 9), Fraction(8, 9)),
    ]
)

_COORDS = (X0, X1, X2, X3)


def random_holomorphic(rng: SplitMix64, max_degree: int) -> WPoly:
    out = WPoly.zero()
    for _ in range(rng.randint(1, 3)):
        a = rng.randint(0, max_degree)
        c = rng.randint(0, max_degree - a)
        out = out + WPoly.monomial((a, 0, c, 0), rng.gaussian_rational())
    return out


def random_harmonic(rng: SplitMix64, max_degree: int) -> WPoly:
    """Random rational combination of bigraded harmonic basis elements."""
    out = WPoly.zero()
    for _ in range(rng.randint(1, 3)):
        p = rng.randint(0, max_degree)
        q = rng.randint(0, max_degree - p)
        basis = bigraded_harmonic_basis(p, q)
        out = out + rng.choice(basis) * rng.gaussian_rational()
    return out


def jp_linear_pair(rng: SplitMix64, p: ImaginaryUnit):
    """A linear pair (f0, f1) holomorphic for the structure J_p: pick any
    real linear f1 and integrate the constant one-form J_p(d f1)."""
    coeffs = [rng.fraction() for _ in range(4)]
    f1 = WPoly.zero()
    for c, x in zip(coeffs, _COORDS):
        f1 = f1 + x * c
    image = jp(p, Covector4(*(Fraction(c) for c in coeffs)))
    f0 = WPoly.zero()
    for c, x in zip(image.components, _COORDS):
        f0 = f0 + x * c
    return f0, f1


def random_jp_lift(rng: SplitMix64, max_degree: int) -> QFunction:
    """Products of linear lifts along one imaginary unit; products of
    functions valued in the same complex line stay psi-regular."""
    p = rng.choice(S2_RATIONAL)
    f0, f1 = jp_linear_pair(rng, p)
    w = jp_lift(f0, f1, p)
    out = w
    for _ in range(rng.randint(0, max_degree - 1)):
        if out.degree() >= max_degree:
            break
        if rng.randint(0, 1):
            g0, g1 = jp_linear_pair(rng, p)
            out = out * jp_lift(g0, g1, p)
        else:
            out = out * w
    return out


def harmonic_non_cr_monomial(rng: SplitMix64, max_degree: int) -> WPoly:
    """A mixed monomial conj(z1)^m z2^n, harmonic and never CR."""
    m = rng.randint(1, max(1, max_degree - 1))
    n = rng.randint(0, max_degree - m)
    return WPoly.monomial((0, m, n, 0), rng.gaussian_rational())


@dataclass(frozen=True)
class CorpusMember:
    index: int
    kind: str
    f: QFunction
    psi_regular: bool


def generate_corpus(seed: int, size: int, max_degree: int) -> list[CorpusMember]:
    """Half constructively psi-regular, half perturbed; labels verified
    exactly at generation time."""
    rng = SplitMix64(seed)
    members = []
    kinds = ("holomorphic_pair", "jp_lift", "neumann")
    n_pos = (size + 1) // 2
    for idx in range(size):
        if idx < n_pos:
            kind = kinds[idx % len(kinds)]
            f = _positive(rng, kind, max_degree)
            if not is_psi_regular(f):
                raise AssertionError(f"generator produced a bad positive ({kind})")
            members.append(CorpusMember(idx, kind, f, True))
        else:
            base = _positive(rng, kinds[idx % len(kinds)], max_degree)
            f = _perturb(rng, base, max_degree)
            if is_psi_regular(f):
                raise AssertionError("generator produced a bad negative")
            members.append(CorpusMember(idx, "perturbed", f, False))
    return members


def _positive(rng: SplitMix64, kind: str, max_degree: int) -> QFunction:
    if kind == "holomorphic_pair":
        return QFunction(random_holomorphic(rng, max_degree),
                         random_holomorphic(rng, max_degree))
    if kind == "jp_lift":
        return random_jp_lift(rng, max_degree)
    if kind == "neumann":
        f1 = random_harmonic(rng, max_degree)
        return operator_R(f1, max_degree=max(10, 2 * max_degree))
    raise ValueError(kind)


def _perturb(rng: SplitMix64, base: QFunction, max_degree: int) -> QFunction:
    for _ in range(8):
        bump = harmonic_non_cr_monomial(rng, max_degree)
        cand = QFunction(base.f1 + bump, base.f2) if rng.randint(0, 1) \
            else QFunction(base.f1, base.f2 + bump)
        if not is_psi_regular(cand):
            return cand
    # conj(z1) in the first slot always breaks the first equation
    return QFunction(base.f1 + WPoly.monomial((0, 1, 0, 0), GaussianRational(1)),
                     base.f2)
