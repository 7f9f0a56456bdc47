"""Bigraded harmonic decomposition and the diagonal Neumann solve on the
unit ball.

On the sphere, the unnormalized dbar-normal operator is the Euler operator
in the conjugate variables, so it multiplies a harmonic polynomial of
bidegree (p, q) by q.  The conjugate-component problem "find harmonic f2
with dbar_n f2 = g on the boundary" therefore reduces to exact linear
algebra: decompose the trace of g into bigraded harmonics h_{p,q} and take
f2 = sum over q >= 1 of h_{p,q} / q.  Solvability needs the (p, 0)
components to vanish (orthogonality to holomorphic functions), which holds
automatically for g = conj(L f1) with f1 harmonic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .scalars import GaussianRational
from .boundary import Domain
from .wirtinger import NORM_SQ, QFunction, WPoly, is_psi_regular, psi_d

SPHERE = Domain.unit_sphere()

DEFAULT_MAX_DEGREE = 10


class NotHarmonicError(ValueError):
    def __init__(self, message: str, defect: WPoly):
        super().__init__(message)
        self.defect = defect


class IncompatibleNeumannData(ValueError):
    def __init__(self, offending):
        self.offending = tuple(sorted(offending))
        super().__init__(
            "boundary datum has holomorphic components at bidegrees "
            f"{list(self.offending)}; the problem is not solvable")


@dataclass(frozen=True)
class BigradedHarmonic:
    """Decomposition of a sphere trace into harmonic bigraded pieces."""

    components: dict

    def __post_init__(self):
        object.__setattr__(self, "components",
                           {k: v for k, v in self.components.items() if not v.is_zero})

    def bidegrees(self):
        return sorted(self.components)

    def component(self, p: int, q: int) -> WPoly:
        return self.components.get((p, q), WPoly.zero())

    def extension(self) -> WPoly:
        """The harmonic polynomial with the same sphere trace."""
        total = WPoly.zero()
        for h in self.components.values():
            total = total + h
        return total

    def map_scalars(self, fn) -> "BigradedHarmonic":
        return BigradedHarmonic({k: fn(k, v) for k, v in self.components.items()})


def _homogeneous_canonical(p: WPoly) -> dict:
    """Canonical decomposition P = sum_j |z|^{2j} H_j of a homogeneous
    polynomial into harmonic homogeneous pieces, keyed by j.

    Uses Laplacian recursion: if Delta P = sum_i |z|^{2i} K_i then
    H at shell j >= 1 equals K at shell j-1 divided by 2j (2d - 2j + 2),
    the eigenvalue of Delta on |z|^{2j} times a degree d-2j harmonic in R^4.
    """
    d = p.degree()
    if p.is_zero or d <= 1 or p.is_harmonic():
        return {0: p}
    lap = p.laplacian()
    sub = _homogeneous_canonical(lap)
    exact = p.is_exact()
    shells = {}
    for i, k_piece in sub.items():
        j = i + 1
        denom = 2 * j * (2 * d - 2 * j + 2)
        inv = Fraction(1, denom) if exact else 1.0 / denom
        shells[j] = k_piece * inv
    top = p
    for j, h in shells.items():
        top = top - (NORM_SQ ** j) * h
    shells[0] = top
    return shells


def harmonic_decompose(p: WPoly, max_degree: int = DEFAULT_MAX_DEGREE) -> BigradedHarmonic:
    """Bigraded harmonic components of the sphere trace of p.

    The components sum to p modulo (|z|^2 - 1), each is harmonic and
    homogeneous of its bidegree, and the decomposition is exact on the
    exact backend.
    """
    if p.degree() > max_degree:
        raise ValueError(
            f"degree {p.degree()} exceeds the decomposition cap {max_degree}")
    by_degree = {}
    for _, slice_poly in p.homogeneous_components().items():
        for j, h in _homogeneous_canonical(slice_poly).items():
            if h.is_zero:
                continue
            deg = h.degree()
            by_degree[deg] = by_degree.get(deg, WPoly.zero()) + h
    components = {}
    for _, h in sorted(by_degree.items()):
        for key, piece in h.bidegree_components().items():
            components[key] = components.get(key, WPoly.zero()) + piece
    return BigradedHarmonic(components)


def harmonic_extension(p: WPoly, max_degree: int = DEFAULT_MAX_DEGREE) -> WPoly:
    return harmonic_decompose(p, max_degree).extension()


def dbar_n_diagonal(bh: BigradedHarmonic) -> BigradedHarmonic:
    """The dbar-normal operator on the sphere acts on bidegree (p, q) as
    multiplication by q."""
    return bh.map_scalars(lambda key, h: h * key[1])


def compatibility_check(g: WPoly, max_degree: int = DEFAULT_MAX_DEGREE):
    """True when the trace of g is orthogonal to holomorphic functions,
    i.e. the decomposition has no (p, 0) components; returns the verdict
    and the offending bidegrees."""
    bh = harmonic_decompose(g, max_degree)
    offending = [key for key in bh.bidegrees() if key[1] == 0]
    return not offending, offending


def neumann_solve(g: WPoly, max_degree: int = DEFAULT_MAX_DEGREE) -> WPoly:
    """The harmonic solution of dbar_n f2 = g on the sphere that is
    L2-orthogonal to holomorphic functions: h_{p,q} -> h_{p,q} / q."""
    bh = harmonic_decompose(g, max_degree)
    offending = [key for key in bh.bidegrees() if key[1] == 0]
    if offending:
        raise IncompatibleNeumannData(offending)
    exact = g.is_exact()
    total = WPoly.zero()
    for (p, q), h in sorted(bh.components.items()):
        inv = Fraction(1, q) if exact else 1.0 / q
        total = total + h * inv
    return total


def operator_R(f1: WPoly, max_degree: int = DEFAULT_MAX_DEGREE) -> QFunction:
    """Conjugate-harmonic construction: the psi-regular f1 + f2 j whose f2
    solves dbar_n f2 = conj(L f1) and is orthogonal to holomorphic
    functions.  Restricted to holomorphic f1 this is f1 + 0 j."""
    if not f1.is_harmonic():
        raise NotHarmonicError("operator R needs harmonic input", f1.laplacian())
    g = SPHERE.normal_form(SPHERE.cr_l_num(f1).conj())
    try:
        f2 = neumann_solve(g, max_degree=max(max_degree, g.degree()))
    except IncompatibleNeumannData as exc:  # mathematically impossible
        raise RuntimeError(
            "harmonic input produced incompatible Neumann data "
            f"{exc.offending}; this falsifies the construction") from exc
    out = QFunction(f1, f2)
    if f1.is_exact() and not is_psi_regular(out):
        raise RuntimeError(
            "constructed conjugate failed the exact regularity check: "
            f"residual {psi_d(out)!r}")
    return out


def operator_C(f: QFunction, domain: Domain = SPHERE) -> WPoly:
    """Boundary restriction of the first complex component, represented by
    the canonical normal form modulo (rho)."""
    return domain.normal_form(f.f1)


def kernel_membership(f: QFunction, domain: Domain = SPHERE) -> dict:
    """Verdict record for membership in ker C among psi-regular functions:
    restriction zero and second component holomorphic."""
    psi = is_psi_regular(f)
    c_zero = operator_C(f, domain).is_zero
    f2_holo = f.f2.is_holomorphic()
    return {
        "psi_regular": psi,
        "restriction_zero": c_zero,
        "f2_holomorphic": f2_holo,
        "in_kernel": psi and c_zero and f2_holo,
    }


@dataclass(frozen=True)
class Cor4Record:
    cr_trace: bool
    r_holomorphic_pair: bool
    right_inverse_ok: bool
    biconditional_ok: bool
    lifted: QFunction


def cor4_instance_check(f1: WPoly, max_degree: int = DEFAULT_MAX_DEGREE) -> Cor4Record:
    """Instance-level check that boundary restriction and the conjugate
    construction pair CR traces exactly with holomorphic lifts."""
    trace = SPHERE.normal_form(f1)
    ext = harmonic_decompose(trace, max_degree).extension()
    lifted = operator_R(ext, max_degree)
    cr = SPHERE.vanishes_on_boundary(SPHERE.cr_l_num(f1))
    holo_pair = lifted.f1.is_holomorphic() and lifted.f2.is_holomorphic()
    right_inverse_ok = SPHERE.normal_form(lifted.f1 - f1).is_zero
    return Cor4Record(cr, holo_pair, right_inverse_ok, cr == holo_pair, lifted)


# ---------------------------------------------------------------------------
# Exact bases of bigraded harmonics
# ---------------------------------------------------------------------------


def bigraded_monomials(p: int, q: int):
    """Exponent quadruples of bidegree (p, q), deterministic order."""
    return [(a, b, p - a, q - b) for a in range(p + 1) for b in range(q + 1)]


def _nullspace_exact(rows, ncols: int):
    """Basis of the rational nullspace of an integer matrix (list of rows),
    via fraction-exact Gauss-Jordan; free variables get canonical 1."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            vec[pc] = -mat[ri][fc]
        basis.append(vec)
    return basis


@lru_cache(maxsize=None)
def bigraded_harmonic_basis(p: int, q: int):
    """Exact basis of the harmonic polynomials homogeneous of bidegree
    (p, q); the space has dimension p + q + 1."""
    if p < 0 or q < 0:
        raise ValueError("bidegrees must be non-negative")
    mons = bigraded_monomials(p, q)
    if p == 0 or q == 0:
        return tuple(WPoly.monomial(e, GaussianRational(1)) for e in mons)
    targets = bigraded_monomials(p - 1, q - 1)
    tindex = {e: i for i, e in enumerate(targets)}
    # Quarter Laplacian on monomials: (a,b,c,d) -> ab (a-1,b-1,c,d) + cd (a,b,c-1,d-1)
    rows = [[0] * len(mons) for _ in targets]
    for col, (a, b, c, d) in enumerate(mons):
        if a and b:
            rows[tindex[(a - 1, b - 1, c, d)]][col] += a * b
        if c and d:
            rows[tindex[(a, b, c - 1, d - 1)]][col] += c * d
    basis = []
    for vec in _nullspace_exact(rows, len(mons)):
        terms = {e: GaussianRational(x) for e, x in zip(mons, vec) if x}
        basis.append(WPoly(terms))
    return tuple(basis)
