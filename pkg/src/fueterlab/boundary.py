"""Domains with polynomial defining function and their boundary machinery.

A domain is the sublevel set {rho < 0} of a real-valued polynomial.  The
first-order boundary operators are kept in their unnormalized polynomial
form (the |dbar rho| normalizer is positive on the boundary, so residual
zero sets are unaffected); "vanishes on the boundary" for a polynomial is
exact ideal membership modulo (rho).

Quadrature on the unit three-sphere uses torus coordinates
z1 = e^{i xi1} cos(eta), z2 = e^{i xi2} sin(eta) with Gauss-Legendre in eta
and trapezoidal rules in the periodic directions; surface measure element
sin(eta) cos(eta) d(eta) d(xi1) d(xi2).  Ellipsoids are the pushforward
under (z1, z2) -> (r1 z1, r2 z2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .scalars import GaussianRational
from .wirtinger import (
    ONE,
    NORM_SQ,
    QFunction,
    WPoly,
    Z1,
    Z1B,
    Z2,
    Z2B,
    normal_form,
)

PI_SQ = math.pi * math.pi


@dataclass(frozen=True)
class Domain:
    """Bounded domain {rho < 0} with precomputed Wirtinger gradients."""

    rho: WPoly
    label: str
    drho_z1: WPoly
    drho_z1b: WPoly
    drho_z2: WPoly
    drho_z2b: WPoly

    @classmethod
    def from_rho(cls, rho: WPoly, label: str) -> "Domain":
        if rho.is_exact() and not rho.is_real_valued():
            raise ValueError("defining function must be real-valued")
        return cls(rho, label, rho.wirt("z1"), rho.wirt("z1b"),
                   rho.wirt("z2"), rho.wirt("z2b"))

    @classmethod
    def unit_sphere(cls) -> "Domain":
        return cls.from_rho(NORM_SQ - ONE, "sphere")

    @classmethod
    def ellipsoid(cls, r1, r2) -> "Domain":
        r1 = Fraction(r1)
        r2 = Fraction(r2)
        if r1 <= 0 or r2 <= 0:
            raise ValueError("ellipsoid axes must be positive")
        rho = (Z1 * Z1B) * (1 / r1 ** 2) + (Z2 * Z2B) * (1 / r2 ** 2) - ONE
        return cls.from_rho(rho, f"ellipsoid({r1},{r2})")

    # -- ideal reduction ------------------------------------------------

    def normal_form(self, f: WPoly) -> WPoly:
        return normal_form(f, self.rho)

    def vanishes_on_boundary(self, f: WPoly) -> bool:
        return self.normal_form(f).is_zero

    # -- unnormalized boundary operators ---------------------------------

    def dbar_n_num(self, f: WPoly) -> WPoly:
        """|dbar rho| times the normal part of dbar:
        (drho/dz1) df/dz1b + (drho/dz2) df/dz2b."""
        return self.drho_z1 * f.wirt("z1b") + self.drho_z2 * f.wirt("z2b")

    def cr_l_num(self, f: WPoly) -> WPoly:
        """|dbar rho| times the tangential Cauchy-Riemann operator L:
        (drho/dz2b) df/dz1b - (drho/dz1b) df/dz2b."""
        return self.drho_z2b * f.wirt("z1b") - self.drho_z1b * f.wirt("z2b")

    def op_n(self, f: WPoly) -> WPoly:
        """(drho/dz1) df/dz1b + (drho/dz2b) df/dz2."""
        return self.drho_z1 * f.wirt("z1b") + self.drho_z2b * f.wirt("z2")

    def op_t(self, f: WPoly) -> WPoly:
        """(drho/dz2) df/dz1b - (drho/dz1b) df/dz2."""
        return self.drho_z2 * f.wirt("z1b") - self.drho_z1b * f.wirt("z2")

    def dbar_norm_sq(self) -> WPoly:
        """|dbar rho|^2 as a polynomial; real and positive near the boundary."""
        return self.drho_z1b * self.drho_z1 + self.drho_z2b * self.drho_z2

    def dbar_norm_values(self, quad: "SurfaceQuadrature") -> np.ndarray:
        z1, z2 = quad.node_z()
        vals = self.dbar_norm_sq().eval_grid(z1, z2)
        return np.sqrt(np.maximum(vals.real, 0.0))


def residual_components(kind: str, f: QFunction, domain: Domain):
    """The two complex components of the unnormalized boundary residual.

    kind "eq2" pairs the dbar-normal operator with L, kind "cor1" pairs N
    with T; in both cases (A - jB)f has components
    (A f1 + conj(B f2), A f2 - conj(B f1)) by the commutation rule.
    """
    if kind == "eq2":
        op_a, op_b = domain.dbar_n_num, domain.cr_l_num
    elif kind == "cor1":
        op_a, op_b = domain.op_n, domain.op_t
    else:
        raise ValueError(f"unknown residual kind {kind!r}")
    r1 = op_a(f.f1) + op_b(f.f2).conj()
    r2 = op_a(f.f2) - op_b(f.f1).conj()
    return r1, r2


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------


def pairwise_sum(values: np.ndarray):
    """Deterministic adjacent-pair tree reduction along axis 0.

    The tree is fixed by the canonical node index: level one sums indices
    (0,1), (2,3), ...; an odd trailing element passes through unchanged.
    """
    a = np.asarray(values)
    while a.shape[0] > 1:
        m = a.shape[0] // 2
        head = a[0:2 * m:2] + a[1:2 * m:2]
        if a.shape[0] % 2:
            head = np.concatenate([head, a[-1:]], axis=0)
        a = head
    return a[0]


@dataclass
class SurfaceQuadrature:
    """Nodes, surface-measure weights, outward normals and oriented tangent
    frames on a boundary.

    ``weights`` integrate against the surface measure; ``param_weights``
    are the bare parameter-cell weights that pair with 3-form evaluation on
    ``frames``.  ``indices`` carry the canonical node order so that sums
    reduce through the same tree no matter how the rows are stored.
    """

    nodes: np.ndarray
    weights: np.ndarray
    normals: np.ndarray
    frames: np.ndarray
    param_weights: np.ndarray
    orders: tuple
    label: str
    indices: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.indices is None:
            self.indices = np.arange(self.nodes.shape[0], dtype=np.int64)

    def __len__(self) -> int:
        return self.nodes.shape[0]

    def node_z(self):
        x = self.nodes
        return x[:, 0] + 1j * x[:, 1], x[:, 2] + 1j * x[:, 3]

    def _canonical(self, values: np.ndarray) -> np.ndarray:
        if np.array_equal(self.indices, np.arange(len(self))):
            return values
        order = np.argsort(self.indices, kind="stable")
        return np.asarray(values)[order]

    def integrate_values(self, values: np.ndarray, weights: str = "surface"):
        w = {"surface": self.weights, "param": self.param_weights}[weights]
        return pairwise_sum(self._canonical(np.asarray(values) * w))

    def integrate(self, fn):
        z1, z2 = self.node_z()
        return self.integrate_values(fn(z1, z2))

    def eval_poly(self, f: WPoly) -> np.ndarray:
        z1, z2 = self.node_z()
        return f.eval_grid(z1, z2)

    def eval_qfunction(self, f: QFunction):
        z1, z2 = self.node_z()
        return f.f1.eval_grid(z1, z2), f.f2.eval_grid(z1, z2)

    def area(self) -> float:
        return float(pairwise_sum(self._canonical(self.weights)))

    def permuted(self, perm: np.ndarray) -> "SurfaceQuadrature":
        """Same quadrature with rows stored in a different order; integrals
        remain bit-identical because reduction follows canonical indices."""
        perm = np.asarray(perm)
        return SurfaceQuadrature(
            self.nodes[perm], self.weights[perm], self.normals[perm],
            self.frames[perm], self.param_weights[perm], self.orders,
            self.label, self.indices[perm])

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("x0,x1,x2,x3,weight,n0,n1,n2,n3\n")
            for i in range(len(self)):
                row = [*self.nodes[i], self.weights[i], *self.normals[i]]
                fh.write(",".join(repr(float(v)) for v in row) + "\n")


def _hopf_arrays(order_eta: int, order_xi: int):
    if order_eta < 2 or order_xi < 2:
        raise ValueError("quadrature orders must be at least 2")
    x, w = np.polynomial.legendre.leggauss(order_eta)
    eta = (x + 1.0) * (math.pi / 4.0)
    w_eta = w * (math.pi / 4.0)
    xi = 2.0 * math.pi * np.arange(order_xi) / order_xi
    w_xi = 2.0 * math.pi / order_xi

    eta_g, xi1_g, xi2_g = np.meshgrid(eta, xi, xi, indexing="ij")
    w_g = np.repeat(w_eta, order_xi * order_xi) * w_xi * w_xi

    ce, se = np.cos(eta_g).ravel(), np.sin(eta_g).ravel()
    c1, s1 = np.cos(xi1_g).ravel(), np.sin(xi1_g).ravel()
    c2, s2 = np.cos(xi2_g).ravel(), np.sin(xi2_g).ravel()
    return ce, se, c1, s1, c2, s2, w_g


def hopf_quadrature(order_eta: int, order_xi: int) -> SurfaceQuadrature:
    """Product quadrature on the unit three-sphere."""
    ce, se, c1, s1, c2, s2, pw = _hopf_arrays(order_eta, order_xi)
    n = ce.size

    nodes = np.stack([ce * c1, ce * s1, se * c2, se * s2], axis=1)
    normals = nodes.copy()

    t_eta = np.stack([-se * c1, -se * s1, ce * c2, ce * s2], axis=1)
    t_xi1 = np.stack([-ce * s1, ce * c1, np.zeros(n), np.zeros(n)], axis=1)
    t_xi2 = np.stack([np.zeros(n), np.zeros(n), -se * s2, se * c2], axis=1)
    # Ordered (eta, xi2, xi1) so that det[normal, t1, t2, t3] > 0 in the
    # orientation fixed by the volume form (1/4) dz1 dz2 dz1b dz2b, which
    # equals the standard dx0 dx1 dx2 dx3.
    frames = np.stack([t_eta, t_xi2, t_xi1], axis=1)

    weights = pw * se * ce
    return SurfaceQuadrature(nodes, weights, normals, frames, pw,
                             (order_eta, order_xi, order_xi), "sphere")


def ellipsoid_quadrature(r1: float, r2: float, order_eta: int,
                         order_xi: int) -> SurfaceQuadrature:
    """Pushforward of the sphere quadrature under (z1, z2) -> (r1 z1, r2 z2);
    surface weights come from the frame volume against the unit normal."""
    if r1 <= 0 or r2 <= 0:
        raise ValueError("ellipsoid axes must be positive")
    base = hopf_quadrature(order_eta, order_xi)
    scale = np.array([r1, r1, r2, r2])
    nodes = base.nodes * scale
    frames = base.frames * scale

    grad = nodes * np.array([2 / r1 ** 2, 2 / r1 ** 2, 2 / r2 ** 2, 2 / r2 ** 2])
    normals = grad / np.linalg.norm(grad, axis=1, keepdims=True)

    stacked = np.concatenate([normals[:, None, :], frames], axis=1)
    vol = np.linalg.det(stacked)
    if np.any(vol <= 0):
        raise RuntimeError("frame orientation flipped under the pushforward")
    weights = base.param_weights * vol
    label = f"ellipsoid({r1},{r2})"
    return SurfaceQuadrature(nodes, weights, normals, frames,
                             base.param_weights, base.orders, label)


def quadrature_for(domain: Domain, order_eta: int, order_xi: int) -> SurfaceQuadrature:
    if domain.label == "sphere":
        return hopf_quadrature(order_eta, order_xi)
    if domain.label.startswith("ellipsoid"):
        inner = domain.label[len("ellipsoid("):-1]
        r1_s, r2_s = inner.split(",")
        return ellipsoid_quadrature(float(Fraction(r1_s)), float(Fraction(r2_s)),
                                    order_eta, order_xi)
    raise ValueError(f"no quadrature rule for domain {domain.label!r}")


# ---------------------------------------------------------------------------
# Exact moments on the unit sphere
# ---------------------------------------------------------------------------


def sphere_monomial_integral_exact(a: int, b: int, c: int, d: int) -> Fraction:
    """Integral of z1^a z1b^b z2^c z2b^d over the unit sphere, in units of
    pi^2: zero unless a = b and c = d, else 2 a! c! / (a + c + 1)!."""
    if min(a, b, c, d) < 0:
        raise ValueError("exponents must be non-negative")
    if a != b or c != d:
        return Fraction(0)
    return Fraction(2 * math.factorial(a) * math.factorial(c),
                    math.factorial(a + c + 1))


def sphere_monomial_integral(a: int, b: int, c: int, d: int) -> float:
    return float(sphere_monomial_integral_exact(a, b, c, d)) * PI_SQ


def sphere_inner_product_exact(f: WPoly, g: WPoly) -> GaussianRational:
    """L2 inner product integral of f conj(g) over the unit sphere, exact,
    in units of pi^2.  Requires exact-backend polynomials."""
    total = GaussianRational(0)
    for ef, cf in f.terms.items():
        for eg, cg in g.terms.items():
            a = ef[0] + eg[1]
            b = ef[1] + eg[0]
            c = ef[2] + eg[3]
            d = ef[3] + eg[2]
            m = sphere_monomial_integral_exact(a, b, c, d)
            if m:
                total = total + cf * cg.conjugate() * m
    return total
