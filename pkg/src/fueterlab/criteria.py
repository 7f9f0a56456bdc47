"""Boundary criteria for regularity and holomorphicity, in strong
(differential) and weak (integral) form.

Verdicts on exact-backend polynomials come from ideal membership modulo
(rho); the float sup norm over quadrature nodes is reported alongside as a
smoke test.  The differential criteria require harmonic input, which is a
checked precondition, not an assumption.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .boundary import (
    Domain,
    SurfaceQuadrature,
    quadrature_for,
    residual_components,
)
from .kernels import KernelCache, cauchy_fueter_transform
from .neumann import NotHarmonicError
from .quaternions import ComplexPair
from .wirtinger import QFunction, WPoly, is_psi_regular

ZERO_TOL = 1e-10
WITNESS_TOL = 1e-3
DEFAULT_ORDERS = (16, 16)


@dataclass
class ResidualReport:
    criterion: str
    domain: str
    exact_zero: bool
    sup_norm: float
    nodes: int
    orders: tuple
    witnesses: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = {
            "criterion": self.criterion,
            "domain": self.domain,
            "exact_zero": bool(self.exact_zero),
            "sup_norm": float(self.sup_norm),
            "nodes": int(self.nodes),
            "orders": list(self.orders),
            "witnesses": self.witnesses,
        }
        if self.extra:
            out["extra"] = self.extra
        return out


def _require_harmonic(f: QFunction) -> None:
    if not f.f1.is_harmonic() or not f.f2.is_harmonic():
        defect = f.f1.laplacian() if not f.f1.is_harmonic() else f.f2.laplacian()
        raise NotHarmonicError(
            "criterion applies to harmonic functions only", defect)


def _default_quad(domain: Domain, quad) -> SurfaceQuadrature:
    if quad is not None:
        return quad
    return quadrature_for(domain, *DEFAULT_ORDERS)


def _component_report(criterion: str, parts, domain: Domain,
                      quad: SurfaceQuadrature) -> ResidualReport:
    exact = all(p.is_exact() for p in parts)
    if exact:
        exact_zero = all(domain.normal_form(p).is_zero for p in parts)
    else:
        exact_zero = False
    vals = [quad.eval_poly(p) for p in parts]
    mag = np.sqrt(sum(np.abs(v) ** 2 for v in vals))
    idx = int(np.argmax(mag))
    sup = float(mag[idx])
    if not exact:
        exact_zero = sup < ZERO_TOL
    witnesses = [{
        "node": [float(x) for x in quad.nodes[idx]],
        "value": [float(np.real(v[idx])) for v in vals]
        + [float(np.imag(v[idx])) for v in vals],
    }]
    return ResidualReport(criterion, domain.label, exact_zero, sup,
                          len(quad), quad.orders, witnesses)


def check_eq2(f: QFunction, domain: Domain,
              quad: SurfaceQuadrature | None = None) -> ResidualReport:
    """Residual of (dbar_n - jL) f on the boundary; for harmonic f its
    vanishing is equivalent to psi-regularity."""
    _require_harmonic(f)
    quad = _default_quad(domain, quad)
    parts = residual_components("eq2", f, domain)
    return _component_report("eq2", parts, domain, quad)


def check_cor1(f: QFunction, domain: Domain,
               quad: SurfaceQuadrature | None = None) -> ResidualReport:
    """Residual of (N - jT) f on the boundary; for harmonic f its vanishing
    is equivalent to Fueter regularity."""
    _require_harmonic(f)
    quad = _default_quad(domain, quad)
    parts = residual_components("cor1", f, domain)
    return _component_report("cor1", parts, domain, quad)


def check_cor2(f: QFunction, a, b, domain: Domain,
               quad: SurfaceQuadrature | None = None) -> ResidualReport:
    """Single complex combination a (dbar_n f1 + conj(L f2)) +
    b (dbar_n f2 - conj(L f1)); one scalar boundary condition that already
    forces psi-regularity of a harmonic f on a connected boundary.  The
    report records the independent full check as well."""
    if not a and not b:
        raise ValueError("(a, b) must not both vanish")
    _require_harmonic(f)
    quad = _default_quad(domain, quad)
    r1, r2 = residual_components("eq2", f, domain)
    combo = r1 * a + r2 * b
    report = _component_report("cor2", (combo,), domain, quad)
    report.extra["psi_regular"] = bool(is_psi_regular(f))
    return report


def check_thm4(f: WPoly, h1: WPoly, h2: WPoly, domain: Domain,
               quad: SurfaceQuadrature | None = None) -> ResidualReport:
    """Holomorphicity criterion h1 dbar_n f = conj(h2 L f) on the boundary,
    for a holomorphic pair (h1, h2) without common boundary zeros and with
    h1 f, h2 f harmonic.  The report carries the direct holomorphy verdict
    for comparison."""
    if not h1.is_holomorphic() or not h2.is_holomorphic():
        raise ValueError("h1, h2 must be holomorphic polynomials")
    for g in (h1 * f, h2 * f):
        if g.is_exact() and not g.is_harmonic():
            raise NotHarmonicError("h f must be harmonic", g.laplacian())
    quad = _default_quad(domain, quad)
    hv = np.abs(quad.eval_poly(h1)) + np.abs(quad.eval_poly(h2))
    if float(np.min(hv)) < 1e-8:
        raise ValueError("h has a (numerical) common zero on the boundary")
    residual = h1 * domain.dbar_n_num(f) - (h2 * domain.cr_l_num(f)).conj()
    report = _component_report("thm4", (residual,), domain, quad)
    report.extra["holomorphic"] = bool(
        f.wirt("z1b").is_zero and f.wirt("z2b").is_zero)
    return report


def is_cr(f1: WPoly, domain: Domain) -> bool:
    """Tangential Cauchy-Riemann test: L f1 vanishes on the boundary."""
    return domain.vanishes_on_boundary(domain.cr_l_num(f1))


# ---------------------------------------------------------------------------
# Weak (integral) conditions
# ---------------------------------------------------------------------------


def _normalized_boundary_values(domain: Domain, quad: SurfaceQuadrature,
                                phi: WPoly):
    norm = domain.dbar_norm_values(quad)
    dn = quad.eval_poly(domain.dbar_n_num(phi)) / norm
    lf = quad.eval_poly(domain.cr_l_num(phi)) / norm
    return dn, lf


def weak_defect(kind: str, quad: SurfaceQuadrature, domain: Domain,
                trace, phi: WPoly) -> float:
    """Defect of one weak condition against a single harmonic test
    function.  The two sides are evaluated as surface-measure integrals
    through the boundary identities *dbar(phi) = dbar_n(phi) dsigma and
    dbar(phi) ^ dzeta = 2 L(phi) dsigma."""
    if isinstance(trace, QFunction):
        t1, t2 = quad.eval_qfunction(trace)
    else:
        t1, t2 = (np.asarray(t, dtype=np.complex128) for t in trace)
    dn, lf = _normalized_boundary_values(domain, quad, phi)
    if kind == "eq3_first":
        val = quad.integrate_values(np.conj(t1) * dn) \
            - quad.integrate_values(t2 * lf)
        return abs(complex(val))
    if kind == "eq3_second":
        val = quad.integrate_values(np.conj(t2) * dn) \
            + quad.integrate_values(t1 * lf)
        return abs(complex(val))
    if kind == "eq4":
        # conj(f) (dbar_n - jL)(phi) with conj(f) = conj(f1) - f2 j and
        # (dbar_n - jL)(phi) = dbar_n(phi) - conj(L phi) j.
        a1, a2 = np.conj(t1), -t2
        b1, b2 = dn, -np.conj(lf)
        c1 = a1 * b1 - a2 * np.conj(b2)
        c2 = a1 * b2 + a2 * np.conj(b1)
        v1 = complex(quad.integrate_values(c1))
        v2 = complex(quad.integrate_values(c2))
        return math.hypot(abs(v1), abs(v2))
    raise ValueError(f"unknown weak condition {kind!r}")


def weak_condition(kind: str, quad: SurfaceQuadrature, domain: Domain,
                   trace, phi_basis) -> float:
    """Maximum defect of the weak condition over a basis of harmonic test
    polynomials."""
    return max(weak_defect(kind, quad, domain, trace, phi) for phi in phi_basis)


def exterior_vanishing(quad: SurfaceQuadrature, trace, sample_points,
                       min_node_dist: float = 0.1) -> float:
    """Max of |F^-| over exterior evaluation points; a near-zero value
    certifies numerically that the trace bounds a psi-regular function."""
    cache = KernelCache(quad)
    worst = 0.0
    for pt in sample_points:
        z = pt if isinstance(pt, ComplexPair) else ComplexPair.of_floats(*pt)
        val = cauchy_fueter_transform(quad, trace, z, cache=cache,
                                      min_node_dist=min_node_dist)
        worst = max(worst, abs(val))
    return worst
