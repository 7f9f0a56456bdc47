"""Exterior 3-forms, the Cauchy-Fueter and harmonic-representation kernels,
and their quadrature transforms.

Convention: ``dx[k]`` is the wedge of dx0..dx3 with dx_k deleted, taken in
ascending order with no extra sign.  On a boundary with outward normal nu
and positively-oriented tangent frames this restricts to
``dx[k] = (-1)^k nu_k dsigma``, which is what makes the Cauchy-Fueter
integral of the constant 1 over the unit sphere come out +1; the companion
identity is that the j-part of G'(p-q) sigma(p) equals the explicit
(1, 2)-form omega below, checked term by term in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boundary import PI_SQ, SurfaceQuadrature, pairwise_sum
from .quaternions import ComplexPair, Quaternion
from .wirtinger import QFunction, WPoly

DELTA_MIN = 1e-12
DELTA_EVAL = 0.1


class SingularKernelError(ValueError):
    pass


class BoundaryDistanceError(ValueError):
    pass


# -- exterior algebra --------------------------------------------------------

_COLS = tuple(tuple(c for c in range(4) if c != k) for k in range(4))


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def wedge3(u, v, w):
    """Coefficients of u ^ v ^ w on the deleted-product basis dx[0..3];
    u, v, w are one-forms given by their four dx components."""
    out = []
    for cols in _COLS:
        out.append(_det3([[u[c] for c in cols],
                          [v[c] for c in cols],
                          [w[c] for c in cols]]))
    return tuple(out)


# One-form components of the complex coordinate differentials.
DZ1 = (1.0, 1j, 0.0, 0.0)
DZ1B = (1.0, -1j, 0.0, 0.0)
DZ2 = (0.0, 0.0, 1.0, 1j)
DZ2B = (0.0, 0.0, 1.0, -1j)

# Converted once at import: the two products appearing in the omega display.
_W_DZ1 = wedge3(DZ1, DZ1B, DZ2B)   # dz1 ^ dz1b ^ dz2b = -2 dx[2] - 2i dx[3]
_W_DZ2 = wedge3(DZ2, DZ1B, DZ2B)   # dz2 ^ dz1b ^ dz2b = +2 dx[0] + 2i dx[1]


@dataclass(frozen=True)
class ThreeForm:
    """A 3-form at a point: four coefficients on the dx[k] basis.

    Coefficients may be complex numbers or quaternions; evaluation on an
    ordered tangent triple is the alternating sum of 3x3 minors.
    """

    c: tuple

    def eval(self, frame):
        rows = [list(frame[0]), list(frame[1]), list(frame[2])]
        total = None
        for k, cols in enumerate(_COLS):
            minor = _det3([[rows[0][c] for c in cols],
                           [rows[1][c] for c in cols],
                           [rows[2][c] for c in cols]])
            term = self.c[k] * minor
            total = term if total is None else total + term
        return total

    def __add__(self, other):
        return ThreeForm(tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other):
        return ThreeForm(tuple(a - b for a, b in zip(self.c, other.c)))


SIGMA = ThreeForm((Quaternion.of_floats(1, 0, 0, 0),
                   Quaternion.of_floats(0, -1, 0, 0),
                   Quaternion.of_floats(0, 0, 1, 0),
                   Quaternion.of_floats(0, 0, 0, 1)))


# -- kernels -----------------------------------------------------------------


def _diff_quat(p: Quaternion, q: Quaternion, delta_min: float):
    d = p - q
    r2 = float(d.norm_sq())
    if r2 < delta_min * delta_min:
        raise SingularKernelError(f"evaluation within {delta_min} of the pole")
    return d, r2


def kernel_G(p: Quaternion, q: Quaternion, delta_min: float = DELTA_MIN) -> Quaternion:
    """Cauchy-Fueter kernel conj(p - q) / (2 pi^2 |p - q|^4)."""
    d, r2 = _diff_quat(p, q, delta_min)
    return d.conjugate() * (1.0 / (2.0 * PI_SQ * r2 * r2))


def kernel_Gprime(p: Quaternion, q: Quaternion, delta_min: float = DELTA_MIN) -> Quaternion:
    """Cauchy kernel for psi-regular functions: numerator components
    (+, -, -, +) on p - q."""
    d, r2 = _diff_quat(p, q, delta_min)
    s = 1.0 / (2.0 * PI_SQ * r2 * r2)
    return Quaternion(float(d.x0) * s, -float(d.x1) * s,
                      -float(d.x2) * s, float(d.x3) * s)


def kernel_g(zeta: ComplexPair, z: ComplexPair, delta_min: float = DELTA_MIN) -> float:
    """Fundamental solution of the complex Laplacian, 1 / (4 pi^2 |zeta - z|^2)."""
    d1 = complex(zeta.z1) - complex(z.z1)
    d2 = complex(zeta.z2) - complex(z.z2)
    r2 = abs(d1) ** 2 + abs(d2) ** 2
    if r2 < delta_min * delta_min:
        raise SingularKernelError(f"evaluation within {delta_min} of the pole")
    return 1.0 / (4.0 * PI_SQ * r2)


def form_GprimeSigma(zeta: ComplexPair, z: ComplexPair,
                     delta_min: float = DELTA_MIN) -> ThreeForm:
    """The quaternion 3-form G'(zeta - z) sigma(zeta)."""
    gp = kernel_Gprime(zeta.to_quaternion().to_floats(),
                       z.to_quaternion().to_floats(), delta_min)
    return ThreeForm(tuple(gp * s for s in SIGMA.c))


def split_U_omega(zeta: ComplexPair, z: ComplexPair,
                  delta_min: float = DELTA_MIN):
    """Complex components of G' sigma = U + omega j."""
    quat_form = form_GprimeSigma(zeta, z, delta_min)
    u, w = [], []
    for coeff in quat_form.c:
        pair = coeff.to_complex_pair()
        u.append(complex(pair.z1))
        w.append(complex(pair.z2))
    return ThreeForm(tuple(u)), ThreeForm(tuple(w))


def omega_display(zeta: ComplexPair, z: ComplexPair,
                  delta_min: float = DELTA_MIN) -> ThreeForm:
    """Independent transcription of the (1,2)-form
    omega = -(1 / 4 pi^2 |zeta-z|^4) ((zeta1b - z1b) dz1 + (zeta2b - z2b) dz2)
            ^ dz1b ^ dz2b,
    expanded on the dx[k] basis; cross-checks the j-part of G' sigma."""
    d1 = complex(zeta.z1) - complex(z.z1)
    d2 = complex(zeta.z2) - complex(z.z2)
    r2 = abs(d1) ** 2 + abs(d2) ** 2
    if r2 < delta_min * delta_min:
        raise SingularKernelError(f"evaluation within {delta_min} of the pole")
    pref = -1.0 / (4.0 * PI_SQ * r2 * r2)
    c1 = d1.conjugate()
    c2 = d2.conjugate()
    return ThreeForm(tuple(pref * (c1 * a + c2 * b)
                           for a, b in zip(_W_DZ1, _W_DZ2)))


# -- vectorized boundary transforms ------------------------------------------


def frame_minors(frames: np.ndarray) -> np.ndarray:
    """Per-node deleted-column 3x3 determinants of the tangent frames."""
    n = frames.shape[0]
    out = np.empty((n, 4))
    for k, cols in enumerate(_COLS):
        out[:, k] = np.linalg.det(frames[:, :, cols])
    return out


class KernelCache:
    """Caches the node-side geometry of a quadrature (frame minors, the
    sigma values, complex node coordinates).  Transparent: transforms give
    bit-identical results with or without it."""

    def __init__(self, quad: SurfaceQuadrature):
        self.quad = quad
        minors = frame_minors(quad.frames)
        self.minors = minors
        self.sigma1 = minors[:, 0] - 1j * minors[:, 1]
        self.sigma2 = minors[:, 2] + 1j * minors[:, 3]
        self.z1, self.z2 = quad.node_z()

    def geometry(self, z: ComplexPair):
        d1 = self.z1 - complex(z.z1)
        d2 = self.z2 - complex(z.z2)
        r2 = np.abs(d1) ** 2 + np.abs(d2) ** 2
        return d1, d2, r2


def _qmul_arrays(a1, a2, b1, b2):
    return a1 * b1 - a2 * np.conj(b2), a1 * b2 + a2 * np.conj(b1)


def _trace_values(quad: SurfaceQuadrature, trace):
    if isinstance(trace, QFunction):
        return quad.eval_qfunction(trace)
    t1, t2 = trace
    return np.asarray(t1, dtype=np.complex128), np.asarray(t2, dtype=np.complex128)


def _check_distance(cache: KernelCache, z: ComplexPair, min_node_dist: float):
    d1, d2, r2 = cache.geometry(z)
    dist = math.sqrt(float(np.min(r2)))
    if dist < min_node_dist:
        raise BoundaryDistanceError(
            f"evaluation point at distance {dist:.3g} from the nearest node; "
            f"need at least {min_node_dist}")
    return d1, d2, r2


def _gprime_sigma_values(cache: KernelCache, d1, d2, r2):
    scale = 1.0 / (2.0 * PI_SQ * r2 * r2)
    g1 = np.conj(d1) * scale
    g2 = -np.conj(d2) * scale
    return _qmul_arrays(g1, g2, cache.sigma1, cache.sigma2)


def cauchy_fueter_transform(quad: SurfaceQuadrature, trace, z: ComplexPair,
                            cache: KernelCache | None = None,
                            min_node_dist: float = DELTA_EVAL) -> Quaternion:
    """Quadrature evaluation of the boundary integral of
    G'(zeta - z) sigma(zeta) f(zeta); reproduces psi-regular traces inside
    the domain and vanishes outside."""
    cache = cache or KernelCache(quad)
    t1, t2 = _trace_values(quad, trace)
    d1, d2, r2 = _check_distance(cache, z, min_node_dist)
    k1, k2 = _gprime_sigma_values(cache, d1, d2, r2)
    v1, v2 = _qmul_arrays(k1, k2, t1, t2)
    f1 = quad.integrate_values(v1, weights="param")
    f2 = quad.integrate_values(v2, weights="param")
    return Quaternion.from_complex_pair(f1, f2)


def bm_harmonic_repr(quad: SurfaceQuadrature, f_values, dbar_n_values,
                     z: ComplexPair, cache: KernelCache | None = None,
                     min_node_dist: float = DELTA_EVAL) -> complex:
    """Harmonic representation f(z) = int U f + 2 int g dbar_n(f) dsigma for
    complex-valued harmonic f with known boundary normal derivative."""
    cache = cache or KernelCache(quad)
    d1, d2, r2 = _check_distance(cache, z, min_node_dist)
    k1, _ = _gprime_sigma_values(cache, d1, d2, r2)
    fv = np.asarray(f_values, dtype=np.complex128)
    dn = np.asarray(dbar_n_values, dtype=np.complex128)
    gvals = 1.0 / (4.0 * PI_SQ * r2)
    part1 = quad.integrate_values(k1 * fv, weights="param")
    part2 = quad.integrate_values(gvals * dn)
    return complex(part1 + 2.0 * part2)


def prop1_reconstruction(quad: SurfaceQuadrature, trace, l_trace,
                         z: ComplexPair, cache: KernelCache | None = None,
                         min_node_dist: float = DELTA_EVAL) -> Quaternion:
    """Two-term reconstruction int U f + 2 int g j L(f) dsigma, with the
    tangential derivative L(f) = L(f1) + L(f2) j supplied on the nodes."""
    cache = cache or KernelCache(quad)
    t1, t2 = _trace_values(quad, trace)
    l1, l2 = _trace_values(quad, l_trace)
    d1, d2, r2 = _check_distance(cache, z, min_node_dist)
    k1, _ = _gprime_sigma_values(cache, d1, d2, r2)
    gvals = 1.0 / (4.0 * PI_SQ * r2)
    # j L(f) = -conj(L f2) + conj(L f1) j
    jl1 = -np.conj(l2)
    jl2 = np.conj(l1)
    out1 = quad.integrate_values(k1 * t1, weights="param") \
        + 2.0 * quad.integrate_values(gvals * jl1)
    out2 = quad.integrate_values(k1 * t2, weights="param") \
        + 2.0 * quad.integrate_values(gvals * jl2)
    return Quaternion.from_complex_pair(out1, out2)
