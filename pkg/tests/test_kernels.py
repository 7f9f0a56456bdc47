import math

import numpy as np
import pytest

from fueterlab.boundary import hopf_quadrature
from fueterlab.kernels import (
    DZ1,
    DZ1B,
    DZ2,
    DZ2B,
    BoundaryDistanceError,
    KernelCache,
    SingularKernelError,
    ThreeForm,
    bm_harmonic_repr,
    cauchy_fueter_transform,
    form_GprimeSigma,
    frame_minors,
    kernel_G,
    kernel_Gprime,
    kernel_g,
    omega_display,
    prop1_reconstruction,
    split_U_omega,
    wedge3,
)
from fueterlab.quaternions import ComplexPair, Quaternion
from fueterlab.wirtinger import ONE, QFunction, WPoly, Z1, Z1B, Z2, Z2B

PI_SQ = math.pi ** 2

E1 = (0.0, 1.0, 0.0, 0.0)
E2 = (0.0, 0.0, 1.0, 0.0)
E3 = (0.0, 0.0, 0.0, 1.0)


def random_pairs(rng, n, min_sep=0.5):
    out = []
    while len(out) < n:
        a = rng.normal(size=4)
        b = rng.normal(size=4)
        if np.linalg.norm(a - b) < min_sep:
            continue
        out.append((ComplexPair.of_floats(complex(a[0], a[1]), complex(a[2], a[3])),
                    ComplexPair.of_floats(complex(b[0], b[1]), complex(b[2], b[3]))))
    return out


def star_one_form(coeffs):
    """Hodge star on one-forms for the standard metric and orientation:
    *(dx_k) = (-1)^k dx[k] with the plain deletion basis."""
    return ThreeForm(tuple(((-1) ** k) * coeffs[k] for k in range(4)))


class TestEval3Form:
    def test_unit_minor(self):
        form = ThreeForm((1.0, 0.0, 0.0, 0.0))
        assert form.eval((E1, E2, E3)) == pytest.approx(1.0)

    def test_alternating(self, np_rng):
        form = ThreeForm(tuple(np_rng.normal(size=4)))
        frame = np_rng.normal(size=(3, 4))
        swapped = frame[[1, 0, 2]]
        assert form.eval(frame) == pytest.approx(-form.eval(swapped))

    def test_divergence_theorem_flux(self, quad32):
        # int_{S^3} x0 dx[0] = volume of the unit ball = pi^2 / 2,
        # int_{S^3} x3 dx[3] = -pi^2 / 2 by the deletion-basis signs
        minors = frame_minors(quad32.frames)
        x = quad32.nodes
        flux0 = quad32.integrate_values(x[:, 0] * minors[:, 0], weights="param")
        assert flux0 == pytest.approx(PI_SQ / 2, rel=1e-12)
        flux3 = quad32.integrate_values(x[:, 3] * minors[:, 3], weights="param")
        assert flux3 == pytest.approx(-PI_SQ / 2, rel=1e-12)


class TestWedgeConstants:
    def test_dz1_dz1b_dz2b(self):
        got = wedge3(DZ1, DZ1B, DZ2B)
        assert got == (0, 0, -2, -2j)

    def test_dz2_dz1b_dz2b(self):
        got = wedge3(DZ2, DZ1B, DZ2B)
        assert got == (2, 2j, 0, 0)

    def test_volume_pairing(self):
        # dz1 ^ dz2 ^ dz1b ^ dz2b = 4 dx0123: pair dz1 against the rest
        rest = wedge3(DZ2, DZ1B, DZ2B)
        # (dz1)_k coefficient times dx_k ^ dx[k] sign (-1)^k sums to 4
        total = sum(DZ1[k] * rest[k] * ((-1) ** k) for k in range(4))
        assert total == pytest.approx(4.0)


class TestKernels:
    def test_g_kernel_unit_distance(self):
        gp = kernel_G(Quaternion.of_floats(1, 0, 0, 0), Quaternion.of_floats(0, 0, 0, 0))
        assert abs(gp - Quaternion.of_floats(1 / (2 * PI_SQ), 0, 0, 0)) < 1e-15

    def test_gprime_sign_on_k(self):
        gp = kernel_Gprime(Quaternion.of_floats(0, 0, 0, 1), Quaternion.of_floats(0, 0, 0, 0))
        assert abs(gp - Quaternion.of_floats(0, 0, 0, 1 / (2 * PI_SQ))) < 1e-15

    def test_antisymmetry(self, np_rng):
        for _ in range(20):
            p = Quaternion.of_floats(*np_rng.normal(size=4))
            q = Quaternion.of_floats(*np_rng.normal(size=4))
            if abs(p - q) < 0.3:
                continue
            assert abs(kernel_G(p, q) + kernel_G(q, p)) < 1e-12

    def test_singular_guard(self):
        with pytest.raises(SingularKernelError):
            kernel_G(Quaternion.of_floats(0, 0, 0, 0), Quaternion.of_floats(0, 0, 0, 0))

    def test_fundamental_solution_value(self):
        val = kernel_g(ComplexPair.of_floats(1, 0), ComplexPair.of_floats(0, 0))
        assert val == pytest.approx(1 / (4 * PI_SQ), rel=1e-15)

    def test_g_symmetric(self, np_rng):
        pairs = random_pairs(np_rng, 10)
        for zeta, z in pairs:
            assert kernel_g(zeta, z) == pytest.approx(kernel_g(z, zeta), rel=1e-14)

    def test_g_harmonic_finite_differences(self):
        zeta0 = np.array([0.9, 0.2, -0.4, 0.7])
        z = ComplexPair.of_floats(0.1, 0.05 + 0.02j)
        h = 1e-4
        lap = 0.0
        base = kernel_g(ComplexPair.of_floats(complex(zeta0[0], zeta0[1]),
                                              complex(zeta0[2], zeta0[3])), z)
        for k in range(4):
            up = zeta0.copy()
            dn = zeta0.copy()
            up[k] += h
            dn[k] -= h
            f_up = kernel_g(ComplexPair.of_floats(complex(up[0], up[1]), complex(up[2], up[3])), z)
            f_dn = kernel_g(ComplexPair.of_floats(complex(dn[0], dn[1]), complex(dn[2], dn[3])), z)
            lap += (f_up - 2 * base + f_dn) / h ** 2
        assert abs(lap) < 1e-6


class TestDecomposition:
    def test_j_part_matches_omega_display(self, np_rng):
        worst = 0.0
        for zeta, z in random_pairs(np_rng, 200):
            frame = np_rng.normal(size=(3, 4))
            _, w_form = split_U_omega(zeta, z)
            om = omega_display(zeta, z)
            worst = max(worst, abs(w_form.eval(frame) - om.eval(frame)))
        assert worst < 1e-13

    def test_u_is_minus_two_star_del_g(self, np_rng):
        # del g = -(1 / 4 pi^2 r^4) sum (conj(zeta_k - z_k)) dzeta_k
        for zeta, z in random_pairs(np_rng, 50):
            d1 = complex(zeta.z1) - complex(z.z1)
            d2 = complex(zeta.z2) - complex(z.z2)
            r2 = abs(d1) ** 2 + abs(d2) ** 2
            pref = -1.0 / (4 * PI_SQ * r2 * r2)
            del_g = [pref * (d1.conjugate() * DZ1[k] + d2.conjugate() * DZ2[k])
                     for k in range(4)]
            u_pred = ThreeForm(tuple(-2 * c for c in star_one_form(del_g).c))
            u_form, _ = split_U_omega(zeta, z)
            frame = np_rng.normal(size=(3, 4))
            assert abs(u_form.eval(frame) - u_pred.eval(frame)) < 1e-12

    def test_omega_is_del_of_g_dzetabar(self, np_rng):
        # omega = + del_zeta(g dzeta1b ^ dzeta2b): the sign is fixed by the
        # explicit display, which the j-part test above pins independently
        for zeta, z in random_pairs(np_rng, 50):
            d1 = complex(zeta.z1) - complex(z.z1)
            d2 = complex(zeta.z2) - complex(z.z2)
            r2 = abs(d1) ** 2 + abs(d2) ** 2
            pref = -1.0 / (4 * PI_SQ * r2 * r2)
            dg = [pref * (d1.conjugate() * DZ1[k] + d2.conjugate() * DZ2[k])
                  for k in range(4)]
            pred = ThreeForm(wedge3(dg, DZ1B, DZ2B))
            om = omega_display(zeta, z)
            frame = np_rng.normal(size=(3, 4))
            assert abs(om.eval(frame) - pred.eval(frame)) < 1e-12

    def test_quaternion_form_coefficients_split(self):
        zeta = ComplexPair.of_floats(1.0 + 0.2j, -0.3 + 0.4j)
        z = ComplexPair.of_floats(0.1, 0.2)
        quat_form = form_GprimeSigma(zeta, z)
        u_form, w_form = split_U_omega(zeta, z)
        for k in range(4):
            pair = quat_form.c[k].to_complex_pair()
            assert complex(pair.z1) == u_form.c[k]
            assert complex(pair.z2) == w_form.c[k]


class TestBoundaryFormIdentities:
    def test_hodge_dsigma_identity(self, sphere, quad16):
        # *dbar(phi) restricted to the boundary equals dbar_n(phi) dsigma
        phi = Z1 * Z1B + Z2B * Z2B
        a1 = quad16.eval_poly(phi.wirt("z1b"))
        a2 = quad16.eval_poly(phi.wirt("z2b"))
        dn = quad16.eval_poly(sphere.dbar_n_num(phi))  # |dbar rho| = 1 here
        dsig = quad16.weights / quad16.param_weights
        for i in range(0, len(quad16), 997):
            one_form = [a1[i] * DZ1B[k] + a2[i] * DZ2B[k] for k in range(4)]
            lhs = star_one_form(one_form).eval(quad16.frames[i])
            assert abs(lhs - dn[i] * dsig[i]) < 1e-12

    def test_l_dsigma_identity(self, sphere, quad16):
        # dbar(phi) ^ dzeta restricted to the boundary is proportional to
        # L(phi) dsigma; in the orientation pinned by the +1 constant
        # reproduction the constant is -2 (the surface-integral statements
        # that rest on this identity are unaffected, see test_criteria)
        phi = Z1B * Z2 + Z1 * Z2B
        a1 = quad16.eval_poly(phi.wirt("z1b"))
        a2 = quad16.eval_poly(phi.wirt("z2b"))
        lphi = quad16.eval_poly(sphere.cr_l_num(phi))
        dsig = quad16.weights / quad16.param_weights
        for i in range(0, len(quad16), 997):
            one_form = [a1[i] * DZ1B[k] + a2[i] * DZ2B[k] for k in range(4)]
            form = ThreeForm(wedge3(one_form, DZ1, DZ2))
            lhs = form.eval(quad16.frames[i])
            assert abs(lhs - (-2.0) * lphi[i] * dsig[i]) < 1e-12


class TestCauchyFueter:
    def test_identity_trace_at_origin(self, quad32):
        f = QFunction(Z1, Z2)
        got = cauchy_fueter_transform(quad32, f, ComplexPair.of_floats(0, 0))
        assert abs(got) < 1e-10

    def test_psi_regular_interior(self, quad32):
        f = QFunction(Z1B, Z2B)
        z = ComplexPair.of_floats(0.25, 0.25)
        got = cauchy_fueter_transform(quad32, f, z)
        want = Quaternion.of_floats(0.25, 0, 0.25, 0)
        assert abs(got - want) < 1e-8

    def test_exterior_vanishing(self, quad32):
        f = QFunction(Z1B, Z2B)
        got = cauchy_fueter_transform(quad32, f, ComplexPair.of_floats(2.0, 0.0))
        assert abs(got) < 1e-8

    def test_constant_reproduction_exact_scale(self, quad32):
        got = cauchy_fueter_transform(quad32, QFunction(ONE, WPoly.zero()),
                                      ComplexPair.of_floats(0, 0))
        assert abs(got - Quaternion.of_floats(1, 0, 0, 0)) < 1e-12

    def test_distance_guard(self, quad16):
        with pytest.raises(BoundaryDistanceError):
            cauchy_fueter_transform(quad16, QFunction(ONE, WPoly.zero()),
                                    ComplexPair.of_floats(0.99, 0.05))

    def test_exterior_oracle_z2b_trace(self, quad32):
        # single-layer moments give F^-(2, 0) = -(1/16) j for the z2b trace
        f = QFunction(Z2B, WPoly.zero())
        got = cauchy_fueter_transform(quad32, f, ComplexPair.of_floats(2.0, 0.0))
        want = Quaternion.of_floats(0, 0, -1.0 / 16.0, 0)
        assert abs(got - want) < 1e-9


class TestHarmonicRepresentation:
    def test_mixed_monomial(self, sphere, quad32):
        f = Z1 * Z2B
        z = ComplexPair.of_floats(0.3, 0.1)
        fv = quad32.eval_poly(f)
        dn = quad32.eval_poly(sphere.dbar_n_num(f))
        got = bm_harmonic_repr(quad32, fv, dn, z)
        assert abs(got - complex(f.evaluate(0.3 + 0j, 0.1 + 0j))) < 1e-8

    def test_constant(self, sphere, quad16):
        fv = np.ones(len(quad16), dtype=complex)
        dn = np.zeros(len(quad16), dtype=complex)
        got = bm_harmonic_repr(quad16, fv, dn, ComplexPair.of_floats(0.0, 0.0))
        assert abs(got - 1.0) < 1e-12

    def test_holomorphic_no_normal_part(self, sphere, quad32):
        f = Z1
        assert sphere.dbar_n_num(f).is_zero
        fv = quad32.eval_poly(f)
        dn = np.zeros(len(quad32), dtype=complex)
        got = bm_harmonic_repr(quad32, fv, dn, ComplexPair.of_floats(0.2, 0.3))
        assert abs(got - 0.2) < 1e-9


class TestProp1:
    def _l_values(self, sphere, quad, f: QFunction):
        norm = sphere.dbar_norm_values(quad)
        return (quad.eval_poly(sphere.cr_l_num(f.f1)) / norm,
                quad.eval_poly(sphere.cr_l_num(f.f2)) / norm)

    def test_psi_regular_matches_value_and_transform(self, sphere, quad32):
        f = QFunction(Z1B, Z2B)
        z = ComplexPair.of_floats(0.25, 0.25)
        lv = self._l_values(sphere, quad32, f)
        got = prop1_reconstruction(quad32, f, lv, z)
        assert abs(got - Quaternion.of_floats(0.25, 0, 0.25, 0)) < 1e-8
        cf = cauchy_fueter_transform(quad32, f, z)
        assert abs(got - cf) < 1e-10

    def test_holomorphic_pair_pure_u_integral(self, sphere, quad32):
        f = QFunction(Z1, Z2)
        z = ComplexPair.of_floats(0.2, -0.1)
        lv = (np.zeros(len(quad32), dtype=complex), np.zeros(len(quad32), dtype=complex))
        got = prop1_reconstruction(quad32, f, lv, z)
        want = f.evaluate(0.2 + 0j, -0.1 + 0j).to_floats()
        assert abs(got - want) < 1e-9

    def test_non_psi_regular_fails_with_predicted_value(self, sphere, quad32):
        # for the z2b trace the two layer potentials evaluate in closed form:
        # reconstruction gives z2b/2 - (z1b/2) j instead of f(z)
        f = QFunction(Z2B, WPoly.zero())
        z = ComplexPair.of_floats(0.25, 0.25)
        lv = self._l_values(sphere, quad32, f)
        got = prop1_reconstruction(quad32, f, lv, z)
        predicted = Quaternion.of_floats(0.125, 0, -0.125, 0)
        assert abs(got - predicted) < 1e-8
        truth = f.evaluate(0.25 + 0j, 0.25 + 0j).to_floats()
        assert abs(got - truth) > 0.1


class TestKernelCache:
    def test_transparent(self, quad16):
        f = QFunction(Z1B * Z2, Z2B)
        z = ComplexPair.of_floats(0.3, 0.2)
        without = cauchy_fueter_transform(quad16, f, z)
        cache = KernelCache(quad16)
        with_cache = cauchy_fueter_transform(quad16, f, z, cache=cache)
        again = cauchy_fueter_transform(quad16, f, z, cache=cache)
        assert without.components == with_cache.components
        assert with_cache.components == again.components
