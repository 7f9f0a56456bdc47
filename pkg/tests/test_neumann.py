from fractions import Fraction

import pytest

from fueterlab.boundary import sphere_inner_product_exact
from fueterlab.corpus import SplitMix64, random_harmonic
from fueterlab.neumann import (
    BigradedHarmonic,
    IncompatibleNeumannData,
    NotHarmonicError,
    bigraded_harmonic_basis,
    compatibility_check,
    cor4_instance_check,
    dbar_n_diagonal,
    harmonic_decompose,
    harmonic_extension,
    kernel_membership,
    neumann_solve,
    operator_C,
    operator_R,
)
from fueterlab.scalars import GaussianRational as GR
from fueterlab.wirtinger import (
    ONE,
    NORM_SQ,
    QFunction,
    WPoly,
    Z1,
    Z1B,
    Z2,
    Z2B,
    is_psi_regular,
    psi_d,
)


def rational_sphere_point(rng: SplitMix64):
    """Exact rational point of the unit three-sphere via stereographic
    projection of a rational triple."""
    u = [Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(3)]
    s = 1 + sum(x * x for x in u)
    x0 = (2 - s) / s  # 1 - |u|^2 over 1 + |u|^2
    coords = [x0] + [2 * x / s for x in u]
    assert sum(c * c for c in coords) == 1
    return GR(coords[0], coords[1]), GR(coords[2], coords[3])


class TestHarmonicDecompose:
    def test_z1_z1b_example(self):
        bh = harmonic_decompose(Z1 * Z1B)
        assert bh.bidegrees() == [(0, 0), (1, 1)]
        assert bh.component(0, 0) == ONE * Fraction(1, 2)
        assert bh.component(1, 1) == (Z1 * Z1B - Z2 * Z2B) * Fraction(1, 2)

    def test_harmonic_input_passthrough(self):
        p = Z1B * Z2 + Z1 * Z2B * GR(0, 3)
        bh = harmonic_decompose(p)
        assert bh.extension() == p
        assert bh.bidegrees() == [(1, 1)]

    def test_components_harmonic_and_bigraded(self):
        rng = SplitMix64(3)
        for _ in range(4):
            p = WPoly.zero()
            for _ in range(4):
                p = p + WPoly.monomial(tuple(rng.randint(0, 2) for _ in range(4)),
                                       rng.gaussian_rational())
            bh = harmonic_decompose(p)
            for (dp, dq), h in bh.components.items():
                assert h.is_harmonic()
                assert h.bidegree_components() == {(dp, dq): h}

    def test_sum_matches_on_sphere_at_200_rational_points(self, sphere):
        rng = SplitMix64(11)
        for trial in range(4):
            p = WPoly.zero()
            for _ in range(5):
                e = tuple(rng.randint(0, 2) for _ in range(4))
                p = p + WPoly.monomial(e, rng.gaussian_rational())
            total = harmonic_decompose(p).extension()
            assert sphere.normal_form(total - p).is_zero
            for _ in range(50):
                z1, z2 = rational_sphere_point(rng)
                assert total.evaluate(z1, z2) == p.evaluate(z1, z2)

    def test_degree_cap(self):
        with pytest.raises(ValueError):
            harmonic_decompose(Z1 ** 6 * Z1B ** 6)

    def test_extension_is_harmonic(self):
        ext = harmonic_extension(Z1 * Z1B * Z2 * Z2B)
        assert ext.is_harmonic()


class TestDiagonal:
    def test_z2b(self):
        bh = harmonic_decompose(Z2B)
        out = dbar_n_diagonal(bh)
        assert out.extension() == Z2B

    def test_holomorphic_killed(self):
        bh = harmonic_decompose(Z1 * Z1 * Z2)
        assert dbar_n_diagonal(bh).extension().is_zero

    def test_agreement_with_boundary_operator(self, sphere):
        for p in range(7):
            for q in range(7 - p):
                for h in bigraded_harmonic_basis(p, q):
                    via_diag = dbar_n_diagonal(harmonic_decompose(h)).extension()
                    defect = sphere.dbar_n_num(h) - via_diag
                    assert sphere.normal_form(defect).is_zero


class TestCompatibility:
    def test_from_tangential_derivative(self, sphere):
        f1 = Z1B * Z2
        g = sphere.cr_l_num(f1).conj()
        ok, offending = compatibility_check(g)
        assert ok and not offending
        assert g == Z2B * Z2B

    def test_z1_offends(self):
        ok, offending = compatibility_check(Z1)
        assert not ok
        assert offending == [(1, 0)]

    def test_constant_offends(self):
        ok, offending = compatibility_check(ONE)
        assert not ok
        assert offending == [(0, 0)]


class TestNeumannSolve:
    def test_first_shell(self):
        assert neumann_solve(Z2B) == Z2B

    def test_second_shell(self):
        assert neumann_solve(Z2B * Z2B) == Z2B * Z2B * Fraction(1, 2)

    def test_zero(self):
        assert neumann_solve(WPoly.zero()).is_zero

    def test_incompatible_raises_with_components(self):
        with pytest.raises(IncompatibleNeumannData) as err:
            neumann_solve(Z1 + Z2B)
        assert err.value.offending == ((1, 0),)

    def test_solution_property_mod_rho(self, sphere):
        rng = SplitMix64(21)
        for _ in range(5):
            f1 = random_harmonic(rng, 5)
            g = sphere.normal_form(sphere.cr_l_num(f1).conj())
            f2 = neumann_solve(g, max_degree=12)
            assert f2.is_harmonic()
            assert sphere.normal_form(sphere.dbar_n_num(f2) - g).is_zero

    def test_normalization_orthogonal_to_holomorphic(self, sphere):
        f1 = Z1B * Z1B * Z2
        g = sphere.normal_form(sphere.cr_l_num(f1).conj())
        f2 = neumann_solve(g, max_degree=12)
        for a in range(9):
            for c in range(9 - a):
                hol = WPoly.monomial((a, 0, c, 0), GR(1))
                assert not sphere_inner_product_exact(f2, hol)

    def test_alternative_solutions_differ_by_holomorphic(self, sphere):
        f2 = neumann_solve(Z2B * Z2B)
        alt = f2 + Z1 * Z2 + ONE  # still solves: holomorphic part is killed
        assert sphere.normal_form(sphere.dbar_n_num(alt) - Z2B * Z2B).is_zero
        diff = alt - f2
        assert diff.is_holomorphic()
        bh = harmonic_decompose(alt)
        assert any(q == 0 for (_, q) in bh.bidegrees())  # alt is not normalized


class TestOperatorR:
    def test_z1b(self):
        out = operator_R(Z1B)
        assert out == QFunction(Z1B, Z2B)

    def test_z1b_z2(self):
        out = operator_R(Z1B * Z2)
        assert out.f2 == Z2B * Z2B * Fraction(1, 2)
        assert psi_d(out).is_zero

    def test_holomorphic_identity(self):
        f1 = Z1 * Z1 * Z2
        out = operator_R(f1)
        assert out.f1 == f1
        assert out.f2.is_zero

    def test_rejects_non_harmonic(self):
        with pytest.raises(NotHarmonicError):
            operator_R(Z1 * Z1B)

    def test_random_harmonics_stay_regular(self, sphere):
        rng = SplitMix64(77)
        for _ in range(20):
            f1 = random_harmonic(rng, 6)
            out = operator_R(f1, max_degree=14)
            assert is_psi_regular(out)
            assert sphere.normal_form(out.f1 - f1).is_zero


class TestOperatorC:
    def test_restriction(self, sphere):
        assert operator_C(QFunction(Z1B, Z2B)) == Z1B

    def test_kernel_member(self):
        rec = kernel_membership(QFunction(WPoly.zero(), Z1))
        assert rec["in_kernel"]

    def test_non_regular_excluded(self):
        rec = kernel_membership(QFunction(WPoly.zero(), Z1B))
        assert not rec["psi_regular"]
        assert not rec["in_kernel"]

    def test_restriction_mod_rho(self, sphere):
        f = QFunction(Z1B + sphere.rho * Z2, Z2B)
        assert operator_C(f) == Z1B


class TestCor4:
    def test_holomorphic_cr(self):
        rec = cor4_instance_check(Z1 * Z2)
        assert rec.cr_trace and rec.r_holomorphic_pair
        assert rec.right_inverse_ok and rec.biconditional_ok
        assert rec.lifted.f2.is_zero

    def test_z1b_not_cr(self):
        rec = cor4_instance_check(Z1B)
        assert not rec.cr_trace
        assert not rec.r_holomorphic_pair
        assert rec.biconditional_ok
        assert rec.lifted == QFunction(Z1B, Z2B)

    def test_rho_multiple_reduces(self, sphere):
        rec = cor4_instance_check(Z1B * sphere.rho + Z1)
        assert rec.cr_trace
        assert rec.r_holomorphic_pair
        assert rec.right_inverse_ok

    def test_random_instances(self):
        rng = SplitMix64(5150)
        for _ in range(10):
            f1 = random_harmonic(rng, 5)
            rec = cor4_instance_check(f1, max_degree=12)
            assert rec.biconditional_ok
            assert rec.right_inverse_ok


class TestBigradedBasis:
    def test_dimension_formula_to_degree_8(self):
        for p in range(9):
            for q in range(9 - p):
                assert len(bigraded_harmonic_basis(p, q)) == p + q + 1

    def test_elements_harmonic_homogeneous(self):
        for p, q in ((2, 3), (4, 1), (0, 5)):
            for h in bigraded_harmonic_basis(p, q):
                assert h.is_harmonic()
                assert h.bidegree_components() == {(p, q): h}

    def test_distinct_bidegrees_orthogonal(self):
        pairs = [(1, 1), (2, 0), (0, 2), (2, 1), (1, 2)]
        for i, (p1, q1) in enumerate(pairs):
            for p2, q2 in pairs[i + 1:]:
                for h in bigraded_harmonic_basis(p1, q1):
                    for g in bigraded_harmonic_basis(p2, q2):
                        assert not sphere_inner_product_exact(h, g)

    def test_same_space_orthogonality_not_required_but_nonzero_norms(self):
        for h in bigraded_harmonic_basis(2, 2):
            assert sphere_inner_product_exact(h, h)


class TestBigradedContainer:
    def test_drops_zero_components(self):
        bh = BigradedHarmonic({(1, 0): WPoly.zero(), (0, 1): Z2B})
        assert bh.bidegrees() == [(0, 1)]

    def test_component_lookup_default(self):
        bh = harmonic_decompose(Z2B)
        assert bh.component(3, 3).is_zero
