"""Quaternionic regularity on domains in C^2: exact differential criteria,
Cauchy-Fueter and harmonic-representation boundary integrals, and the
conjugate-harmonic construction on the unit ball."""

from .scalars import GaussianRational
from .quaternions import (
    ComplexPair,
    Covector4,
    ImaginaryUnit,
    Quaternion,
    UNIT_I,
    UNIT_J,
    UNIT_K,
    j1,
    j2,
    j3,
    jp,
)
from .wirtinger import (
    ONE,
    NORM_SQ,
    QFunction,
    QOneForm,
    WPoly,
    X0,
    X1,
    X2,
    X3,
    Z1,
    Z1B,
    Z2,
    Z2B,
    differential,
    fueter_d,
    gamma_pullback,
    general_basis_residual,
    is_psi_regular,
    is_regular,
    jp_holomorphic_residual,
    jp_lift,
    jp_recover,
    normal_form,
    psi_d,
    q_holomorphic_residual,
)
from .boundary import (
    Domain,
    SurfaceQuadrature,
    ellipsoid_quadrature,
    hopf_quadrature,
    residual_components,
    sphere_monomial_integral,
    sphere_monomial_integral_exact,
    sphere_inner_product_exact,
)
from .kernels import (
    KernelCache,
    ThreeForm,
    bm_harmonic_repr,
    cauchy_fueter_transform,
    form_GprimeSigma,
    kernel_G,
    kernel_Gprime,
    kernel_g,
    omega_display,
    prop1_reconstruction,
    split_U_omega,
    wedge3,
)
from .criteria import (
    ResidualReport,
    check_cor1,
    check_cor2,
    check_eq2,
    check_thm4,
    exterior_vanishing,
    is_cr,
    weak_condition,
    weak_defect,
)
from .neumann import (
    BigradedHarmonic,
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
from .corpus import CorpusMember, SplitMix64, generate_corpus

__version__ = "0.1.0"
