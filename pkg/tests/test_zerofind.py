import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symdisc.errors import (
    CertificationFailure,
    ContourTooClose,
    InvalidScaling,
    NonIntegerWinding,
    NoRootInUnitDisc,
    NoSolution,
    RoucheBoundViolated,
    WitnessNotFound,
)
from symdisc.kernel import abc_coeffs, delta_n, delta_with_scale, kernel_gn
from symdisc.zerofind import (
    FnWitness,
    LiftConfig,
    ZeroCertificate,
    base_root_x,
    build_certificate_chain,
    construct_zero_dim3,
    count_zeros_disc,
    fn_nontrivial,
    lift_zero,
    recertify,
    reference_root,
    sample_nonvanishing,
    solve_abc_quadratic,
    TORUS_BASE,
)

component = st.floats(-5, 5).filter(lambda x: x == 0 or abs(x) > 1e-6)
coeff = st.builds(complex, component, component)


# --- quadratic -----------------------------------------------------------------


def test_quadratic_integer_example():
    from symdisc.kernel import QuadraticData

    q = QuadraticData(nu=(0, 0, 0), a=1, b=3, c=1)
    roots = solve_abc_quadratic(q)
    assert sorted(r.real for r in roots) == pytest.approx([1, 2])


def test_quadratic_linear_degeneration():
    from symdisc.kernel import QuadraticData

    q = QuadraticData(nu=(0, 0, 0), a=0, b=1, c=1)
    assert solve_abc_quadratic(q) == [2 + 0j]


def test_quadratic_no_solution():
    from symdisc.kernel import QuadraticData

    with pytest.raises(NoSolution):
        solve_abc_quadratic(QuadraticData(nu=(0, 0, 0), a=0, b=0, c=3))


@settings(max_examples=60, deadline=None)
@given(coeff, coeff, coeff)
def test_quadratic_residuals(a, b, c):
    from symdisc.kernel import QuadraticData

    if a == 0 and b == 0:
        return
    roots = solve_abc_quadratic(QuadraticData(nu=(0, 0, 0), a=a, b=b, c=c))
    budget = (abs(a) + abs(b) + abs(c)) * 1e-12
    for z in roots:
        assert abs(a * z * z - b * z + 2 * c) < budget * max(1.0, abs(z) ** 2)


def test_quadratic_at_base_triple_reproduces_reference_root():
    x0 = base_root_x()
    assert 0 < x0 < 1
    roots = solve_abc_quadratic(abc_coeffs(TORUS_BASE))
    small = min(roots, key=abs)
    assert abs(small - cmath.exp(-1j * math.pi / 4) * x0) < 1e-10


# --- dimension-3 construction ----------------------------------------------------


@pytest.fixture(scope="module")
def dim3_cert():
    return construct_zero_dim3()


def test_dim3_certificate_properties(dim3_cert):
    cert = dim3_cert
    assert cert.n == 3
    assert cert.residual_rel < 1e-10
    assert all(abs(c) < 1 for c in (*cert.lam, *cert.mu))
    assert len(set(cert.lam)) == 3 and len(set(cert.mu)) == 3
    assert cert.kernel_abs < 1e-10
    assert cert.construction == "dim3"
    # mu_1 is placed on the positive real axis
    assert cert.mu[0].imag == 0 and cert.mu[0].real > 0


def test_dim3_witness(dim3_cert):
    wit = dim3_cert.fn_witness
    assert wit.samples <= 64
    _, scale = delta_with_scale(dim3_cert.lam, dim3_cert.mu)
    assert wit.value_abs > 1e3 * dim3_cert.tolerances["residual_rel"] * scale / 10


def test_dim3_certificate_recertifies(dim3_cert):
    again = recertify(dim3_cert)
    assert again["residual_rel"] <= 2 * max(dim3_cert.residual_rel, 1e-300)
    assert again["kernel_abs"] == pytest.approx(dim3_cert.kernel_abs, rel=1e-9, abs=1e-300)


def test_dim3_invalid_scaling():
    with pytest.raises(InvalidScaling):
        construct_zero_dim3(rho=0.99, mu1_modulus=0.98)
    with pytest.raises(InvalidScaling):
        construct_zero_dim3(rho=1.2, mu1_modulus=1.3)


def test_dim3_no_root_when_scaled_too_far_inside():
    with pytest.raises(NoRootInUnitDisc):
        construct_zero_dim3(rho=0.5, mu1_modulus=0.6)


def test_abc_origin_has_no_quadratic_root():
    q = abc_coeffs((0, 0, 0))
    with pytest.raises(NoSolution):
        solve_abc_quadratic(q)


def test_witness_requires_distinct_mu(dim3_cert):
    broken = ZeroCertificate(
        n=3,
        lam=dim3_cert.lam,
        mu=(0.5, 0.5, 0.1),
        residual_rel=0.0,
        kernel_abs=0.0,
        construction="dim3",
        fn_witness=FnWitness(0j, 0.0),
        tolerances={"residual_rel": 1e-10},
    )
    with pytest.raises(WitnessNotFound):
        fn_nontrivial(broken)


# --- winding counts ---------------------------------------------------------------


def test_count_simple_zero():
    count, gap = count_zeros_disc(lambda x: x, 0j, 1.0)
    assert count == 1 and gap < 0.01


def test_count_no_zeros():
    count, _ = count_zeros_disc(lambda x: 1 + 0j, 0j, 1.0)
    assert count == 0


def test_count_two_roots_inside_one_outside():
    count, _ = count_zeros_disc(lambda x: (x - 0.3) * (x + 0.4) * (x - 2.0), 0j, 1.0)
    assert count == 2


def test_count_invariant_under_nonvanishing_factor():
    base = lambda x: (x - 0.2j) * (x + 0.5)
    twisted = lambda x: base(x) * cmath.exp(1.3 * x + 0.7j)
    c1, _ = count_zeros_disc(base, 0j, 0.9)
    c2, _ = count_zeros_disc(twisted, 0j, 0.9)
    assert c1 == c2 == 2


def test_count_rejects_zero_near_contour():
    with pytest.raises(ContourTooClose):
        count_zeros_disc(lambda x: x - (1.0 + 1e-12), 0j, 1.0)


def test_count_rejects_branch_cut():
    with pytest.raises((NonIntegerWinding, ContourTooClose)):
        count_zeros_disc(cmath.sqrt, 0j, 1.0)


def test_count_matches_refined_zeros_of_slice(dim3_cert):
    # the first-slot slice vanishes at lambda_1; a small disc contains
    # exactly that zero
    from symdisc.zerofind import slice_determinant

    f = slice_determinant(dim3_cert.lam, dim3_cert.mu)
    lam1 = dim3_cert.lam[0]
    count, gap = count_zeros_disc(f, lam1, 2e-4)
    assert count == 1 and gap < 0.05


# --- lifts -------------------------------------------------------------------------


@pytest.fixture(scope="module")
def chain6():
    return build_certificate_chain(6)


def test_lift_one_step(dim3_cert):
    lifted = lift_zero(dim3_cert)
    assert lifted.n == 4
    assert lifted.residual_rel < 1e-8
    assert lifted.lam[-1] == lifted.mu[-1]
    assert lifted.lam[-1].real > 0 and lifted.lam[-1].imag == 0
    assert lifted.construction == "lift"
    # the parent rides along unchanged
    assert lifted.parent == dim3_cert
    # the first coordinate moved, so the restriction is not a zero
    assert lifted.lam[0] != dim3_cert.lam[0]
    restricted = abs(delta_n(lifted.lam[:-1], lifted.mu[:-1]))
    _, scale = delta_with_scale(lifted.lam[:-1], lifted.mu[:-1])
    assert restricted > 1e3 * lifted.tolerances["residual_rel"] * scale


def test_chain_to_six(chain6):
    node = chain6
    seen = []
    while node is not None:
        seen.append(node)
        node = node.parent
    assert [c.n for c in seen] == [6, 5, 4, 3]
    for c in seen[:-1]:
        assert c.residual_rel < 1e-8
        assert c.lam[-1] == c.mu[-1]
        assert c.lam[-1].real > 0
    for c in seen:
        assert all(abs(x) < 1 for x in (*c.lam, *c.mu))
        assert len(set(c.lam)) == c.n and len(set(c.mu)) == c.n


def test_chain_appended_coordinates_in_both_tuples(chain6):
    for j in range(3, 6):
        assert chain6.lam[j] == chain6.mu[j]
        assert chain6.lam[j].real > 0 and chain6.lam[j].imag == 0


def test_lift_certificates_recertify(chain6):
    node = chain6
    while node is not None:
        again = recertify(node)
        assert again["residual_rel"] <= 2 * max(node.residual_rel, 1e-300)
        node = node.parent


def test_rouche_bound_violated_on_coarse_step(dim3_cert):
    config = LiftConfig(append_modulus_step=0.5, max_retries=0)
    with pytest.raises(RoucheBoundViolated):
        lift_zero(dim3_cert, config=config)
    # allowing retries turns the same configuration into a success
    lifted = lift_zero(dim3_cert, config=LiftConfig(append_modulus_step=0.5, max_retries=24))
    assert lifted.residual_rel < 1e-8


def test_lift_requires_witness(dim3_cert):
    from dataclasses import replace

    bare = replace(dim3_cert, fn_witness=FnWitness(0j, 0.0))
    with pytest.raises(CertificationFailure):
        lift_zero(bare)


# --- serialization ------------------------------------------------------------------


def test_certificate_round_trip(chain6):
    data = chain6.to_dict()
    again = ZeroCertificate.from_dict(data)
    assert again == chain6
    assert data["version"] == 1
    assert data["parent"]["n"] == 5
    with pytest.raises(ValueError):
        ZeroCertificate.from_dict({**data, "version": 2})


def test_certificate_validation_catches_tampering(dim3_cert):
    from dataclasses import replace

    bad = replace(dim3_cert, residual_rel=1.0)
    with pytest.raises(CertificationFailure):
        bad.validate()
    bad = replace(dim3_cert, lam=(0.5, 0.5, 0.1))
    with pytest.raises(CertificationFailure):
        bad.validate()


# --- sampling experiments -------------------------------------------------------------


def test_sampling_g2(rng):
    report = sample_nonvanishing("g2_full", 2000, seed=3)
    assert report.min_scaled_abs > 0
    assert not report.zero_found
    assert len(report.argmin_lambda) == 2


def test_sampling_g3_shared_third():
    report = sample_nonvanishing("g3_equal_third", 2000, seed=4)
    assert report.min_scaled_abs > 0
    assert report.argmin_lambda[2] == report.argmin_mu[2]


def test_sampling_diagonal_real_positive():
    report = sample_nonvanishing("diagonal", 2000, seed=5, n=3)
    assert report.diag_min_real > 0
    assert report.diag_max_imag_ratio < 1e-9


def test_sampling_deterministic_across_workers():
    a = sample_nonvanishing("g2_full", 5000, seed=9, workers=1)
    b = sample_nonvanishing("g2_full", 5000, seed=9, workers=4)
    assert a == b


def test_sampling_rejects_unknown_mode():
    with pytest.raises(ValueError):
        sample_nonvanishing("bogus", 10)
    with pytest.raises(ValueError):
        sample_nonvanishing("g2_full", 0)


def test_reference_root_value():
    assert abs(reference_root()) == pytest.approx(base_root_x(), rel=1e-15)


def test_moment_identity_at_certificate(dim3_cert):
    from symdisc.zerofind import moment_identity_check

    out = moment_identity_check(dim3_cert.lam, dim3_cert.mu)
    assert out["max_rel_diff"] < 1e-9


def test_moment_identity_random_data(rng):
    from symdisc.zerofind import moment_identity_check

    from .conftest import draw_disc_tuple

    for _ in range(5):
        lam = draw_disc_tuple(rng, 3, radius=0.8)
        mu = draw_disc_tuple(rng, 3, radius=0.8)
        out = moment_identity_check(lam, mu)
        assert out["max_rel_diff"] < 1e-9


def test_closed_form_vanishes_at_certificate(dim3_cert):
    from symdisc.kernel import kernel_g3_mu3zero

    value = kernel_g3_mu3zero(dim3_cert.lam, dim3_cert.mu[:2])
    assert abs(value) < dim3_cert.tolerances["residual_rel"]
