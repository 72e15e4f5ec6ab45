"""Bergman kernel of the symmetrized polydisc.

In preimage coordinates the kernel is a ratio: the determinant of the
Cauchy-power matrix with entries (1 - lambda_j * conj(mu_k))^(-2) over
pi^n times the paired Vandermonde product.  Both numerator and
denominator vanish at coincident coordinates; the ratio extends
smoothly and is evaluated there by replacing repeated rows/columns with
derivative rows (confluent divided differences).

Dimension 3 with mu_3 = 0 admits a closed quadratic form in
z = conj(mu_2)/conj(mu_1) whose coefficients are symmetric functions of
nu_j = lambda_j * conj(mu_1); those coefficient polynomials live here
as generic expressions so the exact-arithmetic module can reuse them
verbatim on its own field elements.

Determinants are computed by complex LU with partial pivoting in the
platform's extended precision (80-bit on x86), which keeps residuals of
certified zeros meaningful for chained constructions; batch helpers for
sampling work in ordinary complex128.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import factorial
from typing import Sequence

import numpy as np

from .errors import MuOneZero, NotInDomain, RepeatedCoordinate, SingularEntry
from .symcore import (
    PolyPoint,
    SymPoint,
    _coords,
    in_gn,
    roots_from_sym,
    vandermonde_pair,
)

PI = math.pi

# Multiplicity clusters are detected from recovered roots; an m-fold root
# reconstructed from rounded coefficients scatters like eps**(1/m), so the
# threshold must sit well above eps**(1/3).
CLUSTER_TOL = 1e-4

_LONGDOUBLE_COMPLEX = np.result_type(np.longdouble, np.complex64)


@dataclass(frozen=True)
class KernelEval:
    """A kernel value together with the pieces it was assembled from.

    value * denominator == numerator whenever denominator != 0; scale is
    the max row norm of the matrix whose determinant is the numerator and
    is the reference for relative residuals of certified zeros.
    """

    value: complex
    numerator: complex
    denominator: complex
    scale: float


@dataclass(frozen=True)
class QuadraticData:
    """The quadratic a z^2 - b z + 2 c of the dimension-3 closed form,
    tagged with the nu triple it came from."""

    nu: tuple[complex, complex, complex]
    a: complex
    b: complex
    c: complex


def cauchy_power_matrix(lam, mu, dtype=complex) -> np.ndarray:
    """Matrix with entries (1 - lambda_j * conj(mu_k))^(-2)."""
    a = np.asarray(_coords(lam), dtype=dtype)
    b = np.asarray(_coords(mu), dtype=dtype)
    if a.shape != b.shape:
        raise ValueError("tuples must have the same dimension")
    base = 1.0 - np.multiply.outer(a, np.conj(b))
    if np.any(base == 0):
        raise SingularEntry("some 1 - lambda_j*conj(mu_k) vanishes")
    return base**-2


def matrix_scale(m: np.ndarray) -> float:
    """Max row norm (infinity norm), the residual reference scale."""
    return float(np.max(np.sum(np.abs(m), axis=-1)))


def det_pivoted(matrix: np.ndarray) -> complex:
    """Determinant by LU with partial pivoting in extended precision.

    Intended for the small (n <= 16) matrices of this package; the
    extended intermediate precision lowers the cancellation floor by
    roughly three orders of magnitude versus complex128.
    """
    a = np.array(matrix, dtype=_LONGDOUBLE_COMPLEX)
    n = a.shape[0]
    sign = 1.0
    for k in range(n - 1):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if p != k:
            a[[k, p]] = a[[p, k]]
            sign = -sign
        if a[k, k] == 0:
            return 0j
        a[k + 1 :, k] /= a[k, k]
        a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
    d = a[0, 0] * sign
    for k in range(1, n):
        d = d * a[k, k]
    return complex(d)


# --- exact-rational determinant ----------------------------------------------
#
# The matrix entries at float coordinates are exact rationals, so the
# determinant itself can be computed without any rounding: the certified
# residual of a zero then measures only how well the stored float points
# annihilate the determinant, not arithmetic noise.  Complex rationals
# are (Fraction, Fraction) pairs; pivots are chosen by float magnitude
# (the choice does not affect exactness).


def _rc_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _rc_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _rc_inv(a):
    nrm = a[0] * a[0] + a[1] * a[1]
    if not nrm:
        raise ZeroDivisionError
    return (a[0] / nrm, -a[1] / nrm)


def _exact_cauchy_power(lam, mu):
    from fractions import Fraction

    a = [(Fraction(c.real), Fraction(c.imag)) for c in (complex(v) for v in lam)]
    b = [(Fraction(c.real), Fraction(c.imag)) for c in (complex(v) for v in mu)]
    rows = []
    for lr, li in a:
        row = []
        for mr, mi in b:
            # w = 1 - lam * conj(mu)
            w = (1 - (lr * mr + li * mi), -(li * mr - lr * mi))
            w2 = _rc_mul(w, w)
            if not (w2[0] or w2[1]):
                raise SingularEntry("some 1 - lambda_j*conj(mu_k) vanishes")
            row.append(_rc_inv(w2))
        rows.append(row)
    return rows


def delta_exact(lam, mu):
    """Determinant of the Cauchy-power matrix as an exact complex rational
    (a Fraction pair), by pivoted elimination."""
    a = _exact_cauchy_power(lam, mu)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("tuples must have the same dimension")
    sign = 1
    for k in range(n - 1):
        piv, best = k, float(a[k][k][0]) ** 2 + float(a[k][k][1]) ** 2
        for r in range(k + 1, n):
            mag = float(a[r][k][0]) ** 2 + float(a[r][k][1]) ** 2
            if mag > best:
                piv, best = r, mag
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        if not (akk[0] or akk[1]):
            return (akk[0], akk[1])  # exact zero column: determinant is 0
        inv = _rc_inv(akk)
        for r in range(k + 1, n):
            if a[r][k][0] or a[r][k][1]:
                factor = _rc_mul(a[r][k], inv)
                for c in range(k + 1, n):
                    a[r][c] = _rc_sub(a[r][c], _rc_mul(factor, a[k][c]))
    det = a[0][0]
    for k in range(1, n):
        det = _rc_mul(det, a[k][k])
    if sign < 0:
        det = (-det[0], -det[1])
    return det


def delta_n(lam, mu) -> complex:
    """Determinant of the Cauchy-power matrix for the pair (lam, mu).

    Exact rational elimination under the hood: the returned complex is
    the correctly rounded value of the true determinant of the matrix
    formed at the given (float) coordinates.
    """
    det = delta_exact(_coords(lam), _coords(mu))
    return complex(float(det[0]), float(det[1]))


def delta_with_scale(lam, mu) -> tuple[complex, float]:
    m = cauchy_power_matrix(lam, mu)
    return delta_n(lam, mu), matrix_scale(m)


def _has_repeat(coords: Sequence[complex]) -> bool:
    return len(set(coords)) != len(coords)


def kernel_gn(lam, mu) -> KernelEval:
    """Kernel value at a pair of preimage tuples with distinct coordinates.

    value = delta_n / (pi^n * vandermonde_pair).  Swapping the arguments
    conjugates the value; permuting one tuple alone leaves it unchanged.
    """
    a = _coords(lam)
    b = _coords(mu)
    if _has_repeat(a) or _has_repeat(b):
        raise RepeatedCoordinate(
            "coincident coordinates; evaluate via kernel_gn_stable"
        )
    m = cauchy_power_matrix(a, b)
    num = delta_n(a, b)
    den = (PI ** len(a)) * vandermonde_pair(a, b)
    return KernelEval(
        value=num / den, numerator=num, denominator=den, scale=matrix_scale(m)
    )


# --- confluent evaluation ---------------------------------------------------


def cluster_points(points: Sequence[complex], tol: float = CLUSTER_TOL):
    """Group nearly coincident values; returns (nodes, multiplicities).

    Each cluster is represented by its mean, which for a multiple root
    recovered from polynomial coefficients is far more accurate than the
    individual scattered roots.
    """
    remaining = list(points)
    clusters: list[list[complex]] = []
    while remaining:
        seed_pt = remaining.pop(0)
        group = [seed_pt]
        changed = True
        while changed:
            changed = False
            center = sum(group) / len(group)
            for q in list(remaining):
                if abs(q - center) <= tol * max(1.0, abs(center)):
                    group.append(q)
                    remaining.remove(q)
                    changed = True
        clusters.append(group)
    nodes = [sum(g) / len(g) for g in clusters]
    mults = [len(g) for g in clusters]
    order = sorted(range(len(nodes)), key=lambda i: (nodes[i].real, nodes[i].imag))
    return [nodes[i] for i in order], [mults[i] for i in order]


def _confluent_entry(d: int, e: int, u: complex, w: complex) -> complex:
    """d!e!-normalized mixed derivative of (1 - u*w)^(-2) in (u, w)."""
    s = 0j
    for j in range(min(d, e) + 1):
        coef = factorial(d + e - j + 1) / (
            factorial(j) * factorial(d - j) * factorial(e - j)
        )
        s += coef * u ** (e - j) * w ** (d - j) * (1.0 - u * w) ** (-(d + e - j + 2))
    return s


def confluent_kernel(lnodes, lmults, mnodes, mmults) -> KernelEval:
    """Smooth-extension kernel value from explicit cluster data.

    Rows for an m-fold lambda node are the derivative rows of orders
    0..m-1 (factorial-normalized); likewise columns in the conjugated mu
    variable.  The Vandermonde denominator keeps only inter-cluster
    factors, raised to the product of multiplicities, with the matching
    sign from the dropped intra-cluster factors.
    """
    n = sum(lmults)
    if n != sum(mmults):
        raise ValueError("cluster multiplicities must sum to equal dimensions")
    rows = [(u, d) for u, m in zip(lnodes, lmults) for d in range(m)]
    cols = [(complex(v).conjugate(), e) for v, m in zip(mnodes, mmults) for e in range(m)]
    mat = np.array(
        [[_confluent_entry(d, e, u, w) for (w, e) in cols] for (u, d) in rows]
    )
    num = det_pivoted(mat)
    den = complex(PI**n)
    for i in range(len(lnodes)):
        for j in range(i + 1, len(lnodes)):
            den *= (lnodes[i] - lnodes[j]) ** (lmults[i] * lmults[j])
    for i in range(len(mnodes)):
        for j in range(i + 1, len(mnodes)):
            den *= ((mnodes[i] - mnodes[j]).conjugate()) ** (mmults[i] * mmults[j])
    parity = sum(m * (m - 1) // 2 for m in lmults) + sum(
        m * (m - 1) // 2 for m in mmults
    )
    if parity % 2:
        den = -den
    return KernelEval(
        value=num / den, numerator=num, denominator=den, scale=matrix_scale(mat)
    )


def kernel_gn_stable(
    s: SymPoint | Sequence[complex],
    t: SymPoint | Sequence[complex],
    cluster_tol: float = CLUSTER_TOL,
    seed: int = 0,
) -> KernelEval:
    """Kernel on the symmetrized domain, valid at coincident preimages.

    Membership of both arguments is checked first; preimage tuples are
    recovered by root finding, grouped into multiplicity clusters, and
    evaluated through the confluent determinant.  At pairwise-distinct
    preimages this reduces to kernel_gn.
    """
    for name, point in (("first", s), ("second", t)):
        if not in_gn(point, seed=seed):
            raise NotInDomain(f"{name} argument is not in the symmetrized polydisc")
    lam = roots_from_sym(s, seed=seed)
    mu = roots_from_sym(t, seed=seed)
    lnodes, lmults = cluster_points(lam, tol=cluster_tol)
    mnodes, mmults = cluster_points(mu, tol=cluster_tol)
    return confluent_kernel(lnodes, lmults, mnodes, mmults)


# --- dimension-3 closed form -------------------------------------------------


def elem_sym3(nu1, nu2, nu3):
    """The three elementary symmetric values of a triple, generically."""
    return (
        nu1 + nu2 + nu3,
        nu1 * nu2 + nu1 * nu3 + nu2 * nu3,
        nu1 * nu2 * nu3,
    )


def quadratic_sym_coeffs(p1, p2, p3):
    """Coefficients (a, b, c) of the dimension-3 quadratic, expressed in
    the elementary symmetric values of nu.  Works over any commutative
    ring whose elements support + - * with small integers, so the same
    expressions serve float evaluation and exact-field identities."""
    a = p2 * (2 - p1) + p3 * (2 * p1 - 3)
    b = (p1 - 2) * (p2 - 2 * p1 + 3) + 3 * (p3 - p1 + 2)
    c = p2 - 2 * p1 + 3
    return a, b, c


def abc_coeffs(nu: Sequence[complex]) -> QuadraticData:
    """QuadraticData for a numeric nu triple."""
    n1, n2, n3 = (complex(v) for v in nu)
    a, b, c = quadratic_sym_coeffs(*elem_sym3(n1, n2, n3))
    return QuadraticData(nu=(n1, n2, n3), a=a, b=b, c=c)


def kernel_g3_mu3zero(lam: Sequence[complex], mu12: Sequence[complex]) -> complex:
    """Closed form of the dimension-3 kernel at mu = (mu_1, mu_2, 0).

    (a z^2 - b z + 2 c) / (pi^3 * prod_{j<=3,k<=2} (1 - lambda_j conj(mu_k))^2)
    with z = conj(mu_2)/conj(mu_1) and nu_j = lambda_j * conj(mu_1).
    The expression is smooth in lambda, so coincident lambda coordinates
    are harmless here even though the determinant route needs them
    distinct.
    """
    l1, l2, l3 = (complex(v) for v in _coords(lam))
    m1, m2 = (complex(v) for v in _coords(mu12))
    if m1 == 0:
        raise MuOneZero("mu_1 = 0: permute (mu_1, mu_2) or use kernel_gn_stable")
    m1c = m1.conjugate()
    z = m2.conjugate() / m1c
    q = abc_coeffs((l1 * m1c, l2 * m1c, l3 * m1c))
    num = q.a * z * z - q.b * z + 2 * q.c
    den = complex(PI**3)
    for lv in (l1, l2, l3):
        for mv in (m1, m2):
            den *= (1.0 - lv * mv.conjugate()) ** 2
    return num / den


# --- bracket of the two-column reduction -------------------------------------


def bracket_expr(nu1, nu2, nu3, z):
    """The bracketed cubic-in-z expression from reducing the dimension-3
    determinant to two columns.  Generic in its arguments (numbers,
    exact field elements, or polynomial generators)."""
    t1 = (nu1 + nu3 - 2) * (z * nu2 + z * nu3 - 2) * (1 - z * nu1) ** 2 * (1 - nu2) ** 2
    t2 = (nu2 + nu3 - 2) * (z * nu1 + z * nu3 - 2) * (1 - nu1) ** 2 * (1 - z * nu2) ** 2
    return t1 - t2


def bracket_raw_displays(nu1, nu2, nu3):
    """The direct z^3, z^0 and z^1 coefficient extractions of the bracket:
    returns (A, minus_two_C, B_plus_two_C), generically."""
    a_coef = (nu1 + nu3 - 2) * (nu2 + nu3) * nu1**2 * (1 - nu2) ** 2 - (
        nu2 + nu3 - 2
    ) * (nu1 + nu3) * nu2**2 * (1 - nu1) ** 2
    minus_two_c = 2 * (nu2 + nu3 - 2) * (1 - nu1) ** 2 - 2 * (nu1 + nu3 - 2) * (
        1 - nu2
    ) ** 2
    b_plus_two_c = (nu1 + nu3 - 2) * (nu2 + nu3 + 4 * nu1) * (1 - nu2) ** 2 - (
        nu2 + nu3 - 2
    ) * (nu1 + nu3 + 4 * nu2) * (1 - nu1) ** 2
    return a_coef, minus_two_c, b_plus_two_c


def _conv(p, q):
    out = [0j] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        for j, qj in enumerate(q):
            out[i + j] += pi * qj
    return out


def bracket_coeffs_ABC(nu: Sequence[complex]) -> tuple[complex, complex, complex]:
    """(A, B, C) from expanding the bracket as a cubic in z.

    A, B, C are the z^3 coefficient, (z^1 coefficient) - 2C, and
    -(z^0 coefficient)/2; each equals (nu_2 - nu_1) times the matching
    closed-form quadratic coefficient.
    """
    n1, n2, n3 = (complex(v) for v in nu)
    # ascending z-coefficient lists of each factor
    term1 = _conv([-2, n2 + n3], [1, -2 * n1, n1 * n1])
    term1 = [c * (n1 + n3 - 2) * (1 - n2) ** 2 for c in term1]
    term2 = _conv([-2, n1 + n3], [1, -2 * n2, n2 * n2])
    term2 = [c * (n2 + n3 - 2) * (1 - n1) ** 2 for c in term2]
    coeffs = [a - b for a, b in zip(term1, term2)]
    c0, c1, _, c3 = coeffs
    big_a = c3
    big_c = -c0 / 2
    big_b = c1 + c0  # c1 = B + 2C and c0 = -2C
    return big_a, big_b, big_c


# --- batch evaluation (complex128, for sampling and grids) -------------------


def batch_cauchy_power(lams: np.ndarray, mus: np.ndarray) -> np.ndarray:
    """Stacked Cauchy-power matrices for (B, n) coordinate arrays."""
    return (1.0 - lams[:, :, None] * np.conj(mus[:, None, :])) ** -2


def batch_delta_scaled(lams: np.ndarray, mus: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(determinants, max row norms) for stacked pairs, in complex128."""
    mats = batch_cauchy_power(lams, mus)
    dets = np.linalg.det(mats)
    scales = np.abs(mats).sum(axis=2).max(axis=1)
    return dets, scales


def batch_kernel(lams: np.ndarray, mus: np.ndarray) -> np.ndarray:
    """Kernel values for stacked pairs; coordinates must be distinct
    within each tuple for the result to be meaningful."""
    dets, _ = batch_delta_scaled(lams, mus)
    n = lams.shape[1]
    vp = np.ones(lams.shape[0], dtype=complex)
    for j in range(n):
        for k in range(j + 1, n):
            vp *= (lams[:, j] - lams[:, k]) * np.conj(mus[:, j] - mus[:, k])
    return dets / (PI**n * vp)


# --- numeric cross-check suites ----------------------------------------------


def _disc_samples(rng, count, radius=0.9, min_gap=0.02, width=1):
    """count tuples of `width` disc points with pairwise separation."""
    out = np.empty((count, width), dtype=complex)
    filled = 0
    while filled < count:
        draw = radius * np.sqrt(rng.random((count, width))) * np.exp(
            2j * np.pi * rng.random((count, width))
        )
        for row in draw:
            if width > 1:
                gaps = [
                    abs(row[i] - row[j])
                    for i in range(width)
                    for j in range(i + 1, width)
                ]
                if min(gaps) < min_gap:
                    continue
            out[filled] = row
            filled += 1
            if filled == count:
                break
    return out


def closed_form_comparison(samples: int = 1000, seed: int = 0) -> dict:
    """Compare the dimension-3 closed form against the determinant route
    at seeded random in-domain points; returns the worst relative gap."""
    rng = np.random.default_rng(seed)
    lams = _disc_samples(rng, samples, width=3)
    mus = _disc_samples(rng, samples, width=2)
    # keep mu_1 away from 0 so z stays well defined
    small = np.abs(mus[:, 0]) < 0.05
    mus[small, 0] += 0.3
    worst = 0.0
    argworst = None
    for lam, m12 in zip(lams, mus):
        direct = kernel_gn(lam, (m12[0], m12[1], 0.0)).value
        closed = kernel_g3_mu3zero(lam, m12)
        rel = abs(direct - closed) / max(abs(direct), abs(closed))
        if rel > worst:
            worst = rel
            argworst = (lam.tolist(), m12.tolist())
    return {"samples": samples, "max_rel_diff": worst, "argmax": argworst}


def reduction_chain_check(samples: int = 200, seed: int = 1) -> dict:
    """Numeric agreement of every stage of the two-column reduction of
    the dimension-3 determinant, from the raw 3x3 determinant down to the
    factored cubic; returns the worst relative gap across stages."""
    rng = np.random.default_rng(seed)
    lams = _disc_samples(rng, samples, width=3)
    mus = _disc_samples(rng, samples, width=2)
    small = np.abs(mus[:, 0]) < 0.05
    mus[small, 0] += 0.3
    worst = 0.0
    for lam, m12 in zip(lams, mus):
        m1c = m12[0].conjugate()
        z = m12[1].conjugate() / m1c
        nu = [lv * m1c for lv in lam]
        stage_det3 = det_pivoted(
            np.array(
                [[(1 - v) ** -2.0, (1 - z * v) ** -2.0, 1.0] for v in nu],
                dtype=complex,
            )
        )
        stage_det2 = det_pivoted(
            np.array(
                [
                    [
                        (1 - nu[r]) ** -2.0 - (1 - nu[2]) ** -2.0,
                        (1 - z * nu[r]) ** -2.0 - (1 - z * nu[2]) ** -2.0,
                    ]
                    for r in (0, 1)
                ],
                dtype=complex,
            )
        )
        pref = (nu[0] - nu[2]) * (nu[1] - nu[2]) * z
        stage_mid = (
            pref
            / ((1 - nu[2]) ** 2 * (1 - z * nu[2]) ** 2)
            * det_pivoted(
                np.array(
                    [
                        [
                            (nu[r] + nu[2] - 2) / (1 - nu[r]) ** 2,
                            (z * nu[r] + z * nu[2] - 2) / (1 - z * nu[r]) ** 2,
                        ]
                        for r in (0, 1)
                    ],
                    dtype=complex,
                )
            )
        )
        prod_all = complex(1.0)
        for lv in lam:
            for mv in m12:
                prod_all *= (1 - lv * mv.conjugate()) ** 2
        stage_bracket = pref * bracket_expr(nu[0], nu[1], nu[2], z) / prod_all
        big_a, big_b, big_c = bracket_coeffs_ABC(nu)
        stage_factored = (
            pref * (z - 1) * (big_a * z * z - big_b * z + 2 * big_c) / prod_all
        )
        lhs = (PI**3) * vandermonde_pair(lam, (m12[0], m12[1], 0.0)) * kernel_gn(
            lam, (m12[0], m12[1], 0.0)
        ).value
        vals = [lhs, stage_det3, stage_det2, stage_mid, stage_bracket, stage_factored]
        ref = max(abs(v) for v in vals)
        for v in vals[1:]:
            worst = max(worst, abs(v - vals[0]) / ref)
    return {"samples": samples, "max_rel_diff": worst}
