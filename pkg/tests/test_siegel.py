"""Genus-2 layer: chain rules, anomalies, covariant raising, brackets."""

from fractions import Fraction

import pytest

from oracles import seeded
from wilc.errors import WeightMismatch, ZeroEccentricity
from wilc.rings import Mat
from wilc.siegel import (
    MVRat,
    SiegelConnection,
    SiegelElement,
    SiegelOperator,
    SymplecticElement,
    anomaly_check,
    chain_rule_check,
    covariant_raise,
    det_bracket,
    dz_transform_check,
    is_modular_for,
    maurer_cartan_A,
    maurer_cartan_one_gamma_residual,
    odet,
    partial_Z,
    quadratic_to_matrix,
    random_symplectic,
    raw_raise,
    siegel_act,
    siegel_Ik,
    slash,
    transport,
    z_entries,
    z_matrix,
)
from wilc.verify import rand_mvrat_poly, rand_siegel_element

T1, T2, T3 = z_entries()
KAPPA = MVRat.kappa()
DETZ = T1 * T3 - T2 * T2
C0 = MVRat.const(0)
C1 = MVRat.const(1)


def test_partial_Z_examples():
    assert partial_Z(T1) == Mat([[C1, C0], [C0, C0]])
    half = MVRat.const(Fraction(1, 2))
    assert partial_Z(T2) == Mat([[C0, half], [half, C0]])
    assert partial_Z(DETZ) == Mat([[T3, -T2], [-T2, T1]])


def test_siegel_action_examples():
    ident = SymplecticElement.identity()
    zp, j = siegel_act(ident)
    assert zp == z_matrix() and j == Mat.identity(C1, 2)
    inv = SymplecticElement.inversion()
    zp, j = siegel_act(inv)
    assert j == z_matrix().scale(-1)
    assert zp == z_matrix().inverse().scale(-1)


def test_symplectic_membership_and_products():
    rng = seeded(70)
    for _ in range(10):
        g = random_symplectic(rng)
        h = random_symplectic(rng)
        SymplecticElement((g * h).rows)  # membership enforced at construction
    with pytest.raises(ValueError):
        SymplecticElement([[1, 0, 0, 0]] * 4)


def test_dz_transform_property():
    rng = seeded(71)
    for _ in range(10):
        assert dz_transform_check(random_symplectic(rng))["ok"]


def test_chain_rule_examples_and_property():
    rng = seeded(72)
    assert chain_rule_check(T1, SymplecticElement.identity())["ok"]
    assert chain_rule_check(DETZ, SymplecticElement.inversion())["ok"]
    for _ in range(8):
        assert chain_rule_check(rand_mvrat_poly(rng, 2), random_symplectic(rng))["ok"]


def test_transport_examples():
    rng = seeded(73)
    phi = rand_siegel_element(rng, 0, 0)
    ident = SymplecticElement.identity()
    assert transport(phi, ident) == phi
    quad = rand_siegel_element(rng, 3, 2)
    assert transport(quad, ident) == quad
    # (k, m) = (0, 0): transport is plain substitution, so the constant is modular
    const = SiegelElement.scalar(0, MVRat.const(7))
    g = random_symplectic(rng)
    assert is_modular_for(const, g)


def test_raw_raise_examples():
    assert raw_raise(SiegelElement.scalar(5, MVRat.const(3))).is_zero()
    got = raw_raise(SiegelElement.scalar(0, T1))
    assert got == SiegelElement(0, 2, {(2, 0): KAPPA})
    rng = seeded(74)
    a = rand_siegel_element(rng, 1, 0)
    b = rand_siegel_element(rng, 0, 2)
    assert raw_raise(a * b) == raw_raise(a) * b + a * raw_raise(b)


def test_anomaly_check_property():
    rng = seeded(75)
    assert anomaly_check(SiegelElement.scalar(0, rand_mvrat_poly(rng, 2)), random_symplectic(rng))["ok"]
    assert anomaly_check(SiegelElement.scalar(2, DETZ), random_symplectic(rng))["ok"]
    for (k, m) in ((0, 0), (1, 0), (2, 0), (4, 0), (0, 2), (1, 2), (2, 2), (4, 2)):
        phi = rand_siegel_element(rng, k, m)
        assert anomaly_check(phi, random_symplectic(rng))["ok"], (k, m)


def test_covariant_raise_and_connection():
    rng = seeded(76)
    conn = SiegelConnection(
        Fraction(2), SiegelElement.quadratic(0, rand_mvrat_poly(rng), rand_mvrat_poly(rng), rand_mvrat_poly(rng))
    )
    flat = rand_siegel_element(rng, 0, 0)
    assert covariant_raise(flat, conn) == raw_raise(flat)
    a = rand_siegel_element(rng, 1, 0)
    b = rand_siegel_element(rng, 2, 2)
    assert covariant_raise(a * b, conn) == covariant_raise(a, conn) * b + a * covariant_raise(b, conn)
    with pytest.raises(ZeroEccentricity):
        SiegelConnection(0, conn.A)
    # D_A intertwines slash against the transported connection
    for _ in range(3):
        g = random_symplectic(rng, 3)
        psi = rand_siegel_element(rng, 2, 0)
        assert slash(covariant_raise(psi, conn), g) == covariant_raise(
            slash(psi, g), conn.gamma_transform(g)
        )


def test_maurer_cartan_A():
    rng = seeded(77)
    phi = SiegelElement.scalar(2, DETZ)
    conn = maurer_cartan_A(phi, e=Fraction(1))
    adj = Mat([[T3, -T2], [-T2, T1]])
    expect = SiegelElement.quadratic(
        0,
        KAPPA * adj.entries[0][0] / DETZ,
        KAPPA * adj.entries[0][1].scale(2) / DETZ,
        KAPPA * adj.entries[1][1] / DETZ,
    )
    assert conn.A == expect
    assert covariant_raise(phi, conn).is_zero()
    const = SiegelElement.scalar(4, MVRat.const(5))
    assert maurer_cartan_A(const, e=Fraction(1)).A.is_zero()
    mval = Mat([[T1 + C1, T2], [C0, DETZ + MVRat.const(2)]])
    mphi = SiegelElement.scalar(3, mval)
    mconn = maurer_cartan_A(mphi, e=Fraction(-1, 2))
    assert covariant_raise(mphi, mconn).is_zero()
    for _ in range(3):
        g = random_symplectic(rng, 3)
        assert maurer_cartan_one_gamma_residual(phi, g).is_zero()
        assert maurer_cartan_one_gamma_residual(mphi, g, e=Fraction(-1, 2)).is_zero()


def test_odet_examples_and_covariance():
    rng = seeded(78)
    assert odet([Mat([[DETZ]])]) == DETZ
    x = Mat([[rand_mvrat_poly(rng), rand_mvrat_poly(rng)], [C0, rand_mvrat_poly(rng)]])
    x = x + x.transpose()
    y = Mat([[rand_mvrat_poly(rng), rand_mvrat_poly(rng)], [C0, rand_mvrat_poly(rng)]])
    y = y + y.transpose()
    assert odet([x, x]) == x.det()
    assert odet([x, y]) == odet([y, x])
    # bilinearity in the first slot
    z2 = Mat([[rand_mvrat_poly(rng), C0], [C0, rand_mvrat_poly(rng)]])
    assert odet([x + z2, y]) == odet([x, y]) + odet([z2, y])
    m = Mat([[MVRat.const(2), T1], [C0, C1]])
    assert odet([m * x * m.transpose(), m * y * m.transpose()]) == (m.det() ** 2) * odet([x, y])


def test_odet_noncommutative_covariance():
    rng = seeded(79)

    def rmat2():
        return Mat([[rand_mvrat_poly(rng), rand_mvrat_poly(rng)], [rand_mvrat_poly(rng), rand_mvrat_poly(rng)]])

    xs = []
    for _ in range(2):
        rows = [[rmat2() for _ in range(2)] for _ in range(2)]
        rows[1][0] = rows[0][1]
        xs.append(Mat(rows))
    m_scalars = Mat([[MVRat.const(2), T1], [C0, C1]])
    ms = Mat([[Mat.scalar(e, 2) for e in row] for row in m_scalars.entries])
    lhs = odet([ms * x * ms.transpose() for x in xs])
    det2 = m_scalars.det() ** 2
    rhs = odet(xs).map(lambda e: det2 * e)
    assert lhs == rhs


def test_det_bracket():
    rng = seeded(80)
    conn = maurer_cartan_A(SiegelElement.scalar(2, DETZ), e=Fraction(1))
    f1 = rand_siegel_element(rng, 1, 0)
    assert det_bracket([f1], conn) == covariant_raise(f1, conn)
    f2 = rand_siegel_element(rng, 2, 0)
    bracket = det_bracket([f1, f2], conn)
    assert bracket.bidegree() == (5, 0)
    # corrections vanish when k_i + 0 = 0
    g0 = rand_siegel_element(rng, 0, 0)
    h0 = rand_siegel_element(rng, 0, 0)
    raw_only = odet([quadratic_to_matrix(raw_raise(g0)), quadratic_to_matrix(raw_raise(h0))])
    assert det_bracket([g0, h0], conn).coeff(0, 0) == raw_only
    for _ in range(2):
        g = random_symplectic(rng, 3)
        slashed = det_bracket([slash(f1, g), slash(f2, g)], conn.gamma_transform(g))
        assert slashed == slash(bracket, g)


def test_siegel_Ik():
    rng = seeded(81)
    conn = SiegelConnection(
        Fraction(3), SiegelElement.quadratic(0, rand_mvrat_poly(rng), rand_mvrat_poly(rng), rand_mvrat_poly(rng))
    )
    a2 = rand_siegel_element(rng, 0, 4)
    op = SiegelOperator(2, [SiegelElement(0, 2, {}), a2], conn)
    assert siegel_Ik(op, 2) == a2
    a1 = rand_siegel_element(rng, 0, 2)
    op2 = SiegelOperator(2, [a1, a2], conn)
    i2 = siegel_Ik(op2, 2)
    assert i2 == a2 - covariant_raise(a1, conn) - a1 * a1
    assert i2.bidegree() == (0, 4)
    with pytest.raises(WeightMismatch):
        SiegelOperator(2, [a2, a2], conn)


def test_siegel_Ik_constant_gauge_covariance():
    rng = seeded(82)
    conn = SiegelConnection(
        Fraction(2), SiegelElement.quadratic(0, rand_mvrat_poly(rng), rand_mvrat_poly(rng), rand_mvrat_poly(rng))
    )

    def rmat_el(m):
        def rmat2():
            return Mat([[rand_mvrat_poly(rng), rand_mvrat_poly(rng)], [rand_mvrat_poly(rng), rand_mvrat_poly(rng)]])

        return SiegelElement(0, m, {(i, m - i): rmat2() for i in range(m + 1)})

    f = Mat([[MVRat.const(1), MVRat.const(2)], [MVRat.const(0), MVRat.const(1)]])
    finv = f.inverse()

    def conj(el):
        return el.map_coeffs(lambda v: finv * (v if isinstance(v, Mat) else Mat.scalar(v, 2)) * f)

    coeffs = [rmat_el(2), rmat_el(4), rmat_el(6)]
    op = SiegelOperator(3, coeffs, conn)
    opc = SiegelOperator(3, [conj(c) for c in coeffs], conn)
    for k in (2, 3):
        assert siegel_Ik(opc, k) == conj(siegel_Ik(op, k))


def test_ode_structural_typing():
    rng = seeded(83)
    conn = SiegelConnection(
        Fraction(1), SiegelElement.quadratic(0, rand_mvrat_poly(rng), rand_mvrat_poly(rng), rand_mvrat_poly(rng))
    )
    f = rand_siegel_element(rng, 4, 0)
    q2 = rand_siegel_element(rng, 0, 4)
    out = covariant_raise(covariant_raise(f, conn), conn) + q2 * f
    assert out.bidegree() == (4, 4)
