"""Ore algebra: normal form, gauge conjugation, Bell polynomials."""

from math import comb

import pytest

from oracles import rand_matrf, rand_rf, seeded
from wilc.errors import RingMismatch
from wilc.ore import (
    GaugeParam,
    OreOperator,
    bell_P,
    bell_Q,
    delta,
    gauge_conjugate,
    normal_order_power,
    ore_apply,
    ore_mul,
)
from wilc.rings import Mat, RatFunc

Z = RatFunc.var()
ONE = Z.one()
ZERO = Z.zero()
D = OreOperator.D(Z)


def test_ore_relation_examples():
    assert ore_mul(D, OreOperator.const(Z)) == OreOperator([ONE, Z], Z)
    assert ore_mul(D, D) == OreOperator([ZERO, ZERO, ONE], Z)
    du = OreOperator.D(Z, Z)
    assert ore_mul(du, du) == OreOperator([Z * Z + ONE, Z.scale(2), ONE], Z)


def test_ore_apply_examples():
    d2 = OreOperator([ZERO, ZERO, ONE], Z)
    assert ore_apply(d2, Z**3) == Z.scale(6)
    zd = OreOperator([ZERO, Z], Z)
    assert ore_apply(zd, Z) == Z
    wronskian_op = OreOperator([(Z**2).inverse().scale(2), -Z.inverse().scale(2), ONE], Z)
    assert ore_apply(wronskian_op, Z).is_zero()


def test_gauge_conjugate_examples():
    g = GaugeParam(Z)
    assert gauge_conjugate(D, g) == OreOperator.D(Z, Z.inverse())
    a = OreOperator.const(rand_rf(seeded(5)))
    assert gauge_conjugate(a, g) == a  # commutative ring: conjugation is trivial
    d2 = ore_mul(D, D)
    assert gauge_conjugate(d2, g) == OreOperator([ZERO, Z.inverse().scale(2), ONE], Z)


def test_bell_P_printed_values():
    u = rand_matrf(seeded(6))
    up, upp = u.derive(), u.derive().derive()
    assert bell_P(0, u) == u.one()
    assert bell_P(1, u) == u
    assert bell_P(2, u) == up + u * u
    assert bell_P(3, u) == upp + up * u + (u * up).scale(2) + u * u * u


def test_bell_Q_printed_values():
    rng = seeded(7)
    a1 = rand_matrf(rng)
    a1p, a1pp = a1.derive(), a1.derive().derive()
    assert bell_Q(0, -a1, a1) == a1.one()
    assert bell_Q(2, -a1, a1) == -a1p + a1 * a1
    expect = -a1pp + (a1p * a1).scale(2) + a1 * a1p - a1 * a1 * a1
    assert bell_Q(3, -a1, a1) == expect


def test_bell_Q_reduces_to_P_for_central_a1():
    rng = seeded(8)
    u = rand_matrf(rng)
    a1 = Mat.scalar(rand_rf(rng), 2)
    for m in range(6):
        assert bell_Q(m, u, a1) == bell_P(m, u)


def test_delta_examples():
    rng = seeded(9)
    b = rand_rf(rng)
    assert delta(b, rand_rf(rng)) == b.derive()  # commutative ring
    a1 = rand_matrf(rng)
    assert delta(a1, a1) == a1.derive()
    worked = Mat([[ZERO, Z], [ONE, ZERO]])
    got = delta(worked.derive(), worked)
    assert got == Mat([[-ONE, ZERO], [ZERO, ONE]])


def test_normal_order_power_examples_and_property():
    rng = seeded(10)
    assert normal_order_power(rand_matrf(rng), 0) == OreOperator.const(Mat.identity(Z, 2))
    assert normal_order_power(Z, 2) == OreOperator([Z * Z + ONE, Z.scale(2), ONE], Z)
    u = rand_matrf(rng)
    coeffs = normal_order_power(u, 3).coeffs
    assert coeffs[3] == u.one() and coeffs[2] == bell_P(1, u).scale(3)
    assert coeffs[1] == bell_P(2, u).scale(3) and coeffs[0] == bell_P(3, u)
    for m in range(7):
        du = OreOperator.D(u, u)
        prod = OreOperator.const(u.one())
        for _ in range(m):
            prod = ore_mul(prod, du)
        assert normal_order_power(u, m) == prod


def test_p_as_conjugation():
    rng = seeded(11)
    for f in (Z, Z**2, Mat([[ONE, Z], [ZERO, ONE]]), rand_matrf(rng) + Mat.scalar(RatFunc.const(5), 2)):
        if isinstance(f, Mat) and f.det().is_zero():
            continue
        g = GaugeParam(f)
        df = f
        for m in range(7):
            assert bell_P(m, g.u) == g.finv * df
            df = df.derive()


def test_ore_associativity_property():
    rng = seeded(12)
    sample = Mat.identity(Z, 2)
    for _ in range(10):
        ops = [
            OreOperator([rand_matrf(rng) for _ in range(rng.randint(1, 5))], sample)
            for _ in range(3)
        ]
        assert ore_mul(ore_mul(ops[0], ops[1]), ops[2]) == ore_mul(ops[0], ore_mul(ops[1], ops[2]))


def test_normal_order_nabla_property():
    rng = seeded(13)
    for m in range(1, 6):
        u, a1 = rand_matrf(rng), rand_matrf(rng)
        nab = OreOperator.D(u, a1)
        shifted = OreOperator.D(u, a1 + u)
        prod = OreOperator.const(u.one())
        pows = [OreOperator.const(u.one())]
        for _ in range(m):
            prod = ore_mul(prod, shifted)
            pows.append(ore_mul(pows[-1], nab))
        rem = prod
        for j in range(m, -1, -1):
            c = rem.coeff(j)
            assert c == bell_Q(m - j, u, a1).scale(comb(m, j))
            if not c.is_zero():
                rem = rem - pows[j].left_mul_elem(c)
        assert rem.is_zero()


def test_module_action_property():
    rng = seeded(14)
    for _ in range(10):
        l1 = OreOperator([rand_rf(rng, 1) for _ in range(3)], Z)
        l2 = OreOperator([rand_rf(rng, 1) for _ in range(3)], Z)
        y = rand_rf(rng, 2)
        assert ore_apply(ore_mul(l1, l2), y) == ore_apply(l1, ore_apply(l2, y))


def test_delta_covariance_property():
    rng = seeded(15)
    for _ in range(10):
        f = Mat([[ONE, rand_rf(rng)], [ZERO, ONE]]) * Mat([[ONE, ZERO], [rand_rf(rng), ONE]])
        g = GaugeParam(f)
        a1, b = rand_matrf(rng), rand_matrf(rng)
        assert delta(g.conj(b), g.conj(a1) + g.u) == g.conj(delta(b, a1))


def test_zero_operator_degree_marker():
    zero = OreOperator.zero(Z)
    assert zero.is_zero()
    assert zero.degree == float("-inf")
    assert ore_mul(zero, D).is_zero()


def test_ring_mismatch_in_ore_mul():
    from wilc.rings.quasimodular import E2
    with pytest.raises(RingMismatch):
        ore_mul(D, OreOperator.const(E2))
