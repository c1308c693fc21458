"""Seeded verification suites behind `wilc verify` and the test suite.

Each suite draws its data from a deterministic `random.Random(seed)`, so
acceptance runs are reproducible; every check reports an exact residual
(zero or not), never a tolerance.
"""

import random
from fractions import Fraction

from .invariants import (
    BinomialOperator,
    closed_all_Ik,
    miura_extract,
    operator_from_solutions,
    reconstruct,
    star_action,
    to_binomial,
    w_currents,
)
from .modular import (
    GradedForm,
    canonical_connection,
    discriminant_current,
    maurer_cartan,
    mldo_second_order,
    nsz_currents,
    nsz_example_mldo,
    nsz_example_operator,
    nsz_hm,
    rc_bracket,
    serre_derive,
)
from .ore import (
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
from .reparam import (
    ReparamJet,
    overlap_transform,
    pullback_operator,
    pullback_ore,
    reparam_Ik,
    vacuum_cocycle,
    verify_w_tensoriality,
)
from .rings.matrix import Mat
from .rings.mpoly import MPoly
from .rings.poly import Poly
from .rings.quasimodular import DELTA, E2, E4, E6, QMRat, QuasiModular
from .rings.ratfunc import RatFunc
from . import siegel as sg


class Check:
    __slots__ = ("name", "ok", "detail")

    def __init__(self, name, ok, detail=""):
        self.name = name
        self.ok = bool(ok)
        self.detail = detail

    def as_dict(self):
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


# ---------------------------------------------------------------- random data


def rand_poly(rng, deg=2, span=3):
    return Poly([Fraction(rng.randint(-span, span)) for _ in range(deg + 1)])


def rand_rf(rng, deg=2, rational=False):
    num = rand_poly(rng, deg)
    if rational:
        den = Poly([Fraction(rng.randint(1, 3))] + [Fraction(rng.randint(-2, 2)) for _ in range(1)])
        return RatFunc(num, den)
    return RatFunc(num)

def rand_matrf(rng, r=2, deg=1):
    return Mat([[rand_rf(rng, deg) for _ in range(r)] for _ in range(r)])


def rand_invertible_matrf(rng, r=2, deg=1):
    """Unit upper-triangular times unit lower-triangular: det = 1."""
    one = RatFunc.const(1)
    zero = RatFunc.const(0)
    up = [[one if i == j else (rand_rf(rng, deg) if j > i else zero) for j in range(r)] for i in range(r)]
    lo = [[one if i == j else (rand_rf(rng, deg) if j < i else zero) for j in range(r)] for i in range(r)]
    return Mat(up) * Mat(lo)


def rand_binomial_ratfunc(rng, n, deg=1):
    return BinomialOperator(n, [rand_rf(rng, deg) for _ in range(n)])


def rand_binomial_matrf(rng, n, r=2, deg=1):
    return BinomialOperator(n, [rand_matrf(rng, r, deg) for _ in range(n)])


def rand_qm(rng, terms=3, maxe=2):
    t = {}
    for _ in range(terms):
        e = (rng.randint(0, maxe), rng.randint(0, maxe), rng.randint(0, maxe))
        t[e] = Fraction(rng.randint(-3, 3))
    return QuasiModular.from_terms(t)


_WEIGHT_MONOS = {}


def _weight_monomials(k):
    if k not in _WEIGHT_MONOS:
        out = []
        for a in range(k // 2 + 1):
            for b in range((k - 2 * a) // 4 + 1):
                rest = k - 2 * a - 4 * b
                if rest % 6 == 0:
                    out.append((a, b, rest // 6))
        _WEIGHT_MONOS[k] = out
    return _WEIGHT_MONOS[k]


def rand_qm_weight(rng, k):
    monos = _weight_monomials(k)
    t = {m: Fraction(rng.randint(-3, 3)) for m in monos}
    qm = QuasiModular.from_terms(t)
    if qm.is_zero():
        qm = QuasiModular.from_terms({monos[0]: Fraction(1)})
    return qm


def rand_graded_matrix(rng, k, r=2):
    return GradedForm(
        Mat([[QMRat.of(rand_qm_weight(rng, k)) for _ in range(r)] for _ in range(r)]), k
    )


def rand_mvrat_poly(rng, deg=1, terms=3):
    t = {}
    for _ in range(terms):
        e = [rng.randint(0, deg) for _ in range(3)] + [0]
        t[tuple(e)] = Fraction(rng.randint(-3, 3))
    out = sg.MVRat(MPoly(4, t))
    if out.is_zero():
        out = sg.MVRat.const(1)
    return out


def rand_siegel_element(rng, k, m, deg=1):
    if m == 0:
        return sg.SiegelElement.scalar(k, rand_mvrat_poly(rng, deg))
    return sg.SiegelElement(k, m, {(i, m - i): rand_mvrat_poly(rng, deg) for i in range(m + 1)})


# -------------------------------------------------------------------- helpers


def _zero_check(name, residual):
    ok = residual.is_zero()
    return Check(name, ok, "" if ok else f"residual {residual}")


def _eq_check(name, lhs, rhs):
    diff = lhs - rhs
    ok = diff.is_zero()
    return Check(name, ok, "" if ok else f"residual {diff}")


# --------------------------------------------------------------------- suites


def suite_ore(seed=0, pairs=50):
    rng = random.Random(seed)
    checks = []
    z = RatFunc.var()

    ok = True
    for _ in range(pairs):
        x, y = rand_rf(rng, 2, rational=True), rand_rf(rng, 2)
        ok = ok and (x * y).derive() == x.derive() * y + x * y.derive()
        a, b = rand_matrf(rng), rand_matrf(rng)
        ok = ok and (a * b).derive() == a.derive() * b + a * b.derive()
        p, q = rand_qm(rng), rand_qm(rng)
        ok = ok and (p * q).derive() == p.derive() * q + p * q.derive()
        f = QMRat(rand_qm(rng).p, (rand_qm(rng) + QuasiModular.const(1)).p)
        g = QMRat.of(rand_qm(rng))
        ok = ok and (f * g).derive() == f.derive() * g + f * g.derive()
    checks.append(Check("leibniz-all-rings", ok))

    ok = True
    for _ in range(10):
        x, y = rand_rf(rng, 2), rand_rf(rng, 2)
        lam = z**2 + RatFunc.const(rng.randint(1, 3)) * z
        ok = ok and (x * y).compose(lam) == x.compose(lam) * y.compose(lam)
        ok = ok and x.compose(lam).derive() == x.derive().compose(lam) * lam.derive()
    checks.append(Check("compose-morphism-and-chain-rule", ok))

    ok = True
    for F in (E2, E4, E6, E2 * E4, DELTA):
        lhs = F.derive().eval_qseries(20)
        rhs = F.eval_qseries(21).derive().truncate(20)
        ok = ok and lhs == rhs
    checks.append(Check("ramanujan-qseries-consistency", ok))

    ok = True
    for _ in range(8):
        m = rand_invertible_matrf(rng) + Mat.scalar(rand_rf(rng, 1), 2)
        if m.det().is_zero():
            continue
        ok = ok and m * m.inverse() == Mat.identity(z, 2)
    checks.append(Check("mat-inverse-round-trip", ok))

    ok = True
    for _ in range(6):
        ops = [
            OreOperator([rand_matrf(rng, 2, 1) for _ in range(rng.randint(1, 5))], Mat.identity(z, 2))
            for _ in range(3)
        ]
        l1, l2, l3 = ops
        ok = ok and ore_mul(ore_mul(l1, l2), l3) == ore_mul(l1, ore_mul(l2, l3))
    checks.append(Check("ore-associativity", ok))

    ok = True
    one = z.one()
    fs = [z, z**2, Mat([[one, z], [z.zero(), one]])]
    for f in fs:
        gp = GaugeParam(f)
        d = f
        for m in range(7):
            ok = ok and bell_P(m, gp.u) == gp.finv * d
            d = d.derive()
    checks.append(Check("P-as-conjugation", ok))

    ok = True
    for m in range(7):
        u = rand_matrf(rng)
        du = OreOperator.D(u, u)
        prod = OreOperator.const(u.one())
        for _ in range(m):
            prod = ore_mul(prod, du)
        ok = ok and normal_order_power(u, m) == prod
    checks.append(Check("normal-order-power", ok))

    ok = True
    from math import comb

    for m in range(1, 6):
        u = rand_matrf(rng)
        a1 = rand_matrf(rng)
        nab_u = OreOperator.D(u, a1 + u)
        prod = OreOperator.const(u.one())
        for _ in range(m):
            prod = ore_mul(prod, nab_u)
        # extract nabla-power coefficients by downward elimination
        nab = OreOperator.D(u, a1)
        pows = [OreOperator.const(u.one())]
        for _ in range(m):
            pows.append(ore_mul(pows[-1], nab))
        rem = prod
        coeffs = {}
        for j in range(m, -1, -1):
            c = rem.coeff(j)
            coeffs[j] = c
            if not c.is_zero():
                rem = rem - pows[j].left_mul_elem(c)
        ok = ok and rem.is_zero()
        for j in range(m + 1):
            ok = ok and coeffs[j] == bell_Q(m - j, u, a1).scale(comb(m, j))
    checks.append(Check("normal-order-nabla", ok))

    ok = True
    for _ in range(6):
        l1 = OreOperator([rand_rf(rng, 1) for _ in range(3)], z)
        l2 = OreOperator([rand_rf(rng, 1) for _ in range(3)], z)
        y = rand_rf(rng, 2)
        ok = ok and ore_apply(ore_mul(l1, l2), y) == ore_apply(l1, ore_apply(l2, y))
    checks.append(Check("module-action", ok))

    ok = True
    for _ in range(6):
        f = rand_invertible_matrf(rng)
        gp = GaugeParam(f)
        a1 = rand_matrf(rng)
        b = rand_matrf(rng)
        lhs = delta(gp.conj(b), gp.conj(a1) + gp.u)
        rhs = gp.conj(delta(b, a1))
        ok = ok and lhs == rhs
    checks.append(Check("delta-covariance", ok))

    ok = True
    for _ in range(5):
        n = rng.randint(2, 4)
        L = rand_binomial_matrf(rng, n)
        f = rand_invertible_matrf(rng)
        gp = GaugeParam(f)
        via_formula = L.gauge_transform(gp)
        via_product = to_binomial(gauge_conjugate(L.to_ore(), gp))
        ok = ok and via_formula == via_product
    checks.append(Check("gauge-two-path-cross-check", ok))
    return checks


def suite_invariants(seed=0, operators=20):
    rng = random.Random(seed)
    checks = []

    ok = True
    for _ in range(operators):
        kind = rng.choice(["ratfunc", "mat2", "mat3"])
        n = rng.randint(2, 6)
        if kind == "ratfunc":
            L = rand_binomial_ratfunc(rng, n, deg=2)
        elif kind == "mat2":
            L = rand_binomial_matrf(rng, n, 2)
        else:
            L = rand_binomial_matrf(rng, n, 3)
        data = miura_extract(L)
        closed = closed_all_Ik(L)
        for k in range(2, n + 1):
            ok = ok and data[k] == closed[k]
    checks.append(Check("closed-Ik-vs-miura", ok))

    ok = True
    for _ in range(8):
        n = rng.randint(2, 4)
        L = rand_binomial_matrf(rng, n)
        f = rand_invertible_matrf(rng)
        gp = GaugeParam(f)
        Lg = L.gauge_transform(gp)
        di, dg = miura_extract(L), miura_extract(Lg)
        for k in range(2, n + 1):
            ok = ok and dg[k] == gp.conj(di[k])
    checks.append(Check("gauge-covariance-Ik", ok))

    ok = True
    for _ in range(6):
        n = rng.randint(2, 5)
        L = rand_binomial_matrf(rng, n)
        ok = ok and reconstruct(miura_extract(L)) == L
    checks.append(Check("miura-reconstruction", ok))

    ok = True
    for _ in range(6):
        n = rng.randint(2, 4)
        L = rand_binomial_matrf(rng, n)
        u = rand_matrf(rng)
        v = rand_matrf(rng)
        Ls = star_action(u, L)
        di, ds = miura_extract(L), miura_extract(Ls)
        ok = ok and Ls.a[0] == L.a[0] - u
        for k in range(2, n + 1):
            ok = ok and ds[k] == di[k]
        left = star_action(u, star_action(v, L))
        right = star_action(u + v, L)
        ok = ok and left == right
    checks.append(Check("star-fixes-Ik-and-group-law", ok))

    ok = True
    for _ in range(5):
        n = rng.randint(4, 5)
        L = rand_binomial_matrf(rng, n)
        u = rand_matrf(rng)
        Ls = star_action(u, L)
        w = w_currents(L, 4)
        ws = w_currents(Ls, 4)
        comm = lambda x, y: x * y - y * x  # noqa: E731
        ok = ok and ws[2] == w[2]
        ok = ok and ws[3] == w[3] + comm(u, w[2]).scale(Fraction(3, 2))
        dI = miura_extract(L)
        dlt = lambda x: delta(x, L.a[0])  # noqa: E731
        w4_shift = (
            comm(u, dI[3]).scale(2)
            + (comm(u, comm(u, w[2])) - comm(dlt(u), w[2]) - comm(u, dlt(w[2])).scale(2)).scale(Fraction(6, 5))
        )
        ok = ok and ws[4] == w[4] + w4_shift
    checks.append(Check("star-on-W234", ok))

    ok = True
    z = RatFunc.var()
    sols_sets = [
        [z.one(), z],
        [z.one(), z, z**2],
        [z, z**2],
        [z + z.one(), z**3, z**2 - z],
    ]
    for sols in sols_sets:
        L = operator_from_solutions(sols)
        for y in sols:
            ok = ok and ore_apply(L.to_ore(), y).is_zero()
    checks.append(Check("wronskian-operator-annihilates", ok))
    return checks


def suite_reparam(seed=0):
    rng = random.Random(seed)
    checks = []
    z = RatFunc.var()
    one = z.one()
    lams = [z**2, z**2 + z, z**3 + one]
    moebius = (z.scale(2) + one) / (z + one)

    ok = True
    for _ in range(4):
        n = rng.randint(2, 4)
        L = rand_binomial_ratfunc(rng, n)
        l1, l2 = rng.choice(lams), rng.choice(lams)
        A = pullback_operator(pullback_operator(L, ReparamJet(l1)), ReparamJet(l2))
        B = pullback_operator(L, ReparamJet(l1.compose(l2)))
        ok = ok and A == B
    checks.append(Check("pullback-functoriality", ok))

    ok = True
    for _ in range(10):
        n = rng.randint(2, 4)
        L = rand_binomial_ratfunc(rng, n)
        lam = rng.choice(lams)
        y = rand_rf(rng, 2)
        jet = ReparamJet(lam)
        lhs = ore_apply(pullback_ore(L, jet), y.compose(lam))
        rhs = ore_apply(L.to_ore(), y).compose(lam)
        ok = ok and lhs == rhs
        monic = OreOperator([(jet.sigma ** (-n)) * c for c in pullback_ore(L, jet).coeffs], z)
        ok = ok and pullback_operator(L, jet) == to_binomial(monic)
    checks.append(Check("pullback-intertwining", ok))

    ok = True
    for _ in range(6):
        n = rng.randint(2, 5)
        L = BinomialOperator(n, [z.zero()] + [rand_rf(rng, 1) for _ in range(n - 1)])
        jet = ReparamJet(rng.choice(lams))
        p1 = reparam_Ik(L, jet, path="pullback")
        p2 = reparam_Ik(L, jet, path="closed")
        for k in range(2, n + 1):
            ok = ok and p1[k] == p2[k]
    checks.append(Check("reparam-dual-path", ok))

    ok = True
    for l1 in lams:
        for l2 in lams:
            j1, j2, jc = ReparamJet(l1), ReparamJet(l2), ReparamJet(l1.compose(l2))
            lhs = jc.schwarzian()[0]
            rhs = (j2.lam_deriv(1) ** 2) * j1.schwarzian()[0].compose(l2) + j2.schwarzian()[0]
            ok = ok and lhs == rhs
    ok = ok and ReparamJet(moebius).schwarzian()[0].is_zero()
    checks.append(Check("schwarzian-cocycle-and-moebius", ok))

    ok = True
    for n in (3, 4):
        for scalar in (True, False):
            L = rand_binomial_ratfunc(rng, n) if scalar else rand_binomial_matrf(rng, n)
            jet = ReparamJet(rng.choice(lams))
            got = pullback_operator(L, jet)
            expect = _printed_rs_law(L, jet)
            for i in range(n):
                ok = ok and got.a[i] == expect[i]
    checks.append(Check("printed-n3-n4-coefficient-laws", ok))

    ok = True
    for _ in range(4):
        n = rng.randint(2, 4)
        L = rand_binomial_matrf(rng, n)
        jet = ReparamJet(rng.choice(lams))
        g = rand_invertible_matrf(rng)
        gp = GaugeParam(g)
        got = overlap_transform(L, jet, gp)
        lam = jet.lam
        lp = jet.lam_deriv(1)
        lpp = jet.lam_deriv(2)
        scal = (lpp / lp).scale(Fraction(n - 1, 2))
        inner = L.a[0].compose(lam).scale_elem(lp) - Mat.scalar(scal, L.a[0].r)
        expect_a1 = gp.conj(inner) + gp.u
        ok = ok and got.a[0] == expect_a1
        ok = ok and got == pullback_operator(L, jet).gauge_transform(gp)
    checks.append(Check("overlap-a1-law", ok))

    ok = True
    for n in (3, 4, 5, 6):
        for lam in (z**2, z**2 + z):
            jet = ReparamJet(lam)
            S, S1, S2 = jet.schwarzian()
            ok = ok and vacuum_cocycle(n, 2, jet) == S.scale(Fraction(n + 1, 6))
            ok = ok and vacuum_cocycle(n, 3, jet).scale(24) == S1.scale(6 * (n + 1))
            if n >= 4:
                t4 = S2.scale(36 * (n + 1)) + (S * S).scale(2 * (n + 1) * (5 * n + 7))
                ok = ok and vacuum_cocycle(n, 4, jet).scale(120) == t4
    for k in range(2, 7):
        ok = ok and vacuum_cocycle(6, k, ReparamJet(moebius)).is_zero()
    checks.append(Check("vacuum-cocycles", ok))

    ok = True
    diag_ok = True
    for n in (4, 6):
        L = rand_binomial_ratfunc(rng, n)
        jet = ReparamJet(z**2 + z)
        for k in range(2, min(n, 6) + 1):
            ok = ok and verify_w_tensoriality(L, jet, k)["ok"]
        if n == 6:
            # diagnostic: the truncated printed W5/W6 are not tensorial
            diag_ok = not verify_w_tensoriality(L, jet, 5, tensorial=False)["ok"]
            diag_ok = diag_ok and not verify_w_tensoriality(L, jet, 6, tensorial=False)["ok"]
    checks.append(Check("w-tensoriality", ok))
    checks.append(
        Check(
            "w5-w6-truncated-diagnostic",
            diag_ok,
            "truncated forms fail tensoriality (missing I2-tower top term), as diagnosed",
        )
    )
    return checks


def _printed_rs_law(L, jet):
    """The explicit n=3 / n=4 transformation laws, as test oracles."""
    n = L.n
    lam = jet.lam
    lp, lpp, lppp = jet.lam_deriv(1), jet.lam_deriv(2), jet.lam_deriv(3)
    sample = L.sample
    is_mat = isinstance(sample, Mat)

    def cent(s):
        return Mat.scalar(s, sample.r) if is_mat else s

    def comp(i):
        return L.coeff(i).compose(lam)

    def mul(a, s):
        return a.scale_elem(s) if is_mat else a * s

    if n == 3:
        a1 = mul(comp(1), lp) - cent(lpp / lp)
        a2 = (
            mul(comp(2), lp**2)
            - mul(comp(1), lpp)
            - cent((lppp / lp).scale(Fraction(1, 3)))
            + cent((lpp / lp) ** 2)
        )
        a3 = mul(comp(3), lp**3)
        return [a1, a2, a3]
    if n == 4:
        l4 = jet.lam_deriv(4)
        a1 = mul(comp(1), lp) - cent((lpp / lp).scale(Fraction(3, 2)))
        a2 = (
            mul(comp(2), lp**2)
            - mul(comp(1), lpp).scale(2)
            - cent((lppp / lp).scale(Fraction(2, 3)))
            + cent(((lpp / lp) ** 2).scale(Fraction(5, 2)))
        )
        a3 = (
            mul(comp(3), lp**3)
            - mul(comp(2), lp * lpp).scale(Fraction(3, 2))
            - mul(comp(1), lppp)
            + mul(comp(1), (lpp**2) / lp).scale(3)
            - cent((l4 / lp).scale(Fraction(1, 4)))
            + cent(((lpp * lppp) / lp**2).scale(Fraction(5, 2)))
            - cent(((lpp / lp) ** 3).scale(Fraction(15, 4)))
        )
        a4 = mul(comp(4), lp**4)
        return [a1, a2, a3, a4]
    raise ValueError("printed laws are for n = 3 and n = 4")


def suite_modular(seed=0):
    rng = random.Random(seed)
    checks = []

    ok = True
    f4 = GradedForm(QMRat.of(E4), 4)
    f6 = GradedForm(QMRat.of(E6), 6)
    ok = ok and serre_derive(f4).value == QMRat.of(E6).scale(Fraction(-1, 3))
    ok = ok and serre_derive(f6).value == QMRat.of(E4 * E4).scale(Fraction(-1, 2))
    for (f, k) in ((E4, 4), (E6, 6)):
        lhs = serre_derive(GradedForm(QMRat.of(f), k)).value.eval_qseries(20)
        rhs = f.derive().eval_qseries(20) - E2.eval_qseries(20) * f.eval_qseries(20) * Fraction(k, 12)
        ok = ok and lhs == rhs
    checks.append(Check("serre-derivative-values-and-qseries", ok))

    ok = True
    for w in (4, 6, 8, 12):
        g = GradedForm(QMRat.of(rand_qm_weight(rng, w)), w)
        d = serre_derive(g)
        ok = ok and d.weight == w + 2
        if g.is_modular():
            ok = ok and d.is_modular()
    checks.append(Check("depth-stability-weight-raising", ok))

    ok = True
    mcd = maurer_cartan(GradedForm(QMRat.of(DELTA), 12))
    ok = ok and mcd == canonical_connection()
    for phi, w in ((DELTA, 12), (E4, 4), (E6, 6)):
        g = GradedForm(QMRat.of(phi), w)
        ok = ok and serre_derive(g, maurer_cartan(g)).is_zero()
    checks.append(Check("maurer-cartan-flatness", ok))

    ok = True
    for r in (0, 1, 2, 3):
        f = GradedForm(QMRat.of(rand_qm_weight(rng, 4)), 4)
        g = GradedForm(QMRat.of(rand_qm_weight(rng, 6)), 6)
        b = rc_bracket(f, g, r)
        ok = ok and b.weight == 10 + 2 * r
        if f.is_modular() and g.is_modular():
            ok = ok and b.is_modular()
        ok = ok and rc_bracket(f, g, r, "right").value == b.value
        ok = ok and rc_bracket(f, g, r, "skew").is_zero()
    checks.append(Check("rc-bracket-commutative", ok))

    ok = True
    conn = canonical_connection()
    for _ in range(4):
        k, ell = rng.choice([(4, 4), (4, 6), (6, 8)])
        f = rand_graded_matrix(rng, k)
        g = rand_graded_matrix(rng, ell)
        b1 = rc_bracket(f, g, 1)
        raw = (f * GradedForm(g.value.derive(), ell + 2)).scale(k) - (
            GradedForm(f.value.derive(), k + 2) * g
        ).scale(ell)
        gh = conn.ghat
        ghf = Mat.scalar(gh, f.value.r) * f.value
        fgh = f.value * Mat.scalar(gh, f.value.r)
        corr = GradedForm((ghf - fgh) * g.value, k + ell + 2).scale(Fraction(k * ell, 2))
        ok = ok and b1.value == (raw + corr).value
    checks.append(Check("first-rc-correction-matrix", ok))

    ok = True
    for k in (0, 2, 11):
        for alpha in (Fraction(0), Fraction(1), Fraction(17, 5)):
            L = mldo_second_order(k, alpha)
            ok = ok and miura_extract(L)[2] == E4.scale(alpha - Fraction(1, 144))
    checks.append(Check("mlde-e2-cancellation", ok))

    ok = True
    L = nsz_example_operator()
    data = miura_extract(L)
    ok = ok and data[2] == E4.scale(Fraction(-133, 225))
    ok = ok and data[3] == (E2 * E4).scale(Fraction(-133, 450)) + E6.scale(Fraction(319, 270))
    ok = ok and w_currents(L, 3)[3] == E6.scale(Fraction(598, 675))
    checks.append(Check("nsz-example-values", ok))

    ok = True
    co = nsz_example_mldo()
    ok = ok and nsz_hm(co, 3).value == QMRat.const(1)
    h0, h1 = nsz_hm(co, 0), nsz_hm(co, 1)
    ok = ok and h0.is_modular() and h0.weight == 6
    ok = ok and h1.is_modular() and h1.weight == 4
    try:
        nsz_hm(co, 2)
        ok = False
    except Exception:
        pass
    checks.append(Check("nsz-hm-extraction", ok))

    cur = nsz_currents()
    rep = discriminant_current(cur["W2"], cur["W3"])
    dc = rep["current"]
    c0 = rep["constant_q_coefficient"]
    checks.append(Check("discriminant-current-weight12-depth0", dc.weight == 12 and dc.is_modular()))
    checks.append(
        Check(
            "discriminant-current-cuspidality-report",
            True,
            f"q^0 coefficient = {c0}; proportional to the cusp form: {rep['proportional_to_cusp_form']}",
        )
    )
    return checks


def suite_siegel(seed=0, pairs=12):
    rng = random.Random(seed)
    checks = []

    ok = True
    for _ in range(8):
        g = sg.random_symplectic(rng)
        ok = ok and sg._is_symplectic(g.rows)
    checks.append(Check("symplectic-membership", ok))

    ok = True
    for _ in range(max(4, pairs // 3)):
        ok = ok and sg.dz_transform_check(sg.random_symplectic(rng))["ok"]
    checks.append(Check("dz-cotangent-law", ok))

    ok = True
    for _ in range(pairs):
        f = rand_mvrat_poly(rng, 2)
        ok = ok and sg.chain_rule_check(f, sg.random_symplectic(rng))["ok"]
    checks.append(Check("chain-rule", ok))

    ok = True
    bidegrees = [(0, 0), (1, 0), (2, 0), (4, 0), (0, 2), (1, 2), (2, 2), (4, 2)]
    for _ in range(pairs):
        k, m = rng.choice(bidegrees)
        phi = rand_siegel_element(rng, k, m)
        ok = ok and sg.anomaly_check(phi, sg.random_symplectic(rng))["ok"]
    checks.append(Check("raw-anomaly", ok))

    ok = True
    t1, t2, t3 = sg.z_entries()
    detz = t1 * t3 - t2 * t2
    phi = sg.SiegelElement.scalar(2, detz)
    conn = sg.maurer_cartan_A(phi, e=Fraction(1))
    ok = ok and sg.covariant_raise(phi, conn).is_zero()
    mval = Mat([[t1 + sg.MVRat.const(1), t2], [sg.MVRat.const(0), detz + sg.MVRat.const(2)]])
    mphi = sg.SiegelElement.scalar(3, mval)
    mconn = sg.maurer_cartan_A(mphi, e=Fraction(-1, 2))
    ok = ok and sg.covariant_raise(mphi, mconn).is_zero()
    for _ in range(3):
        g = sg.random_symplectic(rng, 3)
        ok = ok and sg.maurer_cartan_one_gamma_residual(phi, g).is_zero()
        ok = ok and sg.maurer_cartan_one_gamma_residual(mphi, g, e=Fraction(-1, 2)).is_zero()
    checks.append(Check("maurer-cartan-flatness-and-law", ok))

    ok = True
    for _ in range(4):
        conn2 = sg.SiegelConnection(
            Fraction(rng.randint(1, 3)),
            sg.SiegelElement.quadratic(
                0, rand_mvrat_poly(rng), rand_mvrat_poly(rng), rand_mvrat_poly(rng)
            ),
        )
        a = rand_siegel_element(rng, rng.randint(0, 2), 0)
        b = rand_siegel_element(rng, rng.randint(0, 2), 2)
        lhs = sg.covariant_raise(a * b, conn2)
        rhs = sg.covariant_raise(a, conn2) * b + a * sg.covariant_raise(b, conn2)
        ok = ok and lhs == rhs
    checks.append(Check("covariant-raise-leibniz", ok))

    ok = True
    for _ in range(3):
        x = Mat([[rand_mvrat_poly(rng), rand_mvrat_poly(rng)], [sg.MVRat.const(0), rand_mvrat_poly(rng)]])
        x = x + x.transpose()
        y = Mat([[rand_mvrat_poly(rng), rand_mvrat_poly(rng)], [sg.MVRat.const(0), rand_mvrat_poly(rng)]])
        y = y + y.transpose()
        ok = ok and sg.odet([x, x]) == x.det()
        ok = ok and sg.odet([x, y]) == sg.odet([y, x])
        m = Mat([[sg.MVRat.const(2), t1], [sg.MVRat.const(0), sg.MVRat.const(1)]])
        lhs = sg.odet([m * x * m.transpose(), m * y * m.transpose()])
        ok = ok and lhs == (m.det() ** 2) * sg.odet([x, y])
    checks.append(Check("odet-symmetry-and-covariance", ok))

    ok = True
    for _ in range(2):
        f1 = rand_siegel_element(rng, 1, 0)
        f2 = rand_siegel_element(rng, 2, 0)
        bracket = sg.det_bracket([f1, f2], conn)
        ok = ok and bracket.bidegree() == (5, 0)
        g = sg.random_symplectic(rng, 3)
        slashed = sg.det_bracket(
            [sg.slash(f1, g), sg.slash(f2, g)], conn.gamma_transform(g)
        )
        ok = ok and slashed == sg.slash(bracket, g)
    checks.append(Check("det-bracket-modularity", ok))

    ok = True
    conn3 = sg.SiegelConnection(
        Fraction(2), sg.SiegelElement.quadratic(0, rand_mvrat_poly(rng), rand_mvrat_poly(rng), rand_mvrat_poly(rng))
    )
    a1 = rand_siegel_element(rng, 0, 2)
    a2 = rand_siegel_element(rng, 0, 4)
    op = sg.SiegelOperator(2, [a1, a2], conn3)
    i2 = sg.siegel_Ik(op, 2)
    ok = ok and i2 == a2 - sg.covariant_raise(a1, conn3) - a1 * a1
    ok = ok and i2.bidegree() == (0, 4)
    f = rand_siegel_element(rng, 3, 0)
    q2 = rand_siegel_element(rng, 0, 4)
    typed = sg.covariant_raise(sg.covariant_raise(f, conn3), conn3) + q2 * f
    ok = ok and typed.bidegree() == (3, 4)
    checks.append(Check("siegel-Ik-and-ode-typing", ok))
    return checks


SUITES = {
    "ore": suite_ore,
    "invariants": suite_invariants,
    "reparam": suite_reparam,
    "modular": suite_modular,
    "siegel": suite_siegel,
}


def run_suite(name, seed=0):
    """Run one named suite (or 'all'); returns a report dictionary."""
    if name == "all":
        checks = []
        for key in ("ore", "invariants", "reparam", "modular", "siegel"):
            checks.extend(SUITES[key](seed))
    elif name in SUITES:
        checks = SUITES[name](seed)
    else:
        raise KeyError(name)
    status = "ok" if all(c.ok for c in checks) else "failed"
    return {
        "suite": name,
        "seed": seed,
        "status": status,
        "checks": [c.as_dict() for c in checks],
    }
