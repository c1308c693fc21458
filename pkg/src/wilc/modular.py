"""Genus-1 automorphic layer over Q[E2, E4, E6].

Weights are declared, "modular" is operationalized as depth 0, and every
connection is stored normalized: ghat = G/(2*pi*i), so the covariant
derivative on weight k is D - (k/2) ghat and the canonical choice
ghat = E2/6 gives the Serre derivative D - (k/12) E2.  Alongside the
covariant calculus this module builds the worked second- and third-order
modular operators and the h_m extraction of modular coefficient forms
from quasimodular ones.
"""

from fractions import Fraction

from .errors import (
    InhomogeneousForm,
    PochhammerZero,
    SingularForm,
    SingularMatrix,
    WeightMismatch,
    ZeroWeight,
)
from .invariants import BinomialOperator, miura_extract, to_binomial, w_currents
from .ore import OreOperator, ore_mul
from .rings.matrix import Mat
from .rings.quasimodular import E2, E4, E6, QMRat, QuasiModular


def _as_qmrat(x):
    if isinstance(x, QuasiModular):
        return QMRat.of(x)
    if isinstance(x, (int, Fraction)):
        return QMRat.const(x)
    return x


def _weight_of_value(v):
    """Declared-weight check helper: weight of a QMRat or Mat(QMRat)."""
    if isinstance(v, Mat):
        weights = set()
        for row in v.entries:
            for e in row:
                if not e.is_zero():
                    weights.add(e.weight())
        if len(weights) > 1:
            raise InhomogeneousForm(f"matrix entries of mixed weights {sorted(weights)}")
        return weights.pop() if weights else None
    if v.is_zero():
        return None
    return v.weight()


class GradedForm:
    """A quasimodular value (QMRat or Mat of QMRat) with a declared weight."""

    __slots__ = ("value", "weight")

    def __init__(self, value, weight):
        value = _as_qmrat(value)
        w = _weight_of_value(value)
        if w is not None and w != weight:
            raise WeightMismatch(f"value has weight {w}, declared {weight}")
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "weight", weight)

    def __setattr__(self, *a):
        raise AttributeError("GradedForm is immutable")

    def is_zero(self):
        return self.value.is_zero()

    def is_matrix(self):
        return isinstance(self.value, Mat)

    def depth(self):
        return self.value.depth() if not self.is_matrix() else max(
            e.depth() for row in self.value.entries for e in row
        )

    def is_modular(self):
        """Depth-0 test, the computable shadow of slash invariance."""
        if self.is_matrix():
            return all(e.is_modular() for row in self.value.entries for e in row)
        return self.value.is_modular()

    def __eq__(self, other):
        return (
            isinstance(other, GradedForm)
            and self.weight == other.weight
            and self.value == other.value
        )

    __hash__ = None

    def __add__(self, other):
        if self.weight != other.weight and not (self.is_zero() or other.is_zero()):
            raise WeightMismatch(f"weights {self.weight} and {other.weight}")
        return GradedForm(self.value + other.value, self.weight if not self.is_zero() else other.weight)

    def __neg__(self):
        return GradedForm(-self.value, self.weight)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return GradedForm(_vmul(self.value, other.value), self.weight + other.weight)

    def scale(self, q):
        return GradedForm(self.value.scale(q), self.weight)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"GradedForm(weight={self.weight}, {self.value})"


def _vmul(x, y):
    """Product of connection/form values, promoting scalars into Mat rings."""
    if isinstance(x, Mat) and not isinstance(y, Mat):
        return x * Mat.scalar(y, x.r)
    if isinstance(y, Mat) and not isinstance(x, Mat):
        return Mat.scalar(x, y.r) * y
    return x * y


class NormalizedConnection:
    """ghat = G/(2*pi*i); the covariant derivative on weight k is D - (k/2) ghat."""

    __slots__ = ("ghat",)

    def __init__(self, ghat):
        object.__setattr__(self, "ghat", _as_qmrat(ghat))

    def __setattr__(self, *a):
        raise AttributeError("NormalizedConnection is immutable")

    def __eq__(self, other):
        return isinstance(other, NormalizedConnection) and self.ghat == other.ghat

    __hash__ = None

    def __repr__(self):
        return f"NormalizedConnection({self.ghat})"


def canonical_connection():
    """ghat = E2/6, the holomorphic SL2(Z) choice (Serre derivative)."""
    return NormalizedConnection(QMRat.of(E2).scale(Fraction(1, 6)))


def serre_derive(f, conn=None):
    """Covariant derivative D f - (k/2) ghat f, raising the weight by 2."""
    if conn is None:
        conn = canonical_connection()
    k = f.weight
    term = _vmul(conn.ghat, f.value).scale(Fraction(k, 2))
    return GradedForm(f.value.derive() - term, k + 2)


def higher_serre(f, conn=None, r=1):
    """The r-fold iterated covariant derivative (weight k + 2r)."""
    if r < 0:
        raise ValueError("iteration count must be >= 0")
    out = f
    for _ in range(r):
        out = serre_derive(out, conn)
    return out


def _gbinom(x, j):
    """Generalized binomial with integer (possibly negative) top."""
    acc = Fraction(1)
    for i in range(j):
        acc = acc * Fraction(x - i, i + 1)
    return acc


def rc_bracket(f, g, r, side="left", conn=None):
    """Noncommutative Rankin-Cohen bracket of order r.

    [f,g]^L = sum_s (-1)^s C(k+r-1, r-s) C(l+r-1, s) D^[s]f * D^[r-s]g;
    "right" reverses every product, "sym"/"skew" are the half sum and
    half difference.  Output weight is k + l + 2r.
    """
    if conn is None:
        conn = canonical_connection()
    if side not in ("left", "right", "sym", "skew"):
        raise ValueError("side must be left, right, sym or skew")
    if side == "sym":
        return (rc_bracket(f, g, r, "left", conn) + rc_bracket(f, g, r, "right", conn)).scale(Fraction(1, 2))
    if side == "skew":
        return (rc_bracket(f, g, r, "left", conn) - rc_bracket(f, g, r, "right", conn)).scale(Fraction(1, 2))
    k, ell = f.weight, g.weight
    fs = [f]
    gs = [g]
    for _ in range(r):
        fs.append(serre_derive(fs[-1], conn))
        gs.append(serre_derive(gs[-1], conn))
    acc = None
    for s in range(r + 1):
        c = _gbinom(k + r - 1, r - s) * _gbinom(ell + r - 1, s)
        if s % 2:
            c = -c
        if c == 0:
            continue
        left, right = fs[s], gs[r - s]
        term = (left * right if side == "left" else right * left).scale(c)
        acc = term if acc is None else acc + term
    if acc is None:
        zero = _vmul(f.value, g.value)
        acc = GradedForm(zero.zero() if not isinstance(zero, Mat) else zero.zero(), k + ell + 2 * r)
    return GradedForm(acc.value, k + ell + 2 * r)


def maurer_cartan(phi, weight=None):
    """ghat_Phi = (2/N) Phi^-1 D(Phi) for an invertible weight-N form."""
    n = phi.weight if weight is None else weight
    if n == 0:
        raise ZeroWeight("Maurer-Cartan needs a nonzero weight")
    v = phi.value
    if v.is_zero():
        raise SingularForm("Maurer-Cartan source must be invertible")
    try:
        inv = v.inverse()
    except (ZeroDivisionError, SingularMatrix) as exc:
        raise SingularForm("Maurer-Cartan source must be invertible") from exc
    return NormalizedConnection((inv * v.derive()).scale(Fraction(2, n)))


def mldo_second_order(k, alpha):
    """The worked family D_{k+2} o D_k + alpha E4 in binomial form.

    Coefficients land in the quasimodular polynomial ring; the covariant
    I_2 equals (alpha - 1/144) E4 with all E2^2 terms cancelling.
    """
    alpha = Fraction(alpha)
    c1 = E2.scale(Fraction(-k, 12))
    c2 = E2.scale(Fraction(-(k + 2), 12))
    d_k = OreOperator((c1, E2.one()), E2)
    d_k2 = OreOperator((c2, E2.one()), E2)
    L = ore_mul(d_k2, d_k) + OreOperator.const(E4.scale(alpha))
    return to_binomial(L)


def nsz_example_operator():
    """The third-order modular equation with quasimodular coefficients."""
    a1 = E2.scale(Fraction(-1, 6))
    a2 = E2.derive().scale(Fraction(1, 6)) - E4.scale(Fraction(169, 300))
    a3 = E6.scale(Fraction(1271, 1080))
    return BinomialOperator(3, (a1, a2, a3))


class MLDOCoefficients:
    """Raw coefficients a_0..a_n of sum(a_r D^r), with type (k, K).

    a_r is expected to be quasimodular of weight K - 2r when the operator
    is well typed; entries are stored as GradedForm values.
    """

    __slots__ = ("n", "coeffs", "k", "K")

    def __init__(self, coeffs, k, K):
        coeffs = tuple(coeffs)
        n = len(coeffs) - 1
        graded = []
        for r, c in enumerate(coeffs):
            if isinstance(c, GradedForm):
                graded.append(c)
            else:
                graded.append(GradedForm(_as_qmrat(c), K - 2 * r))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", tuple(graded))
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "K", K)

    def __setattr__(self, *a):
        raise AttributeError("MLDOCoefficients is immutable")


def nsz_example_mldo():
    """The example above in ascending D-power form, type (0, 6)."""
    a0 = QMRat.of(E6.scale(Fraction(1271, 1080)))
    a1 = QMRat.of(E2.derive().scale(Fraction(1, 2)) - E4.scale(Fraction(169, 100)))
    a2 = QMRat.of(E2.scale(Fraction(-1, 2)))
    a3 = QMRat.const(1)
    return MLDOCoefficients((a0, a1, a2, a3), k=0, K=6)


def _rising(x, s):
    acc = Fraction(1)
    for i in range(s):
        acc *= x + i
    return acc


def nsz_hm(coeffs, m):
    """h_m = sum_s C(m+s, s) (k+m)_s / (K-2m-s-1)_s D^s(a_{m+s}).

    Extracts a weight K-2m modular form from the quasimodular coefficient
    tuple; refuses the degenerate monic boundary where a Pochhammer
    denominator vanishes instead of implementing a limiting procedure.
    """
    if not 0 <= m <= coeffs.n:
        raise WeightMismatch(f"need 0 <= m <= {coeffs.n}")
    k, K, n = coeffs.k, coeffs.K, coeffs.n
    for s in range(0, n - m + 1):
        if _rising(K - 2 * m - s - 1, s) == 0:
            raise PochhammerZero(f"(K-2m-s-1)_s vanishes at s={s} (monic limit case)")
    acc = None
    for s in range(0, n - m + 1):
        c = _gbinom(m + s, s) * _rising(k + m, s) / _rising(K - 2 * m - s - 1, s)
        if c == 0:
            continue
        v = coeffs.coeffs[m + s].value
        for _ in range(s):
            v = v.derive()
        term = v.scale(c)
        acc = term if acc is None else acc + term
    if acc is None:
        acc = QMRat.const(0)
    return GradedForm(acc, K - 2 * m)


def nsz_currents():
    """I_2, I_3 and W_3 of the worked third-order operator, as graded forms."""
    L = nsz_example_operator()
    data = miura_extract(L)
    w = w_currents(L, 3)
    return {
        "I2": GradedForm(QMRat.of(data[2]), 4),
        "I3": GradedForm(QMRat.of(data[3]), 6),
        "W2": GradedForm(QMRat.of(w[2]), 4),
        "W3": GradedForm(QMRat.of(w[3]), 6),
    }


def discriminant_current(w2, w3):
    """-27 (4 W2^3 + W3^2), a weight-12 current.

    For depth-0 polynomial inputs the result is decomposed in the basis
    {E4^3, E6^2}; the q^0 coefficient reports on cuspidality.
    """
    if w2.weight != 4 or w3.weight != 6:
        raise WeightMismatch("discriminant current needs weights 4 and 6")
    value = ((w2 * w2 * w2).scale(4) + w3 * w3).scale(-27)
    out = GradedForm(value.value, 12)
    report = {"current": out}
    v = out.value
    if not isinstance(v, Mat) and v.is_polynomial():
        poly = v.as_polynomial()
        if poly.is_modular():
            c1 = poly.p.terms.get((0, 3, 0), Fraction(0))
            c2 = poly.p.terms.get((0, 0, 2), Fraction(0))
            report["basis"] = {"E4^3": c1, "E6^2": c2}
            report["constant_q_coefficient"] = poly.constant_term()
            report["proportional_to_cusp_form"] = poly.constant_term() == 0
    return report
