"""The Ore algebra K<D> over any of the package's differential rings.

Operators are kept in left normal form sum(b_j D^j); multiplication uses
the commutation rule D a = a D + D(a).  The module also provides gauge
conjugation and the two families of noncommutative Bell polynomials:
P_m driven by the base derivation and Q_m driven by the induced
derivation Delta_{a1} = D + [a1, .].
"""

from fractions import Fraction
from math import comb

from .errors import RingMismatch

NEG_INF = float("-inf")


def _check_same_ring(x, y):
    if x.ring_key() != y.ring_key():
        raise RingMismatch(f"ring mismatch: {x.ring_key()} vs {y.ring_key()}")


class OreOperator:
    """sum(coeffs[j] * D^j) with coefficients in a single ring.

    The zero operator has an empty coefficient tuple and degree -inf, so
    leading-zero trimming needs no special cases.
    """

    __slots__ = ("coeffs", "sample")

    def __init__(self, coeffs, sample=None):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        if sample is None:
            if not cs:
                raise ValueError("zero operator needs an explicit ring sample")
            sample = cs[0]
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "sample", sample)

    def __setattr__(self, *a):
        raise AttributeError("OreOperator is immutable")

    @staticmethod
    def zero(sample):
        return OreOperator((), sample)

    @staticmethod
    def const(a):
        return OreOperator((a,), a)

    @staticmethod
    def D(sample, u=None):
        """The operator D, or D + u when a shift is given."""
        zero, one = sample.zero(), sample.one()
        return OreOperator((zero if u is None else u, one), sample)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def ring_key(self):
        return self.sample.ring_key()

    def coeff(self, j):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return self.sample.zero()

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, OreOperator)
            and self.ring_key() == other.ring_key()
            and self.coeffs == other.coeffs
        )

    __hash__ = None

    def __add__(self, other):
        _check_same_ring(self.sample, other.sample)
        n = max(len(self.coeffs), len(other.coeffs))
        return OreOperator([self.coeff(j) + other.coeff(j) for j in range(n)], self.sample)

    def __neg__(self):
        return OreOperator([-c for c in self.coeffs], self.sample)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return ore_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, q):
        return OreOperator([c.scale(q) for c in self.coeffs], self.sample)

    def left_mul_elem(self, a):
        """a * L for a coefficient a (no commutation needed)."""
        return OreOperator([a * c for c in self.coeffs], self.sample)

    def __pow__(self, m):
        if m < 0:
            raise ValueError("negative operator power")
        out = OreOperator.const(self.sample.one())
        for _ in range(m):
            out = ore_mul(out, self)
        return out

    def shift_D(self):
        """Left multiplication by D: D * L in normal form."""
        zero = self.sample.zero()
        out = [zero] + list(self.coeffs)
        for j, c in enumerate(self.coeffs):
            out[j] = out[j] + c.derive()
        return OreOperator(out, self.sample)

    def apply(self, y):
        return ore_apply(self, y)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c.is_zero():
                continue
            dpart = "" if j == 0 else ("D" if j == 1 else f"D^{j}")
            cs = str(c)
            if dpart and cs == "1":
                parts.append(dpart)
            elif dpart:
                parts.append(f"({cs})*{dpart}")
            else:
                parts.append(f"({cs})")
        return " + ".join(parts)

    def __repr__(self):
        return f"OreOperator({self})"


def ore_mul(L1, L2):
    """Product in K<D>, renormalized immediately.

    Computed as sum_i b_i * (D^i * L2) with D * T done incrementally, so
    the Ore relation is applied once per derivative step.
    """
    _check_same_ring(L1.sample, L2.sample)
    if L1.is_zero() or L2.is_zero():
        return OreOperator.zero(L1.sample)
    acc = OreOperator.zero(L1.sample)
    T = L2
    for i, b in enumerate(L1.coeffs):
        if i > 0:
            T = T.shift_D()
        if not b.is_zero():
            acc = acc + T.left_mul_elem(b)
    return acc


def ore_apply(L, y):
    """Module action: sum b_j * derive^j(y)."""
    _check_same_ring(L.sample, y)
    acc = y.zero()
    d = y
    for j, b in enumerate(L.coeffs):
        if j > 0:
            d = d.derive()
        if not b.is_zero():
            acc = acc + b * d
    return acc


class GaugeParam:
    """An invertible gauge factor f with its logarithmic derivative.

    u = f^-1 D(f) is computed once at construction and reused by every
    coefficient-transformation formula.
    """

    __slots__ = ("f", "finv", "u")

    def __init__(self, f):
        finv = f.inverse()
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "finv", finv)
        object.__setattr__(self, "u", finv * f.derive())

    def __setattr__(self, *a):
        raise AttributeError("GaugeParam is immutable")

    def conj(self, a):
        """f^-1 a f."""
        return self.finv * a * self.f


def gauge_conjugate(L, g):
    """f^-1 L f by direct triple-product normal ordering."""
    if not isinstance(g, GaugeParam):
        g = GaugeParam(g)
    left = OreOperator.const(g.finv)
    right = OreOperator.const(g.f)
    return ore_mul(ore_mul(left, L), right)


class BellP:
    """Memoized sequence of noncommutative Bell polynomials P_m(u).

    P_0 = 1 and P_{m+1} = D(P_m) + u P_m; for u = f^-1 D(f) this gives
    P_m(u) = f^-1 D^m(f).
    """

    __slots__ = ("u", "_table")

    def __init__(self, u):
        self.u = u
        self._table = [u.one()]

    def __setattr__(self, name, value):
        object.__setattr__(self, name, value)

    def get(self, m):
        while len(self._table) <= m:
            p = self._table[-1]
            self._table.append(p.derive() + self.u * p)
        return self._table[m]


def bell_P(m, u):
    if m < 0:
        raise ValueError("Bell polynomial index must be >= 0")
    return BellP(u).get(m)


def delta(b, a1):
    """The induced derivation Delta_{a1}(b) = D(b) + a1 b - b a1."""
    _check_same_ring(b, a1)
    return b.derive() + a1 * b - b * a1


class BellQ:
    """Memoized covariant Bell polynomials Q_m(u) for a fixed a1.

    Q_0 = 1 and Q_{m+1} = Delta_{a1}(Q_m) + u Q_m; when a1 is central
    this collapses to the P_m family.
    """

    __slots__ = ("u", "a1", "_table")

    def __init__(self, u, a1):
        _check_same_ring(u, a1)
        self.u = u
        self.a1 = a1
        self._table = [u.one()]

    def __setattr__(self, name, value):
        object.__setattr__(self, name, value)

    def get(self, m):
        while len(self._table) <= m:
            q = self._table[-1]
            self._table.append(delta(q, self.a1) + self.u * q)
        return self._table[m]


def bell_Q(m, u, a1):
    if m < 0:
        raise ValueError("Bell polynomial index must be >= 0")
    return BellQ(u, a1).get(m)


def normal_order_power(u, m):
    """(D + u)^m = sum binom(m, j) P_{m-j}(u) D^j, assembled directly."""
    if m < 0:
        raise ValueError("power must be >= 0")
    table = BellP(u)
    coeffs = [table.get(m - j).scale(comb(m, j)) for j in range(m + 1)]
    return OreOperator(coeffs, u)


def gauge_coefficients(coeffs_a, g):
    """Theorem-level gauge action on binomial coefficient tuples.

    Input a_0..a_n (a_0 = 1 implied by the caller), output the tuple
    tilde a_k = sum_j binom(k, j) (f^-1 a_{k-j} f) P_j(u).
    """
    if not isinstance(g, GaugeParam):
        g = GaugeParam(g)
    ps = BellP(g.u)
    n = len(coeffs_a) - 1
    out = []
    for k in range(n + 1):
        acc = None
        for j in range(k + 1):
            term = (g.conj(coeffs_a[k - j]) * ps.get(j)).scale(comb(k, j))
            acc = term if acc is None else acc + term
        out.append(acc)
    return out
