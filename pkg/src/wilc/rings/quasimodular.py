"""The quasimodular ring Q[E2, E4, E6], its fraction field, and q-series.

The only derivation on these types is the normalized one fixed by the
Ramanujan system

    D E2 = (E2^2 - E4)/12,   D E4 = (E2 E4 - E6)/3,   D E6 = (E2 E6 - E4^2)/2,

which corresponds to (2*pi*i)^-1 d/dz on q-expansions; the 2*pi*i factor
never appears numerically.  A monomial E2^a E4^b E6^c has weight
2a + 4b + 6c and depth a; depth 0 is the ring of genuine modular forms.
"""

from fractions import Fraction

from ..errors import InhomogeneousForm, RingMismatch
from .mpoly import MFrac, MPoly

_NAMES = ("E2", "E4", "E6")


class QuasiModular:
    """A polynomial in the commuting generators E2, E4, E6 over Q."""

    __slots__ = ("p",)

    def __init__(self, p):
        if not isinstance(p, MPoly) or p.nvars != 3:
            raise TypeError("QuasiModular wraps a 3-variable MPoly")
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):
        raise AttributeError("QuasiModular is immutable")

    @staticmethod
    def const(c):
        return QuasiModular(MPoly.const(3, c))

    @staticmethod
    def gen(i):
        return QuasiModular(MPoly.var(3, i))

    @staticmethod
    def from_terms(terms):
        return QuasiModular(MPoly(3, terms))

    def ring_key(self):
        return ("qm",)

    def zero(self):
        return QuasiModular(MPoly(3))

    def one(self):
        return QuasiModular.const(1)

    def is_zero(self):
        return self.p.is_zero()

    def is_const(self):
        return self.p.is_const()

    def const_value(self):
        return self.p.const_value()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuasiModular.const(other)
        return isinstance(other, QuasiModular) and self.p == other.p

    def __hash__(self):
        return hash(self.p)

    def _check(self, other):
        if not isinstance(other, QuasiModular):
            raise RingMismatch(f"expected QuasiModular, got {type(other).__name__}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuasiModular.const(other)
        self._check(other)
        return QuasiModular(self.p + other.p)

    __radd__ = __add__

    def __neg__(self):
        return QuasiModular(-self.p)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuasiModular.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return QuasiModular.const(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        return QuasiModular(self.p * other.p)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, q):
        return QuasiModular(self.p.scale(q))

    def __pow__(self, m):
        return QuasiModular(self.p**m)

    def derive(self):
        """The Ramanujan derivation, term by term."""
        out = {}

        def bump(exp, c):
            if c:
                out[exp] = out.get(exp, Fraction(0)) + c

        for (a, b, c), coef in self.p.terms.items():
            if a:
                q = coef * a * Fraction(1, 12)
                bump((a + 1, b, c), q)
                bump((a - 1, b + 1, c), -q)
            if b:
                q = coef * b * Fraction(1, 3)
                bump((a + 1, b, c), q)
                bump((a, b - 1, c + 1), -q)
            if c:
                q = coef * c * Fraction(1, 2)
                bump((a + 1, b, c), q)
                bump((a, b + 2, c - 1), -q)
        return QuasiModular(MPoly(3, out))

    def weight_components(self):
        """Decomposition into weight-homogeneous parts: {weight: part}."""
        buckets = {}
        for exp, coef in self.p.terms.items():
            w = 2 * exp[0] + 4 * exp[1] + 6 * exp[2]
            buckets.setdefault(w, {})[exp] = coef
        return {w: QuasiModular(MPoly(3, t)) for w, t in sorted(buckets.items())}

    def depth(self):
        """Maximal E2 exponent (0 for the zero polynomial)."""
        return max((exp[0] for exp in self.p.terms), default=0)

    def is_modular(self):
        return self.depth() == 0

    def is_homogeneous(self):
        return len(self.weight_components()) <= 1

    def weight(self):
        """Weight of a homogeneous value; the zero polynomial has any weight."""
        comps = self.weight_components()
        if len(comps) > 1:
            raise InhomogeneousForm(f"mixed weights {sorted(comps)}")
        return next(iter(comps)) if comps else None

    def eval_qseries(self, order):
        """Substitute the Eisenstein q-expansions, truncated at q^order."""
        if order < 1:
            raise ValueError("truncation order must be >= 1")
        gens = (eisenstein_qseries(2, order), eisenstein_qseries(4, order), eisenstein_qseries(6, order))
        acc = QSeries.const(0, order)
        for (a, b, c), coef in self.p.terms.items():
            term = QSeries.const(coef, order)
            for g, e in zip(gens, (a, b, c)):
                for _ in range(e):
                    term = term * g
            acc = acc + term
        return acc

    def constant_term(self):
        """The q^0 coefficient of the q-expansion (E_k(q=0) = 1)."""
        return sum(self.p.terms.values(), Fraction(0))

    def __str__(self):
        return self.p.render(_NAMES)

    def __repr__(self):
        return f"QuasiModular({self})"


E2 = QuasiModular.gen(0)
E4 = QuasiModular.gen(1)
E6 = QuasiModular.gen(2)
DELTA = (E4**3 - E6**2).scale(Fraction(1, 1728))


class QMRat:
    """Fraction of quasimodular polynomials, reduced by content."""

    __slots__ = ("f",)

    def __init__(self, num, den=None):
        if isinstance(num, QuasiModular):
            num = num.p
        if isinstance(den, QuasiModular):
            den = den.p
        if isinstance(num, MFrac):
            f = num
        else:
            f = MFrac(num, den)
        object.__setattr__(self, "f", f)

    def __setattr__(self, *a):
        raise AttributeError("QMRat is immutable")

    @staticmethod
    def const(c):
        return QMRat(MPoly.const(3, c))

    @staticmethod
    def of(qm):
        return QMRat(qm.p)

    @property
    def num(self):
        return QuasiModular(self.f.num)

    @property
    def den(self):
        return QuasiModular(self.f.den)

    def ring_key(self):
        return ("qmrat",)

    def zero(self):
        return QMRat.const(0)

    def one(self):
        return QMRat.const(1)

    def is_zero(self):
        return self.f.is_zero()

    def is_const(self):
        return self.f.is_const()

    def const_value(self):
        return self.f.const_value()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QMRat.const(other)
        if isinstance(other, QuasiModular):
            other = QMRat.of(other)
        return isinstance(other, QMRat) and self.f == other.f

    __hash__ = None

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return QMRat.const(other)
        if isinstance(other, QuasiModular):
            return QMRat.of(other)
        if not isinstance(other, QMRat):
            raise RingMismatch(f"expected QMRat, got {type(other).__name__}")
        return other

    def __add__(self, other):
        return QMRat(self.f + self._coerce(other).f)

    __radd__ = __add__

    def __neg__(self):
        return QMRat(-self.f)

    def __sub__(self, other):
        return QMRat(self.f - self._coerce(other).f)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return QMRat(self.f * self._coerce(other).f)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, q):
        return QMRat(self.f.scale(q))

    def inverse(self):
        return QMRat(self.f.inverse())

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return self * self._coerce(other).inverse()

    def __pow__(self, m):
        return QMRat(self.f**m)

    def derive(self):
        """Quotient rule over the Ramanujan derivation."""
        n, d = self.num, self.den
        if d.is_const():
            return QMRat((n.derive().scale(1 / d.const_value())).p)
        return QMRat(n.derive().p * d.p - n.p * d.derive().p, d.p * d.p)

    def is_polynomial(self):
        return self.f.den.is_const()

    def as_polynomial(self):
        if not self.is_polynomial():
            raise InhomogeneousForm("value has a nonconstant denominator")
        return QuasiModular(self.f.num)

    def is_homogeneous(self):
        return self.num.is_homogeneous() and self.den.is_homogeneous()

    def weight(self):
        if self.is_zero():
            return None
        wn, wd = self.num.weight(), self.den.weight()
        return wn - (wd or 0) if wn is not None else None

    def depth(self):
        """Depth of the reduced representative; exact for polynomials."""
        return max(self.num.depth(), self.den.depth())

    def is_modular(self):
        return self.num.is_modular() and self.den.is_modular()

    def eval_qseries(self, order):
        ns = self.num.eval_qseries(order)
        ds = self.den.eval_qseries(order)
        return ns * ds.inverse()

    def __str__(self):
        return self.f.render(_NAMES)

    def __repr__(self):
        return f"QMRat({self})"


def _divisor_sigma(n, k):
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**k
            e = n // d
            if e != d:
                total += e**k
        d += 1
    return total


def eisenstein_qseries(weight, order):
    """Truncated q-expansion of E2, E4 or E6."""
    table = {2: (-24, 1), 4: (240, 3), 6: (-504, 5)}
    if weight not in table:
        raise ValueError("weight must be 2, 4 or 6")
    mult, k = table[weight]
    coeffs = [Fraction(1)] + [Fraction(mult * _divisor_sigma(n, k)) for n in range(1, order + 1)]
    return QSeries(order, coeffs)


class QSeries:
    """A q-expansion truncated at q^order with exact coefficients.

    Mixing two series truncates to the smaller order, so precision is
    never silently overstated.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        if order < 1:
            raise ValueError("truncation order must be >= 1")
        cs = [Fraction(c) for c in coeffs]
        if len(cs) < order + 1:
            cs += [Fraction(0)] * (order + 1 - len(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs[: order + 1]))

    def __setattr__(self, *a):
        raise AttributeError("QSeries is immutable")

    @staticmethod
    def const(c, order):
        return QSeries(order, [Fraction(c)])

    def ring_key(self):
        return ("qseries",)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        """Coefficientwise equality up to the common truncation order."""
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    __hash__ = None

    def _meet(self, other):
        n = min(self.order, other.order)
        return n, self.coeffs[: n + 1], other.coeffs[: n + 1]

    def __add__(self, other):
        n, a, b = self._meet(other)
        return QSeries(n, [x + y for x, y in zip(a, b)])

    def __neg__(self):
        return QSeries(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        n, a, b = self._meet(other)
        out = [Fraction(0)] * (n + 1)
        for i, ai in enumerate(a):
            if ai:
                for j in range(0, n + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return QSeries(n, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, q):
        return QSeries(self.order, [c * q for c in self.coeffs])

    def inverse(self):
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series with vanishing constant term")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / self.coeffs[0]
        for m in range(1, n + 1):
            s = sum(self.coeffs[k] * out[m - k] for k in range(1, m + 1))
            out[m] = -s / self.coeffs[0]
        return QSeries(n, out)

    def derive(self):
        """The operator q d/dq."""
        return QSeries(self.order, [i * c for i, c in enumerate(self.coeffs)])

    def truncate(self, order):
        return QSeries(order, self.coeffs[: order + 1])

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            term = str(c) if i == 0 else (f"{c}*q" if i == 1 else f"{c}*q^{i}")
            parts.append(term if not parts else (" + " + term if c > 0 else " - " + str(-c) + term[len(str(c)):]))
        return "".join(parts) if parts else "0"

    def __repr__(self):
        return f"QSeries(order={self.order}, {self})"
