"""Rational functions in z over Q, reduced with a monic denominator.

This models the scalar meromorphic coefficients of the operator calculus
at desk scale.  The derivation is d/dz; `compose` substitutes another
rational function for z and is a ring morphism.
"""

from fractions import Fraction

from ..errors import ConstantMap, RingMismatch
from .poly import Poly, render_poly


def _aspoly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot coerce {x!r} to a polynomial")


class RatFunc:
    """num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _aspoly(num)
        den = Poly.const(1) if den is None else _aspoly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Poly.const(1)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            lead = den.leading
            if lead != 1:
                num = num.scale(1 / lead)
                den = den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def const(c):
        return RatFunc(Poly.const(c))

    @staticmethod
    def var():
        return RatFunc(Poly.var())

    def ring_key(self):
        return ("ratfunc",)

    def zero(self):
        return RatFunc(Poly())

    def one(self):
        return RatFunc(Poly.const(1))

    def is_zero(self):
        return self.num.is_zero()

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def const_value(self):
        return self.num.const_value() / self.den.const_value()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _check(self, other):
        if not isinstance(other, RatFunc):
            raise RingMismatch(f"expected RatFunc, got {type(other).__name__}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        self._check(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return RatFunc.const(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, q):
        return RatFunc(self.num.scale(q), self.den)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        self._check(other)
        return self * other.inverse()

    def __pow__(self, m):
        if m < 0:
            return self.inverse() ** (-m)
        return RatFunc(self.num**m, self.den**m)

    def derive(self):
        """Quotient rule, exact."""
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def compose(self, lam):
        """Substitution z -> lam(z); lam must be a nonconstant RatFunc."""
        if not isinstance(lam, RatFunc):
            raise RingMismatch("composition target must be a RatFunc")
        if lam.is_const():
            raise ConstantMap("composition with a constant map")
        n, d = self.num, self.den
        deg = max(n.degree if not n.is_zero() else 0, d.degree)
        # clear lam's denominator: f(p/q) = (sum n_i p^i q^(N-i)) / (...)
        p, q = lam.num, lam.den
        num_acc = Poly()
        den_acc = Poly()
        for i in range(int(deg) + 1):
            w = p**i * q ** (int(deg) - i)
            if i < len(n.coeffs) and n.coeffs[i]:
                num_acc = num_acc + w.scale(n.coeffs[i])
            if i < len(d.coeffs) and d.coeffs[i]:
                den_acc = den_acc + w.scale(d.coeffs[i])
        return RatFunc(num_acc, den_acc)

    def eval(self, x):
        """Evaluate at a Fraction; raises ZeroDivisionError on a pole."""
        return self.num.eval(x) / self.den.eval(x)

    def __str__(self):
        if self.den.is_const():
            return render_poly(self.num)
        ns = render_poly(self.num)
        ds = render_poly(self.den)
        if len(self.num.coeffs) > 1 or " " in ns:
            ns = f"({ns})"
        return f"{ns}/({ds})"

    def __repr__(self):
        return f"RatFunc({self})"
