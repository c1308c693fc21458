"""Dense univariate polynomials over Q in the variable z.

Coefficients are `fractions.Fraction`, stored ascending with a nonzero
trailing entry; the zero polynomial has an empty coefficient tuple and
degree -inf.  This is the base layer for `RatFunc`.
"""

from fractions import Fraction

NEG_INF = float("-inf")


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational scalar: {x!r}")


class Poly:
    """A polynomial sum(c_i * z^i) with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [(_frac(c)) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def const(c):
        return Poly([_frac(c)])

    @staticmethod
    def var():
        return Poly([0, 1])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def is_const(self):
        return len(self.coeffs) <= 1

    def const_value(self):
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, q):
        q = _frac(q)
        if q == 0:
            return Poly()
        return Poly([c * q for c in self.coeffs])

    def __pow__(self, m):
        if m < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(1)
        base = self
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def divmod(self, other):
        """Exact Euclidean division; `other` must be nonzero."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = []
        rem = list(self.coeffs)
        d, lead = other.degree, other.leading
        while len(rem) - 1 >= d and rem:
            c = rem[-1] / lead
            q.append(c)
            k = len(rem) - 1 - d
            for i, oc in enumerate(other.coeffs):
                rem[k + i] -= c * oc
            rem.pop()
            while rem and rem[-1] == 0 and len(rem) - 1 >= d:
                q.append(Fraction(0))
                rem.pop()
        q.reverse()
        return Poly(q), Poly(rem)

    def gcd(self, other):
        """Monic gcd via the Euclidean algorithm."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a.scale(1 / a.leading)

    def derivative(self):
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x):
        """Horner evaluation at a Fraction or at any ring element.

        For ring elements, `x` must support +, * and scaling by Fraction;
        the result starts from the top coefficient times the ring's one.
        """
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = None
        for c in reversed(self.coeffs):
            if acc is None:
                acc = x.one().scale(c)
            else:
                acc = acc * x + x.one().scale(c)
        return acc if acc is not None else x.zero()

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"Poly({self})"


def render_coeff(q):
    return str(q)


def render_poly(p, var="z"):
    """Descending-degree rendering, parseable by the spec-file grammar."""
    if p.is_zero():
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            term = render_coeff(c)
        else:
            v = var if i == 1 else f"{var}^{i}"
            if c == 1:
                term = v
            elif c == -1:
                term = f"-{v}"
            else:
                term = f"{render_coeff(c)}*{v}"
        if not parts:
            parts.append(term)
        elif term.startswith("-"):
            parts.append(" - " + term[1:])
        else:
            parts.append(" + " + term)
    return "".join(parts)
