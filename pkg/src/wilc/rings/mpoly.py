"""Sparse multivariate polynomials over Q and their fractions.

Shared kernel for the quasimodular ring (three generators) and the
genus-2 Siegel model (tau1, tau2, tau3 and the formal constant kappa).
Fractions are kept reduced by content, common monomial factors and
opportunistic exact division; equality is decided by cross-multiplying,
which is exact without needing a full multivariate gcd.
"""

from fractions import Fraction

from ..errors import RingMismatch


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational scalar: {x!r}")


class MPoly:
    """Sparse polynomial {exponent tuple: coefficient} in nvars variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        cleaned = {}
        if terms:
            for exp, c in terms.items():
                c = _frac(c)
                if c:
                    cleaned[tuple(exp)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, *a):
        raise AttributeError("MPoly is immutable")

    @staticmethod
    def const(nvars, c):
        c = _frac(c)
        return MPoly(nvars, {(0,) * nvars: c} if c else {})

    @staticmethod
    def var(nvars, i):
        exp = [0] * nvars
        exp[i] = 1
        return MPoly(nvars, {tuple(exp): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def const_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        return self.terms[(0,) * self.nvars]

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def _check(self, other):
        if not isinstance(other, MPoly) or other.nvars != self.nvars:
            raise RingMismatch("multivariate polynomial arity mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, Fraction(0)) + c
        return MPoly(self.nvars, out)

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MPoly(self.nvars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, q):
        q = _frac(q)
        if not q:
            return MPoly(self.nvars)
        return MPoly(self.nvars, {e: c * q for e, c in self.terms.items()})

    def __pow__(self, m):
        if m < 0:
            raise ValueError("negative power of a polynomial")
        out = MPoly.const(self.nvars, 1)
        base = self
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def derivative(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = out.get(tuple(ne), Fraction(0)) + c * e[i]
        return MPoly(self.nvars, out)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def lead_term(self):
        """Lexicographically largest term (exponent, coefficient)."""
        exp = max(self.terms)
        return exp, self.terms[exp]

    def monomial_content(self):
        """Componentwise min exponent over all terms; None if zero."""
        if not self.terms:
            return None
        mins = None
        for e in self.terms:
            mins = e if mins is None else tuple(min(a, b) for a, b in zip(mins, e))
            if all(m == 0 for m in mins):
                return mins
        return mins

    def shift_down(self, exp):
        return MPoly(self.nvars, {tuple(a - b for a, b in zip(e, exp)): c for e, c in self.terms.items()})

    def exact_div(self, other):
        """Return self/other when the division is exact, else None.

        Long division in lex order with a step budget, so failed attempts
        cannot churn; exact quotients of the sizes seen here fit easily.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_const():
            return self.scale(1 / other.const_value())
        if self.is_zero():
            return MPoly(self.nvars)
        if self.total_degree() < other.total_degree():
            return None
        rem = dict(self.terms)
        lexp, lc = other.lead_term()
        q = {}
        budget = 16 * (len(self.terms) + len(other.terms)) + 64
        while rem:
            budget -= 1
            if budget < 0:
                return None
            exp = max(rem)
            c = rem[exp]
            qe = tuple(a - b for a, b in zip(exp, lexp))
            if any(x < 0 for x in qe):
                return None
            qc = c / lc
            q[qe] = qc
            for e2, c2 in other.terms.items():
                t = tuple(a + b for a, b in zip(qe, e2))
                nv = rem.get(t, Fraction(0)) - qc * c2
                if nv:
                    rem[t] = nv
                else:
                    rem.pop(t, None)
        return MPoly(self.nvars, q)

    def eval(self, vals):
        """Substitute vals[i] (Fractions or ring elements) for variable i."""
        if len(vals) != self.nvars:
            raise ValueError("wrong number of substitution values")
        numeric = all(isinstance(v, (int, Fraction)) for v in vals)
        pow_cache = [dict() for _ in range(self.nvars)]

        def p(i, k):
            if k == 0:
                return Fraction(1) if numeric else None
            cache = pow_cache[i]
            if k not in cache:
                cache[k] = vals[i] ** k
            return cache[k]

        acc = None
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    f = p(i, k)
                    term = f if term is None else term * f
            if numeric:
                contrib = c if term is None else term * c
            else:
                contrib = vals[0].one().scale(c) if term is None else term.scale(c)
            acc = contrib if acc is None else acc + contrib
        if acc is None:
            return Fraction(0) if numeric else vals[0].zero()
        return acc

    def render(self, names):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                term = str(c)
            elif c == 1:
                term = "*".join(factors)
            elif c == -1:
                term = "-" + "*".join(factors)
            else:
                term = str(c) + "*" + "*".join(factors)
            if not parts:
                parts.append(term)
            elif term.startswith("-"):
                parts.append(" - " + term[1:])
            else:
                parts.append(" + " + term)
        return "".join(parts)


class MFrac:
    """Fraction of MPoly values with a factored denominator.

    The denominator is a product of monic-normalized factor powers; the
    factors arising in practice (det(CZ+D) powers, Maurer-Cartan sources,
    input denominators) recur, so reduction is per-factor trial division
    instead of a full multivariate gcd, and addition uses the factored
    lcm so powers of a shared factor never snowball.
    """

    __slots__ = ("num", "dfactors", "_den")

    def __init__(self, num, den=None, _factors=None):
        if not isinstance(num, MPoly):
            raise TypeError("MFrac numerator must be an MPoly")
        factors = []
        if den is not None:
            if den.is_zero():
                raise ZeroDivisionError("fraction with zero denominator")
            factors.append((den, 1))
        if _factors:
            factors.extend(_factors)
        num, factors = _normalize_fraction(num, factors)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "dfactors", factors)
        object.__setattr__(self, "_den", None)

    def __setattr__(self, *a):
        raise AttributeError("MFrac is immutable")

    @property
    def den(self):
        """The expanded denominator polynomial (cached)."""
        if self._den is None:
            acc = MPoly.const(self.num.nvars, 1)
            for f, e in self.dfactors:
                acc = acc * f**e
            object.__setattr__(self, "_den", acc)
        return self._den

    @property
    def nvars(self):
        return self.num.nvars

    def zero(self):
        return MFrac(MPoly(self.nvars))

    def one(self):
        return MFrac(MPoly.const(self.nvars, 1))

    def is_zero(self):
        return self.num.is_zero()

    def is_const(self):
        return self.num.is_const() and not self.dfactors

    def const_value(self):
        return self.num.const_value() / self.den.const_value()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MFrac(MPoly.const(self.nvars, other))
        if not isinstance(other, MFrac) or other.nvars != self.nvars:
            return NotImplemented
        if self.dfactors == other.dfactors:
            return self.num == other.num
        return (self.num * other.den) == (other.num * self.den)

    __hash__ = None

    def _check(self, other):
        if not isinstance(other, MFrac) or other.nvars != self.nvars:
            raise RingMismatch("fraction arity mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MFrac(MPoly.const(self.nvars, other))
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.dfactors == other.dfactors:
            return MFrac(self.num + other.num, _factors=self.dfactors)
        lcm = dict(self.dfactors)
        for f, e in other.dfactors:
            lcm[f] = max(lcm.get(f, 0), e)
        left, right = self.num, other.num
        for f, e in lcm.items():
            mine = dict(self.dfactors).get(f, 0)
            theirs = dict(other.dfactors).get(f, 0)
            if e > mine:
                left = left * f ** (e - mine)
            if e > theirs:
                right = right * f ** (e - theirs)
        return MFrac(left + right, _factors=tuple(lcm.items()))

    __radd__ = __add__

    def __neg__(self):
        return MFrac(-self.num, _factors=self.dfactors)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MFrac(MPoly.const(self.nvars, other))
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        merged = dict(self.dfactors)
        for f, e in other.dfactors:
            merged[f] = merged.get(f, 0) + e
        return MFrac(self.num * other.num, _factors=tuple(merged.items()))

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, q):
        return MFrac(self.num.scale(q), _factors=self.dfactors)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero fraction")
        num = MPoly.const(self.nvars, 1)
        for f, e in self.dfactors:
            num = num * f**e
        return MFrac(num, _factors=((self.num, 1),))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return self * other.inverse()

    def __pow__(self, m):
        if m < 0:
            return self.inverse() ** (-m)
        out = self.one()
        base = self
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def derive_with(self, dfun):
        """Quotient rule for an arbitrary polynomial derivation dfun.

        d(n / prod f_i^e_i) has denominator prod f_i^(e_i + 1) and
        numerator dn * prod f_i - n * sum e_i df_i * prod_{j != i} f_j.
        """
        if not self.dfactors:
            return MFrac(dfun(self.num), _factors=())
        prod_all = MPoly.const(self.nvars, 1)
        for f, _ in self.dfactors:
            prod_all = prod_all * f
        acc = dfun(self.num) * prod_all
        for i, (f, e) in enumerate(self.dfactors):
            rest = MPoly.const(self.nvars, 1)
            for j, (g, _) in enumerate(self.dfactors):
                if j != i:
                    rest = rest * g
            acc = acc - self.num * dfun(f).scale(e) * rest
        bumped = tuple((f, e + 1) for f, e in self.dfactors)
        return MFrac(acc, _factors=bumped)

    def derivative(self, i):
        return self.derive_with(lambda p: p.derivative(i))

    def subs(self, vals):
        """Substitute MFrac (or Fraction) values for the variables."""
        if all(isinstance(v, (int, Fraction)) for v in vals):
            acc = self.num.eval(vals)
            for f, e in self.dfactors:
                acc = acc / f.eval(vals) ** e
            return acc
        acc = self.num.eval(vals)
        for f, e in self.dfactors:
            acc = acc * (f.eval(vals).inverse() ** e)
        return acc

    def render(self, names):
        if not self.dfactors:
            return self.num.render(names)
        ns = self.num.render(names)
        ds = self.den.render(names)
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        return f"{ns}/({ds})"


def _normalize_fraction(num, factors):
    """Canonicalize (num, factor list): cancel, drop constants, sort."""
    if num.is_zero():
        return num, ()
    merged = {}
    for f, e in factors:
        if e == 0:
            continue
        if f.is_zero():
            raise ZeroDivisionError("fraction with zero denominator factor")
        merged[f] = merged.get(f, 0) + e
    out = []
    for f, e in merged.items():
        if f.is_const():
            num = num.scale(Fraction(1) / f.const_value() ** e)
            continue
        # pull out the fraction's monomial/lead normalization per factor
        _, lc = f.lead_term()
        if lc != 1:
            f = f.scale(1 / lc)
            num = num.scale((Fraction(1) / lc) ** e)
        while e > 0:
            q = num.exact_div(f)
            if q is None:
                break
            num = q
            e -= 1
        if e > 0:
            out.append((f, e))
    out.sort(key=lambda fe: (sorted(fe[0].terms.items()), fe[1]))
    return num, tuple(out)
