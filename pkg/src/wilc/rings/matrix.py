"""Square matrices over any exact coefficient ring in this package.

Used as Mat_r(RatFunc) for the motivating noncommutative differential
ring, Mat_r(QMRat) for matrix quasimodular values, and Mat_r(MVRat) in
the Siegel layer.  Inversion is adjugate-over-determinant, so the round
trip x * x^-1 = I is exact whenever det(x) != 0.
"""

from fractions import Fraction

from ..errors import RingMismatch, SingularMatrix


class Mat:
    """An r x r matrix with entries in one coefficient ring."""

    __slots__ = ("entries", "r")

    def __init__(self, entries):
        rows = tuple(tuple(row) for row in entries)
        r = len(rows)
        if r == 0 or any(len(row) != r for row in rows):
            raise ValueError("matrix must be square and nonempty")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "r", r)

    def __setattr__(self, *a):
        raise AttributeError("Mat is immutable")

    @staticmethod
    def identity(sample, r):
        """Identity matrix whose entries live in sample's ring."""
        one, zero = sample.one(), sample.zero()
        return Mat([[one if i == j else zero for j in range(r)] for i in range(r)])

    @staticmethod
    def scalar(elem, r):
        """elem * I_r, embedding a scalar into the matrix ring."""
        zero = elem.zero()
        return Mat([[elem if i == j else zero for j in range(r)] for i in range(r)])

    @staticmethod
    def zeros(sample, r):
        zero = sample.zero()
        return Mat([[zero for _ in range(r)] for _ in range(r)])

    def ring_key(self):
        return ("mat", self.r, self.entries[0][0].ring_key())

    def entry_sample(self):
        return self.entries[0][0]

    def zero(self):
        return Mat.zeros(self.entry_sample(), self.r)

    def one(self):
        return Mat.identity(self.entry_sample(), self.r)

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.r == other.r and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash(self.entries)

    def _check(self, other):
        if not isinstance(other, Mat) or other.r != self.r:
            raise RingMismatch("matrix size or ring mismatch")

    def map(self, f):
        return Mat([[f(e) for e in row] for row in self.entries])

    def __add__(self, other):
        self._check(other)
        return Mat([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return self.map(lambda e: -e)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        r = self.r
        bt = list(zip(*other.entries))
        out = []
        for row in self.entries:
            out_row = []
            for col in bt:
                acc = None
                for a, b in zip(row, col):
                    term = a * b
                    acc = term if acc is None else acc + term
                out_row.append(acc)
            out.append(out_row)
        return Mat(out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, q):
        """Multiply every entry by a rational number."""
        return self.map(lambda e: e.scale(q))

    def scale_elem(self, s):
        """Left-multiply by a scalar ring element (s central by intent)."""
        return self.map(lambda e: s * e)

    def derive(self):
        return self.map(lambda e: e.derive())

    def compose(self, lam):
        return self.map(lambda e: e.compose(lam))

    def transpose(self):
        return Mat(list(zip(*self.entries)))

    def trace(self):
        acc = self.entries[0][0]
        for i in range(1, self.r):
            acc = acc + self.entries[i][i]
        return acc

    def minor(self, i, j):
        rows = [row[:j] + row[j + 1:] for k, row in enumerate(self.entries) if k != i]
        return Mat(rows)

    def det(self):
        """Laplace expansion; entry rings here are commutative."""
        if self.r == 1:
            return self.entries[0][0]
        if self.r == 2:
            (a, b), (c, d) = self.entries
            return a * d - b * c
        acc = None
        for j in range(self.r):
            e = self.entries[0][j]
            if e.is_zero():
                continue
            term = e * self.minor(0, j).det()
            if j % 2:
                term = -term
            acc = term if acc is None else acc + term
        return acc if acc is not None else self.entry_sample().zero()

    def adjugate(self):
        r = self.r
        if r == 1:
            return Mat([[self.entry_sample().one()]])
        cof = []
        for i in range(r):
            row = []
            for j in range(r):
                m = self.minor(i, j).det()
                if (i + j) % 2:
                    m = -m
                row.append(m)
            cof.append(row)
        return Mat(cof).transpose()

    def inverse(self):
        d = self.det()
        if d.is_zero():
            raise SingularMatrix("matrix determinant vanishes identically")
        dinv = d.inverse()
        return self.adjugate().map(lambda e: dinv * e)

    def __str__(self):
        rows = ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)
        return f"[{rows}]"

    def __repr__(self):
        return f"Mat({self})"
