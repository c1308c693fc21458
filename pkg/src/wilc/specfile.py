"""Line-oriented operator spec files and their expression grammar.

    # comment
    ring matrf r=2
    n = 3
    a1 = [[0, z], [1, 0]]
    a2 = 0
    a3 = 0

Ring kinds: ratfunc, matrf r=<int>, quasimodular, matqm r=<int>; the
variable is fixed as z and the quasimodular generators are E2, E4, E6.
Expressions support rationals p/q, + - * / ^, parentheses and matrix
literals.  Every coefficient must evaluate in the declared ring, which
makes ring mismatch impossible by construction.
"""

from fractions import Fraction

from .errors import CoefficientOutOfRange, SpecSyntax, UndeclaredRing
from .invariants import BinomialOperator
from .rings.matrix import Mat
from .rings.quasimodular import QMRat, QuasiModular
from .rings.ratfunc import RatFunc

_RING_KINDS = ("ratfunc", "matrf", "quasimodular", "matqm")


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text, line_no):
    out = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "#":
            break
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("num", text[i:j], line_no, i + 1))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("name", text[i:j], line_no, i + 1))
            i = j
            continue
        if c in "+-*/^()[],=":
            out.append(Token(c, c, line_no, i + 1))
            i += 1
            continue
        raise SpecSyntax(f"unexpected character {c!r}", line_no, i + 1)
    return out


class _ExprParser:
    """Recursive descent over the token list; produces small AST tuples."""

    def __init__(self, tokens, line_no):
        self.toks = tokens
        self.pos = 0
        self.line = line_no

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, kind=None):
        t = self.peek()
        if t is None:
            raise SpecSyntax("unexpected end of expression", self.line)
        if kind is not None and t.kind != kind:
            raise SpecSyntax(f"expected {kind!r}, got {t.text!r}", t.line, t.col)
        self.pos += 1
        return t

    def parse(self):
        node = self.sum()
        t = self.peek()
        if t is not None:
            raise SpecSyntax(f"trailing input {t.text!r}", t.line, t.col)
        return node

    def sum(self):
        node = self.product()
        while (t := self.peek()) is not None and t.kind in "+-":
            self.take()
            rhs = self.product()
            node = ("add" if t.kind == "+" else "sub", node, rhs)
        return node

    def product(self):
        node = self.unary()
        while (t := self.peek()) is not None and t.kind in "*/":
            self.take()
            rhs = self.unary()
            node = ("mul" if t.kind == "*" else "div", node, rhs)
        return node

    def unary(self):
        t = self.peek()
        if t is not None and t.kind == "-":
            self.take()
            return ("neg", self.unary())
        if t is not None and t.kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t is not None and t.kind == "^":
            self.take()
            sign = 1
            t2 = self.peek()
            if t2 is not None and t2.kind == "-":
                self.take()
                sign = -1
            e = self.take("num")
            return ("pow", base, sign * int(e.text))
        return base

    def atom(self):
        t = self.take()
        if t.kind == "num":
            return ("num", Fraction(int(t.text)))
        if t.kind == "name":
            return ("var", t.text)
        if t.kind == "(":
            node = self.sum()
            self.take(")")
            return node
        if t.kind == "[":
            rows = []
            while True:
                self.take("[")
                row = [self.sum()]
                while self.peek() is not None and self.peek().kind == ",":
                    self.take()
                    row.append(self.sum())
                self.take("]")
                rows.append(row)
                nxt = self.peek()
                if nxt is not None and nxt.kind == ",":
                    self.take()
                    continue
                break
            self.take("]")
            return ("mat", rows)
        raise SpecSyntax(f"unexpected token {t.text!r}", t.line, t.col)


def parse_expression(text, line_no=1):
    toks = _tokenize(text, line_no)
    if not toks:
        raise SpecSyntax("empty expression", line_no)
    return _ExprParser(toks, line_no).parse()


class _Scalar:
    """Evaluation helpers for one scalar ring."""

    def __init__(self, kind):
        self.kind = kind

    def const(self, q):
        return RatFunc.const(q) if self.kind == "ratfunc" else QMRat.const(q)

    def var(self, name, line):
        if self.kind == "ratfunc":
            if name == "z":
                return RatFunc.var()
            raise SpecSyntax(f"unknown symbol {name!r} in a rational-function ring", line)
        if name in ("E2", "E4", "E6"):
            return QMRat.of(QuasiModular.gen(("E2", "E4", "E6").index(name)))
        if name == "z":
            raise SpecSyntax("the quasimodular ring has no variable z", line)
        raise SpecSyntax(f"unknown symbol {name!r} in the quasimodular ring", line)


def _eval(node, scal, r, line):
    """Evaluate to a scalar ring element or an r x r matrix of them."""
    op = node[0]
    if op == "num":
        return scal.const(node[1])
    if op == "var":
        return scal.var(node[1], line)
    if op == "mat":
        if r is None:
            raise SpecSyntax("matrix literal in a scalar ring", line)
        rows = node[1]
        if len(rows) != r or any(len(row) != r for row in rows):
            raise SpecSyntax(f"matrix literal must be {r}x{r}", line)
        ent = [[_scalarize(_eval(e, scal, r, line), line) for e in row] for row in rows]
        return Mat(ent)
    if op == "neg":
        return -_eval(node[1], scal, r, line)
    if op in ("add", "sub", "mul", "div"):
        a = _eval(node[1], scal, r, line)
        b = _eval(node[2], scal, r, line)
        if op == "div":
            if isinstance(b, Mat):
                raise SpecSyntax("division by a matrix is not supported", line)
            try:
                binv = b.inverse()
            except ZeroDivisionError:
                raise SpecSyntax("division by zero", line) from None
            if isinstance(a, Mat):
                return a.map(lambda e: e * binv)
            return a * binv
        a, b = _promote(a, b, r)
        if op == "add":
            return a + b
        if op == "sub":
            return a - b
        return a * b
    if op == "pow":
        a = _eval(node[1], scal, r, line)
        e = node[2]
        if e < 0:
            try:
                a = a.inverse()
            except ZeroDivisionError:
                raise SpecSyntax("inverse of zero", line) from None
            e = -e
        if isinstance(a, Mat):
            out = Mat.identity(a.entry_sample(), a.r)
            for _ in range(e):
                out = out * a
            return out
        return a**e
    raise SpecSyntax(f"unhandled expression node {op!r}", line)


def _promote(a, b, r):
    if isinstance(a, Mat) and not isinstance(b, Mat):
        return a, Mat.scalar(b, a.r)
    if isinstance(b, Mat) and not isinstance(a, Mat):
        return Mat.scalar(a, b.r), b
    return a, b


def _scalarize(x, line):
    if isinstance(x, Mat):
        raise SpecSyntax("nested matrix literal", line)
    return x


def _finalize(value, kind, r, line):
    """Coerce an evaluated expression into the declared ring."""
    if kind in ("matrf", "matqm"):
        if not isinstance(value, Mat):
            value = Mat.scalar(value, r)
        if kind == "matqm":
            return value
        return value
    if isinstance(value, Mat):
        raise SpecSyntax("matrix value in a scalar ring", line)
    if kind == "quasimodular":
        if not value.is_polynomial():
            raise SpecSyntax("nonconstant denominator in the quasimodular ring", line)
        return value.as_polynomial()
    return value


class OperatorSpec:
    """Parsed ring declaration, order and coefficient values."""

    __slots__ = ("kind", "r", "n", "coeffs")

    def __init__(self, kind, r, n, coeffs):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("OperatorSpec is immutable")

    def operator(self):
        return BinomialOperator(self.n, self.coeffs)

    def ring_label(self):
        return self.kind if self.r is None else f"{self.kind} r={self.r}"

    def render(self):
        lines = [f"ring {self.ring_label()}", f"n = {self.n}"]
        for i, c in enumerate(self.coeffs, start=1):
            lines.append(f"a{i} = {c}")
        return "\n".join(lines) + "\n"


def parse_spec(text):
    """Parse a full operator spec file into an OperatorSpec."""
    kind = None
    r = None
    n = None
    raw = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("ring"):
            parts = stripped.split()
            if len(parts) < 2 or parts[1] not in _RING_KINDS:
                raise UndeclaredRing(f"unknown ring declaration {stripped!r} (line {line_no})")
            kind = parts[1]
            if kind in ("matrf", "matqm"):
                if len(parts) != 3 or not parts[2].startswith("r="):
                    raise UndeclaredRing(f"matrix ring needs r=<int> (line {line_no})")
                try:
                    r = int(parts[2][2:])
                except ValueError:
                    raise UndeclaredRing(f"bad matrix size {parts[2]!r} (line {line_no})") from None
                if r < 1:
                    raise CoefficientOutOfRange(f"matrix size must be >= 1 (line {line_no})")
            elif len(parts) != 2:
                raise UndeclaredRing(f"unexpected arguments in {stripped!r} (line {line_no})")
            continue
        if "=" not in stripped:
            raise SpecSyntax(f"expected '<name> = <expr>', got {stripped!r}", line_no)
        name, expr = stripped.split("=", 1)
        name = name.strip()
        if name == "n":
            try:
                n = int(expr.strip())
            except ValueError:
                raise SpecSyntax(f"order must be an integer, got {expr.strip()!r}", line_no) from None
            if n < 1:
                raise CoefficientOutOfRange(f"operator order must be >= 1, got {n} (line {line_no})")
            continue
        if name.startswith("a") and name[1:].isdigit():
            idx = int(name[1:])
            raw[idx] = (expr.strip(), line_no)
            continue
        raise SpecSyntax(f"unknown assignment target {name!r}", line_no)
    if kind is None:
        raise UndeclaredRing("no ring declaration in spec")
    if n is None:
        raise CoefficientOutOfRange("missing operator order n")
    for idx, (_, line_no) in raw.items():
        if not 1 <= idx <= n:
            raise CoefficientOutOfRange(f"coefficient a{idx} outside 1..{n} (line {line_no})")
    scal = _Scalar("ratfunc" if kind in ("ratfunc", "matrf") else "quasimodular")
    coeffs = []
    zero_expr = ("num", Fraction(0))
    for i in range(1, n + 1):
        if i in raw:
            expr_text, line_no = raw[i]
            node = parse_expression(expr_text, line_no)
        else:
            node, line_no = zero_expr, 0
        value = _finalize(_eval(node, scal, r, line_no), kind, r, line_no)
        coeffs.append(value)
    return OperatorSpec(kind, r, n, coeffs)
