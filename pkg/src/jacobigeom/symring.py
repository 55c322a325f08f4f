"""Exact exp-polynomial coefficient ring.

An :class:`ExpPoly` is a finite sum of terms ``c * x^a * exp(lam . x)`` with
``c`` and ``lam`` rational and ``a`` a vector of nonnegative integers.  The
ring is closed under sums, products, partial derivatives and substitution
of affine maps into the exponentials, and zero-testing is structural.
"""
import math
import os
import re
from fractions import Fraction

if os.environ.get("JACOBIGEOM_PURE"):
    from ._pykernel import add_terms, mul_terms, scale_terms
    KERNEL = "python"
else:
    try:
        from ._ckernel import add_terms, mul_terms, scale_terms
        KERNEL = "compiled"
    except ImportError:  # extension not built
        from ._pykernel import add_terms, mul_terms, scale_terms
        KERNEL = "python"

DEFAULT_WIDTH = Fraction(1, 10 ** 30)


class StructuralError(ValueError):
    """Operands live on different patches, or an index or grade is invalid."""


class UnsupportedSubstitution(ValueError):
    """A substitution would leave the exp-polynomial ring."""


class SingularMatrix(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, msg, text="", pos=0, token=""):
        self.text = text
        self.pos = pos
        self.token = token
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__("%s at line %d, column %d (token %r)"
                         % (msg, self.line, self.column, token))


def _q(c):
    """Coerce to an exact rational, keeping ints as ints."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return _q(Fraction(c))
    raise TypeError("exact rational expected, got %r" % (c,))


class PatchVars:
    """Ordered, distinct coordinate names of a patch."""

    __slots__ = ("names", "_index")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise StructuralError("duplicate variable names in %r" % (names,))
        for n in names:
            if not isinstance(n, str) or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise StructuralError("bad variable name %r" % (n,))
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other):
        return isinstance(other, PatchVars) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "PatchVars(%r)" % (self.names,)

    def index(self, v):
        if isinstance(v, int):
            if 0 <= v < len(self.names):
                return v
            raise StructuralError("variable index %d out of range" % v)
        try:
            return self._index[v]
        except KeyError:
            raise StructuralError("unknown variable %r on %r" % (v, self.names)) from None

    def extend(self, *names):
        return PatchVars(self.names + tuple(names))

    # constructors
    def zero(self):
        return ExpPoly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = _q(c)
        n = len(self.names)
        return ExpPoly(self, {((0,) * n, (0,) * n): c} if c else {})

    def var(self, v):
        i = self.index(v)
        n = len(self.names)
        mono = tuple(1 if j == i else 0 for j in range(n))
        return ExpPoly(self, {((0,) * n, mono): 1})

    def vars(self):
        return [self.var(i) for i in range(len(self.names))]

    def exp(self, lam):
        """``exp(lam . x)`` where ``lam`` maps names (or indices) to rationals."""
        n = len(self.names)
        ev = [0] * n
        for k, c in dict(lam).items():
            ev[self.index(k)] = _q(c)
        return ExpPoly(self, {(tuple(ev), (0,) * n): 1})

    def parse(self, text):
        return parse_expr(text, self)


class Interval:
    """Closed rational interval ``[lo, hi]``."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError("empty interval")
        self.lo, self.hi = lo, hi

    @property
    def width(self):
        return self.hi - self.lo

    def contains(self, x):
        return self.lo <= x <= self.hi

    def __add__(self, other):
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        return Interval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Interval):
            ps = [self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi]
            return Interval(min(ps), max(ps))
        a, b = self.lo * other, self.hi * other
        return Interval(min(a, b), max(a, b))

    __rmul__ = __mul__

    def __repr__(self):
        return "Interval(%s, %s)" % (self.lo, self.hi)


def _floor_dyadic(x, bits):
    return Fraction(math.floor(x * (1 << bits)), 1 << bits)


def _ceil_dyadic(x, bits):
    return Fraction(math.ceil(x * (1 << bits)), 1 << bits)


def exp_enclosure(q, width=DEFAULT_WIDTH):
    """Rational interval containing ``exp(q)`` with width at most ``width``.

    Halve the argument until ``|r| <= 1/2``, sum the Taylor series of
    ``exp(r)`` and bound the tail by twice the first omitted term, then
    square back up with outward dyadic rounding.
    """
    q = Fraction(q)
    if q == 0:
        return Interval(1)
    k = 0
    while abs(q) > Fraction(1, 2) * (1 << k):
        k += 1
    r = q / (1 << k)
    bits = 64 + max(0, int(abs(q)) * 2)
    while True:
        prec = bits + 2 * k + 8
        eps = Fraction(1, 1 << prec)
        s, term, n = Fraction(0), Fraction(1), 0
        while True:
            s += term
            n += 1
            term = term * r / n
            if abs(term) < eps:
                break
        # tail sum_{j>=n} |r|^j/j! <= |term| / (1 - |r|/(n+1)) <= 2|term|
        rem = 2 * abs(term)
        lo = _floor_dyadic(s - rem, prec)
        hi = _ceil_dyadic(s + rem, prec)
        for _ in range(k):
            lo = _floor_dyadic(lo * lo, prec)
            hi = _ceil_dyadic(hi * hi, prec)
        if hi - lo <= width:
            return Interval(lo, hi)
        bits *= 2


class ExpPoly:
    """Element of the exp-polynomial ring over a :class:`PatchVars`.

    ``terms`` maps ``(expvec, monomial)`` to a nonzero rational.  The dict
    itself is the normal form; :meth:`sorted_terms` gives the canonical
    lexicographic order used for printing.
    """

    __slots__ = ("patch", "terms", "_hash")

    def __init__(self, patch, terms):
        self.patch = patch
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, patch, items):
        """Build from ``(coef, monomial, expvec)`` triples, merging keys."""
        n = len(patch)
        out = {}
        for c, mono, ev in items:
            mono = tuple(int(a) for a in mono)
            ev = tuple(_q(Fraction(l)) for l in ev)
            if len(mono) != n or len(ev) != n or min(mono, default=0) < 0:
                raise StructuralError("term shape does not match patch")
            out = add_terms(out, {(ev, mono): _q(Fraction(c))})
        return cls(patch, out)

    # coercion helpers
    def _coerce(self, other):
        if isinstance(other, ExpPoly):
            if other.patch is not self.patch and other.patch != self.patch:
                raise StructuralError("mismatched patches %r and %r"
                                      % (self.patch.names, other.patch.names))
            return other
        if isinstance(other, (int, Fraction)):
            return self.patch.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExpPoly(self.patch, add_terms(self.terms, other.terms, 1))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExpPoly(self.patch, add_terms(self.terms, other.terms, -1))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return ExpPoly(self.patch, scale_terms(self.terms, -1))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return ExpPoly(self.patch, {})
        return ExpPoly(self.patch, mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise StructuralError("only nonnegative integer powers are in the ring")
        out = self.patch.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        return ExpPoly(self.patch, scale_terms(self.terms, _q(c)))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.patch.const(other)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self.patch == other.patch and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.patch, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        n = len(self.patch)
        return all(k == ((0,) * n, (0,) * n) for k in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise StructuralError("not a constant: %s" % self)
        return Fraction(next(iter(self.terms.values()), 0))

    def is_unit(self):
        """A single term ``c * exp(lam . x)``, which never vanishes."""
        if len(self.terms) != 1:
            return False
        (ev, mono), = self.terms
        return not any(mono)

    def is_linear_form(self):
        """No exponentials, no constant part, total degree exactly one."""
        for ev, mono in self.terms:
            if any(ev) or sum(mono) != 1:
                return False
        return True

    def sorted_terms(self):
        return sorted(self.terms.items())

    def free_variables(self):
        used = set()
        for ev, mono in self.terms:
            for i, (l, a) in enumerate(zip(ev, mono)):
                if l or a:
                    used.add(self.patch.names[i])
        return used

    # calculus
    def diff(self, v):
        i = self.patch.index(v)
        out = {}
        for (ev, mono), c in self.terms.items():
            part = {}
            a = mono[i]
            if a:
                m2 = mono[:i] + (a - 1,) + mono[i + 1:]
                part[(ev, m2)] = c * a
            if ev[i]:
                part[(ev, mono)] = part.get((ev, mono), 0) + c * ev[i]
            out = add_terms(out, {k: _q(Fraction(x)) for k, x in part.items() if x})
        return ExpPoly(self.patch, out)

    def embed(self, patch):
        """Re-express on a patch whose names include all names used here."""
        if patch == self.patch:
            return self
        pos = [patch.index(n) for n in self.patch.names]
        m = len(patch)
        out = {}
        for (ev, mono), c in self.terms.items():
            e2, m2 = [0] * m, [0] * m
            for i, j in enumerate(pos):
                e2[j] = ev[i]
                m2[j] = mono[i]
            out[(tuple(e2), tuple(m2))] = c
        return ExpPoly(patch, out)

    def subs(self, mapping, target=None):
        """Substitute ExpPolys (on ``target``) for variables.

        Unmapped variables go to the same-named variable of ``target``.
        Variables that occur inside an exponential need an image that is a
        linear form (no constant, no exponentials), else
        :class:`UnsupportedSubstitution`.
        """
        if target is None:
            imgs = [m for m in mapping.values() if isinstance(m, ExpPoly)]
            target = imgs[0].patch if imgs else self.patch
        images = []
        for i, name in enumerate(self.patch.names):
            img = mapping.get(name, mapping.get(i))
            if img is None:
                if name in target._index:
                    img = target.var(name)
                else:
                    img = None
            elif not isinstance(img, ExpPoly):
                img = target.const(img)
            elif img.patch != target:
                raise StructuralError("substitution image on the wrong patch")
            images.append(img)
        cache = {}

        def power(i, a):
            key = (i, a)
            if key not in cache:
                cache[key] = images[i] ** a
            return cache[key]

        n = len(target)
        result = {}
        for (ev, mono), c in self.terms.items():
            acc = target.const(c)
            lam = [0] * n
            for i, (l, a) in enumerate(zip(ev, mono)):
                if not (l or a):
                    continue
                if images[i] is None:
                    raise StructuralError("variable %r has no image on %r"
                                          % (self.patch.names[i], target.names))
                if a:
                    acc = acc * power(i, a)
                if l:
                    img = images[i]
                    if not img.is_linear_form() and not img.is_zero():
                        raise UnsupportedSubstitution(
                            "exp argument image %s of %s is not a linear form"
                            % (img, self.patch.names[i]))
                    for (_, m2), c2 in img.terms.items():
                        lam[m2.index(1)] += l * c2
            if any(lam):
                acc = acc * ExpPoly(target, {(tuple(_q(Fraction(x)) for x in lam), (0,) * n): 1})
            result = add_terms(result, acc.terms)
        return ExpPoly(target, result)

    def evaluate(self, point, exp_mode="exact_when_integerless", width=DEFAULT_WIDTH):
        """Value at a rational point.

        Exact (a Fraction) when every exponent vanishes at the point and
        ``exp_mode`` is ``"exact_when_integerless"``; otherwise an
        :class:`Interval` of width at most ``width``.
        """
        if isinstance(point, dict):
            pt = [Fraction(point[n]) for n in self.patch.names]
        else:
            pt = [Fraction(p) for p in point]
            if len(pt) != len(self.patch):
                raise StructuralError("point dimension does not match patch")
        groups = {}
        for (ev, mono), c in self.terms.items():
            v = Fraction(c)
            for p, a in zip(pt, mono):
                if a:
                    v *= p ** a
            q = sum((l * p for l, p in zip(ev, pt) if l), Fraction(0))
            groups[q] = groups.get(q, 0) + v
        exact = sum((v for q, v in groups.items() if q == 0), Fraction(0))
        rest = [(q, v) for q, v in groups.items() if q != 0 and v != 0]
        if not rest:
            return Interval(exact) if exp_mode == "numeric" else exact
        total = Interval(exact)
        for q, v in rest:
            w = width / (len(rest) * abs(v))
            total = total + exp_enclosure(q, w) * v
        return total

    # printing
    def __str__(self):
        return to_string(self)

    def __repr__(self):
        return "ExpPoly(%s)" % to_string(self)


def _fmt_q(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def _fmt_linear(names, ev):
    parts = []
    for n, l in zip(names, ev):
        if not l:
            continue
        l = Fraction(l)
        mag = abs(l)
        body = n if mag == 1 else "%s*%s" % (_fmt_q(mag), n)
        parts.append(("-" if l < 0 else "+", body))
    s = "".join(sg + b for sg, b in parts)
    return s[1:] if s.startswith("+") else s


def to_string(f):
    """Canonical text form in the expression grammar."""
    if not f.terms:
        return "0"
    names = f.patch.names
    out = []
    for (ev, mono), c in f.sorted_terms():
        factors = []
        for n, a in zip(names, mono):
            if a == 1:
                factors.append(n)
            elif a:
                factors.append("%s^%d" % (n, a))
        if any(ev):
            factors.append("exp(%s)" % _fmt_linear(names, ev))
        mag = abs(Fraction(c))
        if factors:
            body = "*".join(([_fmt_q(mag)] if mag != 1 else []) + factors)
        else:
            body = _fmt_q(mag)
        out.append(("-" if c < 0 else "+", body))
    s = " ".join("%s %s" % p for p in out)
    if s.startswith("+ "):
        return s[2:]
    return "-" + s[2:]


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1):
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            if m.group(3) not in "+-*^()":
                raise ParseError("unexpected character", text, m.start(3), m.group(3))
            toks.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, patch):
        self.text = text
        self.patch = patch
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2], tok[1])

    def expect(self, val):
        t = self.peek()
        if t[1] != val or t[0] == "num":
            self.error("expected %r" % val)
        return self.take()

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return e

    def expr(self):
        e = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            e = e + t if op == "+" else e - t
        return e

    def term(self):
        e = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            e = e * self.unary()
        return e

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            t = self.peek()
            if t[0] != "num" or "/" in t[1]:
                self.error("exponent must be a nonnegative integer")
            self.take()
            base = base ** int(t[1])
        return base

    def atom(self):
        t = self.peek()
        if t[0] == "num":
            self.take()
            return self.patch.const(Fraction(t[1]))
        if t[0] == "name":
            self.take()
            if t[1] == "exp":
                self.expect("(")
                start = self.peek()
                arg = self.expr()
                self.expect(")")
                if not (arg.is_zero() or arg.is_linear_form()):
                    self.error("exp argument must be a linear form in the patch variables", start)
                lam = {}
                for (_, mono), c in arg.terms.items():
                    lam[mono.index(1)] = c
                return self.patch.exp(lam)
            if t[1] not in self.patch._index:
                self.error("unknown variable")
            return self.patch.var(t[1])
        if t[:2] == ("op", "("):
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        self.error("unexpected token")


def parse_expr(text, patch):
    """Parse the expression grammar into an :class:`ExpPoly` on ``patch``."""
    return _Parser(text, patch).parse()


class RingMatrix:
    """Rectangular matrix of ExpPolys on a common patch."""

    __slots__ = ("patch", "rows", "cols", "entries")

    def __init__(self, patch, entries):
        entries = [list(r) for r in entries]
        self.patch = patch
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        for r in entries:
            if len(r) != self.cols:
                raise StructuralError("ragged matrix")
        self.entries = [[e if isinstance(e, ExpPoly) else patch.const(e) for e in r]
                        for r in entries]

    @classmethod
    def identity(cls, patch, n):
        return cls(patch, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, patch, rows, cols):
        return cls(patch, [[0] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (isinstance(other, RingMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise StructuralError("matrix shapes do not compose")
        z = self.patch.zero()
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RingMatrix(self.patch, out)

    def __add__(self, other):
        return RingMatrix(self.patch, [[a + b for a, b in zip(r, s)]
                                       for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return RingMatrix(self.patch, [[a - b for a, b in zip(r, s)]
                                       for r, s in zip(self.entries, other.entries)])

    def scale(self, c):
        return RingMatrix(self.patch, [[a * c for a in r] for r in self.entries])

    def transpose(self):
        return RingMatrix(self.patch, [list(c) for c in zip(*self.entries)] if self.rows else [])

    def is_zero(self):
        return all(not e for r in self.entries for e in r)

    def _minor_det(self, rows, cols, memo):
        key = (rows, cols)
        if key in memo:
            return memo[key]
        if not rows:
            return self.patch.one()
        r = rows[0]
        acc = self.patch.zero()
        for idx, c in enumerate(cols):
            a = self.entries[r][c]
            if not a:
                continue
            sub = self._minor_det(rows[1:], cols[:idx] + cols[idx + 1:], memo)
            acc = acc + a * sub if idx % 2 == 0 else acc - a * sub
        memo[key] = acc
        return acc

    def det(self):
        if self.rows != self.cols:
            raise StructuralError("determinant of a non-square matrix")
        return self._minor_det(tuple(range(self.rows)), tuple(range(self.cols)), {})

    def adjugate(self):
        n = self.rows
        if n != self.cols:
            raise StructuralError("adjugate of a non-square matrix")
        memo = {}
        adj = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                rows = tuple(r for r in range(n) if r != j)
                cols = tuple(c for c in range(n) if c != i)
                m = self._minor_det(rows, cols, memo)
                adj[i][j] = m if (i + j) % 2 == 0 else -m
        return RingMatrix(self.patch, adj)

    def evaluate(self, point, **kw):
        return [[e.evaluate(point, **kw) for e in r] for r in self.entries]

    def __repr__(self):
        return "RingMatrix(%s)" % [[str(e) for e in r] for r in self.entries]


def solve_linear(M, rhs):
    """Cramer solve: return ``(X, det)`` with ``M @ X == det * rhs``."""
    if M.rows != M.cols:
        raise StructuralError("solve_linear needs a square matrix")
    if rhs.rows != M.rows:
        raise StructuralError("right-hand side has the wrong number of rows")
    d = M.det()
    if d.is_zero():
        raise SingularMatrix("determinant vanishes identically")
    return M.adjugate() @ rhs, d
