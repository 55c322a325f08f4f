"""Multivector fields and differential forms on a coordinate patch.

Both kinds store ``{index tuple: ExpPoly}`` with strictly increasing index
tuples into the patch variables.  The Schouten bracket follows the sign
convention in which

* ``[[X, f]] = X(f)``,
* ``[[P, Q]] = (-1)^(pq) [[Q, P]]``,
* ``[[P, Q^R]] = [[P, Q]]^R + (-1)^(q(p+1)) Q^[[P, R]]``.

:func:`schouten_alt` gives the other common convention,
``(-1)^(p+1) [[P, Q]]``.
"""
from .symring import ExpPoly, PatchVars, StructuralError, RingMatrix


def _merge_sign(I, J):
    """Sign and sorted tuple of ``I ^ J``, or ``(0, None)`` on overlap."""
    if set(I) & set(J):
        return 0, None
    inv = 0
    for a in I:
        for b in J:
            if a > b:
                inv += 1
    return (-1 if inv % 2 else 1), tuple(sorted(I + J))


def _remove(idx, I):
    """First-slot contraction of the basis element ``idx`` from ``I``."""
    try:
        k = I.index(idx)
    except ValueError:
        return 0, None
    return (-1 if k % 2 else 1), I[:k] + I[k + 1:]


class _Tensor:
    __slots__ = ("patch", "grade", "coeffs")
    symbol = "?"

    def __init__(self, patch, grade, coeffs=None):
        self.patch = patch
        self.grade = grade
        if (grade < 0 or grade > len(patch)) and coeffs and any(coeffs.values()):
            raise StructuralError("grade %d impossible on a %d-dimensional patch"
                                  % (grade, len(patch)))
        self.coeffs = {}
        for key, f in (coeffs or {}).items():
            if len(key) != grade:
                raise StructuralError("index tuple %r does not match grade %d" % (key, grade))
            if list(key) != sorted(set(key)):
                raise StructuralError("index tuple %r is not strictly increasing" % (key,))
            if f.patch != patch:
                raise StructuralError("coefficient on the wrong patch")
            if f:
                self.coeffs[key] = f

    @classmethod
    def from_dict(cls, patch, data):
        """Build from ``{names or indices: ExpPoly or str}``; reorders with sign."""
        out = {}
        grade = None
        for key, f in data.items():
            if isinstance(key, str):
                key = tuple(k.strip() for k in key.split(",")) if key else ()
            key = tuple(patch.index(k) for k in key)
            if grade is None:
                grade = len(key)
            elif grade != len(key):
                raise StructuralError("mixed grades in tensor data")
            if isinstance(f, str):
                f = patch.parse(f)
            elif not isinstance(f, ExpPoly):
                f = patch.const(f)
            if len(set(key)) != len(key):
                continue
            sign, skey = _merge_sign((), tuple(key))
            perm = sorted(range(len(key)), key=lambda i: key[i])
            inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
            f = f if inv % 2 == 0 else -f
            out[skey] = out[skey] + f if skey in out else f
        return cls(patch, grade or 0, out)

    @classmethod
    def scalar(cls, f):
        return cls(f.patch, 0, {(): f})

    @classmethod
    def zero(cls, patch, grade):
        return cls(patch, grade, {})

    @classmethod
    def basis(cls, patch, *names):
        return cls.from_dict(patch, {tuple(names): patch.one()})

    def _same(self, other):
        if type(other) is not type(self):
            raise StructuralError("cannot combine %s with %s"
                                  % (type(self).__name__, type(other).__name__))
        if other.patch != self.patch:
            raise StructuralError("mismatched patches")

    def __add__(self, other):
        self._same(other)
        if other.grade != self.grade:
            if not other.coeffs:
                return self
            if not self.coeffs:
                return other
            raise StructuralError("cannot add grades %d and %d" % (self.grade, other.grade))
        out = dict(self.coeffs)
        for k, f in other.coeffs.items():
            out[k] = out[k] + f if k in out else f
        return type(self)(self.patch, self.grade, out)

    def __neg__(self):
        return type(self)(self.patch, self.grade, {k: -f for k, f in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, f):
        if not isinstance(f, ExpPoly):
            f = self.patch.const(f)
        return type(self)(self.patch, self.grade, {k: g * f for k, g in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return self.patch == other.patch
        return (self.patch == other.patch and self.grade == other.grade
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((type(self).__name__, self.grade, frozenset(self.coeffs.items())))

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, key):
        if isinstance(key, (str, int)):
            key = (key,)
        key = tuple(self.patch.index(k) for k in key)
        sign, skey = _merge_sign((), key)
        if len(set(key)) != len(key):
            return self.patch.zero()
        perm = sorted(range(len(key)), key=lambda i: key[i])
        inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
        f = self.coeffs.get(skey, self.patch.zero())
        return -f if inv % 2 else f

    def as_function(self):
        if self.grade != 0:
            raise StructuralError("grade %d tensor is not a function" % self.grade)
        return self.coeffs.get((), self.patch.zero())

    def map_coeffs(self, fn, patch=None):
        patch = patch or self.patch
        return type(self)(patch, self.grade, {k: fn(f) for k, f in self.coeffs.items()})

    def embed(self, patch):
        pos = [patch.index(n) for n in self.patch.names]
        out = {}
        for k, f in self.coeffs.items():
            key = tuple(pos[i] for i in k)
            sign, skey = _merge_sign((), key)
            perm = sorted(range(len(key)), key=lambda i: key[i])
            inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
            g = f.embed(patch)
            out[skey] = -g if inv % 2 else g
        return type(self)(patch, self.grade, out)

    def subs(self, mapping, target):
        """Substitute into the coefficients only (no change of frame)."""
        if len(target) != len(self.patch):
            raise StructuralError("coefficient substitution needs equal-dimensional patches")
        return type(self)(target, self.grade,
                          {k: f.subs(mapping, target) for k, f in self.coeffs.items()})

    def evaluate(self, point, **kw):
        return {k: f.evaluate(point, **kw) for k, f in sorted(self.coeffs.items())}

    def __str__(self):
        if not self.coeffs:
            return "0"
        names = self.patch.names
        parts = []
        for k in sorted(self.coeffs):
            f = self.coeffs[k]
            basis = "∧".join(self.symbol + names[i] for i in k)
            s = str(f)
            if not basis:
                parts.append(s)
            elif s == "1":
                parts.append(basis)
            elif len(f.terms) == 1 and not s.startswith("-"):
                parts.append("%s*%s" % (s, basis))
            else:
                parts.append("(%s)*%s" % (s, basis))
        return " + ".join(parts)

    def __repr__(self):
        return "%s(%s)" % (type(self).__name__, self)


class Multivector(_Tensor):
    """Grade-k skew multivector field."""
    __slots__ = ()
    symbol = "∂"

    def apply(self, f):
        """``X(f)`` for a vector field."""
        if self.grade != 1:
            raise StructuralError("only vector fields act on functions")
        acc = self.patch.zero()
        for (i,), c in self.coeffs.items():
            acc = acc + c * f.diff(i)
        return acc

    def components(self):
        if self.grade != 1:
            raise StructuralError("components() is for vector fields")
        return [self.coeffs.get((i,), self.patch.zero()) for i in range(len(self.patch))]


class DifferentialForm(_Tensor):
    """Grade-k differential form."""
    __slots__ = ()
    symbol = "d"

    def components(self):
        if self.grade != 1:
            raise StructuralError("components() is for 1-forms")
        return [self.coeffs.get((i,), self.patch.zero()) for i in range(len(self.patch))]


def vector(patch, comps):
    """Vector field from a list of component ExpPolys."""
    return Multivector(patch, 1, {(i,): c for i, c in enumerate(comps) if c})


def covector(patch, comps):
    return DifferentialForm(patch, 1, {(i,): c for i, c in enumerate(comps) if c})


def wedge(P, Q):
    P._same(Q)
    out = {}
    for I, f in P.coeffs.items():
        for J, g in Q.coeffs.items():
            s, K = _merge_sign(I, J)
            if not s:
                continue
            h = f * g
            if s < 0:
                h = -h
            out[K] = out[K] + h if K in out else h
    return type(P)(P.patch, P.grade + Q.grade, out)


def _contract(A, B):
    """Contract decomposable basis tensor ``A`` into ``B``, ``A``'s slots in order."""
    sign = 1
    for a in A:
        s, B = _remove(a, B)
        if not s:
            return 0, None
        sign *= s
    return sign, B


def interior_product(a, b):
    """``i(a) b``: contract ``a`` into the leading slots of ``b``.

    ``a`` and ``b`` must be of opposite kinds.  For a vector ``X`` and a form
    ``w`` this is ``w(X, ...)``; for a 1-form ``w`` and a multivector ``P`` it
    is ``P(w, ...)``.  Higher ``a`` contracts its factors in order.
    """
    kinds = {type(a), type(b)}
    if kinds != {Multivector, DifferentialForm}:
        raise StructuralError("interior product needs a multivector and a form")
    if a.patch != b.patch:
        raise StructuralError("mismatched patches")
    if a.grade > b.grade:
        if not a.coeffs or not b.coeffs:
            return type(b).zero(b.patch, 0)
        raise StructuralError("cannot contract grade %d into grade %d" % (a.grade, b.grade))
    out = {}
    for A, f in a.coeffs.items():
        for B, g in b.coeffs.items():
            s, K = _contract(A, B)
            if not s:
                continue
            h = f * g if s > 0 else -(f * g)
            out[K] = out[K] + h if K in out else h
    return type(b)(b.patch, b.grade - a.grade, out)


def pair(P, *forms):
    """``P(w1, ..., wp)`` for a p-vector and 1-forms; ``w(X)`` style too."""
    if isinstance(P, DifferentialForm):
        T = P
        for X in forms:
            T = interior_product(X, T)
        return T.as_function() if T.grade == 0 else T
    T = P
    for w in forms:
        T = interior_product(w, T)
    return T.as_function() if T.grade == 0 else T


def sharp(P, w):
    """``#_P w`` with ``v(#_P w) = P(w, v)``."""
    return interior_product(w, P)


def de_rham(w):
    if not isinstance(w, DifferentialForm):
        raise StructuralError("de Rham differential acts on forms")
    out = {}
    n = len(w.patch)
    for I, f in w.coeffs.items():
        for v in range(n):
            df = f.diff(v)
            if not df:
                continue
            s, K = _merge_sign((v,), I)
            if not s:
                continue
            h = df if s > 0 else -df
            out[K] = out[K] + h if K in out else h
    return DifferentialForm(w.patch, w.grade + 1, out)


def differential(f):
    """``d f`` of an ExpPoly as a 1-form."""
    return de_rham(DifferentialForm.scalar(f))


def _bracket_terms(p, I, f, J, g, patch):
    """Bracket of ``f d_I`` (grade p) with ``g d_J``, as a dict."""
    out = {}

    def put(K, h, s):
        if not s or not h:
            return
        h = h if s > 0 else -h
        out[K] = out[K] + h if K in out else h

    # [[f d_I, g]] ^ d_J, where [[P, g]] = i(dg) P
    for k, a in enumerate(I):
        dg = g.diff(a)
        if not dg:
            continue
        rest = I[:k] + I[k + 1:]
        s, K = _merge_sign(rest, J)
        put(K, f * dg, s * (-1 if k % 2 else 1))
    # g [[f d_I, d_J]], expanded by Leibniz over the factors of d_J;
    # [[P, d_b]] = (-1)^p d_b(f) d_I
    for k, b in enumerate(J):
        df = f.diff(b)
        if not df:
            continue
        sgn = -1 if ((k * (p + 1)) + p) % 2 else 1
        s1, K1 = _merge_sign(J[:k], I)
        if not s1:
            continue
        s2, K = _merge_sign(K1, J[k + 1:])
        put(K, g * df, sgn * s1 * s2)
    return out


def schouten_bracket(P, Q):
    if not isinstance(P, Multivector) or not isinstance(Q, Multivector):
        raise StructuralError("Schouten bracket acts on multivectors")
    P._same(Q)
    out = {}
    for I, f in P.coeffs.items():
        for J, g in Q.coeffs.items():
            for K, h in _bracket_terms(P.grade, I, f, J, g, P.patch).items():
                out[K] = out[K] + h if K in out else h
    grade = P.grade + Q.grade - 1
    if grade < 0:
        return Multivector(P.patch, 0, {})
    return Multivector(P.patch, grade, out)


def schouten_alt(P, Q):
    """The alternative convention ``(-1)^(p+1) [[P, Q]]``."""
    B = schouten_bracket(P, Q)
    return B if P.grade % 2 else -B


def lie_derivative(X, T):
    if not isinstance(X, Multivector) or X.grade != 1:
        if not (isinstance(X, Multivector) and not X.coeffs):
            raise StructuralError("Lie derivative needs a vector field")
        return T.map_coeffs(lambda f: f.patch.zero()) if not isinstance(T, ExpPoly) else T.patch.zero()
    if isinstance(T, ExpPoly):
        return X.apply(T)
    if isinstance(T, DifferentialForm):
        if T.grade == 0:
            return DifferentialForm.scalar(X.apply(T.as_function()))
        a = interior_product(X, de_rham(T))
        b = de_rham(interior_product(X, T))
        return a + b
    if T.grade == 0:
        return Multivector.scalar(X.apply(T.as_function()))
    return schouten_bracket(X, T)


class PatchMap:
    """Explicit smooth map between patches, one ExpPoly per target coordinate."""

    def __init__(self, source, target, components, inverse=None):
        comps = list(components)
        if len(comps) != len(target):
            raise StructuralError("need one component per target variable")
        self.source = source
        self.target = target
        self.components = [c if isinstance(c, ExpPoly) else source.const(c) for c in comps]
        for c in self.components:
            if c.patch != source:
                raise StructuralError("map component on the wrong patch")
        self.inverse = inverse

    @classmethod
    def parse(cls, source, target, texts):
        return cls(source, target, [source.parse(t) for t in texts])

    @classmethod
    def identity(cls, patch):
        m = cls(patch, patch, patch.vars())
        m.inverse = m
        return m

    def pullback_function(self, f):
        """``f o phi`` for ``f`` on the target patch."""
        return f.subs(dict(zip(self.target.names, self.components)), self.source)

    def compose(self, other):
        """``self o other``."""
        if other.target != self.source:
            raise StructuralError("maps do not compose")
        comps = [other.pullback_function(c) for c in self.components]
        inv = None
        if self.inverse is not None and other.inverse is not None:
            inv = PatchMap(self.target, other.source,
                           [self.inverse.pullback_function(c) for c in other.inverse.components])
        out = PatchMap(other.source, self.target, comps, inv)
        if inv is not None:
            inv.inverse = out
        return out

    def jacobian(self):
        return RingMatrix(self.source, [[c.diff(v) for v in self.source.names]
                                        for c in self.components])

    def is_identity(self):
        return (self.source == self.target
                and all(c == self.source.var(i) for i, c in enumerate(self.components)))

    def check_inverse(self):
        if self.inverse is None:
            return False
        inv = self.inverse
        if inv.source != self.target or inv.target != self.source:
            return False
        return self.compose(_plain(inv)).is_identity() and _plain(inv).compose(_plain(self)).is_identity()

    def __eq__(self, other):
        return (isinstance(other, PatchMap) and self.source == other.source
                and self.target == other.target and self.components == other.components)

    def __repr__(self):
        return "PatchMap(%s -> %s: %s)" % (self.source.names, self.target.names,
                                           [str(c) for c in self.components])


def _plain(m):
    return PatchMap(m.source, m.target, m.components)


def pushforward(T, phi):
    """Push a multivector (or function) forward along an invertible map."""
    if phi.inverse is None or not phi.check_inverse():
        raise StructuralError("pushforward needs a verified inverse map")
    inv = phi.inverse
    back = dict(zip(phi.source.names, inv.components))

    def along(f):
        return f.subs(back, phi.target)

    if isinstance(T, ExpPoly):
        return along(T)
    if T.patch != phi.source:
        raise StructuralError("tensor not on the map's source patch")
    tgt = phi.target
    J = phi.jacobian()
    images = []
    for i in range(len(phi.source)):
        images.append(Multivector(tgt, 1, {(j,): along(J[j, i])
                                           for j in range(len(tgt)) if J[j, i]}))
    total = Multivector.zero(tgt, T.grade)
    for I, f in T.coeffs.items():
        acc = Multivector.scalar(along(f))
        for i in I:
            acc = wedge(acc, images[i])
        total = total + acc
    return total


def pullback_form(w, phi):
    """Pull a differential form back along ``phi`` (no inverse needed)."""
    if w.patch != phi.target:
        raise StructuralError("form not on the map's target patch")
    src = phi.source
    J = phi.jacobian()
    rows = []
    for j in range(len(phi.target)):
        rows.append(DifferentialForm(src, 1, {(i,): J[j, i] for i in range(len(src)) if J[j, i]}))
    total = DifferentialForm.zero(src, w.grade)
    for I, f in w.coeffs.items():
        acc = DifferentialForm.scalar(phi.pullback_function(f))
        for j in I:
            acc = wedge(acc, rows[j])
        total = total + acc
    return total
