"""Trivialized Lie algebroids over a patch, with 1-cocycles.

An algebroid of rank r is given by a global frame ``e_1..e_r``: the anchor
images ``rho(e_a)`` and structure functions ``[[e_a, e_b]] = c^k_ab e_k``.
Everything else follows from the Leibniz rule.  Sections of ``A^k A`` and of
``A^k A*`` are both :class:`Multisection` values; which algebroid
interprets them decides whether they act as multisections or as forms.
"""
from .multivec import Multivector, _merge_sign, _remove, vector, wedge as mv_wedge
from .multivec import schouten_bracket as mv_schouten
from .symring import ExpPoly, PatchVars, StructuralError
from .verdict import Verdict, zero_check


def _sort_sign(key):
    if len(set(key)) != len(key):
        return 0, None
    inv = 0
    for i in range(len(key)):
        for j in range(i + 1, len(key)):
            if key[i] > key[j]:
                inv += 1
    return (-1 if inv % 2 else 1), tuple(sorted(key))


class Multisection:
    """Skew multisection of a rank-r bundle with ExpPoly coefficients."""

    __slots__ = ("base", "rank", "grade", "coeffs")

    def __init__(self, base, rank, grade, coeffs=None):
        self.base = base
        self.rank = rank
        self.grade = grade
        self.coeffs = {}
        for key, f in (coeffs or {}).items():
            if len(key) != grade or list(key) != sorted(set(key)) or (key and key[-1] >= rank):
                raise StructuralError("bad multisection index %r (grade %d, rank %d)"
                                      % (key, grade, rank))
            if not isinstance(f, ExpPoly):
                f = base.const(f)
            if f.patch != base:
                raise StructuralError("coefficient on the wrong patch")
            if f:
                self.coeffs[key] = f

    @classmethod
    def from_list(cls, base, comps):
        comps = [c if isinstance(c, ExpPoly) else base.const(c) for c in comps]
        return cls(base, len(comps), 1, {(a,): c for a, c in enumerate(comps)})

    @classmethod
    def function(cls, f, rank):
        return cls(f.patch, rank, 0, {(): f})

    @classmethod
    def basis(cls, base, rank, *idx):
        s, key = _sort_sign(tuple(idx))
        return cls(base, rank, len(idx), {key: base.const(s)})

    @classmethod
    def zero(cls, base, rank, grade):
        return cls(base, rank, grade, {})

    def components(self):
        if self.grade != 1:
            raise StructuralError("components() is for grade-1 sections")
        z = self.base.zero()
        return [self.coeffs.get((a,), z) for a in range(self.rank)]

    def as_function(self):
        if self.grade != 0:
            raise StructuralError("not a function")
        return self.coeffs.get((), self.base.zero())

    def _same(self, other):
        if not isinstance(other, Multisection) or other.rank != self.rank or other.base != self.base:
            raise StructuralError("incompatible multisections")

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
        return Multisection(self.base, self.rank, self.grade, out)

    def __neg__(self):
        return Multisection(self.base, self.rank, self.grade,
                            {k: -f for k, f in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, f):
        if not isinstance(f, ExpPoly):
            f = self.base.const(f)
        return Multisection(self.base, self.rank, self.grade,
                            {k: g * f for k, g in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Multisection):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return self.base == other.base
        return (self.base == other.base and self.rank == other.rank
                and self.grade == other.grade and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.rank, self.grade, frozenset(self.coeffs.items())))

    def is_zero(self):
        return not self.coeffs

    def map_coeffs(self, fn, base=None):
        base = base or self.base
        return Multisection(base, self.rank, self.grade, {k: fn(f) for k, f in self.coeffs.items()})

    def embed(self, base):
        return self.map_coeffs(lambda f: f.embed(base), base)

    def diff(self, v):
        return self.map_coeffs(lambda f: f.diff(v))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            f = self.coeffs[k]
            basis = "∧".join("e%d" % (a + 1) for a in k)
            s = str(f)
            if not basis:
                parts.append(s)
            elif s == "1":
                parts.append(basis)
            else:
                parts.append("(%s)*%s" % (s, basis))
        return " + ".join(parts)

    def __repr__(self):
        return "Multisection(%s)" % self


def ms_wedge(P, Q):
    P._same(Q)
    out = {}
    for I, f in P.coeffs.items():
        for J, g in Q.coeffs.items():
            s, K = _merge_sign(I, J)
            if not s:
                continue
            h = f * g if s > 0 else -(f * g)
            out[K] = out[K] + h if K in out else h
    return Multisection(P.base, P.rank, P.grade + Q.grade, out)


def ms_interior(a, P):
    """Contract the grade-1 ``a`` into the first slot of ``P``."""
    a._same(P)
    if a.grade != 1:
        raise StructuralError("interior product by a grade-1 section only")
    if P.grade == 0:
        return Multisection(P.base, P.rank, 0, {})
    out = {}
    for (i,), f in a.coeffs.items():
        for J, g in P.coeffs.items():
            s, K = _remove(i, J)
            if not s:
                continue
            h = f * g if s > 0 else -(f * g)
            out[K] = out[K] + h if K in out else h
    return Multisection(P.base, P.rank, P.grade - 1, out)


def ms_pair(a, X):
    """``a(X)`` for grade-1 sections of dual bundles."""
    a._same(X)
    acc = a.base.zero()
    for (i,), f in a.coeffs.items():
        g = X.coeffs.get((i,))
        if g is not None:
            acc = acc + f * g
    return acc


class AlgebroidStructure:
    """Lie algebroid on a trivial bundle of rank ``rank`` over ``base``."""

    def __init__(self, base, rank, anchor, structure=None, frame_names=None, name=None):
        self.base = base
        self.rank = rank
        n = len(base)
        rows = []
        for row in anchor:
            if isinstance(row, Multivector):
                if row.coeffs and row.patch != base:
                    raise StructuralError("anchor field on the wrong patch")
                rows.append(row.components() if row.coeffs else [base.zero()] * n)
            else:
                row = [base.parse(c) if isinstance(c, str) else
                       (c if isinstance(c, ExpPoly) else base.const(c)) for c in row]
                if len(row) != n:
                    raise StructuralError("anchor row length must equal base dimension")
                rows.append(row)
        if len(rows) != rank:
            raise StructuralError("anchor needs one row per frame section")
        self.anchor_matrix = rows
        self.anchor_fields = [vector(base, r) for r in rows]
        self.c = {}
        for (i, j), comps in (structure or {}).items():
            comps = [base.parse(c) if isinstance(c, str) else
                     (c if isinstance(c, ExpPoly) else base.const(c)) for c in comps]
            if len(comps) != rank:
                raise StructuralError("structure vector must have rank entries")
            if i == j:
                if any(comps):
                    raise StructuralError("[[e_i, e_i]] must vanish")
                continue
            if i > j:
                i, j = j, i
                comps = [-c for c in comps]
            if any(comps):
                self.c[(i, j)] = comps
        self.frame_names = list(frame_names or ["e%d" % (a + 1) for a in range(rank)])
        self.name = name

    # frame data
    def structure(self, i, j):
        if i == j:
            return None
        if i < j:
            return self.c.get((i, j))
        comps = self.c.get((j, i))
        return None if comps is None else [-c for c in comps]

    def rho_basis(self, a, f):
        return self.anchor_fields[a].apply(f) if self.anchor_fields[a].coeffs else self.base.zero()

    def section(self, comps):
        return Multisection.from_list(self.base, comps)

    def basis(self, *idx):
        return Multisection.basis(self.base, self.rank, *idx)

    def function(self, f):
        return Multisection.function(f, self.rank)

    def rho(self, X):
        acc = Multivector.zero(self.base, 1)
        for (a,), f in X.coeffs.items():
            if self.anchor_fields[a].coeffs:
                acc = acc + self.anchor_fields[a] * f
        return Multivector(self.base, 1, acc.coeffs)

    def rho_apply(self, X, f):
        acc = self.base.zero()
        for (a,), g in X.coeffs.items():
            acc = acc + g * self.rho_basis(a, f)
        return acc

    # brackets
    def _bracket_basis(self, p, I, f, J, g):
        out = {}

        def put(K, h, s):
            if not s or not h:
                return
            h = h if s > 0 else -h
            out[K] = out[K] + h if K in out else h

        for k, a in enumerate(I):
            rg = self.rho_basis(a, g)
            if not rg:
                continue
            s, K = _merge_sign(I[:k] + I[k + 1:], J)
            put(K, f * rg, s * (-1 if k % 2 else 1))
        for k, b in enumerate(J):
            inner = {}
            rf = self.rho_basis(b, f)
            if rf:
                inner[I] = rf
            for m, a in enumerate(I):
                cs = self.structure(b, a)
                if cs is None:
                    continue
                for l, c in enumerate(cs):
                    if not c:
                        continue
                    s, K = _sort_sign(I[:m] + (l,) + I[m + 1:])
                    if not s:
                        continue
                    h = f * c if s > 0 else -(f * c)
                    inner[K] = inner[K] + h if K in inner else h
            sgn = -1 if (k * (p + 1) + p) % 2 else 1
            for Kin, h in inner.items():
                s1, K1 = _merge_sign(J[:k], Kin)
                if not s1:
                    continue
                s2, K = _merge_sign(K1, J[k + 1:])
                put(K, g * h, sgn * s1 * s2)
        return out

    def schouten(self, P, Q):
        """Schouten bracket of multisections (same sign rules as on multivectors)."""
        P._same(Q)
        if P.rank != self.rank or P.base != self.base:
            raise StructuralError("multisection does not belong to this algebroid")
        out = {}
        for I, f in P.coeffs.items():
            for J, g in Q.coeffs.items():
                for K, h in self._bracket_basis(P.grade, I, f, J, g).items():
                    out[K] = out[K] + h if K in out else h
        grade = P.grade + Q.grade - 1
        if grade < 0:
            return Multisection(self.base, self.rank, 0, {})
        return Multisection(self.base, self.rank, grade, out)

    def bracket(self, X, Y):
        return self.schouten(X, Y)

    # forms
    def _form_value(self, w, key):
        s, K = _sort_sign(key)
        if not s:
            return None
        f = w.coeffs.get(K)
        if f is None:
            return None
        return f if s > 0 else -f

    def differential(self, w, cocycle=None):
        """``d w`` on ``A^k A*``; with ``cocycle`` the twisted ``d w + phi ^ w``."""
        if w.rank != self.rank or w.base != self.base:
            raise StructuralError("form does not belong to this algebroid")
        k = w.grade
        out = {}
        if k + 1 <= self.rank:
            from itertools import combinations
            for K in combinations(range(self.rank), k + 1):
                acc = self.base.zero()
                for i, a in enumerate(K):
                    f = w.coeffs.get(K[:i] + K[i + 1:])
                    if f is not None:
                        r = self.rho_basis(a, f)
                        acc = acc + r if i % 2 == 0 else acc - r
                for i in range(len(K)):
                    for j in range(i + 1, len(K)):
                        cs = self.structure(K[i], K[j])
                        if cs is None:
                            continue
                        rest = K[:i] + K[i + 1:j] + K[j + 1:]
                        for l, c in enumerate(cs):
                            if not c:
                                continue
                            val = self._form_value(w, (l,) + rest)
                            if val is None:
                                continue
                            term = c * val
                            acc = acc + term if (i + j) % 2 == 0 else acc - term
                if acc:
                    out[K] = acc
        d = Multisection(self.base, self.rank, k + 1, out)
        if cocycle is not None:
            phi = _as_section(self, cocycle)
            d = d + ms_wedge(phi, w)
        return d

    def lie_derivative_forms(self, X, w, cocycle=None):
        """``d i(X) w + i(X) d w`` (twisted when ``cocycle`` is given)."""
        b = ms_interior(X, self.differential(w, cocycle))
        if w.grade == 0:
            return b
        a = self.differential(ms_interior(X, w), cocycle)
        return a + b

    def phi0_schouten(self, P, Q, phi0):
        """``[[P,Q]] + (-1)^(p+1)(p-1) P^i(phi)Q - (q-1) i(phi)P ^ Q``."""
        phi = _as_section(self, phi0)
        p, q = P.grade, Q.grade
        out = self.schouten(P, Q)
        if p - 1 and Q.grade >= 1 and P.coeffs and Q.coeffs:
            t = ms_wedge(P, ms_interior(phi, Q)) * ((-1) ** (p + 1) * (p - 1))
            out = out + t
        if q - 1 and P.grade >= 1 and P.coeffs and Q.coeffs:
            t = ms_wedge(ms_interior(phi, P), Q) * (-(q - 1))
            out = out + t
        return out

    def phi0_lie_derivative(self, X, P, phi0):
        return self.phi0_schouten(X, P, phi0)

    def rho_phi(self, X, f, phi0):
        return self.rho_apply(X, f) + ms_pair(_as_section(self, phi0), X) * f

    # verification
    def verify(self):
        v = Verdict("verify_algebroid")
        r = self.rank
        for i in range(r):
            for j in range(i + 1, r):
                ei, ej = self.basis(i), self.basis(j)
                lhs = self.rho(self.bracket(ei, ej))
                rhs = mv_schouten(self.anchor_fields[i], self.anchor_fields[j])
                res = lhs - Multivector(self.base, 1, rhs.coeffs)
                zero_check(v, "algebroid.anchor[%d,%d]" % (i + 1, j + 1),
                           "rho([[e_i,e_j]]) = [rho e_i, rho e_j]", res)
                for k in range(j + 1, r):
                    ek = self.basis(k)
                    jac = (self.bracket(ei, self.bracket(ej, ek))
                           + self.bracket(ej, self.bracket(ek, ei))
                           + self.bracket(ek, self.bracket(ei, ej)))
                    zero_check(v, "algebroid.jacobi[%d,%d,%d]" % (i + 1, j + 1, k + 1),
                               "Jacobi identity on frame sections", jac)
        return v

    def verify_cocycle(self, phi):
        phi = _as_section(self, phi)
        v = Verdict("verify_cocycle")
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                ei, ej = self.basis(i), self.basis(j)
                res = (ms_pair(phi, self.bracket(ei, ej)) - self.rho_apply(ei, ms_pair(phi, ej))
                       + self.rho_apply(ej, ms_pair(phi, ei)))
                zero_check(v, "cocycle[%d,%d]" % (i + 1, j + 1),
                           "phi[[e_i,e_j]] = rho(e_i)phi(e_j) - rho(e_j)phi(e_i)", res)
        return v

    def embed(self, base):
        """Same frame data over a larger patch (coefficients independent of new variables)."""
        return AlgebroidStructure(base, self.rank, _padded_anchor(self, base),
                                  {k: [f.embed(base) for f in v] for k, v in self.c.items()},
                                  self.frame_names)

    def __repr__(self):
        return "AlgebroidStructure(rank=%d over %s)" % (self.rank, self.base.names)


def _padded_anchor(A, base):
    rows = []
    for row in A.anchor_matrix:
        full = [base.zero()] * len(base)
        for i, f in enumerate(row):
            full[base.index(A.base.names[i])] = f.embed(base)
        rows.append(full)
    return rows


def _as_section(A, s):
    if isinstance(s, Multisection):
        if s.grade != 1 or s.rank != A.rank:
            raise StructuralError("cocycle must be a grade-1 section of matching rank")
        return s
    return Multisection.from_list(A.base, [A.base.parse(c) if isinstance(c, str) else c for c in s])


# standard constructors

def tm_times_r(base):
    """``TM x R`` with frame ``(d_i, 0), (0, 1)`` and the cocycle ``(0, 1)``."""
    n = len(base)
    anchor = [[1 if j == i else 0 for j in range(n)] for i in range(n)] + [[0] * n]
    A = AlgebroidStructure(base, n + 1, anchor, {},
                           frame_names=["(d%s,0)" % v for v in base.names] + ["(0,1)"],
                           name="tm_times_r")
    phi0 = Multisection.from_list(base, [0] * n + [1])
    return A, phi0


def jacobi_cotangent(J):
    """``T*M x R`` of a verified Jacobi structure, frame ``(dx_i, 0), (0, 1)``.

    Returns the algebroid and the cocycle ``(-E, 0)`` of it, written in the
    dual frame ``(d_i, 0), (0, 1)``.
    """
    from .jacobi import JacobiStructure, PreconditionError, ecjacobi_anchor, ecjacobi_bracket
    from .multivec import DifferentialForm
    if not isinstance(J, JacobiStructure) or not J.verified:
        raise PreconditionError("jacobi_cotangent needs a verified Jacobi structure")
    base = J.patch
    n = len(base)
    zero = base.zero()
    gens = [(DifferentialForm.basis(base, v), zero) for v in base.names]
    gens.append((DifferentialForm.zero(base, 1), base.one()))
    anchor = []
    for g in gens:
        X = ecjacobi_anchor(J, g)
        anchor.append(X.components() if X.coeffs else [zero] * n)
    struct = {}
    for a in range(n + 1):
        for b in range(a + 1, n + 1):
            w, f = ecjacobi_bracket(J, gens[a], gens[b])
            comps = (w.components() if w.coeffs else [zero] * n) + [f]
            struct[(a, b)] = comps
    A = AlgebroidStructure(base, n + 1, anchor, struct,
                           frame_names=["(d%s,0)" % v for v in base.names] + ["(0,1)"],
                           name="jacobi_cotangent")
    E = J.E.components() if J.E.coeffs else [zero] * n
    X0 = Multisection.from_list(base, [-e for e in E] + [zero])
    return A, X0


def _time_patch(base, t):
    if t in base.names:
        raise StructuralError("time variable %r already on the patch" % t)
    return base.extend(t)


def bar_algebroid(A, phi0, t="t"):
    """Time-dependent sections with ``[[X,Y]] + phi(X) dY/dt - phi(Y) dX/dt``.

    On the time-independent frame the extra terms vanish; the anchor gains
    ``phi(e_a) d/dt``.
    """
    phi = _as_section(A, phi0)
    B = _time_patch(A.base, t)
    rows = _padded_anchor(A, B)
    pc = phi.components()
    for a in range(A.rank):
        rows[a][B.index(t)] = pc[a].embed(B)
    struct = {k: [f.embed(B) for f in v] for k, v in A.c.items()}
    return AlgebroidStructure(B, A.rank, rows, struct, A.frame_names, name="bar")


def hat_algebroid(A, phi0, t="t"):
    """``e^-t ([[X,Y]] + phi(X)(dY/dt - Y) - phi(Y)(dX/dt - X))`` with anchor
    ``e^-t (rho + phi d/dt)``."""
    phi = _as_section(A, phi0)
    B = _time_patch(A.base, t)
    emt = B.exp({t: -1})
    rows = _padded_anchor(A, B)
    pc = [f.embed(B) for f in phi.components()]
    for a in range(A.rank):
        rows[a][B.index(t)] = pc[a]
        rows[a] = [f * emt for f in rows[a]]
    struct = {}
    for i in range(A.rank):
        for j in range(i + 1, A.rank):
            cs = A.structure(i, j)
            comps = [f.embed(B) for f in cs] if cs else [B.zero()] * A.rank
            comps[j] = comps[j] - pc[i]
            comps[i] = comps[i] + pc[j]
            struct[(i, j)] = [f * emt for f in comps]
    return AlgebroidStructure(B, A.rank, rows, struct, A.frame_names, name="hat")


def product_with_tr(A, t="t"):
    """``A x TR`` over ``base x R``: frame of A plus ``d/dt`` (last index)."""
    B = _time_patch(A.base, t)
    rows = _padded_anchor(A, B)
    rows.append([B.one() if v == t else B.zero() for v in B.names])
    struct = {k: [f.embed(B) for f in v] + [B.zero()] for k, v in A.c.items()}
    return AlgebroidStructure(B, A.rank + 1, rows, struct, A.frame_names + ["d/d" + t],
                              name="product")


def psi_check(A, phi0, t="t", hat=None, bar=None):
    """``Psi(v,t) = (e^t v, t)`` intertwines the bar and hat brackets.

    Checks ``Psi [[X,Y]]bar = [[Psi X, Psi Y]]hat`` and
    ``hat_rho(Psi X) = bar_rho(X)`` on frame sections.
    """
    bar = bar or bar_algebroid(A, phi0, t)
    hat = hat or hat_algebroid(A, phi0, t)
    et = bar.base.exp({t: 1})
    v = Verdict("psi_isomorphism")
    for i in range(A.rank):
        ei = bar.basis(i)
        zero_check(v, "psi.anchor[%d]" % (i + 1), "hat_rho(Psi e_i) = bar_rho(e_i)",
                   hat.rho(ei * et) - bar.rho(ei))
        for j in range(i + 1, A.rank):
            ej = bar.basis(j)
            lhs = bar.bracket(ei, ej) * et
            rhs = hat.bracket(ei * et, ej * et)
            zero_check(v, "psi.bracket[%d,%d]" % (i + 1, j + 1),
                       "Psi [[e_i,e_j]]bar = [[Psi e_i, Psi e_j]]hat", lhs - rhs)
    return v


def u_embedding(A, phi0, P, t="t", prod=None):
    """``U(P) = (e^{-(p-1)t} P, e^{-(p-1)t} i(phi) P)`` inside ``A x TR``.

    The second component ``Q`` of grade p-1 sits in the product bundle as
    ``d/dt ^ Q``.
    """
    prod = prod or product_with_tr(A, t)
    B = prod.base
    phi = _as_section(A, phi0)
    p = P.grade
    scale = B.exp({t: -(p - 1)}) if p != 1 else B.one()

    def lift(S):
        return Multisection(B, A.rank + 1, S.grade, {k: f.embed(B) for k, f in S.coeffs.items()})

    first = lift(P) * scale
    if p == 0:
        return first
    second = lift(ms_interior(phi, P)) * scale
    dt = Multisection.basis(B, A.rank + 1, A.rank)
    return first + ms_wedge(dt, second)


def u_embedding_check(A, phi0, P, Q, t="t"):
    prod = product_with_tr(A, t)
    lhs = u_embedding(A, phi0, A.phi0_schouten(P, Q, phi0), t, prod)
    rhs = prod.schouten(u_embedding(A, phi0, P, t, prod), u_embedding(A, phi0, Q, t, prod))
    v = Verdict("u_embedding")
    zero_check(v, "u_embedding", "U([[P,Q]]_phi) = [[U P, U Q]] in A x TR", lhs - rhs)
    return v


def build_standard(kind, data, t="t"):
    """Dispatch on ``kind``; returns ``(algebroid, cocycle or None)``."""
    if kind == "tm_times_r":
        return tm_times_r(data)
    if kind == "jacobi_cotangent":
        return jacobi_cotangent(data)
    if kind in ("bar_bracket", "action_on_pi1"):
        A, phi0 = data
        return bar_algebroid(A, phi0, t), None
    if kind == "hat_bracket":
        A, phi0 = data
        return hat_algebroid(A, phi0, t), None
    raise StructuralError("unknown standard algebroid %r" % kind)


def fiber_names(base, rank, prefix="mu"):
    names = ["%s%d" % (prefix, a + 1) for a in range(rank)]
    for n in names:
        if n in base.names:
            raise StructuralError("fiber variable %r clashes with the base" % n)
    return names


def linear_function(X, dual_patch, prefix="mu"):
    """Fiberwise-linear function ``X~(mu) = sum X^a mu_a`` on the dual patch."""
    names = fiber_names(X.base, X.rank, prefix)
    acc = dual_patch.zero()
    for (a,), f in X.coeffs.items():
        acc = acc + f.embed(dual_patch) * dual_patch.var(names[a])
    return acc


def linear_structures_on_dual(A, omega0=None, prefix="mu"):
    """Linear Poisson (``omega0`` absent) or Jacobi structure on the dual bundle.

    Fiber coordinates ``mu1..mur`` follow the base coordinates.  The Poisson
    part has ``{mu_a, mu_b} = c^k_ab mu_k`` and ``{mu_a, f} = rho(e_a)(f)``;
    a cocycle adds ``Delta ^ omega0^v`` to Lambda and sets ``E = -omega0^v``.
    """
    from .jacobi import JacobiStructure
    names = fiber_names(A.base, A.rank, prefix)
    D = A.base.extend(*names)
    coeffs = {}

    def put(i, j, f):
        if not f:
            return
        if i > j:
            i, j, f = j, i, -f
        coeffs[(i, j)] = coeffs[(i, j)] + f if (i, j) in coeffs else f

    n = len(A.base)
    mus = [D.var(m) for m in names]
    for a in range(A.rank):
        for i, f in enumerate(A.anchor_matrix[a]):
            put(n + a, i, f.embed(D))
        for b in range(a + 1, A.rank):
            cs = A.structure(a, b)
            if cs:
                acc = D.zero()
                for k, c in enumerate(cs):
                    acc = acc + c.embed(D) * mus[k]
                put(n + a, n + b, acc)
    Lam = Multivector(D, 2, coeffs)
    E = Multivector.zero(D, 1)
    if omega0 is not None:
        w = _as_section(A, omega0)
        wv = vector(D, [D.zero()] * n + [f.embed(D) for f in w.components()])
        Delta = vector(D, [D.zero()] * n + mus)
        Lam = Lam + mv_wedge(Delta, wv)
        E = -wv
    return JacobiStructure(Lam, E)
