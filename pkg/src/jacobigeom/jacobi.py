"""Jacobi, Poisson and contact structures on a patch."""
from fractions import Fraction

from .multivec import (DifferentialForm, Multivector, covector, de_rham, differential,
                       interior_product, lie_derivative, pair, schouten_bracket,
                       sharp, vector, wedge)
from .sampling import sample_points
from .symring import ExpPoly, Interval, RingMatrix, StructuralError, solve_linear
from .verdict import Verdict, zero_check


class NonContactError(StructuralError):
    """The form is not contact (its flat map degenerates)."""


class NonUnitDeterminant(StructuralError):
    """Contact at the sampled points, but the inverse leaves the ring."""

    def __init__(self, msg, certificate=None):
        super().__init__(msg)
        self.certificate = certificate


class PreconditionError(StructuralError):
    pass


def verify_jacobi(Lam, E):
    """Check ``[[L, L]] = 2 E^L`` and ``[[E, L]] = 0`` exactly."""
    if Lam.grade != 2 and Lam.coeffs:
        raise StructuralError("Lambda must be a bivector")
    if E.grade != 1 and E.coeffs:
        raise StructuralError("E must be a vector field")
    v = Verdict("verify_jacobi")
    r1 = schouten_bracket(Lam, Lam) - wedge(E, Lam) * 2
    r2 = schouten_bracket(E, Lam)
    zero_check(v, "jacobi.first", "[[Lambda,Lambda]] - 2 E^Lambda = 0", r1)
    zero_check(v, "jacobi.second", "[[E,Lambda]] = 0", r2)
    return v


class JacobiStructure:
    """Pair ``(Lambda, E)``; ``verified`` records whether the identities were checked."""

    def __init__(self, Lam, E=None, verify=True):
        patch = Lam.patch
        if E is None:
            E = Multivector.zero(patch, 1)
        if E.patch != patch:
            raise StructuralError("Lambda and E on different patches")
        if Lam.coeffs and Lam.grade != 2:
            raise StructuralError("Lambda must be a bivector")
        if E.coeffs and E.grade != 1:
            raise StructuralError("E must be a vector field")
        self.patch = patch
        self.Lam = Multivector(patch, 2, Lam.coeffs) if len(patch) >= 2 else Lam
        self.E = Multivector(patch, 1, E.coeffs)
        self.verdict = verify_jacobi(self.Lam, self.E) if verify else None
        if verify and not self.verdict.passed:
            raise PreconditionError("not a Jacobi structure: %s"
                                    % "; ".join(c.residual for c in self.verdict.failures()))

    @classmethod
    def candidate(cls, Lam, E=None):
        return cls(Lam, E, verify=False)

    @property
    def verified(self):
        return self.verdict is not None and self.verdict.passed

    def is_poisson(self):
        return self.E.is_zero()

    def sharp(self, w):
        return sharp(self.Lam, w)

    def pair(self, w, v):
        """``Lambda(w, v)``."""
        if not self.Lam.coeffs:
            return self.patch.zero()
        return pair(self.Lam, w, v)

    def __eq__(self, other):
        return isinstance(other, JacobiStructure) and self.Lam == other.Lam and self.E == other.E

    def __repr__(self):
        return "JacobiStructure(Lambda=%s, E=%s)" % (self.Lam, self.E)


def _as_jacobi(J):
    return J if isinstance(J, JacobiStructure) else JacobiStructure.candidate(*J)


def jacobi_bracket(f, g, J):
    """``{f, g} = Lambda(df, dg) + f E(g) - g E(f)``."""
    J = _as_jacobi(J)
    return J.pair(differential(f), differential(g)) + f * J.E.apply(g) - g * J.E.apply(f)


def hamiltonian_field(f, J):
    """``X_f = #_Lambda(df) + f E``."""
    J = _as_jacobi(J)
    return J.sharp(differential(f)) + J.E * f


def ecjacobi_bracket(J, a, b):
    """Bracket of ``(w, f)`` and ``(v, g)`` in the cotangent-times-line algebroid."""
    J = _as_jacobi(J)
    (w, f), (v, g) = a, b
    zero1 = DifferentialForm.zero(J.patch, 1)
    w = w if w.coeffs else zero1
    v = v if v.coeffs else zero1
    sw, sv = J.sharp(w), J.sharp(v)
    lam_wv = J.pair(w, v) if (w.coeffs and v.coeffs) else J.patch.zero()
    form = (lie_derivative(sw, v) - lie_derivative(sv, w)
            - de_rham(DifferentialForm.scalar(lam_wv))
            + lie_derivative(J.E, v) * f - lie_derivative(J.E, w) * g
            - interior_product(J.E, wedge(w, v)))
    form = DifferentialForm(J.patch, 1, form.coeffs)
    fn = (-lam_wv + sw.apply(g) - sv.apply(f)
          + f * J.E.apply(g) - g * J.E.apply(f))
    return form, fn


def ecjacobi_anchor(J, a):
    J = _as_jacobi(J)
    w, f = a
    return J.sharp(w) + J.E * f


def sharp_jacobi(J, w, gamma):
    """``(#_Lambda w + gamma E, -w(E))``."""
    J = _as_jacobi(J)
    if not isinstance(gamma, ExpPoly):
        gamma = J.patch.const(gamma)
    X = J.sharp(w) + J.E * gamma
    return Multivector(J.patch, 1, X.coeffs), -pair(w, J.E) if w.coeffs else J.patch.zero()


class ContactStructure:
    def __init__(self, eta, flat_matrix, det, certificate):
        self.patch = eta.patch
        self.eta = eta
        self.d_eta = de_rham(eta)
        self.flat_matrix = flat_matrix
        self.det = det
        self.certificate = certificate

    def flat(self, X):
        """``flat_eta(X) = i(X) d eta + eta(X) eta``."""
        return interior_product(X, self.d_eta) + self.eta * pair(self.eta, X)

    def __repr__(self):
        return "ContactStructure(eta=%s, %s)" % (self.eta, self.certificate["level"])


def flat_contact(C, X, lam):
    """``(-i(X) d eta - lam eta, eta(X))``."""
    if not isinstance(lam, ExpPoly):
        lam = C.patch.const(lam)
    w = -interior_product(X, C.d_eta) - C.eta * lam
    return DifferentialForm(C.patch, 1, w.coeffs), pair(C.eta, X) if X.coeffs else C.patch.zero()


def flat_matrix(eta):
    """Matrix of ``flat_eta`` on the coordinate frame (column j is flat(d_j))."""
    patch = eta.patch
    n = len(patch)
    deta = de_rham(eta)
    e = eta.components()
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            # i(d_j) d eta has component d eta(d_j, d_i) on dx_i
            row.append(deta[(j, i)] + e[j] * e[i])
        rows.append(row)
    return RingMatrix(patch, rows)


def _unit_inverse(u):
    (ev, mono), c = next(iter(u.terms.items()))
    return ExpPoly(u.patch, {(tuple(-l for l in ev), mono): 1}).scale(1 / Fraction(c))


def contact_to_jacobi(eta, samples=None, seed=0):
    """Jacobi structure ``(Lambda, E)`` of a contact 1-form.

    The flat map is inverted by Cramer's rule; its determinant must be a
    unit of the ring for the result to stay exact.
    """
    patch = eta.patch
    n = len(patch)
    if n % 2 == 0:
        raise NonContactError("contact forms live on odd-dimensional patches")
    if eta.grade != 1:
        raise StructuralError("eta must be a 1-form")
    M = flat_matrix(eta)
    det = M.det()
    if det.is_zero():
        raise NonContactError("flat map is singular (eta ^ (d eta)^n = 0)")
    if det.is_unit():
        cert = {"level": "global", "det": str(det)}
    else:
        pts = sample_points(n, samples, seed)
        bad = []
        for p in pts:
            val = det.evaluate(p)
            if (isinstance(val, Interval) and val.contains(0)) or val == 0:
                bad.append(p)
        cert = {"level": "pointwise", "det": str(det), "points": pts}
        if bad:
            raise NonContactError("flat map degenerates at %s" % (bad[0],))
        raise NonUnitDeterminant("determinant %s is not a unit; the inverse is not an "
                                 "exp-polynomial" % det, cert)
    adj, d = solve_linear(M, RingMatrix.identity(patch, n))
    inv = adj.scale(_unit_inverse(d))
    e = eta.components()
    E = vector(patch, [sum((inv[i, j] * e[j] for j in range(n)), patch.zero())
                       for i in range(n)])
    deta = de_rham(eta)
    D = [[deta[(i, j)] for j in range(n)] for i in range(n)]
    lam = {}
    for a in range(n):
        for b in range(a + 1, n):
            acc = patch.zero()
            for i in range(n):
                if not inv[i, a]:
                    continue
                for j in range(n):
                    if D[i][j] and inv[j, b]:
                        acc = acc + inv[i, a] * D[i][j] * inv[j, b]
            if acc:
                lam[(a, b)] = acc
    Lam = Multivector(patch, 2, lam)
    C = ContactStructure(eta, M, det, cert)
    C.flat_inverse = inv
    J = JacobiStructure(Lam, E)
    return C, J


def verify_contact_identities(C, J):
    """Reeb conditions, flat inverse formula and the two sharp maps as inverses."""
    patch = C.patch
    v = Verdict("contact_identities")
    E = J.E
    zero_check(v, "contact.reeb_eta", "i(E) eta = 1", pair(C.eta, E) - 1)
    zero_check(v, "contact.reeb_deta", "i(E) d eta = 0", interior_product(E, C.d_eta))
    n = len(patch)
    for k in range(n):
        w = covector(patch, [patch.one() if i == k else patch.zero() for i in range(n)])
        col = vector(patch, [C.flat_inverse[i, k] for i in range(n)])
        rhs = -J.sharp(w) + E * pair(w, E)
        zero_check(v, "contact.flat_inverse[%s]" % patch.names[k],
                   "flat^-1(w) = -#_Lambda(w) + w(E) E", col - rhs)
        X = Multivector.basis(patch, patch.names[k])
        # round trip on vectors and on covectors
        w1, l1 = flat_contact(C, X, 0)
        X2, l2 = sharp_jacobi(J, w1, l1)
        zero_check(v, "contact.roundtrip_vec[%s]" % patch.names[k],
                   "#(L,E) o #(d eta, eta) = id on (X, 0)", (X2 - X))
        zero_check(v, "contact.roundtrip_vec_fn[%s]" % patch.names[k],
                   "#(L,E) o #(d eta, eta) = id on (X, 0), function part", l2)
        X3, l3 = sharp_jacobi(J, w, 0)
        w4, l4 = flat_contact(C, X3, l3)
        zero_check(v, "contact.roundtrip_cov[%s]" % patch.names[k],
                   "#(d eta, eta) o #(L,E) = id on (w, 0)", w4 - w)
        zero_check(v, "contact.roundtrip_cov_fn[%s]" % patch.names[k],
                   "#(d eta, eta) o #(L,E) = id on (w, 0), function part", l4)
    X2, l2 = sharp_jacobi(J, *flat_contact(C, Multivector.zero(patch, 1), 1))
    zero_check(v, "contact.roundtrip_unit", "round trip on (0, 1)", X2)
    zero_check(v, "contact.roundtrip_unit_fn", "round trip on (0, 1), function part", l2 - 1)
    return v


class PoissonizationResult:
    def __init__(self, J, Lam_tilde, t, verdict, contact_verdict=None):
        self.J = J
        self.Lam_tilde = Lam_tilde
        self.t = t
        self.verdict = verdict
        self.contact_verdict = contact_verdict

    @property
    def is_poisson(self):
        return self.verdict.data["poisson"]

    @property
    def jacobi(self):
        return self.verdict.data["jacobi"]


def poissonize_bivector(J, t="t"):
    J = _as_jacobi(J)
    if t in J.patch.names:
        raise StructuralError("time variable %r already on the patch" % t)
    P2 = J.patch.extend(t)
    Lam = J.Lam.embed(P2) if J.Lam.coeffs else Multivector.zero(P2, 2)
    E = J.E.embed(P2) if J.E.coeffs else Multivector.zero(P2, 1)
    dt = Multivector.basis(P2, t)
    return Multivector(P2, 2, ((Lam + wedge(dt, E)) * P2.exp({t: -1})).coeffs)


def poissonize(J, t="t", contact=None, samples=20, seed=0):
    """Poissonization ``e^-t (Lambda + d_t ^ E)`` with its verdicts."""
    J = _as_jacobi(J)
    Lt = poissonize_bivector(J, t)
    P2 = Lt.patch
    dt = Multivector.basis(P2, t)
    v = Verdict("poissonize")
    zero_check(v, "poissonize.homogeneous", "L_{d_t} Lt + Lt = 0", lie_derivative(dt, Lt) + Lt)
    poisson = schouten_bracket(Lt, Lt).is_zero()
    jac = verify_jacobi(J.Lam, J.E).passed
    v.data["poisson"] = poisson
    v.data["jacobi"] = jac
    v.add("poissonize.equivalence", "[[Lt,Lt]] = 0 iff (Lambda,E) is Jacobi", poisson == jac,
          residual="poisson=%s jacobi=%s" % (poisson, jac))
    cv = None
    if contact is not None:
        cv = symplectic_inverse_check(contact, Lt, t, samples, seed)
        v.extend(cv)
    return PoissonizationResult(J, Lt, t, v, cv)


def symplectification(C, t="t"):
    """``e^t (d eta + dt ^ eta)`` on patch x {t}."""
    P2 = C.patch.extend(t)
    eta = C.eta.embed(P2)
    dt = DifferentialForm.basis(P2, t)
    Om = (de_rham(eta) + wedge(dt, eta)) * P2.exp({t: 1})
    return DifferentialForm(P2, 2, Om.coeffs)


def symplectic_inverse_check(C, Lt, t="t", samples=20, seed=0):
    """``#_Lt o flat_Om = id`` on vectors, symbolically and at sample points.

    ``flat_Om(X) = -i(X) Om``, the same sign as in :func:`flat_contact`.
    """
    Om = symplectification(C, t)
    P2 = Om.patch
    n = len(P2)
    v = Verdict("symplectic_inverse")
    rows = []
    for k, name in enumerate(P2.names):
        X = Multivector.basis(P2, name)
        w = DifferentialForm(P2, 1, (-interior_product(X, Om)).coeffs)
        Y = sharp(Lt, w)
        zero_check(v, "poissonize.inverse[%s]" % name, "#_Lt(-i(X) Om) = X", Y - X)
        rows.append(Y.components() if Y.coeffs else [P2.zero()] * n)
    pts = sample_points(n, samples, seed)[:samples]
    ok = True
    for p in pts:
        for k in range(n):
            for i in range(n):
                val = rows[k][i].evaluate(p)
                want = 1 if i == k else 0
                if isinstance(val, Interval):
                    good = val.contains(want)
                else:
                    good = val == want
                ok = ok and good
    v.add("poissonize.inverse_points", "#_Lt o flat_Om = id at sample points", ok,
          "pointwise", points=pts)
    return v


class CoisotropicSubpatch:
    """Coordinate subspace ``{x_k = 0 : k in vanishing}`` of a patch."""

    def __init__(self, ambient, vanishing):
        vanishing = [ambient.names[ambient.index(v)] for v in vanishing]
        if not vanishing:
            raise StructuralError("empty vanishing set")
        if len(set(vanishing)) != len(vanishing):
            raise StructuralError("repeated vanishing coordinate")
        self.ambient = ambient
        self.vanishing = tuple(sorted(vanishing, key=ambient.index))
        self.patch = type(ambient)([n for n in ambient.names if n not in self.vanishing])

    def restrict(self, f):
        """Set the vanishing coordinates to zero and drop them."""
        m = {n: self.patch.zero() for n in self.vanishing}
        return f.subs(m, self.patch)

    def __repr__(self):
        return "CoisotropicSubpatch(%s = 0)" % ", ".join(self.vanishing)


def _bivector(J):
    if isinstance(J, JacobiStructure):
        return J.Lam
    return J


def coisotropy_check(J, S):
    Lam = _bivector(J)
    patch = S.ambient
    v = Verdict("coisotropy")
    for k in S.vanishing:
        X = sharp(Lam, DifferentialForm.basis(patch, k)) if Lam.coeffs else None
        for j in S.vanishing:
            comp = X[j] if X is not None else patch.zero()
            zero_check(v, "coisotropic[d%s,%s]" % (k, j),
                       "component %s of #_Lambda(d%s) vanishes on S" % (j, k),
                       S.restrict(comp))
    return v


def conormal_algebroid(J, S):
    """Algebroid on the conormal bundle of ``S`` plus its 1-cocycle ``E_S``.

    Frame: ``dx_k`` for the vanishing coordinates.  Returns
    ``(algebroid, cocycle components)``.
    """
    from .algebroid import AlgebroidStructure
    J = _as_jacobi(J)
    cv = coisotropy_check(J, S)
    if not cv.passed:
        raise PreconditionError("S is not coisotropic: %s"
                                % "; ".join(c.residual for c in cv.failures()))
    amb, base = S.ambient, S.patch
    frame = list(S.vanishing)
    r = len(frame)
    zero = amb.zero()
    forms = [DifferentialForm.basis(amb, k) for k in frame]
    anchor = []
    for w in forms:
        X = J.sharp(w)
        anchor.append([S.restrict(X[n]) if X.coeffs else base.zero() for n in base.names])
    struct = {}
    leftovers = Verdict("conormal")
    for a in range(r):
        for b in range(a + 1, r):
            w, _ = ecjacobi_bracket(J, (forms[a], zero), (forms[b], zero))
            struct[(a, b)] = [S.restrict(w[k]) if w.coeffs else base.zero() for k in frame]
            for n in base.names:
                comp = S.restrict(w[n]) if w.coeffs else base.zero()
                zero_check(leftovers, "conormal.tangent[%d,%d,%s]" % (a, b, n),
                           "bracket of conormal sections is conormal on S", comp)
    if not leftovers.passed:
        raise PreconditionError("conormal bracket leaves the conormal bundle")
    A = AlgebroidStructure(base, r, anchor, struct, frame_names=["d" + k for k in frame])
    E_S = [-S.restrict(J.E[k]) if J.E.coeffs else base.zero() for k in frame]
    return A, E_S
