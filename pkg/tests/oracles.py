"""Independent reference implementations used only by the tests.

The Schouten oracle works with superfunctions: a multivector is a polynomial
in odd variables (one per coordinate) with sympy coefficients, and the
superalgebra bracket is
    [P, Q]' = sum_i (P d/dth_i)(dQ/dx_i) - (dP/dx_i)(d/dth_i Q)
with a right odd derivative on P and a left one on Q.  The library bracket is
(-1)^(p+1) times this one.  None of the library's index bookkeeping is used.
"""
from fractions import Fraction

import sympy

from jacobigeom.symring import to_string


def to_sympy(f):
    syms = {n: sympy.Symbol(n) for n in f.patch.names}
    text = to_string(f).replace("^", "**")
    return sympy.sympify(text, locals=syms)


def _odd_mul(a, b):
    """Product of odd monomials given as sorted tuples; returns (sign, tuple)."""
    if set(a) & set(b):
        return 0, None
    seq = list(a) + list(b)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


def super_of(T):
    """Multivector -> {odd monomial: sympy coefficient}."""
    return {k: to_sympy(f) for k, f in T.coeffs.items()}


def _left_dtheta(S, i):
    out = {}
    for k, c in S.items():
        if i not in k:
            continue
        pos = k.index(i)
        rest = k[:pos] + k[pos + 1:]
        out[rest] = out.get(rest, 0) + (-1) ** pos * c
    return out


def _right_dtheta(S, i):
    out = {}
    for k, c in S.items():
        if i not in k:
            continue
        pos = k.index(i)
        rest = k[:pos] + k[pos + 1:]
        out[rest] = out.get(rest, 0) + (-1) ** (len(k) - 1 - pos) * c
    return out


def _dx(S, name):
    sym = sympy.Symbol(name)
    return {k: sympy.diff(c, sym) for k, c in S.items()}


def _mul(A, B):
    out = {}
    for a, ca in A.items():
        for b, cb in B.items():
            s, k = _odd_mul(a, b)
            if s:
                out[k] = out.get(k, 0) + s * ca * cb
    return out


def _add(A, B, sign=1):
    out = dict(A)
    for k, c in B.items():
        out[k] = out.get(k, 0) + sign * c
    return out


def super_bracket(P, Q):
    names = P.patch.names
    SP, SQ = super_of(P), super_of(Q)
    out = {}
    for i, n in enumerate(names):
        out = _add(out, _mul(_right_dtheta(SP, i), _dx(SQ, n)))
        out = _add(out, _mul(_dx(SP, n), _left_dtheta(SQ, i)), -1)
    return {k: sympy.simplify(c) for k, c in out.items() if sympy.simplify(c) != 0}


def schouten_oracle(P, Q):
    """Bracket in the library's convention: (-1)^(p+1) [P, Q]'."""
    sign = -1 if P.grade % 2 == 0 else 1
    return {k: sign * c for k, c in super_bracket(P, Q).items()}


def same_super(T, S):
    mine = super_of(T)
    keys = set(mine) | set(S)
    return all(sympy.simplify(mine.get(k, 0) - S.get(k, 0)) == 0 for k in keys)


def solve_sharp_contact(eta_comps, deta, point):
    """Numeric Jacobi pair of a contact form on R^3 at a rational point.

    Builds the flat matrix b(X, lam) = (-i(X) d eta - lam eta, eta(X)) with
    exact rationals and inverts it with sympy; returns (Lambda matrix, E).
    """
    n = len(eta_comps)
    M = sympy.zeros(n + 1, n + 1)
    for j in range(n):
        for i in range(n):
            M[i, j] = -deta[j][i]
        M[n, j] = eta_comps[j]
    for i in range(n):
        M[i, n] = -eta_comps[i]
    Minv = M.inv()
    return Minv, [Minv[i, n] for i in range(n)]


def frac(x):
    return Fraction(int(sympy.numer(x)), int(sympy.denom(x)))


# groupoid oracle: the sharp map as a morphism T*G x R -> TG x R

def _solve_row(M, b):
    """Least-norm-free solve of ``v M = b`` for a row vector ``v`` (exact)."""
    sol, params = M.T.gauss_jordan_solve(b.T)
    return sol.subs({p: 0 for p in params}).T


def sharp_morphism_oracle(gs, hs, alpha, beta, mult, Lam, E, sigma, g, h, rng):
    """Sample a composable pair in T*G x R at ``(g, h)`` and return the residuals
    of ``#(w (+) nu) = #(w) (+) #(nu)`` together with the composability defect of
    the images.

    ``alpha``, ``beta`` are sympy vectors in ``gs``; ``mult`` is a sympy vector in
    ``gs + hs`` extending the multiplication; ``Lam`` a matrix and ``E`` a vector
    in ``gs``; ``sigma`` a scalar.  The cotangent product follows the defining
    pairing ``(w (+) nu)(X (+) Y) = w(X) + nu(Y)`` with the sigma twist.
    """
    n = len(gs)
    at_g = dict(zip(gs, g))
    at_h = dict(zip(gs, h))
    gh = [sympy.nsimplify(c) for c in mult.subs({**at_g, **dict(zip(hs, h))})]
    at_gh = dict(zip(gs, gh))
    Da = alpha.jacobian(gs)
    Db = beta.jacobian(gs)
    Dm = mult.jacobian(list(gs) + list(hs)).subs({**at_g, **dict(zip(hs, h))})
    comp = sympy.Matrix.hstack(Da.subs(at_g), -Db.subs(at_h)).nullspace()
    K = sympy.Matrix.hstack(*comp)
    ds = sympy.Matrix([[sympy.diff(sigma, v) for v in gs]])
    es = sympy.exp(sigma.subs(at_g))

    def rnd():
        return sympy.Rational(rng.randint(-6, 6), rng.randint(1, 3))

    w = sympy.Matrix([[rnd() for _ in range(n)]])
    gam, zet = rnd(), rnd()
    wp = w + es * zet * ds.subs(at_g)
    # nu' = e^sigma nu must make (w', nu') vanish on composable pairs killed by m_*
    ker = (Dm * K).nullspace()
    cons = [K * k for k in ker]
    nus = sympy.symbols("nu0:%d" % n)
    nvec = sympy.Matrix([list(nus)])
    eqs = [(sympy.Matrix.hstack(wp, nvec) * c)[0] for c in cons]
    sol = sympy.solve(eqs, nus, dict=True)
    sol = sol[0] if sol else {}
    free = {s: rnd() for s in nus if s not in sol}
    nup = nvec.subs(sol).subs(free)
    nu = nup / es
    # xi at gh: xi (Dm k) = (w', nu') k for every composable k
    lhs = (Dm * K)
    rhs = sympy.Matrix.hstack(wp, nup) * K
    xi = _solve_row(lhs, rhs)
    gam2 = gam + es * zet

    def sharp(point, cov, lam):
        L = Lam.subs(point)
        Ev = E.subs(point)
        X = cov * L + lam * Ev.T
        return X, -(cov * Ev)[0]

    X1, l1 = sharp(at_g, w, gam)
    X2, l2 = sharp(at_h, nu, zet)
    X3, l3 = sharp(at_gh, xi, gam2)
    # composability in TG x R and the product (X (+) Y, lambda)
    comp_def = list(Da.subs(at_g) * X1.T - Db.subs(at_h) * X2.T)
    comp_def.append((ds.subs(at_g) * X1.T)[0] + l1 - l2)
    XY = (Dm * sympy.Matrix.vstack(X1.T, X2.T)).T
    prod_res = list(X3 - XY) + [l3 - l1]
    return comp_def, prod_res


def is_zero_exact(e):
    e = sympy.nsimplify(e) if e.is_number and e.is_rational else e
    if sympy.simplify(e) == 0:
        return True
    return abs(sympy.N(e, 60)) < sympy.Float("1e-40")


def banal_line_oracle_data():
    """Banal groupoid of (R, 0, d/dx) transcribed by hand: coordinates (x, t, y)."""
    x, t, y, x2, t2, y2 = sympy.symbols("x t y x_h t_h y_h")
    gs, hs = (x, t, y), (x2, t2, y2)
    alpha = sympy.Matrix([y])
    beta = sympy.Matrix([x])
    mult = sympy.Matrix([x, t + t2, y2])
    # Lambda' = dt^dx + e^-t dt^dy, E' = -dx
    Lam = sympy.zeros(3, 3)
    Lam[1, 0], Lam[0, 1] = 1, -1
    Lam[1, 2], Lam[2, 1] = sympy.exp(-t), -sympy.exp(-t)
    E = sympy.Matrix([-1, 0, 0])
    return gs, hs, alpha, beta, mult, Lam, E, t
