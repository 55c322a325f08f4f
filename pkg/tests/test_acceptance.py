"""Acceptance criteria, one test each.  Every test prints a single
``ACCEPTANCE <n> <label>: PASS|FAIL (...)`` line."""
import random
import time

import pytest
import sympy

from jacobigeom.algebroid import AlgebroidStructure, Multisection, linear_structures_on_dual, \
    ms_pair
from jacobigeom.bialgebroid import canonical_pair, induced_base_jacobi, verify_compatibility
from jacobigeom.groupoid import (banal, base_morphism_check, contact_groupoid_check,
                                 cotangent_contact_groupoid, derive_gen_bialgebroid,
                                 linear_dual_check, pair_groupoid, structural_properties,
                                 verify_jacobi_groupoid, verify_p38)
from jacobigeom.jacobi import (JacobiStructure, contact_to_jacobi, jacobi_bracket, poissonize,
                               sharp_jacobi, flat_contact, verify_contact_identities,
                               verify_jacobi)
from jacobigeom.multivec import DifferentialForm, Multivector, de_rham, interior_product, \
    pair, schouten_bracket, wedge
from jacobigeom.sampling import random_points, random_poly
from jacobigeom.symring import PatchVars

from families import LINE, contact_pair, contact_structure, line_pair, perturbed_family
from oracles import (banal_line_oracle_data, frac, is_zero_exact, sharp_morphism_oracle,
                     solve_sharp_contact, to_sympy)
from test_multivec import T3, graded_residuals, random_multivector

P = PatchVars(["x", "y", "z"])
x, y, z = (P.var(v) for v in "xyz")
dx, dy, dz = (Multivector.basis(P, v) for v in "xyz")
fx, fy, fz = (DifferentialForm.basis(P, v) for v in "xyz")
PT = PatchVars([])


@pytest.fixture
def report(capsys):
    def emit(n, label, ok, detail=""):
        with capsys.disabled():
            print("\nACCEPTANCE %d %s: %s%s" % (n, label, "PASS" if ok else "FAIL",
                                                " (%s)" % detail if detail else ""))
        assert ok, detail
    return emit


def aff1_jacobi():
    L = AlgebroidStructure(PT, 2, [[], []], {(0, 1): [0, 1]}, name="aff1")
    return L, linear_structures_on_dual(L, Multisection.from_list(PT, [1, 0]))


def test_1_schouten_calculus(report):
    t0 = time.time()
    rng = random.Random(2024)
    bad = 0
    n = 0
    while n < 200:
        p, q, r = (rng.randint(0, 2) for _ in range(3))
        A, B, C = (random_multivector(T3, k, rng, exps=rng.random() < 0.5) for k in (p, q, r))
        if not (A.coeffs and B.coeffs and C.coeffs):
            continue
        bad += any(not res.is_zero() for res in graded_residuals(A, B, C))
        n += 1
    dt = time.time() - t0
    report(1, "schouten calculus", bad == 0 and dt <= 60,
           "%d nonzero triples, %d failures, %.1fs" % (n, bad, dt))


def _jacobi_candidates(rng):
    """Known Jacobi pairs mixed with random candidates."""
    out = [(contact_structure().Lam, contact_structure().E)]
    for _ in range(8):
        out.append((wedge(dx, dy) * random_poly(P, rng, 2, 3), Multivector.zero(P, 1)))
    for _ in range(8):
        E = dx * random_poly(P, rng, 2, 2) + dz * random_poly(P, rng, 1, 2)
        out.append((Multivector.zero(P, 2), E))
    for _ in range(8):
        a, b, c = (P.const(rng.randint(-3, 3)) for _ in range(3))
        out.append((wedge(dx, dy) * c, dx * a + dy * b))
    for _ in range(30):
        Lam = Multivector(P, 2, {k: f for k in [(0, 1), (0, 2), (1, 2)]
                                 if (f := random_poly(P, rng, 1, 2))})
        E = Multivector(P, 1, {k: f for k in [(0,), (1,), (2,)]
                               if (f := random_poly(P, rng, 1, 2))})
        out.append((Lam, E))
    return out


def test_2_poissonization_equivalence(report):
    rng = random.Random(7)
    cands = _jacobi_candidates(rng)
    agree, jac = 0, 0
    for Lam, E in cands:
        res = poissonize(JacobiStructure.candidate(Lam, E), "t")
        Lt = res.Lam_tilde
        is_poisson = schouten_bracket(Lt, Lt).is_zero()
        is_jacobi = verify_jacobi(Lam, E).passed
        agree += is_poisson == is_jacobi
        jac += is_jacobi
    C, J = contact_to_jacobi(fz - fx * y)
    inv = poissonize(J, "t", contact=C, samples=20)
    pts = [c for c in inv.verdict.checks if c.id == "poissonize.inverse_points"]
    npts = len(pts[0].points) if pts and pts[0].points else 0
    ok = agree == len(cands) and len(cands) >= 50 and 0 < jac < len(cands) \
        and inv.verdict.passed and npts >= 20
    report(2, "poissonization equivalence", ok,
           "%d/%d agree, %d Jacobi, inverse at %d points" % (agree, len(cands), jac, npts))


def test_3_contact_pipeline(report):
    eta = fz - fx * y
    C, J = contact_to_jacobi(eta)
    ok = J.Lam == wedge(dx, dy) + wedge(dz, dy) * y and J.E == dz
    e = [to_sympy(c) for c in eta.components()]
    D = de_rham(eta)
    X, Y, Z = sympy.symbols("x y z")
    for pt in random_points(3, 20, seed=11):
        sub = dict(zip((X, Y, Z), pt))
        deta = [[sympy.sympify(to_sympy(D[(i, j)])).subs(sub) for j in range(3)]
                for i in range(3)]
        Minv, E = solve_sharp_contact([sympy.sympify(c).subs(sub) for c in e], deta, pt)
        for j in range(3):
            ok = ok and frac(E[j]) == J.E[P.names[j]].evaluate(pt)
            for i in range(3):
                ok = ok and frac(Minv[j, i]) == J.Lam[(P.names[i], P.names[j])].evaluate(pt)
    reeb = pair(eta, J.E) == P.one() and interior_product(J.E, de_rham(eta)).is_zero()
    ident = verify_contact_identities(C, J).passed
    rt = all(flat_contact(C, *sharp_jacobi(J, w, lam)) == (w, P.const(lam))
             for w in (fx, fy, fz, fx * y + fz) for lam in (0, 1))
    report(3, "contact pipeline", ok and reeb and ident and rt,
           "oracle=%s reeb=%s identities=%s roundtrip=%s" % (ok, reeb, ident, rt))


def _shipped_pairs():
    L, Jl = aff1_jacobi()
    return {"line": line_pair(), "contact": contact_pair(), "aff1_dual": canonical_pair(Jl)}


def test_4_bialgebroid_checks(report):
    passed = []
    for name, B in _shipped_pairs().items():
        v = verify_compatibility(B, "all")
        passed.append(v.passed and v.data["agreement"]
                      and all(v.data["modes"].values()))
    fam = perturbed_family(24, seed=0)
    consistent = 0
    for kind, Pb in fam:
        modes = verify_compatibility(Pb, "all").data["modes"]
        consistent += set(modes.values()) == {False}
    ok = all(passed) and consistent == len(fam) >= 20
    report(4, "generalized Lie bialgebroid checks", ok,
           "canonical %s, %d/%d perturbed fail in all modes"
           % (passed, consistent, len(fam)))


def test_5_induced_base(report):
    L, Jl = aff1_jacobi()
    cases = {"line": (line_pair(), Multivector.zero(LINE, 2), Multivector.basis(LINE, "x")),
             "contact": (contact_pair(), contact_structure().Lam, contact_structure().E),
             "aff1_dual": (canonical_pair(Jl), Jl.Lam, Jl.E)}
    ok = True
    count = 0
    rng = random.Random(5)
    for name, (B, Lam, E) in cases.items():
        J0, v = induced_base_jacobi(B, count=20)
        ok = ok and v.passed and J0.Lam == Lam and J0.E == E
        J = JacobiStructure(Lam, E)
        for _ in range(20):
            f, g = (random_poly(B.base, rng, 2, 3) for _ in range(2))
            lhs = ms_pair(B.d_phi(Multisection.function(f, B.rank)),
                          B.d_star(Multisection.function(g, B.rank)))
            ok = ok and lhs == jacobi_bracket(f, g, J)
            count += 1
    report(5, "induced base structure", ok, "3 pairs, %d bracket pairs" % count)


def test_6_linear_jacobi_aff1(report):
    L, J = aff1_jacobi()
    D = J.patch
    m1, m2 = D.var("mu1"), D.var("mu2")
    table = (jacobi_bracket(m1, m2, J) == m2 and jacobi_bracket(m1, D.one(), J) == D.one()
             and jacobi_bracket(m2, D.one(), J).is_zero())
    ok = table and verify_jacobi(J.Lam, J.E).passed
    report(6, "linear Jacobi structure of aff(1)", ok, "table=%s" % table)


def test_7_banal_jacobi_groupoid(report):
    t0 = time.time()
    inst = banal()
    G = inst.groupoid.G
    dxg, dtg, dyg = (Multivector.basis(G, v) for v in "xty")
    lam_ok = (inst.J.Lam == wedge(dtg, dxg) + wedge(dtg, dyg) * G.exp({"t": -1})
              and inst.J.E == -dxg)
    jv = verify_jacobi(inst.J.Lam, inst.J.E)
    lam_ok = lam_ok and jv.passed and jv.level() == "symbolic"
    mv = verify_jacobi_groupoid(inst.groupoid, inst.J, inst.sigma, samples=100)
    npts = max((len(c.points) for c in mv.checks if c.points), default=0)
    data = banal_line_oracle_data()
    rng = random.Random(77)
    oracle_ok = True
    for _ in range(100):
        g = [sympy.Rational(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(3)]
        h = [g[2], sympy.Rational(rng.randint(-4, 4), 2), sympy.Rational(rng.randint(-4, 4), 3)]
        comp, prod = sharp_morphism_oracle(*data, g, h, rng)
        oracle_ok = oracle_ok and all(is_zero_exact(e) for e in comp + prod)
    props = structural_properties(inst, samples=20)
    B = derive_gen_bialgebroid(inst)
    ref = line_pair()
    same = (B.A.anchor_matrix == ref.A.anchor_matrix
            and B.Astar.anchor_matrix == ref.Astar.anchor_matrix
            and B.phi0 == ref.phi0 and B.X0 == ref.X0
            and B.A.c == ref.A.c and B.Astar.c == ref.Astar.c)
    comp_ok = verify_compatibility(B, "all").passed and B.derivation.passed
    dt = time.time() - t0
    ok = lam_ok and mv.passed and npts >= 100 and oracle_ok and props.passed and same \
        and comp_ok and dt <= 120
    report(7, "banal Jacobi groupoid", ok,
           "Lambda'=%s morphism=%s (%d pts) oracle=%s properties=%s derived=%s/%s %.1fs"
           % (lam_ok, mv.passed, npts, oracle_ok, props.passed, same, comp_ok, dt))


def test_8_poissonization_of_groupoids(report):
    inst = banal()
    G = inst.groupoid.G
    dxg, dtg, dyg = (Multivector.basis(G, v) for v in "xty")
    variants = [(None, None), (wedge(dxg, dyg), None), (None, dyg), (wedge(dtg, dyg), None),
                (wedge(dtg, dxg), None), (None, dxg * 2), (wedge(dxg, dyg) * G.var("t"), dtg)]
    same = 0
    fails = 0
    for dL, dE in variants:
        cur = inst if dL is None and dE is None else inst.perturbed(dL, dE)
        v = verify_p38(cur, samples=10)
        same += v.data["jacobi"] == v.data["poisson"] and v.passed
        fails += not v.data["jacobi"]
    ok = same == len(variants) and fails >= 5
    report(8, "Jacobi groupoid iff Poissonized Poisson groupoid", ok,
           "%d/%d identical verdicts, %d perturbed non-examples" % (same, len(variants), fails))


def test_9_contact_groupoids(report):
    res = []
    for G, s in ((pair_groupoid(), None), (banal().groupoid, "t")):
        K, eta, sb = cotangent_contact_groupoid(G, s)
        v = contact_groupoid_check(K, eta, sb, samples=25)
        npts = min((len(c.points) for c in v.checks
                    if c.id.startswith("contact.") and c.points), default=25)
        res.append(v.passed and npts >= 25)
    lin = linear_dual_check(pair_groupoid(), samples=25)
    report(9, "contact groupoid of T*G x R", all(res) and lin.passed,
           "pair=%s banal=%s linear_dual=%s" % (res[0], res[1], lin.passed))


def test_10_base_morphism(report):
    v = base_morphism_check(banal(), count=20, samples=20)
    n = len([c for c in v.checks if c.id.startswith("base.beta") and "sampled" not in c.id])
    report(10, "base morphism", v.passed and n >= 20, "%d function pairs" % n)
