import random
import time
from fractions import Fraction

import pytest
import sympy

from jacobigeom.algebroid import AlgebroidStructure
from jacobigeom.bialgebroid import canonical_pair, verify_compatibility
from jacobigeom.groupoid import (ConcreteGroupoid, agree, base_morphism_check, banal,
                                 builtin_examples, contact_groupoid_check,
                                 cotangent_contact_groupoid, derive_gen_bialgebroid,
                                 dual_bundle_abelian, jacobi_lie_group, linear_dual_check,
                                 pair_groupoid, sigma_multi_at, structural_properties,
                                 tangent_cotangent, verify_groupoid, verify_jacobi_groupoid,
                                 verify_p38)
from jacobigeom.jacobi import JacobiStructure, verify_jacobi
from jacobigeom.multivec import Multivector, wedge
from jacobigeom.symring import Interval, PatchVars, StructuralError

from oracles import banal_line_oracle_data, is_zero_exact, sharp_morphism_oracle

PT = PatchVars([])


def aff1():
    return AlgebroidStructure(PT, 2, [[], []], {(0, 1): [0, 1]}, name="aff1")


def same_pair(B1, B2):
    """Frame data of two bialgebroids agree entry by entry."""
    def alg(A1, A2):
        if A1.anchor_matrix != A2.anchor_matrix:
            return False
        z = [A1.base.zero()] * A1.rank
        return all((A1.structure(i, j) or z) == (A2.structure(i, j) or z)
                   for i in range(A1.rank) for j in range(i + 1, A1.rank))
    return (alg(B1.A, B2.A) and alg(B1.Astar, B2.Astar)
            and B1.phi0 == B2.phi0 and B1.X0 == B2.X0)


@pytest.fixture(scope="module")
def line():
    return banal()


def test_builtin_groupoids_verify(line):
    assert verify_groupoid(line.groupoid, line.sigma).passed
    assert verify_groupoid(pair_groupoid()).passed
    assert verify_groupoid(pair_groupoid(PatchVars(["x", "y"]))).passed
    assert verify_groupoid(dual_bundle_abelian(aff1()).groupoid).passed


def test_broken_multiplication_fails():
    M = PatchVars(["x"])
    G, C = PatchVars(["x", "y"]), PatchVars(["x", "y", "z"])
    bad = ConcreteGroupoid(G, M, ["y"], ["x"], ["x", "x"], ["y", "x"], C,
                           ["y", "z"], ["x", "z+1"], ["y_h"])
    v = verify_groupoid(bad)
    assert not v.passed
    assert any(c.id.startswith("groupoid.") for c in v.failures())


def test_non_multiplicative_sigma_fails(line):
    v = verify_groupoid(line.groupoid, line.groupoid.G.var("x"))
    assert not v.passed


def test_banal_jacobi_structure_matches_transcription(line):
    G = line.groupoid.G
    dx, dt, dy = (Multivector.basis(G, v) for v in "xty")
    assert line.J.Lam == wedge(dt, dx) + wedge(dt, dy) * G.exp({"t": -1})
    assert line.J.E == -dx
    assert verify_jacobi(line.J.Lam, line.J.E).passed


@pytest.mark.parametrize("which", ["TG", "TGR", "TstarG", "TstarGR", "semidirect"])
def test_derived_groupoids(line, which):
    H = tangent_cotangent(line.groupoid, line.sigma, which)
    H = H[0] if isinstance(H, tuple) else H
    assert verify_groupoid(H, samples=10).passed


def test_tangent_of_additive_group_adds_velocities():
    G = PatchVars(["a"])
    gp = ConcreteGroupoid(G, PT, [], [], ["0"], ["-a"], PatchVars(["a", "b"]),
                          ["b"], ["a+b"], ["a_h"])
    T = tangent_cotangent(gp, None, "TG")
    assert verify_groupoid(T).passed
    C = T.C
    # (a, v) (b, w) = (a + b, v + w)
    vel = [f for f in T.mult.components]
    assert len(vel) == 2 and str(vel[0]) in ("a + b", "b + a")
    names = C.names
    point = [Fraction(k) for k in range(1, len(names) + 1)]
    vals = dict(zip(names, point))
    got = [f.evaluate(point) for f in T.mult.components]
    h = [f.evaluate(point) for f in T.second.components]
    assert got[1] == vals[names[1]] + h[1]


def test_banal_is_jacobi_groupoid(line):
    v = verify_jacobi_groupoid(line.groupoid, line.J, line.sigma, samples=30)
    assert v.passed
    assert v.data["phi0"]["X0"]


def test_banal_perturbed_fails(line):
    G = line.groupoid.G
    bad = line.perturbed(dLam=wedge(Multivector.basis(G, "x"), Multivector.basis(G, "y")))
    assert not verify_jacobi_groupoid(bad.groupoid, bad.J, bad.sigma, samples=10).passed


def test_sharp_morphism_against_oracle():
    data = banal_line_oracle_data()
    rng = random.Random(1)
    for _ in range(10):
        g = [sympy.Rational(rng.randint(-4, 4), 2) for _ in range(3)]
        h = [g[2], sympy.Rational(rng.randint(-4, 4), 2), sympy.Rational(rng.randint(-4, 4), 3)]
        comp, prod = sharp_morphism_oracle(*data, g, h, rng)
        assert all(is_zero_exact(e) for e in comp + prod)


def test_structural_properties(line):
    v = structural_properties(line, samples=10)
    assert v.passed, [c.id for c in v.failures()]
    ids = {c.id.split("[")[0] for c in v.checks}
    for part in ("properties.reeb.alpha_vertical", "properties.units_sharp.alpha",
                 "properties.translation.sigma_multi"):
        assert any(i.startswith(part) for i in ids)


def test_sigma_multi_pointwise(line):
    for k in (0, 1):
        lhs, rhs = sigma_multi_at(line, (1, 2, 3), (3, 1, 5), bisection=k)
        assert all(agree(a, b) for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb))
    # exp(-3) enters, so the pointwise values are enclosures
    assert any(isinstance(a, Interval) for row in lhs for a in row)


def test_contact_groupoid_pair_and_banal(line):
    for G, s in ((pair_groupoid(), None), (line.groupoid, line.sigma)):
        K, eta, sb = cotangent_contact_groupoid(G, s)
        v = contact_groupoid_check(K, eta, sb, samples=25)
        assert v.passed, [c.id for c in v.failures()]


def test_contact_groupoid_rejects_wrong_sigma():
    K, eta, sb = cotangent_contact_groupoid(pair_groupoid(), None)
    zeta = K.G.var(K.G.names[0]) * 0 + K.G.var("gam")
    v = contact_groupoid_check(K, eta, zeta, samples=5)
    assert not v.passed


def test_linear_dual_pair():
    assert linear_dual_check(pair_groupoid()).passed


def test_derive_banal_matches_canonical(line):
    B = derive_gen_bialgebroid(line)
    assert B.derivation.passed
    J = JacobiStructure(Multivector.zero(line.groupoid.M, 2),
                        Multivector.basis(line.groupoid.M, "x"))
    assert same_pair(B, canonical_pair(J))
    assert verify_compatibility(B, "all").passed


def test_derive_dual_bundle():
    L = aff1()
    for omega0 in (None, [1, 0]):
        inst = dual_bundle_abelian(L, omega0)
        B = derive_gen_bialgebroid(inst)
        assert verify_compatibility(B, "all").passed
        # AG is the abelian bundle L*, its dual side is L with the cocycle omega0
        assert all(not f for f in B.phi0.components())
        assert B.A.c == {}
        assert [str(f) for f in B.Astar.structure(0, 1)] == ["0", "1"]
        assert [str(f) for f in B.X0.components()] == (["0", "0"] if omega0 is None
                                                        else ["1", "0"])


def test_base_morphism(line):
    v = base_morphism_check(line, count=8, samples=8)
    assert v.passed


def test_poissonized_groupoid_banal_and_perturbed(line):
    v = verify_p38(line, samples=10)
    assert v.passed and v.data["jacobi"] and v.data["poisson"]
    G = line.groupoid.G
    dx, dt, dy = (Multivector.basis(G, n) for n in "xty")
    for dL, dE in ((wedge(dx, dy), None), (None, dy), (wedge(dt, dy), None)):
        w = verify_p38(line.perturbed(dL, dE), samples=5)
        assert w.passed
        assert w.data["jacobi"] is False and w.data["poisson"] is False


def test_jacobi_lie_group():
    inst = jacobi_lie_group()
    assert verify_groupoid(inst.groupoid, inst.sigma).passed
    assert verify_jacobi(inst.J.Lam, inst.J.E).passed
    assert verify_jacobi_groupoid(inst.groupoid, inst.J, inst.sigma, samples=10).passed
    B = derive_gen_bialgebroid(inst)
    assert verify_compatibility(B, "all").passed
    with pytest.raises(StructuralError):
        jacobi_lie_group(k=0)


@pytest.mark.parametrize("k", [1, 3, Fraction(1, 2)])
def test_jacobi_lie_group_family(k):
    inst = jacobi_lie_group(k=k, x2=2)
    assert verify_jacobi_groupoid(inst.groupoid, inst.J, inst.sigma, samples=5).passed


def test_builtin_lookup():
    assert builtin_examples("pair").name == "pair"
    assert builtin_examples("dual", L=aff1()).name == "dual"
    with pytest.raises(StructuralError):
        builtin_examples("nope")
