import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from jacobigeom.jacobi import (CoisotropicSubpatch, JacobiStructure, NonContactError,
                               NonUnitDeterminant, PreconditionError, coisotropy_check,
                               conormal_algebroid, contact_to_jacobi, flat_contact,
                               hamiltonian_field, jacobi_bracket, poissonize, poissonize_bivector,
                               sharp_jacobi, verify_contact_identities, verify_jacobi)
from jacobigeom.multivec import DifferentialForm, Multivector, de_rham, pair, wedge
from jacobigeom.sampling import random_points, random_poly
from jacobigeom.symring import PatchVars

from oracles import frac, solve_sharp_contact, to_sympy

P = PatchVars(["x", "y", "z"])
x, y, z = (P.var(v) for v in "xyz")
dx, dy, dz = (Multivector.basis(P, v) for v in "xyz")
fx, fy, fz = (DifferentialForm.basis(P, v) for v in "xyz")
ETA = fz - fx * y
CONTACT = JacobiStructure(wedge(dx, dy) + wedge(dz, dy) * y, dz)


def test_zero_structure_passes():
    assert verify_jacobi(Multivector.zero(P, 2), Multivector.zero(P, 1)).passed


def test_constant_fail_case():
    v = verify_jacobi(wedge(dx, dy), dz)
    assert not v.passed
    bad = v.failures()
    assert [c.id for c in bad] == ["jacobi.first"]
    # [[L, L]] - 2 E^L = -2 dz^dx^dy
    assert bad[0].residual == str(wedge(dz, wedge(dx, dy)) * -2)
    with pytest.raises(PreconditionError):
        JacobiStructure(wedge(dx, dy), dz)


def test_contact_structure_passes():
    assert verify_jacobi(CONTACT.Lam, CONTACT.E).passed


def test_bracket_examples():
    J0 = JacobiStructure(Multivector.zero(P, 2))
    assert jacobi_bracket(x * y, z, J0).is_zero()
    Jc = JacobiStructure(wedge(dx, dy))
    assert jacobi_bracket(x, y, Jc) == P.one()
    JE = JacobiStructure(Multivector.zero(P, 2), dz)
    f = x * z ** 2 + y
    # {1, f} = E(f); the value -df/dz belongs to the opposite order {f, 1}
    assert jacobi_bracket(P.one(), f, JE) == f.diff("z")
    assert jacobi_bracket(f, P.one(), JE) == -f.diff("z")
    assert hamiltonian_field(P.one(), JE) == dz


def test_contact_to_jacobi_example():
    C, J = contact_to_jacobi(ETA)
    assert J.E == dz
    assert J.Lam == wedge(dx, dy) + wedge(dz, dy) * y
    assert pair(ETA, J.E) == P.one()
    assert verify_contact_identities(C, J).passed


def test_contact_to_jacobi_matches_linear_solve_oracle():
    C, J = contact_to_jacobi(ETA)
    e = [to_sympy(c) for c in ETA.components()]
    D = de_rham(ETA)
    X, Y, Z = sympy.symbols("x y z")
    for pt in random_points(3, 20, seed=4):
        sub = dict(zip((X, Y, Z), pt))
        deta = [[sympy.sympify(to_sympy(D[(i, j)])).subs(sub) for j in range(3)]
                for i in range(3)]
        Minv, E = solve_sharp_contact([sympy.sympify(c).subs(sub) for c in e], deta, pt)
        for j in range(3):
            assert frac(E[j]) == J.E[P.names[j]].evaluate(pt)
            for i in range(3):
                assert frac(Minv[j, i]) == J.Lam[(P.names[i], P.names[j])].evaluate(pt)


def test_degenerate_contact_form():
    with pytest.raises(NonContactError):
        contact_to_jacobi(fz)
    with pytest.raises(NonContactError):
        contact_to_jacobi(DifferentialForm.basis(PatchVars(["x", "y"]), "x"))


def test_non_unit_determinant_is_reported():
    with pytest.raises(NonUnitDeterminant) as exc:
        contact_to_jacobi(fz * (1 + x ** 2) - fx * y)
    assert exc.value.certificate["level"] == "pointwise"


def test_poissonize_examples():
    J0 = JacobiStructure(Multivector.zero(P, 2))
    assert poissonize_bivector(J0, "t").is_zero()
    res = poissonize(CONTACT, "t", contact=contact_to_jacobi(ETA)[0], samples=20)
    assert res.verdict.passed
    assert res.is_poisson and res.jacobi
    ids = [c.id for c in res.verdict.checks]
    assert "poissonize.inverse_points" in ids


def test_sharp_jacobi_examples():
    X, f = sharp_jacobi(CONTACT, DifferentialForm.zero(P, 1), 1)
    assert X == CONTACT.E and f.is_zero()
    Jp = JacobiStructure(wedge(dx, dy))
    X, f = sharp_jacobi(Jp, fx * z, 0)
    assert X == Jp.sharp(fx * z) and f.is_zero()
    C, J = contact_to_jacobi(ETA)
    w, lam = flat_contact(C, *sharp_jacobi(J, fx, 1))
    assert w == fx and lam == P.one()


def test_coisotropy_examples():
    S = CoisotropicSubpatch(P, ["z"])
    assert coisotropy_check(wedge(dx, dy), S).passed
    assert coisotropy_check(wedge(dz, dy), S).passed
    assert not coisotropy_check(wedge(dz, dy) + wedge(dx, dy) * 0 + wedge(dy, dz) * 2,
                                CoisotropicSubpatch(P, ["y", "z"])).passed


def test_conormal_algebroid_of_zero_structure():
    A, E_S = conormal_algebroid(JacobiStructure(Multivector.zero(P, 2)),
                                CoisotropicSubpatch(P, ["y", "z"]))
    assert all(f.is_zero() for row in A.anchor_matrix for f in row)
    assert not A.c
    assert all(f.is_zero() for f in E_S)


def test_conormal_algebroid_runs_the_checker():
    S = CoisotropicSubpatch(P, ["z"])
    if coisotropy_check(CONTACT, S).passed:
        A, _ = conormal_algebroid(CONTACT, S)
        assert A.verify().passed
    else:
        with pytest.raises(PreconditionError):
            conormal_algebroid(CONTACT, S)


@given(st.integers(0, 10 ** 6))
def test_bracket_of_contact_structure_is_lie(seed):
    rng = random.Random(seed)
    f, g, h = (random_poly(P, rng, 2, 3) for _ in range(3))
    b = lambda a, c: jacobi_bracket(a, c, CONTACT)  # noqa: E731
    assert (b(f, g) + b(g, f)).is_zero()
    assert (b(f, b(g, h)) + b(g, b(h, f)) + b(h, b(f, g))).is_zero()


@given(st.integers(0, 10 ** 6))
def test_poissonization_is_homogeneous(seed):
    rng = random.Random(seed)
    Lam = Multivector(P, 2, {k: f for k in [(0, 1), (0, 2), (1, 2)]
                             if (f := random_poly(P, rng, 1, 2))})
    E = Multivector(P, 1, {k: f for k in [(0,), (1,), (2,)] if (f := random_poly(P, rng, 1, 2))})
    res = poissonize(JacobiStructure.candidate(Lam, E), "t")
    assert res.verdict.checks[0].passed
    assert res.verdict.passed
