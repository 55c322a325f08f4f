"""Shared fixtures: canonical pairs and perturbed non-examples."""
import random

from jacobigeom.algebroid import AlgebroidStructure
from jacobigeom.bialgebroid import GenLieBialgebroid, canonical_pair
from jacobigeom.jacobi import JacobiStructure
from jacobigeom.multivec import Multivector, wedge
from jacobigeom.symring import PatchVars

LINE = PatchVars(["x"])
R3 = PatchVars(["x", "y", "z"])


def line_pair():
    """Canonical pair of (0, d/dx) on the line."""
    return canonical_pair(JacobiStructure(Multivector.zero(LINE, 2), Multivector.basis(LINE, "x")))


def contact_structure():
    dx, dy, dz = (Multivector.basis(R3, v) for v in "xyz")
    return JacobiStructure(wedge(dx, dy) + wedge(dz, dy) * R3.var("y"), dz)


def contact_pair():
    return canonical_pair(contact_structure())


KINDS = ("X0", "phi0", "anchor", "struct")


def perturb(B, rng, kind=None):
    """Shift one entry of the data by a nonzero constant."""
    kind = kind or rng.choice(KINDS)
    r, base = B.rank, B.base
    k = rng.randrange(r)
    c = rng.choice([-2, -1, 1, 2])
    if kind == "X0":
        X0 = list(B.X0.components())
        X0[k] = X0[k] + base.const(c)
        return kind, GenLieBialgebroid(B.A, B.phi0, B.Astar, X0, check=False)
    if kind == "phi0":
        p = list(B.phi0.components())
        p[k] = p[k] + base.const(c)
        return kind, GenLieBialgebroid(B.A, p, B.Astar, B.X0, check=False)
    if kind == "anchor":
        rows = [list(row) for row in B.Astar.anchor_matrix]
        i = rng.randrange(len(base))
        rows[k][i] = rows[k][i] + base.const(c)
        As = AlgebroidStructure(base, r, rows, B.Astar.c)
        return kind, GenLieBialgebroid(B.A, B.phi0, As, B.X0, check=False)
    a, b = sorted(rng.sample(range(r), 2))
    cs = list(B.Astar.structure(a, b) or [base.zero()] * r)
    cs[k] = cs[k] + base.const(c)
    st = dict(B.Astar.c)
    st[(a, b)] = cs
    As = AlgebroidStructure(base, r, B.Astar.anchor_matrix, st)
    return kind, GenLieBialgebroid(B.A, B.phi0, As, B.X0, check=False)


def perturbed_family(count=24, seed=0):
    rng = random.Random(seed)
    bases = [line_pair(), contact_pair()]
    return [perturb(bases[i % 2], rng) for i in range(count)]
