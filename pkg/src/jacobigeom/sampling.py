"""Deterministic rational sample points."""
import itertools
import random
from fractions import Fraction

DEFAULT_GRID = (Fraction(-2), Fraction(-1), Fraction(-1, 2),
                Fraction(1, 2), Fraction(1), Fraction(2))
MAX_GRID = 100


def grid_points(dim, values=DEFAULT_GRID, cap=MAX_GRID):
    """First ``cap`` tuples of the product grid, in lexicographic order."""
    return [tuple(p) for p in itertools.islice(itertools.product(values, repeat=dim), cap)]


def random_rational(rng, num=7, den=4):
    """Small random rational: numerator in [-num, num], denominator in [1, den]."""
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_points(dim, count, seed=0, nonzero=False):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = tuple(random_rational(rng) for _ in range(dim))
        if nonzero and any(c == 0 for c in p):
            continue
        out.append(p)
    return out


def sample_points(dim, count=None, seed=0):
    """Grid points first, then seeded random points if more are requested."""
    pts = grid_points(dim)
    if count is None:
        return pts
    if count <= len(pts):
        return pts[:count]
    return pts + random_points(dim, count - len(pts), seed)


def random_poly(patch, rng, degree=2, terms=3, exps=()):
    """Random polynomial of total degree <= ``degree``; optional exp factors.

    ``exps`` lists ``{var: coeff}`` exponents one of which may multiply a term.
    """
    names = list(patch.names)
    acc = patch.zero()
    for _ in range(terms):
        c = random_rational(rng)
        if c == 0:
            continue
        mono = patch.const(c)
        for _ in range(rng.randint(0, degree)):
            if names:
                mono = mono * patch.var(rng.choice(names))
        if exps and rng.random() < 0.5:
            mono = mono * patch.exp(rng.choice(list(exps)))
        acc = acc + mono
    return acc
