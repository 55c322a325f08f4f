"""Pure-Python term kernel for exp-polynomials.

A term table maps ``(expvec, monomial)`` to a nonzero exact coefficient.
``expvec`` is a tuple of rationals, ``monomial`` a tuple of ints.
"""
from fractions import Fraction


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def add_terms(a, b, sign=1):
    out = dict(a)
    for key, c in b.items():
        v = out.get(key, 0) + (c if sign == 1 else -c)
        if v:
            out[key] = _norm(v)
        else:
            out.pop(key, None)
    return out


def scale_terms(a, c):
    if not c:
        return {}
    return {k: _norm(v * c) for k, v in a.items()}


def mul_terms(a, b):
    out = {}
    for (ea, ma), ca in a.items():
        for (eb, mb), cb in b.items():
            key = (tuple([_norm(x + y) for x, y in zip(ea, eb)]),
                   tuple([x + y for x, y in zip(ma, mb)]))
            v = out.get(key, 0) + ca * cb
            if v:
                out[key] = _norm(v)
            else:
                del out[key]
    return out
