# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term kernel for exp-polynomials; same contract as _pykernel."""
from fractions import Fraction


cdef inline object _norm(object c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


cpdef dict add_terms(dict a, dict b, int sign=1):
    cdef dict out = dict(a)
    cdef object key, c, v
    for key, c in b.items():
        if sign == 1:
            v = out.get(key, 0) + c
        else:
            v = out.get(key, 0) - c
        if v:
            out[key] = _norm(v)
        else:
            out.pop(key, None)
    return out


cpdef dict scale_terms(dict a, object c):
    if not c:
        return {}
    cdef dict out = {}
    cdef object k, v
    for k, v in a.items():
        out[k] = _norm(v * c)
    return out


cpdef dict mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef tuple ea, ma, eb, mb, ka, kb
    cdef object ca, cb, v, key
    cdef Py_ssize_t i, n, m
    cdef list ev, mo
    for ka, ca in a.items():
        ea = <tuple>ka[0]
        ma = <tuple>ka[1]
        n = len(ea)
        m = len(ma)
        for kb, cb in b.items():
            eb = <tuple>kb[0]
            mb = <tuple>kb[1]
            ev = [None] * n
            for i in range(n):
                ev[i] = _norm(ea[i] + eb[i])
            mo = [None] * m
            for i in range(m):
                mo[i] = <long>ma[i] + <long>mb[i]
            key = (tuple(ev), tuple(mo))
            v = out.get(key, 0) + ca * cb
            if v:
                out[key] = _norm(v)
            else:
                del out[key]
    return out
