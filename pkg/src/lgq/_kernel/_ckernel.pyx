# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of py_backend.

Same dict-of-tuples layout; the win comes from removing interpreter overhead
in the inner elimination loops.  Coefficients stay arbitrary-precision Python
ints, so results are bit-identical to the pure backend.
"""

from math import gcd

BACKEND_NAME = "cython"


def zp_add(dict a, dict b):
    cdef dict out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def zp_sub(dict a, dict b):
    cdef dict out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def zp_neg(dict a):
    cdef dict out = {}
    for e, c in a.items():
        out[e] = -c
    return out


def zp_mul_int(dict a, k):
    cdef dict out
    if k == 0:
        return {}
    out = {}
    for e, c in a.items():
        out[e] = c * k
    return out


cdef tuple _tadd(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list acc = []
    for i in range(n):
        acc.append(a[i] + b[i])
    return tuple(acc)


def zp_mul(dict a, dict b):
    cdef dict out = {}
    if not a or not b:
        return out
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = _tadd(ea, eb)
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def zp_content(dict a):
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def zp_div_int(dict a, k):
    cdef dict out = {}
    for e, c in a.items():
        out[e] = c // k
    return out


def ip_add(dict p, dict q):
    cdef dict out = dict(p)
    for m, c in q.items():
        if m in out:
            s = zp_add(out[m], c)
            if s:
                out[m] = s
            else:
                del out[m]
        else:
            out[m] = c
    return out


def ip_scale(dict p, dict c):
    cdef dict out = {}
    if not c:
        return out
    for m, v in p.items():
        out[m] = zp_mul(v, c)
    return out


def ip_mul_mono(dict p, tuple mono):
    cdef dict out = {}
    for m, v in p.items():
        out[_tadd(m, mono)] = v
    return out


def ip_mul(dict p, dict q):
    cdef dict out = {}
    for mp, cp in p.items():
        for mq, cq in q.items():
            m = _tadd(mp, mq)
            prod = zp_mul(cp, cq)
            if m in out:
                s = zp_add(out[m], prod)
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = prod
    return out


def ip_combine(dict p, dict cp, dict q, dict cq, tuple mono):
    """cp*p - cq*(x^mono * q), the fraction-free elimination step."""
    cdef dict out = {}
    for m, v in p.items():
        out[m] = zp_mul(v, cp)
    for m, v in q.items():
        ms = _tadd(m, mono)
        t = zp_mul(v, cq)
        if ms in out:
            s = zp_sub(out[ms], t)
            if s:
                out[ms] = s
            else:
                del out[ms]
        else:
            out[ms] = zp_neg(t)
    return out


def ip_content(dict p):
    g = 0
    for v in p.values():
        for c in (<dict> v).values():
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


def ip_div_int(dict p, k):
    cdef dict out = {}
    cdef dict inner
    for m, v in p.items():
        inner = {}
        for e, c in (<dict> v).items():
            inner[e] = c // k
        out[m] = inner
    return out
