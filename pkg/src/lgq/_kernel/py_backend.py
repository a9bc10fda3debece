"""Pure-Python arithmetic kernel.

Data layout (shared with the compiled twin):

* parameter polynomial ("zp"): dict mapping parameter-exponent tuples to
  nonzero ints; the empty dict is zero.
* coefficient polynomial ("ip"): dict mapping variable-exponent tuples to
  nonzero zp dicts; the empty dict is zero.

Neither layer ever stores a zero value.  All functions return fresh dicts;
inputs are never mutated.
"""

from math import gcd

BACKEND_NAME = "python"


# -- parameter polynomials ---------------------------------------------------

def zp_add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def zp_sub(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def zp_neg(a):
    return {e: -c for e, c in a.items()}


def zp_mul_int(a, k):
    if k == 0:
        return {}
    return {e: c * k for e, c in a.items()}


def zp_mul(a, b):
    if not a or not b:
        return {}
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def zp_content(a):
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def zp_div_int(a, k):
    return {e: c // k for e, c in a.items()}


# -- coefficient polynomials -------------------------------------------------

def ip_add(p, q):
    out = dict(p)
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


def ip_scale(p, c):
    if not c:
        return {}
    return {m: zp_mul(v, c) for m, v in p.items()}


def ip_mul_mono(p, mono):
    return {tuple(a + b for a, b in zip(m, mono)): v for m, v in p.items()}


def ip_mul(p, q):
    out = {}
    for mp, cp in p.items():
        for mq, cq in q.items():
            m = tuple(a + b for a, b in zip(mp, mq))
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


def ip_combine(p, cp, q, cq, mono):
    """cp*p - cq*(x^mono * q), the fraction-free elimination step."""
    out = {}
    for m, v in p.items():
        out[m] = zp_mul(v, cp)
    for m, v in q.items():
        ms = tuple(a + b for a, b in zip(m, mono))
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


def ip_content(p):
    g = 0
    for v in p.values():
        for c in v.values():
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


def ip_div_int(p, k):
    return {m: {e: c // k for e, c in v.items()} for m, v in p.items()}
