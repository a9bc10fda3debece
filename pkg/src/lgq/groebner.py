"""Fraction-free Groebner bases over parameter fields.

Polynomials enter and leave as ``LaurentPoly`` values with nonnegative
exponents and field coefficients.  Internally everything is converted to
primitive integer form (dict monomial -> integer parameter polynomial) and
all elimination steps are fraction free: instead of dividing by a leading
coefficient we cross multiply and strip the integer content afterwards.  No
multivariate gcd is ever needed.

The pair loop is plain Buchberger with the sugar selection strategy and the
two classical pair-discard criteria; reduced bases are produced by pruning
and tail reduction.  A tracked variant carries division certificates
(a denominator polynomial and cofactors on the original generators) so that
ideal membership can be turned into an exact identity.

A pair budget bounds every basis computation; exhausting it raises
``ResourceBudgetExceeded`` rather than looping on.
"""

from __future__ import annotations

import itertools
from math import gcd
from typing import Iterable, Sequence, Union

from ._kernel import (
    ip_add,
    ip_combine,
    ip_content,
    ip_div_int,
    ip_mul,
    ip_mul_mono,
    ip_scale,
    zp_content,
    zp_mul,
)
from .errors import (
    NotStabilized,
    OriginNotInVariety,
    ResourceBudgetExceeded,
    DivisionFailure,
)
from .laurent import LaurentPoly, LaurentRing
from .scalar import PFElem

DEFAULT_PAIR_BUDGET = 200_000


class _Infinite:
    """Singleton marker for an infinite-dimensional quotient."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


# monomial orders


class MonomialOrder:
    __slots__ = ("name", "_key")

    def __init__(self, name: str, key):
        self.name = name
        self._key = key

    def key(self, exp: tuple) -> tuple:
        return self._key(exp)

    def __repr__(self) -> str:
        return "MonomialOrder(%s)" % self.name


def _grevlex_key(exp: tuple) -> tuple:
    return (sum(exp), tuple(-v for v in reversed(exp)))


GREVLEX = MonomialOrder("grevlex", _grevlex_key)
LEX = MonomialOrder("lex", lambda exp: exp)


def block_order(first: int) -> MonomialOrder:
    """Compare the first ``first`` exponents (graded) before the rest; the
    standard elimination order for the leading block."""

    def key(exp: tuple) -> tuple:
        return (_grevlex_key(exp[:first]), _grevlex_key(exp[first:]))

    return MonomialOrder("block(%d)" % first, key)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _exp_sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _exp_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _lm(ip: dict, order: MonomialOrder) -> tuple:
    return max(ip, key=order.key)


def _total_deg(ip: dict) -> int:
    return max((sum(e) for e in ip), default=0)


# conversions between field and primitive integer form


def to_ipoly(p: LaurentPoly) -> tuple[dict, PFElem]:
    """Primitive integer form and the field scalar with ``ip == scale * p``."""
    if not p.is_laurent_free():
        raise ValueError("negative exponents; clear denominators first")
    field = p.ring.field
    if p.is_zero():
        return {}, field.one
    items = p.items()
    dens = [c.den for _, c in items]
    n = len(items)
    prefix = [None] * (n + 1)
    suffix = [None] * (n + 1)
    one = field.zp_one()
    prefix[0] = one
    for i in range(n):
        prefix[i + 1] = zp_mul(prefix[i], dens[i])
    suffix[n] = one
    for i in range(n - 1, -1, -1):
        suffix[i] = zp_mul(suffix[i + 1], dens[i])
    ip = {}
    for idx, (exp, coeff) in enumerate(items):
        ip[exp] = zp_mul(coeff.num, zp_mul(prefix[idx], suffix[idx + 1]))
    g = ip_content(ip)
    if g > 1:
        ip = ip_div_int(ip, g)
    exp0, coeff0 = items[0]
    scale = field.from_zpoly(ip[exp0]) / coeff0
    return ip, scale


def from_ipoly(ip: dict, ring: LaurentRing) -> LaurentPoly:
    field = ring.field
    return LaurentPoly(ring, {e: field.from_zpoly(zp) for e, zp in ip.items()})


def _primitive(ip: dict) -> dict:
    g = ip_content(ip)
    return ip_div_int(ip, g) if g > 1 else ip


# reduction


def _nf_untracked(work: dict, basis: list, order: MonomialOrder, field):
    """Full fraction-free reduction; returns (remainder, u) with
    remainder == u * work modulo the ideal of the basis."""
    u = field.one
    frozen: set = set()
    while True:
        active = [m for m in work if m not in frozen]
        if not active:
            break
        m = max(active, key=order.key)
        red = None
        for rec in basis:
            if _divides(rec.lm, m):
                red = rec
                break
        if red is None:
            frozen.add(m)
            continue
        c = work[m]
        ck = red.ip[red.lm]
        work = ip_combine(work, ck, red.ip, c, _exp_sub(m, red.lm))
        u = u * field.from_zpoly(ck)
        g = ip_content(work)
        if g > 1:
            work = ip_div_int(work, g)
            u = u / field.from_int(g)
    return work, u


def _nf_sugar(work: dict, sugar: int, basis: list, order: MonomialOrder):
    """Reduction for the pair loop: remainder and its sugar degree."""
    frozen: set = set()
    while True:
        active = [m for m in work if m not in frozen]
        if not active:
            break
        m = max(active, key=order.key)
        red = None
        for rec in basis:
            if _divides(rec.lm, m):
                red = rec
                break
        if red is None:
            frozen.add(m)
            continue
        shift = _exp_sub(m, red.lm)
        sugar = max(sugar, red.sugar + sum(shift))
        work = ip_combine(work, red.ip[red.lm], red.ip, work[m], shift)
        g = ip_content(work)
        if g > 1:
            work = ip_div_int(work, g)
    return work, sugar


class _Rec:
    __slots__ = ("ip", "lm", "sugar", "d", "U")

    def __init__(self, ip, lm, sugar, d=None, U=None):
        self.ip = ip
        self.lm = lm
        self.sugar = sugar
        self.d = d
        self.U = U


def _tracked_content_reduce(rec: _Rec) -> None:
    g = ip_content(rec.ip)
    g = gcd(g, zp_content(rec.d))
    for u in rec.U:
        if g == 1:
            break
        g = gcd(g, ip_content(u))
    if g > 1:
        rec.ip = ip_div_int(rec.ip, g)
        rec.d = {e: c // g for e, c in rec.d.items()}
        rec.U = [ip_div_int(u, g) for u in rec.U]


def _nf_tracked_rec(rec: _Rec, basis: list, order: MonomialOrder) -> None:
    """Reduce ``rec`` in place, composing certificates on the fly."""
    frozen: set = set()
    while True:
        active = [m for m in rec.ip if m not in frozen]
        if not active:
            break
        m = max(active, key=order.key)
        red = None
        for cand in basis:
            if _divides(cand.lm, m):
                red = cand
                break
        if red is None:
            frozen.add(m)
            continue
        shift = _exp_sub(m, red.lm)
        rec.sugar = max(rec.sugar, red.sugar + sum(shift))
        c = rec.ip[m]
        ck = red.ip[red.lm]
        f1 = zp_mul(ck, red.d)
        f2 = zp_mul(c, rec.d)
        rec.ip = ip_combine(rec.ip, ck, red.ip, c, shift)
        rec.U = [
            ip_combine(u, f1, uk, f2, shift) for u, uk in zip(rec.U, red.U)
        ]
        rec.d = zp_mul(rec.d, red.d)
        _tracked_content_reduce(rec)


# the pair loop


def _spair_sugar(gi: _Rec, gj: _Rec, lcm_exp: tuple) -> int:
    return max(
        gi.sugar + sum(lcm_exp) - sum(gi.lm),
        gj.sugar + sum(lcm_exp) - sum(gj.lm),
    )


def _buchberger_loop(
    gen_ips: list[dict],
    order: MonomialOrder,
    budget: int,
    track: bool,
    field,
    nparams: int,
) -> list[_Rec]:
    zp_one = {(0,) * nparams: 1}
    nvars = None
    G: list[_Rec] = []
    for i, ip in enumerate(gen_ips):
        if not ip:
            continue
        if nvars is None:
            nvars = len(next(iter(ip)))
        rec = _Rec(ip, _lm(ip, order), _total_deg(ip))
        if track:
            rec.d = dict(zp_one)
            rec.U = [
                {(0,) * nvars: dict(zp_one)} if j == i else {}
                for j in range(len(gen_ips))
            ]
        G.append(rec)

    pending: dict[tuple[int, int], tuple] = {}

    def add_pairs(t: int) -> None:
        for i in range(t):
            lcm_exp = _exp_lcm(G[i].lm, G[t].lm)
            pending[(i, t)] = (
                _spair_sugar(G[i], G[t], lcm_exp),
                sum(lcm_exp),
                i,
                t,
            )

    for t in range(1, len(G)):
        add_pairs(t)

    processed = 0
    while pending:
        pair = min(pending, key=pending.get)
        sugar_hint = pending.pop(pair)[0]
        i, j = pair
        processed += 1
        if processed > budget:
            raise ResourceBudgetExceeded(
                "pair budget %d exhausted (basis size %d)" % (budget, len(G))
            )
        gi, gj = G[i], G[j]
        lcm_exp = _exp_lcm(gi.lm, gj.lm)
        # product criterion: disjoint leading monomials reduce to zero
        if lcm_exp == tuple(a + b for a, b in zip(gi.lm, gj.lm)):
            continue
        # chain criterion: a third element divides the lcm and both side
        # pairs are no longer pending
        skip = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if not _divides(G[k].lm, lcm_exp):
                continue
            p1 = (min(i, k), max(i, k))
            p2 = (min(j, k), max(j, k))
            if p1 not in pending and p2 not in pending:
                skip = True
                break
        if skip:
            continue

        shift_i = _exp_sub(lcm_exp, gi.lm)
        shift_j = _exp_sub(lcm_exp, gj.lm)
        ci = gi.ip[gi.lm]
        cj = gj.ip[gj.lm]
        s_ip = ip_combine(ip_mul_mono(gi.ip, shift_i), cj, gj.ip, ci, shift_j)
        if track:
            f1 = zp_mul(cj, gj.d)
            f2 = zp_mul(ci, gi.d)
            rec = _Rec(
                s_ip,
                (0,) * len(gi.lm),
                max(sugar_hint, _spair_sugar(gi, gj, lcm_exp)),
                zp_mul(gi.d, gj.d),
                [
                    ip_combine(ip_mul_mono(u, shift_i), f1, uk, f2, shift_j)
                    for u, uk in zip(gi.U, gj.U)
                ],
            )
            _tracked_content_reduce(rec)
            _nf_tracked_rec(rec, G, order)
            remainder = rec.ip
        else:
            remainder, sugar = _nf_sugar(
                _primitive(s_ip), _spair_sugar(gi, gj, lcm_exp), G, order
            )
            rec = _Rec(remainder, (0,) * len(gi.lm), sugar)
        if not remainder:
            continue
        rec.lm = _lm(remainder, order)
        G.append(rec)
        add_pairs(len(G) - 1)
    return G


def _minimalize(records: list[_Rec], order: MonomialOrder) -> list[_Rec]:
    keep: list[_Rec] = []
    for rec in sorted(records, key=lambda r: order.key(r.lm)):
        if any(_divides(k.lm, rec.lm) for k in keep):
            continue
        keep.append(rec)
    return keep


def _interreduce(records: list[_Rec], order: MonomialOrder, field) -> list[_Rec]:
    records = list(records)
    changed = True
    while changed:
        changed = False
        for idx, rec in enumerate(records):
            others = records[:idx] + records[idx + 1 :]
            remainder, _ = _nf_untracked(rec.ip, others, order, field)
            remainder = _primitive(remainder)
            if remainder != rec.ip:
                records[idx] = _Rec(remainder, _lm(remainder, order), rec.sugar)
                changed = True
    return records


class GroebnerBasis:
    """A reduced basis together with its ring and order."""

    __slots__ = ("ring", "order", "records", "_field_polys")

    def __init__(self, ring: LaurentRing, order: MonomialOrder, records: list[_Rec]):
        self.ring = ring
        self.order = order
        self.records = sorted(records, key=lambda r: order.key(r.lm))
        self._field_polys = None

    @property
    def polys(self) -> list[LaurentPoly]:
        """The basis, monic over the coefficient field."""
        if self._field_polys is None:
            out = []
            for rec in self.records:
                p = from_ipoly(rec.ip, self.ring)
                out.append(p * p.coeff(rec.lm).inverse())
            self._field_polys = out
        return self._field_polys

    def leading_monomials(self) -> list[tuple]:
        return [rec.lm for rec in self.records]

    def is_trivial(self) -> bool:
        zero = (0,) * self.ring.arity
        return any(rec.lm == zero for rec in self.records)

    def normal_form(self, p: LaurentPoly) -> LaurentPoly:
        ip, scale = to_ipoly(self.ring.coerce(p))
        if not ip:
            return self.ring.zero
        remainder, u = _nf_untracked(ip, self.records, self.order, self.ring.field)
        return from_ipoly(remainder, self.ring) * (u * scale).inverse()

    def contains(self, p: LaurentPoly) -> bool:
        ip, _ = to_ipoly(self.ring.coerce(p))
        if not ip:
            return True
        remainder, _ = _nf_untracked(ip, self.records, self.order, self.ring.field)
        return not remainder

    def quotient_dimension(self):
        return _staircase_dimension(self.leading_monomials(), self.ring.arity)

    def staircase(self) -> list[tuple]:
        """Monomial basis of the quotient, sorted by the order."""
        lms = self.leading_monomials()
        dim = _staircase_dimension(lms, self.ring.arity)
        if dim is INFINITE:
            raise ValueError("quotient is not finite dimensional")
        bounds = _pure_power_bounds(lms, self.ring.arity)
        out = []
        for exp in itertools.product(*(range(b) for b in bounds)):
            if not any(_divides(lm, exp) for lm in lms):
                out.append(exp)
        out.sort(key=self.order.key)
        return out

    def coords(self, p: LaurentPoly, staircase: list[tuple] | None = None):
        """Coordinates of the class of ``p`` on the staircase basis."""
        if staircase is None:
            staircase = self.staircase()
        nf = self.normal_form(p)
        stray = [e for e in nf.terms if e not in set(staircase)]
        if stray:
            raise ValueError("normal form leaves the staircase: %r" % (stray,))
        return [nf.coeff(e) for e in staircase]


def _pure_power_bounds(lms: Sequence[tuple], nvars: int) -> list[int]:
    bounds = []
    for i in range(nvars):
        best = None
        for lm in lms:
            if lm[i] > 0 and all(v == 0 for j, v in enumerate(lm) if j != i):
                best = lm[i] if best is None else min(best, lm[i])
        if best is None:
            return []
        bounds.append(best)
    return bounds


def _staircase_dimension(lms: Sequence[tuple], nvars: int):
    zero = (0,) * nvars
    if any(lm == zero for lm in lms):
        return 0
    if nvars == 0:
        return 1
    bounds = _pure_power_bounds(lms, nvars)
    if not bounds:
        return INFINITE
    count = 0
    for exp in itertools.product(*(range(b) for b in bounds)):
        if not any(_divides(lm, exp) for lm in lms):
            count += 1
    return count


def buchberger(
    gens: Sequence[LaurentPoly],
    order: MonomialOrder = GREVLEX,
    budget: int | None = None,
) -> GroebnerBasis:
    """Reduced basis of the ideal generated by ``gens``."""
    gens = [g for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    ips = []
    for g in gens:
        ip, _ = to_ipoly(ring.coerce(g))
        ips.append(ip)
    if budget is None:
        budget = DEFAULT_PAIR_BUDGET
    records = _buchberger_loop(
        ips, order, budget, False, ring.field, ring.field.arity
    )
    records = _minimalize(records, order)
    records = _interreduce(records, order, ring.field)
    return GroebnerBasis(ring, order, records)


def normal_form(
    p: LaurentPoly,
    basis: Union[GroebnerBasis, Sequence[LaurentPoly]],
    order: MonomialOrder = GREVLEX,
    budget: int | None = None,
) -> LaurentPoly:
    """Unique remainder of ``p`` modulo the ideal of ``basis``."""
    if not isinstance(basis, GroebnerBasis):
        basis = buchberger(basis, order, budget)
    return basis.normal_form(p)


def quotient_dimension(
    gens: Union[GroebnerBasis, Sequence[LaurentPoly]],
    order: MonomialOrder = GREVLEX,
    budget: int | None = None,
):
    """Dimension of the quotient as a vector space, or INFINITE."""
    gb = gens if isinstance(gens, GroebnerBasis) else buchberger(gens, order, budget)
    return gb.quotient_dimension()


def _lift_exp(exp: tuple, extra: int) -> tuple:
    return (0,) * extra + exp


def _lift_poly(p: LaurentPoly, ring2: LaurentRing, extra: int) -> LaurentPoly:
    return LaurentPoly(ring2, {_lift_exp(e, extra): c for e, c in p.terms.items()})


def saturate(
    gens: Sequence[LaurentPoly],
    h: LaurentPoly,
    budget: int | None = None,
) -> GroebnerBasis:
    """Reduced basis of the saturation of the ideal by all powers of ``h``,
    via one inverse variable and elimination."""
    ring = gens[0].ring
    aux = LaurentRing(("_w",) + ring.variables, ring.field)
    lifted = [_lift_poly(ring.coerce(g), aux, 1) for g in gens]
    inv = aux.var("_w") * _lift_poly(ring.coerce(h), aux, 1) - aux.one
    gb = buchberger(lifted + [inv], block_order(1), budget)
    records = []
    for rec in gb.records:
        if rec.lm[0] != 0:
            continue
        # with this order, a leading monomial free of the inverse variable
        # forces the whole element to be free of it
        ip = {e[1:]: c for e, c in rec.ip.items()}
        records.append(_Rec(ip, rec.lm[1:], rec.sugar))
    return GroebnerBasis(ring, GREVLEX, records)


def eliminate(
    gens: Sequence[LaurentPoly],
    drop: Sequence[str],
    budget: int | None = None,
) -> list[LaurentPoly]:
    """Generators of the ideal's image after removing the given variables."""
    ring = gens[0].ring
    drop = list(drop)
    keep = [v for v in ring.variables if v not in drop]
    for name in drop:
        ring.index(name)
    perm_ring = LaurentRing(tuple(drop) + tuple(keep), ring.field)
    positions = [ring.variables.index(v) for v in perm_ring.variables]

    def permute(p: LaurentPoly) -> LaurentPoly:
        return LaurentPoly(
            perm_ring,
            {tuple(e[i] for i in positions): c for e, c in p.terms.items()},
        )

    gb = buchberger([permute(ring.coerce(g)) for g in gens], block_order(len(drop)), budget)
    out_ring = LaurentRing(tuple(keep), ring.field)
    out = []
    for rec in gb.records:
        if any(rec.lm[i] != 0 for i in range(len(drop))):
            continue
        ip = {e[len(drop):]: c for e, c in rec.ip.items()}
        p = from_ipoly(ip, out_ring)
        out.append(p * p.coeff(rec.lm[len(drop):]).inverse())
    return out


class TrackedIdeal:
    """A basis with division certificates, built once and reused for many
    membership queries with exact cofactors."""

    __slots__ = ("ring", "order", "gens", "records", "scales")

    def __init__(
        self,
        gens: Sequence[LaurentPoly],
        order: MonomialOrder = GREVLEX,
        budget: int | None = None,
    ):
        ring = gens[0].ring
        self.ring = ring
        self.order = order
        self.gens = [ring.coerce(g) for g in gens]
        field = ring.field
        if budget is None:
            budget = DEFAULT_PAIR_BUDGET
        ips = []
        scales = []
        for g in self.gens:
            ip, s = to_ipoly(g)
            ips.append(ip)
            scales.append(s)
        self.scales = scales
        records = _buchberger_loop(ips, order, budget, True, field, field.arity)
        self.records = _minimalize(records, order)

    def express(self, p: LaurentPoly) -> tuple[bool, list[LaurentPoly] | None]:
        """Membership and exact cofactors: ``p == sum(cof[i] * gens[i])``."""
        ring = self.ring
        order = self.order
        field = ring.field
        records = self.records
        p = ring.coerce(p)
        ip_p, scale_p = to_ipoly(p)
        if not ip_p:
            return True, [ring.zero for _ in self.gens]

        d = field.zp_one()
        q = [{} for _ in records]
        work = ip_p
        frozen: set = set()
        while True:
            active = [m for m in work if m not in frozen]
            if not active:
                break
            m = max(active, key=order.key)
            red_idx = None
            for idx, rec in enumerate(records):
                if _divides(rec.lm, m):
                    red_idx = idx
                    break
            if red_idx is None:
                frozen.add(m)
                continue
            rec = records[red_idx]
            c = work[m]
            ck = rec.ip[rec.lm]
            shift = _exp_sub(m, rec.lm)
            work = ip_combine(work, ck, rec.ip, c, shift)
            q = [ip_scale(qk, ck) for qk in q]
            q[red_idx] = ip_add(q[red_idx], {shift: c})
            d = zp_mul(d, ck)
            g = ip_content(work)
            g = gcd(g, zp_content(d))
            for qk in q:
                if g == 1:
                    break
                g = gcd(g, ip_content(qk))
            if g > 1:
                work = ip_div_int(work, g)
                d = {e: cc // g for e, cc in d.items()}
                q = [ip_div_int(qk, g) for qk in q]

        if work:
            return False, None

        # compose: p = sum_k q_k/(d*scale_p) * P_k and
        # P_k = sum_i U_k[i]*scale_i/d_k * gens[i]
        denom = field.from_zpoly(d) * scale_p
        cofactors = [ring.zero for _ in self.gens]
        for qk, rec in zip(q, records):
            if not qk:
                continue
            dk = field.from_zpoly(rec.d)
            for i in range(len(self.gens)):
                if not rec.U[i]:
                    continue
                piece = from_ipoly(ip_mul(qk, rec.U[i]), ring)
                cofactors[i] = cofactors[i] + piece * (self.scales[i] / (denom * dk))
        check = ring.zero
        for cof, g in zip(cofactors, self.gens):
            check = check + cof * g
        if not check == p:
            raise DivisionFailure(
                "cofactor certificate does not reproduce the input"
            )
        return True, cofactors


def express_in_ideal(
    p: LaurentPoly,
    gens: Sequence[LaurentPoly],
    order: MonomialOrder = GREVLEX,
    budget: int | None = None,
) -> tuple[bool, list[LaurentPoly] | None]:
    """One-shot membership with cofactors; builds the tracked basis anew."""
    return TrackedIdeal(gens, order, budget).express(p)


def radical_contains(
    gens: Sequence[LaurentPoly],
    p: LaurentPoly,
    budget: int | None = None,
) -> bool:
    """Radical membership by the inverse-variable trick."""
    ring = gens[0].ring
    aux = LaurentRing(("_w",) + ring.variables, ring.field)
    lifted = [_lift_poly(ring.coerce(g), aux, 1) for g in gens]
    inv = aux.var("_w") * _lift_poly(ring.coerce(p), aux, 1) - aux.one
    gb = buchberger(lifted + [inv], GREVLEX, budget)
    return gb.is_trivial()


def _degree_monomials(nvars: int, degree: int) -> list[tuple]:
    out = []

    def rec(prefix: list[int], remaining: int, slot: int) -> None:
        if slot == nvars - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for v in range(remaining + 1):
            rec(prefix + [v], remaining - v, slot + 1)

    rec([], degree, 0)
    return out


def local_dimension_at_origin(
    gens: Sequence[LaurentPoly],
    k_max: int = 10,
    budget: int | None = None,
) -> int:
    """Dimension of the local quotient at the origin, by adding growing
    powers of the maximal ideal until the dimension stops moving."""
    ring = gens[0].ring
    zero_exp = (0,) * ring.arity
    for g in gens:
        g = ring.coerce(g)
        if not g.coeff(zero_exp).is_zero():
            raise OriginNotInVariety(
                "a generator has a nonzero constant term"
            )
    prev = None
    for k in range(1, k_max + 1):
        extra = [
            ring.monomial(e) for e in _degree_monomials(ring.arity, k)
        ]
        dim = quotient_dimension(list(gens) + extra, GREVLEX, budget)
        if prev is not None and dim == prev:
            # once the dimension repeats, the chain of quotients has
            # stabilized and equals the local dimension
            return dim
        prev = dim
    raise NotStabilized(k_max)


def ideal_equal(
    gens_a: Sequence[LaurentPoly],
    gens_b: Sequence[LaurentPoly],
    budget: int | None = None,
) -> bool:
    """Two-sided membership test for ideal equality."""
    gb_a = buchberger(gens_a, GREVLEX, budget)
    gb_b = buchberger(gens_b, GREVLEX, budget)
    return all(gb_b.contains(a) for a in gens_a) and all(
        gb_a.contains(b) for b in gens_b
    )
