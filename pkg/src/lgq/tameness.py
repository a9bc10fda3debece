"""Boundary behaviour of the compactified graph of the shifted potential.

The rank-one model potential, after shifting its last coordinate by one,
becomes a rational map on an open piece of affine three-space.  Its graph
over the deformation line has a closure inside a product of three
projective lines, cut out by a single equation that is homogeneous of
degree two in each coordinate pair.  This module mechanizes the geometry
of that closure along the boundary added by the compactification:

* dehomogenization to the eight standard affine charts, and the
  cross-chart consistency of the resulting equations;
* the singular locus of the closure, chart by chart and stratum by
  stratum, classified as empty or matched against the recorded loci;
* straightening coordinate changes with Jacobian certificates, which
  rewrite two chart equations in a deformation-free normal form;
* agreement of the fiberwise and the total singular systems along the
  boundary, and their deliberate disagreement in the interior;
* constancy of the local multiplicity in the one chart that resists the
  coordinate-change argument, with the factorization and transversality
  certificates behind it;
* the product structure of the boundary divisor itself, exhibited by an
  exact cofactor identity.

Every claim is checked exactly: loci are compared as radicals (each
generator of one ideal must lie in the radical of the other) and every
displayed identity is verified by polynomial arithmetic.  The chart
analyses are independent of one another; `boundary_census` runs all of
them and merges the fragments in chart order, so its output does not
depend on execution order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    DivisionByZero,
    IdealsDiffer,
    IdentityFailed,
    JacobianVanishesOnLocus,
    LgqError,
    MuNotConstant,
    NotStabilized,
    TFound,
)
from .groebner import (
    GREVLEX,
    buchberger,
    ideal_equal,
    local_dimension_at_origin,
    normal_form,
    radical_contains,
)
from .laurent import (
    LaurentPoly,
    LaurentRing,
    RationalExpr,
    eval_at,
    partial_derivative,
    substitute,
    substitute_rational,
)
from .lg_potential import compactify
from .scalar import ParamField, specialize_param

_FIELD = ParamField(("q",))
_HOMOG = LaurentRing(("x0", "x1", "y0", "y1", "z0", "z1", "t"), _FIELD)
_CHART = LaurentRing(("x", "y", "z", "t"), _FIELD)

_PAIR_SLOTS = {"x": 0, "y": 2, "z": 4}


class HomogSurface:
    """Hypersurface in a product of projective lines over the deformation
    line, with the degree in each coordinate pair recorded and enforced at
    construction."""

    __slots__ = ("poly", "pair_degrees")

    def __init__(self, poly: LaurentPoly, pair_degrees=(2, 2, 2)):
        poly = _HOMOG.coerce(poly)
        for letter, deg in zip("xyz", pair_degrees):
            lo = _PAIR_SLOTS[letter]
            for e in poly.terms:
                if e[lo] + e[lo + 1] != deg:
                    raise IdentityFailed(
                        "not homogeneous of degree %d in the %s pair"
                        % (deg, letter)
                    )
        self.poly = poly
        self.pair_degrees = tuple(pair_degrees)


class Chart:
    """Affine chart of the compactification where one chosen slot of each
    coordinate pair is nonzero.  Local coordinates are the three
    complementary ratios together with the deformation variable."""

    __slots__ = ("i", "j", "k")

    def __init__(self, i: int, j: int, k: int):
        for v in (i, j, k):
            if v not in (0, 1):
                raise ValueError("chart indices must be 0 or 1")
        self.i = i
        self.j = j
        self.k = k

    @property
    def index(self) -> tuple:
        return (self.i, self.j, self.k)

    @property
    def label(self) -> str:
        return "V%d%d%d" % self.index

    @property
    def local_names(self) -> tuple:
        """Display names of the local coordinates; a prime marks a ratio
        that runs against the default orientation of its pair."""
        return tuple(
            name + "'" if flip else name
            for name, flip in zip("xyz", self.index)
        )

    def dehomogenize(self, p: LaurentPoly) -> LaurentPoly:
        """Set the kept slot of each pair to one and the other slot to the
        local coordinate."""
        p = _HOMOG.coerce(p)
        out = _CHART.zero
        for e, c in p.terms.items():
            key = (e[self.i ^ 1], e[2 + (self.j ^ 1)], e[4 + (self.k ^ 1)], e[6])
            out = out + _CHART.monomial(key, c)
        return out

    def boundary_equation(self, slot: str) -> LaurentPoly:
        """Local equation of the stratum where the named homogeneous slot
        vanishes.  When the chart keeps that slot at one the stratum misses
        the chart, and the unit is returned so the generated ideal is
        trivially empty."""
        letter, idx = slot[0], int(slot[1:])
        if letter not in _PAIR_SLOTS or idx not in (0, 1) or len(slot) != 2:
            raise ValueError("unknown boundary slot %r" % (slot,))
        kept = {"x": self.i, "y": self.j, "z": self.k}[letter]
        if idx == kept:
            return _CHART.one
        return _CHART.var(letter)


_SURFACE: HomogSurface | None = None


def graph_closure_equation() -> HomogSurface:
    """The defining equation of the graph closure, certified against the
    cleared graph relation of the shifted potential on the principal chart.

    Raises IdentityFailed when either the affine restriction or the
    homogeneity bookkeeping fails to match.
    """
    global _SURFACE
    if _SURFACE is not None:
        return _SURFACE
    x0, x1, y0, y1, z0, z1, t = (_HOMOG.var(v) for v in _HOMOG.variables)
    q = _HOMOG.constant(_FIELD.var("q"))
    cross = x1 * y1 - x0 * y0
    poly = x0 * z1 * cross * (y1 * (z1 + z0) - t * y0 * z0) \
        + q * x1 ** 2 * y0 ** 2 * z0 ** 2
    surface = HomogSurface(poly)

    x, y, z, tc = (_CHART.var(v) for v in _CHART.variables)
    qc = _CHART.constant(_FIELD.var("q"))
    restricted = Chart(0, 0, 0).dehomogenize(poly)
    direct = z * (x * y - 1) * (y * (1 + z) - tc) + qc * x ** 2
    if restricted != direct:
        raise IdentityFailed("principal chart restriction of the closure")
    # the same polynomial must be the graph relation of the shifted
    # potential with its denominator cleared
    cleared = y * (1 + z) * (x * y - 1) * z + qc * x ** 2 - tc * (x * y - 1) * z
    if restricted != cleared:
        raise IdentityFailed("closure versus cleared graph relation")
    _SURFACE = surface
    return surface


def chart_equation(chart: Chart) -> LaurentPoly:
    """The closure equation dehomogenized to the chart."""
    return chart.dehomogenize(graph_closure_equation().poly)


def deformation_direction_factor() -> LaurentPoly:
    """Derivative of the closure equation along the deformation variable,
    in homogeneous coordinates."""
    return partial_derivative(graph_closure_equation().poly, "t")


def singular_system(chart: Chart) -> list:
    """The five equations cutting the singular locus of the total space
    inside the chart: the deformation-direction derivative, the three
    spatial partials, and the equation itself."""
    p = chart_equation(chart)
    return [
        chart.dehomogenize(deformation_direction_factor()),
        partial_derivative(p, "x"),
        partial_derivative(p, "y"),
        partial_derivative(p, "z"),
        p,
    ]


def fiber_system(chart: Chart) -> list:
    """The equations cutting the union of the fiberwise singular loci: the
    spatial partials and the equation, with the deformation variable kept
    as an honest coordinate."""
    return singular_system(chart)[1:]


def chart_singular_locus(chart: Chart, boundary=(), budget=None) -> dict:
    """Generators of the singular locus inside the chart, intersected with
    the named boundary slots, classified as empty or not."""
    gens = singular_system(chart)
    for slot in boundary:
        gens.append(chart.boundary_equation(slot))
    gb = buchberger(gens, GREVLEX, budget)
    return {
        "chart": chart.label,
        "boundary": tuple(boundary),
        "empty": gb.is_trivial(),
        "generators": gb.polys,
    }


def same_locus(gens_a: Sequence, gens_b: Sequence, budget=None) -> bool:
    """Radical equality of two ideals: every generator of each lies in the
    radical of the other, so both cut out the same set of points."""
    return all(radical_contains(gens_a, g, budget) for g in gens_b) and all(
        radical_contains(gens_b, g, budget) for g in gens_a
    )


def _det3(rows) -> LaurentPoly:
    a, b, c = rows[0]
    d, e, f = rows[1]
    g, h, i = rows[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def jacobian_of_change(
    chart: Chart,
    new_coords: Mapping[str, LaurentPoly],
    locus: Sequence | None = None,
    budget=None,
) -> dict:
    """Spatial Jacobian determinant of a coordinate change, certified
    nonvanishing on the given locus by reducing it to a nonzero constant
    modulo the locus ideal.

    Raises JacobianVanishesOnLocus when the reduction is zero or fails to
    be a constant, since in the latter case no certificate is produced.
    """
    names = ("x", "y", "z")
    rows = [
        [partial_derivative(_CHART.coerce(new_coords[u]), v) for v in names]
        for u in names
    ]
    jac = _det3(rows)
    report = {"chart": chart.label, "jacobian": jac}
    if locus is not None:
        gb = buchberger(list(locus), GREVLEX, budget)
        reduced = gb.normal_form(jac)
        if reduced.is_zero() or not reduced.is_constant():
            raise JacobianVanishesOnLocus(
                "no constant nonvanishing certificate on the locus"
            )
        report["on_locus"] = reduced.constant_value()
    return report


def straightening_change(chart: Chart) -> dict:
    """The recorded coordinate change that removes the deformation
    variable from the chart equation.  Only the two charts where the
    straightening argument runs carry one."""
    x, y, z, t = (_CHART.var(v) for v in _CHART.variables)
    if chart.index == (0, 0, 0):
        return {"x": x, "y": y * (1 + z) - t, "z": z * (x * y - 1)}
    if chart.index == (0, 1, 0):
        return {"x": x, "y": y, "z": (1 + z - t * y) * z}
    raise LgqError("no straightening recorded for chart " + chart.label)


def rewritten_equation_check(chart: Chart, budget=None) -> dict:
    """The chart equation equals a deformation-free normal form composed
    with the straightening change, and the change is invertible along the
    boundary locus it is used on.

    Raises IdentityFailed when the composition misses, TFound when the
    normal form mentions the deformation variable, and
    JacobianVanishesOnLocus through the Jacobian certificate.
    """
    change = straightening_change(chart)
    p = chart_equation(chart)
    nf_ring = LaurentRing(("u", "v", "w", "t"), _FIELD)
    u, v, w, _ = (nf_ring.var(name) for name in nf_ring.variables)
    qn = nf_ring.constant(_FIELD.var("q"))
    x, y, z, t = (_CHART.var(name) for name in _CHART.variables)
    if chart.index == (0, 0, 0):
        normal = v * w + qn * u ** 2
        # the boundary of the closure meets this chart inside the plane
        # pair below, where the Jacobian must not vanish
        loci = ([x, z],)
    else:
        normal = w * (u - v) + qn * u ** 2 * v ** 2
        # the two boundary lines certified separately
        loci = ([x, y, z], [x, y, z + 1])
    if normal.mentions("t"):
        raise TFound("normal form mentions the deformation variable")
    composed = substitute(
        normal,
        {"u": change["x"], "v": change["y"], "w": change["z"], "t": t},
    ).as_poly()
    if composed != p:
        raise IdentityFailed(
            "straightened form does not compose to the %s equation"
            % chart.label
        )
    jacobians = [jacobian_of_change(chart, change, locus, budget) for locus in loci]
    return {
        "chart": chart.label,
        "normal_form": normal,
        "matches": True,
        "deformation_free": True,
        "jacobians": jacobians,
    }


def model_shift_check() -> dict:
    """The affine function whose graph is being closed is the compactified
    model potential with its last coordinate shifted by one."""
    model = compactify(1)
    ring = model.ring
    x, y, z = (ring.var(name) for name in ring.variables)
    q = ring.constant(ring.field.var("q"))
    shifted_potential = (q * x ** 2) / ((x * y - 1) * z) + y * (1 + z)
    composed = substitute_rational(
        shifted_potential, {"x": x, "y": y, "z": z + 1}
    )
    if composed != model.potential:
        raise IdentityFailed("shift by one misses the model potential")
    return {"matches": True}


def fiber_vs_total_boundary(chart: Chart, boundary=(), budget=None) -> dict:
    """On the named boundary strata the total singular system and the
    fiberwise one cut the same ideal; raises IdealsDiffer otherwise.

    Called with no strata this is a deliberate negative control: in the
    chart interior the two systems differ, because the
    deformation-direction generator is not a fiberwise consequence.
    """
    total = singular_system(chart)
    fiber = total[1:]
    extra = [chart.boundary_equation(slot) for slot in boundary]
    if not ideal_equal(total + extra, fiber + extra, budget):
        raise IdealsDiffer(
            "fiberwise and total singular systems differ on %s with %r"
            % (chart.label, tuple(boundary))
        )
    gb = buchberger(fiber + extra, GREVLEX, budget)
    return {
        "chart": chart.label,
        "boundary": tuple(boundary),
        "equal": True,
        "empty": gb.is_trivial(),
    }


_MU_SAMPLE_TS = (0, 1, -1, 2, 7)
_MU_CHART = Chart(1, 0, 1)


def _multiplicity_chart_data(field: ParamField, tval):
    """Chart equation and spatial partials for the multiplicity chart, over
    the given field and with the deformation variable either a field
    parameter (tval None) or a number."""
    ring = LaurentRing(("x", "y", "z"), field)
    x, y, z = (ring.var(name) for name in ring.variables)
    q = ring.constant(field.var("q"))
    two = ring.constant(field.from_int(2))
    if tval is None:
        t = ring.constant(field.var("t"))
    else:
        t = ring.constant(field.from_fraction(Fraction(tval)))
    bracket = y * (1 + z) - t * z
    p = x * (y - x) * bracket + q * z ** 2
    displayed = {
        "x": (y - two * x) * bracket,
        "y": x * ((two * y - x) * (1 + z) - t * z),
        "z": x * (y - x) * (y - t) + two * q * z,
    }
    for name, form in displayed.items():
        if partial_derivative(p, name) != form:
            raise IdentityFailed(
                "displayed partial in %s does not match" % name
            )
    return ring, p, displayed


def _degree_exponents(arity: int, degree: int) -> list:
    out = []

    def rec(prefix, remaining, slot):
        if slot == arity - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for v in range(remaining + 1):
            rec(prefix + [v], remaining - v, slot + 1)

    rec([], degree, 0)
    return out


def _stable_staircase(gens: Sequence, budget=None, k_max: int = 10):
    """Standard monomials of the local quotient at the origin, found by
    cutting with growing powers of the maximal ideal until the staircase
    stops moving.  Returns the staircase and the stabilized basis."""
    ring = gens[0].ring
    prev = None
    for k in range(1, k_max + 1):
        cut = [ring.monomial(e) for e in _degree_exponents(ring.arity, k)]
        gb = buchberger(list(gens) + cut, GREVLEX, budget)
        stairs = tuple(sorted(gb.staircase()))
        if stairs == prev:
            return stairs, gb
        prev = stairs
    raise NotStabilized(k_max)


def _specialization_pole(gb, tval) -> bool:
    """Whether substituting the sample deformation value into the monic
    stabilized basis hits a pole.  A pole means a leading coefficient of
    the symbolic basis vanished there, the one way specialization is
    allowed to change the staircase."""
    for p in gb.polys:
        for coeff in p.terms.values():
            try:
                specialize_param(coeff, "t", Fraction(tval))
            except DivisionByZero:
                return True
    return False


def _transversality_certificates(budget=None) -> dict:
    """Eliminate the last coordinate on the critical set of the
    multiplicity chart and certify that the remaining two equations
    factor into four curves meeting pairwise transversally at the origin."""
    field = ParamField(("q", "t"))
    _, _, displayed = _multiplicity_chart_data(field, None)
    plane = LaurentRing(("x", "y"), field)
    x, y = plane.var("x"), plane.var("y")
    t = plane.constant(field.var("t"))
    two = plane.constant(field.from_int(2))
    half_q_inv = plane.constant((field.from_int(2) * field.var("q")).inverse())
    # the last partial solves for the last coordinate: 2qz = -x(y-x)(y-t)
    w = x * (y - x) * (y - t) * half_q_inv
    zero_check = substitute(displayed["z"], {"x": x, "y": y, "z": -w})
    if not zero_check.is_zero():
        raise IdentityFailed("elimination of the last coordinate")
    f1 = y - two * x
    f2 = y * (plane.one - w) + t * w
    f3 = x
    f4 = (two * y - x) * (plane.one - w) + t * w
    px = substitute(displayed["x"], {"x": x, "y": y, "z": -w})
    py = substitute(displayed["y"], {"x": x, "y": y, "z": -w})
    if px != f1 * f2 or py != f3 * f4:
        raise IdentityFailed("factorization after elimination")
    factors = (f1, f2, f3, f4)
    origin = {"x": 0, "y": 0}
    grads = []
    for f in factors:
        grads.append(
            (
                eval_at(partial_derivative(f, "x"), origin),
                eval_at(partial_derivative(f, "y"), origin),
            )
        )
    expected = {
        (0, 1): -2,
        (0, 2): -1,
        (0, 3): -3,
        (1, 2): -1,
        (1, 3): 1,
        (2, 3): 2,
    }
    pair_jacobians = {}
    for (a, b), want in expected.items():
        det = grads[a][0] * grads[b][1] - grads[a][1] * grads[b][0]
        if det.is_zero() or det != field.from_int(want):
            raise IdentityFailed(
                "pair Jacobian f%d,f%d is not the recorded unit" % (a + 1, b + 1)
            )
        pair_jacobians["f%d,f%d" % (a + 1, b + 1)] = want
    return {"factorizations": True, "pair_jacobians": pair_jacobians}


def mu_constancy_V101(sample_ts=_MU_SAMPLE_TS, budget=None) -> dict:
    """Local multiplicity of the chart equation at the boundary point of
    the multiplicity chart: equal to four at every sampled deformation
    value and at a symbolic one, with the transversality certificates that
    explain the count.

    The staircase computed at symbolic deformation specializes to the one
    computed per sample, except at samples where a coefficient of the
    monic symbolic basis has a pole (a vanished leading coefficient);
    those degenerate samples are reported, and their multiplicity is still
    checked.  Raises MuNotConstant when multiplicities disagree or when a
    staircase changes without a pole to explain it.
    """
    values = {}
    staircases = {}
    for tv in sample_ts:
        ring, _, displayed = _multiplicity_chart_data(_FIELD, tv)
        gens = [displayed[name] for name in ("x", "y", "z")]
        values[tv] = local_dimension_at_origin(gens, budget=budget)
        staircases[tv], _ = _stable_staircase(gens, budget)
    sym_field = ParamField(("q", "t"))
    ring, _, displayed = _multiplicity_chart_data(sym_field, None)
    gens = [displayed[name] for name in ("x", "y", "z")]
    symbolic = local_dimension_at_origin(gens, budget=budget)
    symbolic_stairs, symbolic_gb = _stable_staircase(gens, budget)
    observed = dict(values)
    observed["symbolic"] = symbolic
    if symbolic != 4 or any(v != 4 for v in values.values()):
        raise MuNotConstant(observed)
    degenerate = []
    for tv in sample_ts:
        if staircases[tv] == symbolic_stairs:
            continue
        if not _specialization_pole(symbolic_gb, tv):
            raise MuNotConstant(
                "staircase changed at %s without a vanishing leading"
                " coefficient" % (tv,)
            )
        degenerate.append(tv)
    report = {
        "chart": _MU_CHART.label,
        "multiplicity": 4,
        "samples": observed,
        "staircase": symbolic_stairs,
        "staircases": staircases,
        "degenerate_samples": tuple(degenerate),
    }
    report.update(_transversality_certificates(budget))
    return report


def z_is_product_check(budget=None) -> dict:
    """The boundary divisor of the closure splits off the deformation
    line: the closure equation differs from a deformation-free one by an
    exact multiple of the boundary product, so the two ideals agree, and
    dropping the boundary product is certified to lose information.

    Raises IdealsDiffer when the cofactor identity or the negative control
    fails, TFound when a generator that must be deformation-free is not.
    """
    h = graph_closure_equation().poly
    x0, x1, y0, y1, z0, z1, t = (_HOMOG.var(v) for v in _HOMOG.variables)
    q = _HOMOG.constant(_FIELD.var("q"))
    cross = x1 * y1 - x0 * y0
    product = x0 * y0 * z0 * z1 * cross
    h_free = x0 * z1 * y1 * cross * (z1 + z0) + q * z0 ** 2 * x1 ** 2 * y0 ** 2
    for g in (h_free, product):
        if g.mentions("t"):
            raise TFound("generator mentions the deformation variable")
    if h - h_free != -t * product:
        raise IdealsDiffer("cofactor identity for the boundary product")
    # the identity gives mutual membership; without the boundary product
    # the deformation term is not a multiple of the free equation alone
    if normal_form(h - h_free, [h_free], GREVLEX, budget).is_zero():
        raise IdealsDiffer("negative control: boundary product redundant")
    return {
        "ideals_equal": True,
        "deformation_free": True,
        "negative_control": True,
        "generators": [h_free, product],
    }


def chart_compatibility(chart_a: Chart, chart_b: Chart) -> dict:
    """The two dehomogenized equations agree on the chart overlap: moving
    the second into the first chart's coordinates inverts the differing
    ratios, and the remaining discrepancy is exactly the square monomial
    relating the two dehomogenization scalings."""
    pa = chart_equation(chart_a)
    pb = chart_equation(chart_b)
    flips = (
        chart_a.i ^ chart_b.i,
        chart_a.j ^ chart_b.j,
        chart_a.k ^ chart_b.k,
    )
    moved = _CHART.zero
    for e, c in pb.terms.items():
        key = tuple(
            -v if flip else v for v, flip in zip(e[:3], flips)
        ) + (e[3],)
        moved = moved + _CHART.monomial(key, c)
    scale = _CHART.monomial((2 * flips[0], 2 * flips[1], 2 * flips[2], 0))
    if pa != moved * scale:
        raise IdentityFailed(
            "charts %s and %s disagree on their overlap"
            % (chart_a.label, chart_b.label)
        )
    return {"charts": (chart_a.label, chart_b.label), "matches": True}


def all_chart_compatibilities() -> list:
    """Every unordered pair of distinct charts, checked for agreement on
    the overlap."""
    charts = [Chart(i, j, k) for i in (0, 1) for j in (0, 1) for k in (0, 1)]
    out = []
    for a in range(len(charts)):
        for b in range(a + 1, len(charts)):
            out.append(chart_compatibility(charts[a], charts[b]))
    return out


def _recorded_loci() -> list:
    """The case analysis driven by `boundary_census`: for each chart the
    boundary strata examined there and the locus found, None meaning
    empty."""
    x, y, z, t = (_CHART.var(v) for v in _CHART.variables)
    return [
        ((0, 0, 0), (), [x, z, y - t]),
        ((0, 0, 1), ("z0",), None),
        ((0, 1, 0), ("y0",), [x, y, z * z + z]),
        ((0, 1, 1), ("y0", "z0"), None),
        ((1, 0, 0), ("x0",), None),
        ((1, 0, 1), ("x0", "z0"), [x, y, z]),
        ((1, 1, 0), ("x0", "y0"), [x, y, z * z + z]),
        ((1, 1, 1), ("x0", "y0", "z0"), None),
    ]


def boundary_census(budget=None) -> list:
    """Singular-locus classification for every chart, against the recorded
    case analysis: the principal chart contributes a single line through
    the deformation axis, two charts contribute a pair of boundary lines,
    one chart a single boundary line, and the remaining strata are empty.
    Fragments are merged in chart order."""
    out = []
    for index, strata, recorded in _recorded_loci():
        chart = Chart(*index)
        found = chart_singular_locus(chart, strata, budget)
        if recorded is None:
            found["matches_recorded"] = found["empty"]
        elif found["empty"]:
            found["matches_recorded"] = False
        else:
            found["matches_recorded"] = same_locus(
                found["generators"], recorded, budget
            )
        found["recorded"] = recorded
        out.append(found)
    return out
