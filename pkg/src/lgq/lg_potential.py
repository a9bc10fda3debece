"""Landau-Ginzburg potentials mirroring the quadric multiplication table.

Two coordinate presentations are built here:

* the torus model, a Laurent potential in the basis-class coordinates
  ``d1 .. d(2n+1)``: the chain of consecutive ratios with a factor 2 in the
  middle step and a quadratic top term carrying the parameter ``q``;
* the compactified model in coordinates ``x, y_i, z_i`` where the potential
  becomes ``sum y_i (2 + z_i)`` plus one correction term whose denominator
  ``(x y_1 .. y_n - 1) * prod(1 + z_i)`` cuts out the boundary.

``integrates_table`` certifies that the logarithmic derivatives of the
torus potential telescope into the ratio chain and that their ideal agrees
with the multiplication-table relations after inverting the torus
coordinates.  ``critical_scheme`` computes the (saturated) critical locus
of either model, ``verify_critical_points`` certifies the explicit points,
and ``milnor_ring_basis_check`` shows the basis classes stay independent in
the Jacobian quotient.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IdentityFailed, RankDeficient, VerificationFailed
from .groebner import GroebnerBasis, buchberger, ideal_equal, saturate
from .laurent import (
    LaurentPoly,
    LaurentRing,
    RationalExpr,
    eval_at,
    eval_rational,
    rational_partial,
    substitute,
    substitute_rational,
)
from .linalg import rank
from .quadric_qh import base_field, qh_mult_matrix, xi_separability_certificate
from .scalar import CubicExt, ParamField


def _check_rank(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError("rank parameter must be a positive integer, got %r" % (n,))


def torus_ring(n: int = 1) -> LaurentRing:
    _check_rank(n)
    names = tuple("d%d" % i for i in range(1, 2 * n + 2))
    return LaurentRing(names, base_field())


def _ratio_chain(n: int, ring: LaurentRing) -> list[RationalExpr]:
    """The 2n consecutive-ratio summands of the torus potential; the middle
    step carries the factor 2."""
    ds = [ring.var("d%d" % i) for i in range(1, 2 * n + 2)]
    chain = [RationalExpr(ds[0], ring.one)]
    for i in range(2, 2 * n + 1):
        num = ds[i - 1]
        if i == n + 1:
            num = num * 2
        chain.append(RationalExpr(num, ds[i - 2]))
    return chain


def _top_term(n: int, ring: LaurentRing) -> RationalExpr:
    ds = [ring.var("d%d" % i) for i in range(1, 2 * n + 2)]
    q = ring.constant(ring.field.var("q"))
    top = ds[2 * n] + q
    return RationalExpr(top * top, ds[2 * n - 1] * ds[2 * n] * 2)


def build_standard_potential(n: int = 1) -> RationalExpr:
    """The torus potential as one unreduced quotient."""
    _check_rank(n)
    ring = torus_ring(n)
    total = RationalExpr(ring.zero, ring.one)
    for term in _ratio_chain(n, ring):
        total = total + term
    return total + _top_term(n, ring)


def log_derivative_exprs(n: int = 1) -> list[RationalExpr]:
    """The scaled partials d_i * df/dd_i, one per torus coordinate."""
    f = build_standard_potential(n)
    ring = f.ring
    out = []
    for name in ring.variables:
        out.append(rational_partial(f, name) * ring.var(name))
    return out


def table_relations(n: int = 1) -> list[LaurentPoly]:
    """Polynomial relations read off the multiplication matrix: the product
    of the degree-one coordinate with each basis coordinate minus its
    expansion (the degree-zero class is the constant 1)."""
    ring = torus_ring(n)
    m = qh_mult_matrix(n)
    size = 2 * n + 2
    ds = [ring.one] + [ring.var("d%d" % i) for i in range(1, size)]
    out = []
    for j in range(1, size):
        rhs = ring.zero
        for i in range(size):
            if not m[i][j].is_zero():
                rhs = rhs + ds[i] * m[i][j]
        out.append(ds[1] * ds[j] - rhs)
    return out


def integrates_table(n: int = 1, budget: int | None = None) -> dict:
    """Certify that the potential differentiates back to the ratio chain
    and cuts out the same torus scheme as the table relations."""
    _check_rank(n)
    f = build_standard_potential(n)
    ring = f.ring
    ds = [ring.var("d%d" % i) for i in range(1, 2 * n + 2)]
    q = ring.constant(ring.field.var("q"))
    chain = _ratio_chain(n, ring)
    top = _top_term(n, ring)

    scaled = log_derivative_exprs(n)
    for i in range(1, 2 * n):
        expected = chain[i - 1] - chain[i]
        if not scaled[i - 1] == expected:
            raise IdentityFailed("telescope identity fails at step %d" % i)
    if not scaled[2 * n - 1] == chain[2 * n - 1] - top:
        raise IdentityFailed("telescope identity fails before the top term")
    top_expected = RationalExpr(
        ds[2 * n] * ds[2 * n] - q * q, ds[2 * n - 1] * ds[2 * n] * 2
    )
    if not scaled[2 * n] == top_expected:
        raise IdentityFailed("top logarithmic derivative is wrong")

    # dropping the factor 2 from the middle ratio must break the telescope
    half_chain = RationalExpr(ds[n], ds[n - 1])
    if scaled[n - 1] == chain[n - 1] - half_chain:
        raise IdentityFailed("middle factor 2 appears to be optional")

    torus_monomial = ring.one
    for d in ds:
        torus_monomial = torus_monomial * d
    log_gb = saturate([e.num for e in scaled], torus_monomial, budget)
    table_gb = saturate(table_relations(n), torus_monomial, budget)
    if not ideal_equal(log_gb.polys, table_gb.polys, budget):
        raise IdentityFailed(
            "critical ideal and table-relation ideal differ on the torus"
        )
    dim = log_gb.quotient_dimension()
    return {
        "telescope": True,
        "middle_factor_required": True,
        "table_ideal_match": True,
        "quotient_dimension": dim,
    }


class CompactModel:
    """Target coordinates, basis-class images, potential and boundary of
    the compactified model."""

    __slots__ = (
        "n",
        "torus_ring",
        "ring",
        "images",
        "potential",
        "boundary_factors",
        "boundary",
        "inverse",
    )

    def __init__(self, n, torus_ring_, ring, images, potential, factors, inverse):
        self.n = n
        self.torus_ring = torus_ring_
        self.ring = ring
        self.images = images
        self.potential = potential
        self.boundary_factors = factors
        self.boundary = None
        for fac in factors:
            self.boundary = fac if self.boundary is None else self.boundary * fac
        self.inverse = inverse


def compact_ring(n: int = 1) -> LaurentRing:
    _check_rank(n)
    if n == 1:
        names = ("x", "y", "z")
    else:
        names = (
            ("x",)
            + tuple("y%d" % i for i in range(1, n + 1))
            + tuple("z%d" % i for i in range(1, n + 1))
        )
    return LaurentRing(names, base_field())


def _compact_vars(ring: LaurentRing, n: int):
    x = ring.var("x")
    if n == 1:
        return x, [ring.var("y")], [ring.var("z")]
    ys = [ring.var("y%d" % i) for i in range(1, n + 1)]
    zs = [ring.var("z%d" % i) for i in range(1, n + 1)]
    return x, ys, zs


def compactify(n: int = 1, verify: bool = True) -> CompactModel:
    """Build the compactified model and (by default) certify that it is a
    coordinate change of the torus potential."""
    _check_rank(n)
    tring = torus_ring(n)
    ring = compact_ring(n)
    x, ys, zs = _compact_vars(ring, n)
    field = ring.field
    q = field.var("q")
    half = field.from_fraction(Fraction(1, 2))

    # images of the basis coordinates: the running product of the ratio
    # chain written in the new coordinates (odd slot y_i, even slot
    # y_i*(1+z_i)), halved past the middle; the top image is q*(x*prod(y)-1)
    chain_values = []
    for i in range(n):
        chain_values.append(ys[i])
        chain_values.append(ys[i] * (zs[i] + 1))
    images = []
    running = ring.one
    for k in range(1, 2 * n + 1):
        running = running * chain_values[k - 1]
        images.append(running * half if k >= n + 1 else running)
    prod_y = ring.one
    for yi in ys:
        prod_y = prod_y * yi
    images.append((x * prod_y - ring.one) * q)

    free_part = ring.zero
    for yi, zi in zip(ys, zs):
        free_part = free_part + yi * (zi + 2)
    bfactors = [x * prod_y - ring.one] + [zi + 1 for zi in zs]
    bprod = ring.one
    for fac in bfactors:
        bprod = bprod * fac
    potential = RationalExpr(free_part, ring.one) + RationalExpr(
        x * x * q, bprod
    )

    inverse = None
    if n == 1:
        d1, d2, d3 = (tring.var(v) for v in ("d1", "d2", "d3"))
        qt = tring.constant(q)
        inverse = {
            "x": (d3 + qt) / (qt * d1),
            "y": RationalExpr(d1, tring.one),
            "z": (d2 * 2) / (d1 * d1) - RationalExpr(tring.one, tring.one),
        }

    model = CompactModel(n, tring, ring, images, potential, bfactors, inverse)
    if verify:
        verify_compactification(model)
    return model


def verify_compactification(model: CompactModel) -> bool:
    """Substituting the images into the torus potential must reproduce the
    compact potential exactly; in the 3-dimensional case the change of
    coordinates is also inverted both ways."""
    f = build_standard_potential(model.n)
    values = {
        "d%d" % (k + 1): model.images[k] for k in range(len(model.images))
    }
    pushed = substitute_rational(f, values)
    if not pushed == model.potential:
        raise IdentityFailed("images do not transport the potential")

    if model.inverse is not None:
        tring = model.torus_ring
        for k, img in enumerate(model.images):
            back = substitute(img, model.inverse)
            if not back == RationalExpr(tring.var("d%d" % (k + 1)), tring.one):
                raise IdentityFailed(
                    "inverse change fails on basis coordinate %d" % (k + 1)
                )
        for name, expr in model.inverse.items():
            forward = substitute_rational(expr, values)
            if not forward == RationalExpr(model.ring.var(name), model.ring.one):
                raise IdentityFailed("round trip fails on %s" % name)
    return True


def critical_scheme(
    n: int = 1, where: str = "compact", budget: int | None = None
) -> tuple[GroebnerBasis, int]:
    """Saturated critical scheme of the chosen model and its length."""
    _check_rank(n)
    if where == "torus":
        scaled = log_derivative_exprs(n)
        ring = scaled[0].ring
        sat_by = ring.one
        for name in ring.variables:
            sat_by = sat_by * ring.var(name)
        gb = saturate([e.num for e in scaled], sat_by, budget)
    elif where == "compact":
        model = compactify(n, verify=False)
        ring = model.ring
        partials = [
            rational_partial(model.potential, name).num for name in ring.variables
        ]
        gb = saturate(partials, model.boundary, budget)
    else:
        raise ValueError("model must be 'torus' or 'compact', got %r" % (where,))
    dim = gb.quotient_dimension()
    if not isinstance(dim, int):
        raise VerificationFailed("critical scheme is not finite")
    return gb, dim


def critical_points(n: int = 1):
    """Explicit critical points of the compact model over the cubic
    extension: the boundary-degenerate point and the orbit point."""
    if n != 1:
        raise ValueError("explicit points are built for the 3-dimensional case")
    field = base_field()
    ext = CubicExt(field)
    xi = ext.xi
    two = ext.from_base(field.from_int(2))
    p0 = {"x": ext.zero, "y": ext.zero, "z": -two}
    orbit = {"x": two * xi.inverse(), "y": xi, "z": ext.zero}
    return [p0, orbit]


def verify_critical_points(n: int = 1) -> dict:
    """Certify the explicit points: all partials vanish, the points are
    distinct, and the boundary function equals 1 at each of them."""
    model = compactify(n, verify=False)
    points = critical_points(n)
    for idx, pt in enumerate(points):
        for name in model.ring.variables:
            value = eval_rational(rational_partial(model.potential, name), pt)
            if not value.is_zero():
                raise VerificationFailed(
                    "partial in %s does not vanish at point %d" % (name, idx)
                )
        bval = eval_at(model.boundary, pt)
        if not bval == pt["x"].ext.one:
            raise VerificationFailed("boundary is not 1 at point %d" % idx)
    if points[0]["y"] == points[1]["y"]:
        raise VerificationFailed("points are not distinct")
    xi_separability_certificate()
    return {"points": points, "count": 1 + 3, "boundary_value_one": True}


def milnor_ring_basis_check(n: int = 1, budget: int | None = None) -> dict:
    """Images of the basis classes must stay linearly independent in the
    Jacobian quotient of the compact model; in the 3-dimensional case a
    dependent probe class is also certified to collapse, both in the ideal
    and pointwise."""
    model = compactify(n, verify=False)
    gb, dim = critical_scheme(n, "compact", budget)
    staircase = gb.staircase()
    family = [model.ring.one] + list(model.images)
    columns = [gb.coords(p, staircase) for p in family]
    r = rank(columns)
    if r != len(family):
        raise RankDeficient(
            "basis classes have rank %d out of %d" % (r, len(family))
        )
    if dim != len(family):
        raise VerificationFailed(
            "quotient dimension %d does not match family size %d"
            % (dim, len(family))
        )

    result = {"dimension": dim, "rank": r}
    if n == 1:
        probe = model.images[1] - model.images[0] * model.images[0] * Fraction(1, 2)
        in_ideal = gb.contains(probe)
        vanishes = all(
            eval_at(probe, pt).is_zero() for pt in critical_points(n)
        )
        result["probe_in_ideal"] = in_ideal
        result["probe_vanishes"] = vanishes
        if in_ideal != vanishes:
            raise VerificationFailed(
                "pointwise and ideal membership disagree for the probe"
            )
        replaced = [family[0], family[1], probe, family[3]]
        probe_rank = rank([gb.coords(p, staircase) for p in replaced])
        result["probe_rank"] = probe_rank
        if probe_rank != 3:
            raise VerificationFailed(
                "probe family should drop to rank 3, got %d" % probe_rank
            )
    return result
