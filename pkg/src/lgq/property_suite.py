"""Seeded randomized property families, shared by the test suite and the
command-line verifier.

Each family draws its own cases from one deterministic stream, so a fixed
seed fixes every polynomial generated.  `run_property_suite` returns the
per-family case counts and a list of textual failure descriptions; an
empty list is the passing outcome.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import gauss_manin
from .groebner import GREVLEX, block_order, buchberger, quotient_dimension
from .laurent import LaurentRing, eval_at, partial_derivative, substitute
from .lg_potential import torus_ring
from .scalar import ParamField

_FIELD = ParamField(("q",))


def _random_fraction(rng, nonzero=False) -> Fraction:
    while True:
        value = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        if value or not nonzero:
            return value


def _random_poly(rng, ring, max_terms, max_degree, laurent=False, nonzero=False):
    lo = -max_degree if laurent else 0
    p = ring.zero
    for _ in range(rng.randint(0 if not nonzero else 1, max_terms)):
        exp = tuple(rng.randint(lo, max_degree) for _ in range(ring.arity))
        p = p + ring.monomial(exp, _FIELD.from_fraction(_random_fraction(rng)))
    if nonzero and p.is_zero():
        p = p + ring.one
    return p


def _check_gb_order_invariance(rng, budget) -> str | None:
    ring = LaurentRing(("x", "y", "z"), _FIELD)
    gens = [_random_poly(rng, ring, 3, 2, nonzero=True) for _ in range(rng.randint(2, 3))]
    base = quotient_dimension(gens, GREVLEX, budget)
    shuffled = list(gens)
    rng.shuffle(shuffled)
    if quotient_dimension(shuffled, GREVLEX, budget) != base:
        return "quotient dimension moved under generator permutation"
    split = block_order(rng.randint(1, 2))
    if quotient_dimension(gens, split, budget) != base:
        return "quotient dimension moved under a block order"
    return None


def _check_nf_idempotence(rng, budget) -> str | None:
    ring = LaurentRing(("x", "y", "z"), _FIELD)
    gens = [_random_poly(rng, ring, 3, 2, nonzero=True) for _ in range(2)]
    gb = buchberger(gens, GREVLEX, budget)
    p = _random_poly(rng, ring, 4, 3)
    once = gb.normal_form(p)
    if gb.normal_form(once) != once:
        return "normal form is not idempotent"
    return None


def _check_spoly_reduction(rng, budget) -> str | None:
    ring = LaurentRing(("x", "y", "z"), _FIELD)
    gens = [_random_poly(rng, ring, 3, 2, nonzero=True) for _ in range(rng.randint(2, 3))]
    gb = buchberger(gens, GREVLEX, budget)
    polys = gb.polys
    if len(polys) < 2:
        return None
    i, j = rng.sample(range(len(polys)), 2)
    lm_i = gb.records[i].lm
    lm_j = gb.records[j].lm
    lcm = tuple(max(a, b) for a, b in zip(lm_i, lm_j))
    s = polys[i] * ring.monomial(
        tuple(a - b for a, b in zip(lcm, lm_i))
    ) - polys[j] * ring.monomial(tuple(a - b for a, b in zip(lcm, lm_j)))
    if not gb.normal_form(s).is_zero():
        return "an S-polynomial had a nonzero normal form"
    return None


def _check_leibniz(rng, budget) -> str | None:
    ring = LaurentRing(("x", "y"), _FIELD)
    a = _random_poly(rng, ring, 3, 2, laurent=True)
    b = _random_poly(rng, ring, 3, 2, laurent=True)
    name = rng.choice(ring.variables)
    left = partial_derivative(a * b, name)
    right = a * partial_derivative(b, name) + partial_derivative(a, name) * b
    if left != right:
        return "derivative of a product broke the Leibniz rule"
    return None


def _check_substitute_morphism(rng, budget) -> str | None:
    source = LaurentRing(("u", "v"), _FIELD)
    target = LaurentRing(("x", "y"), _FIELD)
    a = _random_poly(rng, source, 3, 2, laurent=True)
    b = _random_poly(rng, source, 3, 2, laurent=True)
    values = {
        "u": _random_poly(rng, target, 2, 2, nonzero=True),
        "v": _random_poly(rng, target, 2, 2, nonzero=True),
    }
    left = substitute(a * b, values)
    right = substitute(a, values) * substitute(b, values)
    if left != right:
        return "substitution broke multiplicativity"
    return None


def _check_eval_morphism(rng, budget) -> str | None:
    ring = LaurentRing(("x", "y"), _FIELD)
    a = _random_poly(rng, ring, 3, 2, laurent=True)
    b = _random_poly(rng, ring, 3, 2, laurent=True)
    point = {
        name: _random_fraction(rng, nonzero=True) for name in ring.variables
    }
    prod = eval_at(a, point) * eval_at(b, point)
    total = eval_at(a, point) + eval_at(b, point)
    if eval_at(a * b, point) != prod or eval_at(a + b, point) != total:
        return "evaluation broke ring structure"
    return None


def _check_reduce_class_order(rng, budget) -> str | None:
    ring = torus_ring(1)
    # coordinate-ring classes: negative total weight would sit outside
    # the nonnegative part of the lattice and have no finite expansion
    g = _random_poly(rng, ring, 3, 2)
    orders = list(range(ring.arity))
    rng.shuffle(orders)
    depth = 3 * gauss_manin.default_budget(1)
    base = gauss_manin.reduce_class(g, budget=depth)
    other = gauss_manin.reduce_class(g, budget=depth, division_order=orders)
    if base.parts.keys() != other.parts.keys() or any(
        any(x != y for x, y in zip(base.parts[k], other.parts[k]))
        for k in base.parts
    ):
        return "reduction outcome depended on the division order"
    return None


_FAMILIES = (
    ("gb-order-invariance", _check_gb_order_invariance, 150),
    ("normal-form-idempotence", _check_nf_idempotence, 220),
    ("s-polynomial-reduction", _check_spoly_reduction, 150),
    ("leibniz-rule", _check_leibniz, 200),
    ("substitute-morphism", _check_substitute_morphism, 120),
    ("eval-morphism", _check_eval_morphism, 100),
    ("reduce-class-order", _check_reduce_class_order, 60),
)


def run_property_suite(seed: int = 0, scale: float = 1.0, budget=None) -> dict:
    """Run every family at ``scale`` times its nominal case count and
    collect failures.  The nominal counts sum to one thousand cases."""
    counts = {}
    failures = []
    for name, fn, nominal in _FAMILIES:
        cases = max(1, int(nominal * scale))
        rng = random.Random((seed, name).__repr__())
        for index in range(cases):
            message = fn(rng, budget)
            if message is not None:
                failures.append("%s[%d]: %s" % (name, index, message))
        counts[name] = cases
    return {
        "seed": seed,
        "cases": counts,
        "total": sum(counts.values()),
        "failures": failures,
    }
