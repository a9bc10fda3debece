"""Exact dense linear algebra over any field-like scalar type.

Matrices are lists of row lists.  Entries only need ``+ - * /``, a working
``==`` against other entries, and a zero test (``lgq.scalar.is_zero``), so
the same routines run over ``Fraction`` and over parameter fields.  Where a
routine has to materialize fresh scalars it takes explicit ``zero``/``one``
arguments, defaulting to plain rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalar import is_zero

try:  # vectorized modular elimination when available
    import numpy as _np
except ImportError:  # pragma: no cover
    _np = None

Matrix = list
Vector = list

_QZERO = Fraction(0)
_QONE = Fraction(1)


def mat_shape(a: Matrix) -> tuple[int, int]:
    return len(a), len(a[0]) if a else 0


def mat_copy(a: Matrix) -> Matrix:
    return [list(row) for row in a]


def identity(n: int, one=_QONE, zero=_QZERO) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zero_matrix(rows: int, cols: int, zero=_QZERO) -> Matrix:
    return [[zero] * cols for _ in range(rows)]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner = mat_shape(a)
    inner2, cols = mat_shape(b)
    if inner != inner2:
        raise ValueError("shape mismatch: %dx%d times %dx%d" % (rows, inner, inner2, cols))
    bt = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = row[0] * col[0]
            for x, y in zip(row[1:], col[1:]):
                acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return [row[0] for row in mat_mul(a, [[x] for x in v])]


def mat_pow(a: Matrix, e: int, one=_QONE, zero=_QZERO) -> Matrix:
    n = len(a)
    result = identity(n, one, zero)
    base = mat_copy(a)
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    if mat_shape(a) != mat_shape(b):
        return False
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_matrix(a: Matrix) -> bool:
    return all(is_zero(x) for row in a for x in row)


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = mat_copy(a)
    rows, cols = mat_shape(m)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if not is_zero(m[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and not is_zero(m[i][c]):
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a: Matrix, one=_QONE, zero=_QZERO) -> list[Vector]:
    """Basis of the right kernel, one vector per free column."""
    rows, cols = mat_shape(a)
    if cols == 0:
        return []
    r, pivots = rref(a)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [zero] * cols
        v[free] = one
        for row_idx, pc in enumerate(pivots):
            v[pc] = zero - r[row_idx][free]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Vector) -> Vector | None:
    """Unique solution of ``a x = b`` or None if inconsistent; raises if the
    solution is not unique."""
    rows, cols = mat_shape(a)
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    if len(pivots) < cols:
        raise ValueError("solution space has positive dimension")
    x = [r[i][cols] for i in range(cols)]
    return x


def particular_solution(a: Matrix, b: Vector, zero=_QZERO) -> Vector | None:
    """Any single solution of ``a x = b``, or None if the system is
    inconsistent.  Free variables are set to zero, so underdetermined
    systems are fine; use :func:`solve` when uniqueness matters."""
    rows, cols = mat_shape(a)
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [zero] * cols
    for row_idx, pc in enumerate(pivots):
        x[pc] = r[row_idx][cols]
    return x


_PRIMES31 = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
)


def rational_reconstruct(residue: int, modulus: int) -> Fraction | None:
    """The fraction n/d with 2n^2 < modulus and 2d^2 < modulus congruent
    to ``residue``, recovered by the half-extended Euclidean algorithm,
    or None when the remainder sequence never enters that box."""
    r0, r1 = modulus, residue % modulus
    t0, t1 = 0, 1
    while 2 * r1 * r1 >= modulus:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 < 0:
        r1, t1 = -r1, -t1
    if t1 == 0 or 2 * t1 * t1 >= modulus:
        return None
    return Fraction(r1, t1)


def _rref_mod_p_numpy(m, p: int, stop: int) -> list[int]:
    rows = m.shape[0]
    pivots = []
    r = 0
    for c in range(stop):
        if r == rows:
            break
        hits = _np.nonzero(m[r:, c])[0]
        if hits.size == 0:
            continue
        pr = r + int(hits[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        m[r] = m[r] * pow(int(m[r, c]), p - 2, p) % p
        col = m[:, c].copy()
        col[r] = 0
        live = _np.nonzero(col)[0]
        if live.size:
            # entries stay below p, so the products fit in int64
            m[live] = (m[live] - col[live, None] * m[r][None, :]) % p
        pivots.append(c)
        r += 1
    return pivots


def _rref_mod_p_py(m: list[list[int]], p: int, stop: int) -> list[int]:
    rows = len(m)
    pivots = []
    r = 0
    for c in range(stop):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if m[i][c]), -1)
        if pr < 0:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [v * inv % p for v in m[r]]
        base = m[r]
        for i in range(rows):
            f = m[i][c]
            if f and i != r:
                m[i] = [(a - f * b) % p for a, b in zip(m[i], base)]
        pivots.append(c)
        r += 1
    return pivots


def _solve_mod_p(cols, rhs_list, row_of, p: int, want: int | None = None):
    """Eliminate the sparse column system modulo ``p`` with every right
    hand side riding along, and return (pivots, which, residues) for the
    first consistent right hand side (``want`` restricts the scan to one
    index).  ``which`` is None when nothing matches; the string "skip"
    flags a prime that divides one of the denominators."""
    nrows = len(row_of)
    ncols = len(cols)

    def entry(v: Fraction) -> int:
        den = v.denominator % p
        if den == 0:
            raise ZeroDivisionError
        return v.numerator % p * pow(den, p - 2, p) % p

    try:
        if _np is not None:
            m = _np.zeros((nrows, ncols + len(rhs_list)), dtype=_np.int64)
            for ci, col in enumerate(cols):
                for k, v in col.items():
                    m[row_of[k], ci] = entry(v)
            for j, rhs in enumerate(rhs_list):
                for k, v in rhs.items():
                    m[row_of[k], ncols + j] = entry(v)
            pivots = _rref_mod_p_numpy(m, p, ncols)
            r = len(pivots)

            def clean(j: int) -> bool:
                return not bool(_np.any(m[r:, ncols + j]))

            def read(j: int) -> list[int]:
                return [int(v) for v in m[:r, ncols + j]]

        else:
            m = [[0] * (ncols + len(rhs_list)) for _ in range(nrows)]
            for ci, col in enumerate(cols):
                for k, v in col.items():
                    m[row_of[k]][ci] = entry(v)
            for j, rhs in enumerate(rhs_list):
                for k, v in rhs.items():
                    m[row_of[k]][ncols + j] = entry(v)
            pivots = _rref_mod_p_py(m, p, ncols)
            r = len(pivots)

            def clean(j: int) -> bool:
                return not any(m[i][ncols + j] for i in range(r, nrows))

            def read(j: int) -> list[int]:
                return [m[i][ncols + j] for i in range(r)]

    except ZeroDivisionError:
        return "skip"
    for j in range(len(rhs_list)) if want is None else (want,):
        if clean(j):
            vals = read(j)
            x = [0] * ncols
            for row_idx, pc in enumerate(pivots):
                x[pc] = vals[row_idx]
            return tuple(pivots), j, x
    return tuple(pivots), None, None


def modular_first_member(cols, rhs_list, max_primes: int = 12):
    """Index of the first right hand side in the span of the sparse
    columns, with a particular rational solution, or None.

    Columns and right hand sides are maps from a shared hashable row key
    to ``Fraction``.  The system is eliminated modulo 31-bit primes,
    entries are lifted by Chinese remaindering plus rational
    reconstruction, and every candidate is certified by an exact sparse
    multiply before it is returned, adding primes until the certificate
    passes.  Exact elimination would do the same work, but on the sizes
    this module meets it is orders of magnitude slower than the modular
    round trips.

    None means the first usable prime matched no right hand side.  That
    verdict is wrong only when the prime kills a critical minor, which
    callers absorb by widening their search space, so no correctness
    rests on it.
    """
    support = set()
    for rhs in rhs_list:
        support.update(rhs)
    for col in cols:
        support.update(col)
    row_of = {k: i for i, k in enumerate(sorted(support))}
    if not cols:
        for j, rhs in enumerate(rhs_list):
            if not rhs:
                return j, []
        return None
    pivots = None
    which = None
    combined = None
    modulus = 1
    used = 0
    for p in _PRIMES31:
        if used >= max_primes:
            break
        if pivots is None:
            got = _solve_mod_p(cols, rhs_list, row_of, p)
            if got == "skip":
                continue
            pivots, which, combined = got
            if which is None:
                return None
            modulus = p
        else:
            got = _solve_mod_p(cols, [rhs_list[which]], row_of, p, want=0)
            if got == "skip" or got[0] != pivots or got[1] is None:
                continue
            x = got[2]
            # standard incremental Chinese remainder combination
            inv = pow(modulus % p, p - 2, p)
            combined = [
                (c + (r - c) % p * inv % p * modulus) % (modulus * p)
                for c, r in zip(combined, x)
            ]
            modulus *= p
        used += 1
        if used < 2:
            continue
        lifted = []
        for c in combined:
            f = rational_reconstruct(c, modulus)
            if f is None:
                break
            lifted.append(f)
        else:
            check: dict = {}
            for xj, col in zip(lifted, cols):
                if not xj:
                    continue
                for k, v in col.items():
                    acc = check.get(k, _QZERO) + xj * v
                    if acc:
                        check[k] = acc
                    else:
                        check.pop(k, None)
            if check == {k: v for k, v in rhs_list[which].items() if v}:
                return which, lifted
    return None


def modular_particular_solution(cols, rhs, max_primes: int = 12):
    """Particular rational solution of ``sum_j x_j cols[j] = rhs`` for
    sparse columns, or None; see :func:`modular_first_member`."""
    got = modular_first_member(cols, [rhs], max_primes)
    return got[1] if got is not None else None


def inverse(a: Matrix, one=_QONE, zero=_QZERO) -> Matrix:
    n = len(a)
    aug = [list(row) + ident_row for row, ident_row in zip(a, identity(n, one, zero))]
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in r]


def det(a: Matrix):
    """Determinant by fraction-producing Gaussian elimination."""
    n = len(a)
    m = mat_copy(a)
    sign = 1
    result = None
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if not is_zero(m[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            # singular: zero of the right type, if one exists in the matrix
            x = m[0][0]
            return x - x
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            sign = -sign
        for i in range(c + 1, n):
            if not is_zero(m[i][c]):
                factor = m[i][c] / m[c][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[c])]
        result = m[c][c] if result is None else result * m[c][c]
    if sign < 0:
        result = -result
    return result


# subspace calculus over plain rationals, used by the filtration checks


def row_space_basis(vectors: Sequence[Vector]) -> list[Vector]:
    """Canonical (rref) basis of the span of the given vectors."""
    vecs = [list(v) for v in vectors if any(not is_zero(x) for x in v)]
    if not vecs:
        return []
    r, pivots = rref(vecs)
    return [r[i] for i in range(len(pivots))]


def subspace_eq(a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    return row_space_basis(a) == row_space_basis(b)


def subspace_contains(space: Sequence[Vector], v: Vector) -> bool:
    base = row_space_basis(space)
    return row_space_basis(list(base) + [list(v)]) == base


def subspace_sum(a: Sequence[Vector], b: Sequence[Vector]) -> list[Vector]:
    return row_space_basis(list(a) + list(b))


def subspace_intersect(a: Sequence[Vector], b: Sequence[Vector]) -> list[Vector]:
    """Basis of the intersection of two row spaces."""
    basis_a = row_space_basis(a)
    basis_b = row_space_basis(b)
    if not basis_a or not basis_b:
        return []
    # kernel vectors (u, w) of [A^T | -B^T] satisfy u^T A = w^T B
    na = len(basis_a)
    ambient = len(basis_a[0])
    stacked = [
        [basis_a[k][i] for k in range(na)]
        + [-basis_b[k][i] for k in range(len(basis_b))]
        for i in range(ambient)
    ]
    out = []
    for v in nullspace(stacked):
        combo = [Fraction(0)] * ambient
        for coeff, vec in zip(v[:na], basis_a):
            combo = [c + coeff * x for c, x in zip(combo, vec)]
        out.append(combo)
    return row_space_basis(out)
