"""Exact linear algebra over the rationals.

Vectors and matrices are tuples of :class:`fractions.Fraction`, so every
value is immutable, hashable, and cache-friendly, and every predicate
(rank, membership, orthogonality) is decided exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def to_vec(values) -> Vec:
    return tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values)


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c, a: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * x for x in a)


def dot(a, b) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b, strict=True)), _ZERO)


def is_zero(a) -> bool:
    return all(x == 0 for x in a)


def identity(n: int) -> Mat:
    return tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m))


def matvec(m: Mat, v) -> Vec:
    return tuple(dot(row, v) for row in m)


def matmul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(ra, cb) for cb in bt) for ra in a)


def rref(rows) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form.

    Returns the nonzero rows (a canonical basis of the row space) and the
    pivot columns. The result is unique for a given row space, so equality
    of RREF matrices decides equality of subspaces.
    """
    m = [list(to_vec(r)) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots: list[int] = []
    pr = 0
    for pc in range(ncols):
        pivot = next((i for i in range(pr, len(m)) if m[i][pc] != 0), None)
        if pivot is None:
            continue
        m[pr], m[pivot] = m[pivot], m[pr]
        inv = m[pr][pc]
        m[pr] = [x / inv for x in m[pr]]
        for i in range(len(m)):
            if i != pr and m[i][pc] != 0:
                f = m[i][pc]
                m[i] = [x - f * y for x, y in zip(m[i], m[pr])]
        pivots.append(pc)
        pr += 1
        if pr == len(m):
            break
    return tuple(tuple(r) for r in m[:pr]), tuple(pivots)


def rank(rows) -> int:
    return len(rref(rows)[0])


def affine_dim(points) -> int:
    """Dimension of the affine hull of a point set (-1 for the empty set)."""
    pts = [to_vec(p) for p in points]
    if not pts:
        return -1
    base = pts[0]
    return rank([vsub(p, base) for p in pts[1:]])


def det(m: Mat) -> Fraction:
    n = len(m)
    if n == 0:
        return _ONE
    rows = [list(to_vec(r)) for r in m]
    sign = 1
    result = _ONE
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return _ZERO
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign = -sign
        p = rows[c][c]
        result *= p
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result if sign == 1 else -result


def solve_square(a: Mat, b) -> Vec | None:
    """One exact solution of ``a x = b`` for square ``a``; None if singular."""
    n = len(a)
    aug = [list(to_vec(row)) + [Fraction(bv)] for row, bv in zip(a, b, strict=True)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot is None:
            return None
        aug[c], aug[pivot] = aug[pivot], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(aug[i][n] for i in range(n))


def inverse(m: Mat) -> Mat:
    n = len(m)
    aug = [list(to_vec(row)) + list(idrow) for row, idrow in zip(m, identity(n), strict=True)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def nullspace(m, ncols: int) -> Mat:
    """Basis rows of the right nullspace of ``m`` (``m`` may have no rows)."""
    rows, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [_ZERO] * ncols
        v[fc] = _ONE
        for row, pc in zip(rows, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return tuple(basis)


def in_rowspace(rref_rows: Mat, pivots: tuple[int, ...], v) -> bool:
    """Exact membership of ``v`` in the row space given by RREF rows."""
    w = list(to_vec(v))
    for row, pc in zip(rref_rows, pivots):
        if w[pc] != 0:
            f = w[pc]
            w = [x - f * y for x, y in zip(w, row)]
    return all(x == 0 for x in w)


def gram_det(rows) -> Fraction:
    rows = tuple(to_vec(r) for r in rows)
    g = tuple(tuple(dot(a, b) for b in rows) for a in rows)
    return det(g)


def project_onto_rowspace(basis: Mat, x) -> Vec:
    """Orthogonal projection of ``x`` onto the row space of a full-rank basis."""
    x = to_vec(x)
    if not basis:
        return tuple(_ZERO for _ in x)
    g = tuple(tuple(dot(a, b) for b in basis) for a in basis)
    rhs = tuple(dot(row, x) for row in basis)
    coeffs = solve_square(g, rhs)
    if coeffs is None:  # Gram matrix of independent rows is invertible
        raise ValueError("basis rows are linearly dependent")
    out = [_ZERO] * len(x)
    for c, row in zip(coeffs, basis):
        if c:
            out = [o + c * r for o, r in zip(out, row)]
    return tuple(out)


def projection_matrix(basis: Mat, ambient: int) -> Mat:
    """Matrix of the orthogonal projection onto the row space of ``basis``."""
    if not basis:
        return tuple(tuple(_ZERO for _ in range(ambient)) for _ in range(ambient))
    g = tuple(tuple(dot(a, b) for b in basis) for a in basis)
    ginv = inverse(g)
    bt = transpose(basis)
    return matmul(matmul(bt, ginv), basis)


def primitive_integer(v) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector.

    The direction (sign) of the input is preserved.
    """
    fr = to_vec(v)
    if is_zero(fr):
        raise ValueError("zero vector has no primitive representative")
    den_lcm = 1
    for x in fr:
        den_lcm = den_lcm * x.denominator // gcd(den_lcm, x.denominator)
    ints = [int(x * den_lcm) for x in fr]
    g = 0
    for i in ints:
        g = gcd(g, abs(i))
    return tuple(i // g for i in ints)


def sign_canonical(u: tuple[int, ...]) -> tuple[int, ...]:
    """Flip the sign so the first nonzero entry is positive."""
    for x in u:
        if x != 0:
            return u if x > 0 else tuple(-y for y in u)
    raise ValueError("zero vector")


def complement_normal(sup: Mat, sub: Mat) -> tuple[int, ...]:
    """Primitive integer vector inside rowspace(sup), orthogonal to rowspace(sub).

    Requires rowspace(sub) to be a corank-one subspace of rowspace(sup);
    both bases must have full row rank.
    """
    constraints = tuple(tuple(dot(s, t) for t in sup) for s in sub)
    null = nullspace(constraints, len(sup))
    if len(null) != 1:
        raise ValueError("subspace is not a corank-one subspace of the ambient span")
    out = [_ZERO] * len(sup[0])
    for c, row in zip(null[0], sup):
        if c:
            out = [o + c * r for o, r in zip(out, row)]
    return primitive_integer(out)
