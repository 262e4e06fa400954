"""Affine maps ``x -> Lx + tau`` over a valued field.

Matrices are tuples of row tuples.  Besides the group law this module holds
the congruence-subgroup predicates, the block embedding of ``GA(2, K)`` into
``GA(n, K)``, and the linear-isometry audit for congruence matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, PreconditionViolated, SingularLinearPart
from .normed_space import NormSpec, equivalence_constants, norm
from .report import Report
from .valued_fields import FieldCtx, abs_value, format_elem, valuation

Mat = tuple


def _zero_like(x):
    return x - x


def _one_like(x):
    return x - x + 1


def identity_matrix(ctx: FieldCtx, n: int) -> Mat:
    return tuple(tuple(ctx.one if i == j else ctx.zero for j in range(n)) for i in range(n))


def mat(ctx: FieldCtx, rows) -> Mat:
    return tuple(tuple(ctx.elem(a) for a in row) for row in rows)


def vec(ctx: FieldCtx, coords) -> tuple:
    return tuple(ctx.elem(c) for c in coords)


def matmul(A: Mat, B: Mat) -> Mat:
    n = len(B)
    if n == 2 and len(A) == 2:
        (a, b), (c, d) = A
        (e, f), (g, h) = B
        return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
    return tuple(
        tuple(sum((row[k] * B[k][j] for k in range(1, n)), row[0] * B[0][j])
              for j in range(len(B[0])))
        for row in A
    )


def matvec(A: Mat, x: Sequence) -> tuple:
    if len(A[0]) != len(x):
        raise DimensionMismatch(f"{len(A[0])} columns, vector of length {len(x)}")
    return tuple(sum((row[k] * x[k] for k in range(1, len(x))), row[0] * x[0]) for row in A)


def det(M: Mat):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    rows = [list(r) for r in M]
    result = _one_like(M[0][0])
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return _zero_like(M[0][0])
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            result = -result
        pv = rows[col][col]
        result = result * pv
        for r in range(col + 1, n):
            f = rows[r][col] / pv
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return result


def trace(M: Mat):
    return sum((M[i][i] for i in range(1, len(M))), M[0][0])


def solve(M: Mat, b: Sequence) -> tuple:
    """Unique solution of ``Mx = b`` by Gauss-Jordan elimination."""
    n = len(M)
    rows = [list(r) + [b[i]] for i, r in enumerate(M)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            raise SingularLinearPart("singular matrix")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        pv = rows[col][col]
        rows[col] = [a / pv for a in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * c for a, c in zip(rows[r], rows[col])]
    return tuple(row[n] for row in rows)


def mat_inverse(M: Mat) -> Mat:
    n = len(M)
    if n == 2:
        (a, b), (c, d) = M
        dt = a * d - b * c
        if not dt:
            raise SingularLinearPart("determinant is zero")
        if dt == 1:
            return ((d, -b), (-c, a))
        return ((d / dt, -b / dt), (-c / dt, a / dt))
    one, zero = _one_like(M[0][0]), _zero_like(M[0][0])
    cols = [solve(M, tuple(one if i == j else zero for i in range(n))) for j in range(n)]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class AffineMap:
    L: Mat
    tau: tuple

    def __post_init__(self):
        n = len(self.L)
        if any(len(row) != n for row in self.L) or len(self.tau) != n:
            raise DimensionMismatch("linear part must be square and match tau")

    @property
    def dim(self) -> int:
        return len(self.tau)

    def __call__(self, x: Sequence) -> tuple:
        return apply(self, x)

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        return compose(self, other)

    def to_json(self, ctx: FieldCtx) -> dict:
        return {
            "L": [[format_elem(ctx, a) for a in row] for row in self.L],
            "tau": [format_elem(ctx, c) for c in self.tau],
        }

    @classmethod
    def from_json(cls, ctx: FieldCtx, data: dict) -> "AffineMap":
        return cls(mat(ctx, data["L"]), vec(ctx, data["tau"]))


def identity(ctx: FieldCtx, n: int) -> AffineMap:
    return AffineMap(identity_matrix(ctx, n), tuple(ctx.zero for _ in range(n)))


def translation(ctx: FieldCtx, tau: Sequence) -> AffineMap:
    return AffineMap(identity_matrix(ctx, len(tau)), vec(ctx, tau))


def linear(L: Mat) -> AffineMap:
    z = _zero_like(L[0][0])
    return AffineMap(L, tuple(z for _ in L))


def apply(g: AffineMap, x: Sequence) -> tuple:
    if len(x) != g.dim:
        raise DimensionMismatch(f"map of dimension {g.dim} applied to vector of length {len(x)}")
    if g.dim == 2:
        (a, b), (c, d) = g.L
        return (a * x[0] + b * x[1] + g.tau[0], c * x[0] + d * x[1] + g.tau[1])
    return tuple(y + t for y, t in zip(matvec(g.L, x), g.tau))


def compose(g: AffineMap, h: AffineMap) -> AffineMap:
    """``g o h``: first ``h``, then ``g``."""
    if g.dim != h.dim:
        raise DimensionMismatch(f"dimensions {g.dim} and {h.dim}")
    return AffineMap(matmul(g.L, h.L), tuple(y + t for y, t in zip(matvec(g.L, h.tau), g.tau)))


def inverse(g: AffineMap) -> AffineMap:
    Li = mat_inverse(g.L)
    return AffineMap(Li, tuple(-c for c in matvec(Li, g.tau)))


def is_identity(g: AffineMap) -> bool:
    n = g.dim
    return all(not c for c in g.tau) and all(
        g.L[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def commute(g: AffineMap, h: AffineMap) -> bool:
    return compose(g, h) == compose(h, g)


# ---------------------------------------------------------------------------
# Congruence subgroups
# ---------------------------------------------------------------------------


def congruence_membership(ctx: FieldCtx, A: Mat, eps) -> bool:
    """Is ``A`` in ``GL(n, D_K, eps)``: ``|a_ij - delta_ij| <= eps`` entrywise."""
    eps = Fraction(eps)
    n = len(A)
    for i in range(n):
        for j in range(n):
            a = A[i][j] - 1 if i == j else A[i][j]
            if abs_value(ctx, a) > eps:
                return False
    # eps < 1 forces det to be a unit; for eps = 1 it must be checked
    return valuation(ctx, det(A)) == 0


def sa_membership(ctx: FieldCtx, g: AffineMap, eps) -> bool:
    """Is ``g`` in ``SA(n, D_K, eps)``."""
    eps = Fraction(eps)
    return (det(g.L) == 1 and congruence_membership(ctx, g.L, eps)
            and all(abs_value(ctx, c) <= eps for c in g.tau))


def embed(g: AffineMap, n: int, i: int) -> AffineMap:
    """Place a 2-dimensional ``g`` on coordinates ``i, i+1`` (1-based) of ``K^n``."""
    if g.dim != 2:
        raise DimensionMismatch("only 2-dimensional maps embed")
    if n < 2 or not 1 <= i < n:
        raise IndexOutOfRange(f"block index {i} outside 1..{n - 1}")
    zero, one = _zero_like(g.L[0][0]), _one_like(g.L[0][0])
    k = i - 1
    L = [[one if r == c else zero for c in range(n)] for r in range(n)]
    tau = [zero] * n
    for r in range(2):
        tau[k + r] = g.tau[r]
        for c in range(2):
            L[k + r][k + c] = g.L[r][c]
    return AffineMap(tuple(tuple(row) for row in L), tuple(tau))


# ---------------------------------------------------------------------------
# Isometry certificates
# ---------------------------------------------------------------------------


def isometry_epsilon(spec: NormSpec) -> Fraction:
    c1, c2 = equivalence_constants(spec)
    return c1 / c2


def isometry_audit(ctx: FieldCtx, spec: NormSpec, A: Mat, samples: Iterable[Sequence]) -> Report:
    """Check ``||Ax|| == ||x||`` exactly on each sample.

    Requires ``A`` to be in the congruence subgroup at ``isometry_epsilon``;
    any mismatch would falsify the containment in the linear isometry group.
    """
    eps = isometry_epsilon(spec)
    if not congruence_membership(ctx, A, eps):
        raise PreconditionViolated(f"matrix is not in GL(n, D_K, {eps})")
    report = Report("isometry", summary={"eps": str(eps)})
    for x in samples:
        lhs, rhs = norm(ctx, spec, matvec(A, x)), norm(ctx, spec, x)
        report.checked += 1
        if lhs != rhs:
            report.add(kind="FALSIFICATION", x=[format_elem(ctx, c) for c in x],
                       norm_Ax=str(lhs), norm_x=str(rhs))
    return report
