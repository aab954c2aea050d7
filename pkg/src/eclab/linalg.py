"""Dense linear algebra over FieldElement (Gaussian elimination)."""
from __future__ import annotations

from typing import Sequence

from .ffield import FieldElement, FieldSpec


class InconsistentSystem(ValueError):
    pass


def rref(rows: list[list[FieldElement]]) -> tuple[list[list[FieldElement]], list[int]]:
    A = [list(r) for r in rows]
    pivots: list[int] = []
    if not A:
        return A, pivots
    nrows, ncols = len(A), len(A[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A, pivots


def rank(rows: list[list[FieldElement]]) -> int:
    return len(rref(rows)[1])


def det(M: Sequence[Sequence[FieldElement]]) -> FieldElement:
    A = [list(r) for r in M]
    n = len(A)
    spec = A[0][0].spec
    d = spec.from_int(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return spec.from_int(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d = d * A[c][c]
        inv = A[c][c].inverse()
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


def solve_transform(g_values: list[Sequence[FieldElement]],
                    f_values: list[Sequence[FieldElement]]) -> list[list[FieldElement]]:
    """The matrix T with f(P) = T g(P) at every sample point.

    ``g_values[j]`` and ``f_values[j]`` are the two tuples evaluated at the
    j-th sample (same affine representative). Raises if the g-forms are
    dependent on the samples or the system has no solution.
    """
    n = len(g_values[0])
    A = [list(g) for g in g_values]
    _, piv = rref(A)
    if len(piv) < n:
        raise InconsistentSystem("sample points do not separate the g-forms")
    T = []
    for i in range(len(f_values[0])):
        aug = [list(g) + [f[i]] for g, f in zip(g_values, f_values)]
        R, piv = rref(aug)
        if n in piv:
            raise InconsistentSystem(f"row {i}: f is not in the span of the g-forms")
        T.append([R[k][n] for k in range(n)])
    return T


def apply(T: Sequence[Sequence[FieldElement]], g: Sequence[FieldElement]) -> tuple:
    return tuple(sum((t * x for t, x in zip(row, g)), g[0].spec.from_int(0)) for row in T)


def scale(T, c) -> list[list[FieldElement]]:
    return [[c * x for x in row] for row in T]


def to_ints(T) -> list[list[int]]:
    return [[int(x) for x in row] for row in T]


def const_matrix(spec: FieldSpec, rows) -> list[list[FieldElement]]:
    return [[x if isinstance(x, FieldElement) else spec.from_int(x) for x in row] for row in rows]
