"""Maps between weighted-projective models and ordinary projective ones.

Jacobian coordinates live in P(2,3,1), López-Dahab in P(1,2,1) and the
extended variant in P(1,2,1,2) on the surface W = Z^2. Each map takes an
optional counting context so the squaring saved by the extended form shows
up in the counts.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .ffield import ContractViolation, CountingContext, FieldElement
from .wmodel import proj_eq


class UndefinedAtPoint(ValueError):
    pass


JACOBIAN = (2, 3, 1)
LOPEZ_DAHAB = (1, 2, 1)
EXTENDED_LD = (1, 2, 1, 2)


@dataclass(frozen=True)
class WeightedPoint:
    coords: tuple
    weights: tuple

    def __post_init__(self):
        if len(self.coords) != len(self.weights):
            raise ValueError("one weight per coordinate")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")
        if all(c == 0 for c in self.coords):
            raise ValueError("the zero tuple is not a point")

    def __eq__(self, other):
        if not isinstance(other, WeightedPoint):
            return NotImplemented
        return weighted_eq(self, other)

    def __hash__(self):
        return hash(self.weights)


def weighted_eq(P: WeightedPoint, Q: WeightedPoint) -> bool:
    """(X_i) ~ (l^w_i X_i) for some nonzero l over the algebraic closure."""
    if P.weights != Q.weights:
        return False
    a, b, w = P.coords, Q.coords, P.weights
    if any((x == 0) != (y == 0) for x, y in zip(a, b)):
        return False
    ones = [i for i, wi in enumerate(w) if wi == 1 and a[i] != 0]
    if ones:
        i = ones[-1]
        lam = b[i] / a[i]
        return all(y == x * lam ** wi for x, y, wi in zip(a, b, w))
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            if b[i] ** w[j] * a[j] ** w[i] != b[j] ** w[i] * a[i] ** w[j]:
                return False
    return True


def _ctx(ctx: Optional[CountingContext], x: FieldElement) -> CountingContext:
    return ctx if ctx is not None else CountingContext(x.spec)


def jac_to_p2(P: WeightedPoint, ctx: Optional[CountingContext] = None) -> tuple:
    """(X:Y:Z) in P(2,3,1) -> (XZ : Y : Z^3) in P^2."""
    X, Y, Z = P.coords
    ctx = _ctx(ctx, X)
    return (ctx.mul(X, Z), Y, ctx.cube(Z))


def jac_from_p2(P: Sequence[FieldElement], ctx: Optional[CountingContext] = None) -> WeightedPoint:
    """(X:Y:Z) -> (XZ : YZ^2 : Z), undefined at (0:1:0)."""
    X, Y, Z = P
    if X == 0 and Z == 0:
        raise UndefinedAtPoint("the inverse is not defined at (0:1:0)")
    ctx = _ctx(ctx, X)
    return WeightedPoint((ctx.mul(X, Z), ctx.mul(Y, ctx.square(Z)), Z), JACOBIAN)


def ld_to_p3(P: WeightedPoint, ctx: Optional[CountingContext] = None) -> tuple:
    """(X:Y:Z) in P(1,2,1) -> (X^2 : XZ : Z^2 : Y) on X0 X2 = X1^2."""
    X, Y, Z = P.coords
    if X == 0 and Z == 0:
        raise UndefinedAtPoint("(0:1:0) is a base point of the embedding")
    ctx = _ctx(ctx, X)
    return (ctx.square(X), ctx.mul(X, Z), ctx.square(Z), Y)


def ld_from_p3(P: Sequence[FieldElement], ctx: Optional[CountingContext] = None) -> WeightedPoint:
    """Inverse of ld_to_p3 from the branches (X1 : X2 X3 : X2) and (X0 : X0 X3 : X1)."""
    X0, X1, X2, X3 = P
    if X1 * X1 != X0 * X2:
        raise ContractViolation(f"{P} is not on X0 X2 = X1^2")
    ctx = _ctx(ctx, X0)
    b1 = (X1, ctx.mul(X2, X3), X2)
    b2 = (X0, ctx.mul(X0, X3), X1)
    live = [WeightedPoint(b, LOPEZ_DAHAB) for b in (b1, b2) if any(c != 0 for c in b)]
    if not live:
        raise UndefinedAtPoint(f"both inverse branches vanish at {P}")
    if len(live) == 2 and not weighted_eq(*live):
        raise AssertionError(f"inverse branches disagree at {P}")
    return live[0]


def xld_to_p3(P: WeightedPoint, ctx: Optional[CountingContext] = None) -> tuple:
    """(X:Y:Z:W) on W = Z^2 -> (X^2 : XZ : W : Y); one squaring fewer than ld_to_p3."""
    X, Y, Z, W = P.coords
    if W != Z * Z:
        raise ContractViolation("extended López-Dahab points need W = Z^2")
    if X == 0 and Z == 0:
        raise UndefinedAtPoint("(0:1:0:0) is a base point of the embedding")
    ctx = _ctx(ctx, X)
    return (ctx.square(X), ctx.mul(X, Z), W, Y)


def xld_from_ld(P: WeightedPoint, ctx: Optional[CountingContext] = None) -> WeightedPoint:
    X, Y, Z = P.coords
    ctx = _ctx(ctx, X)
    return WeightedPoint((X, Y, Z, ctx.square(Z)), EXTENDED_LD)


def segre(a, b, c, d) -> tuple:
    """((a:b), (c:d)) in P^1 x P^1 -> (ac : ad : bc : bd)."""
    return (a * c, a * d, b * c, b * d)


def segre_check(P: Sequence[FieldElement]) -> bool:
    X0, X1, X2, X3 = P
    return X0 * X3 == X1 * X2


def on_ld_surface(P: Sequence[FieldElement]) -> bool:
    X0, X1, X2, _ = P
    return X0 * X2 == X1 * X1


def p2_eq(P, Q) -> bool:
    return proj_eq(P, Q)
