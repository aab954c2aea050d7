"""Twisted Hessian curves aX^3 + Y^3 + Z^3 = XYZ and tripling by 3-isogenies.

Tripling factors as [3] = psi o phi through the quotient by mu_3,

    phi: H_a -> E_a,  (X:Y:Z) -> (aX^3 : Y^3 : Z^3)
    E_a: XYZ = a(X + Y + Z)^3

and psi is evaluated from three norm forms
g0 = (X+Y+Z)^3, g1 = (Y+Z)(X+Z)(X+Y), g2 = (Y-Z)(Z-X)(X-Y).
Counted costs: phi 3M+3S+1m, psi 5M+1S+1m, [3] 8M+4S+2m.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .ffield import (
    ContractViolation,
    CountingContext,
    FieldElement,
    FieldError,
    FieldSpec,
    SeedStream,
    UnsupportedOperation,
    cube_root_of_unity,
    sample_uniform,
    sqrt,
)
from .wmodel import CompletenessViolation, SingularCurveError, proj_eq


@dataclass(frozen=True)
class HessianCurve:
    a: FieldElement

    @classmethod
    def create(cls, spec: FieldSpec, a) -> "HessianCurve":
        if spec.kind != "odd-prime":
            raise UnsupportedOperation("twisted Hessian arithmetic needs characteristic > 3")
        a = a if isinstance(a, FieldElement) else spec.from_int(a)
        if a * (27 * a - 1) == 0:
            raise SingularCurveError(f"a(27a - 1) = 0 for a = {a!r}")
        return cls(a)

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    @property
    def identity(self) -> tuple:
        F = self.spec
        return (F(0), F(1), F(-1))

    @property
    def constants(self) -> tuple:
        return (self.a,)

    def context(self) -> CountingContext:
        return CountingContext(self.spec, self.constants)


def h_on_curve(c: HessianCurve, P) -> bool:
    X, Y, Z = P
    return c.a * X ** 3 + Y ** 3 + Z ** 3 == X * Y * Z


def eq_on_curve(c: HessianCurve, P) -> bool:
    """Membership in the mu_3 quotient XYZ = a(X + Y + Z)^3."""
    X, Y, Z = P
    return X * Y * Z == c.a * (X + Y + Z) ** 3


def h_neg(c: HessianCurve, P) -> tuple:
    X, Y, Z = P
    return (X, Z, Y)


def _law_swap(ctx: CountingContext, P, Q):
    # X3 = X1^2 Y2 Z2 - X2^2 Y1 Z1, and cyclically; fails on the diagonal
    X1, Y1, Z1 = P
    X2, Y2, Z2 = Q
    mul = ctx.mul
    x1y2, x1z2 = mul(X1, Y2), mul(X1, Z2)
    y1x2, y1z2 = mul(Y1, X2), mul(Y1, Z2)
    z1x2, z1y2 = mul(Z1, X2), mul(Z1, Y2)
    return (
        ctx.sub(mul(x1z2, x1y2), mul(z1x2, y1x2)),
        ctx.sub(mul(z1x2, z1y2), mul(x1z2, y1z2)),
        ctx.sub(mul(y1x2, y1z2), mul(x1y2, z1y2)),
    )


def _law_rotated(ctx: CountingContext, a, P, Q):
    # X3 = Z2^2 X1 Z1 - Y1^2 X2 Y2, Y3 = Y2^2 Y1 Z1 - a X1^2 X2 Z2,
    # Z3 = a X2^2 X1 Y1 - Z1^2 Y2 Z2; valid for doubling
    X1, Y1, Z1 = P
    X2, Y2, Z2 = Q
    mul = ctx.mul
    z1z2, x1z2 = mul(Z1, Z2), mul(X1, Z2)
    y1y2, y1x2 = mul(Y1, Y2), mul(Y1, X2)
    z1y2, x1x2 = mul(Z1, Y2), mul(X1, X2)
    return (
        ctx.sub(mul(z1z2, x1z2), mul(y1y2, y1x2)),
        ctx.sub(mul(y1y2, z1y2), ctx.mul_const(a, mul(x1x2, x1z2))),
        ctx.sub(ctx.mul_const(a, mul(x1x2, y1x2)), mul(z1z2, z1y2)),
    )


def h_add(ctx: CountingContext, c: HessianCurve, P, Q) -> tuple:
    """P + Q by a complete pair of bidegree-(2,2) laws, 12M per law evaluated."""
    R = _law_swap(ctx, P, Q)
    if all(x.value == 0 for x in R):
        R = _law_rotated(ctx, c.a, P, Q)
        if all(x.value == 0 for x in R):
            raise CompletenessViolation(f"both addition laws vanish at {P}, {Q}")
    return R


def phi_mu3(ctx: CountingContext, c: HessianCurve, P) -> tuple:
    """Quotient by mu_3: (X:Y:Z) -> (aX^3 : Y^3 : Z^3). 3M + 3S + 1m."""
    X, Y, Z = P
    return (ctx.mul_const(c.a, ctx.cube(X)), ctx.cube(Y), ctx.cube(Z))


def psi_dual(ctx: CountingContext, c: HessianCurve, Q) -> tuple:
    """Dual isogeny E_a -> H_a from the norm forms. 5M + 1S + 1m.

    With t = a*g0 the image is, after scaling by 2,
        (2g0 - 6t - 6g1 : -8t + g1 - g2 : -8t + g1 + g2).
    """
    if c.spec.characteristic == 2:
        raise UnsupportedOperation("psi_dual needs characteristic != 2")
    X, Y, Z = Q
    s = ctx.add(X, Y, Z)
    g0 = ctx.mul(ctx.square(s), s)
    xy, yz, zx = ctx.add(X, Y), ctx.add(Y, Z), ctx.add(Z, X)
    g1 = ctx.mul(ctx.mul(yz, zx), xy)
    g2 = ctx.mul(ctx.mul(ctx.sub(Y, Z), ctx.sub(Z, X)), ctx.sub(X, Y))
    t = ctx.mul_const(c.a, g0)
    t8 = ctx.mul_int(-8, t)
    f0 = ctx.sub(ctx.mul_int(2, g0), ctx.mul_int(6, ctx.add(t, g1)))
    f1 = ctx.add(t8, ctx.sub(g1, g2))
    f2 = ctx.add(t8, g1, g2)
    return (f0, f1, f2)


def triple_h(ctx: CountingContext, c: HessianCurve, P) -> tuple:
    """[3]P = psi(phi(P)). 8M + 4S + 2m."""
    if c.spec.characteristic in (2, 3):
        raise UnsupportedOperation("tripling needs characteristic not in {2, 3}")
    return psi_dual(ctx, c, phi_mu3(ctx, c, P))


def _base3_digits(k: int) -> list[int]:
    digits = []
    while k:
        k, r = divmod(k, 3)
        digits.append(r)
    return digits


def scalar_mul_base3(ctx: CountingContext, c: HessianCurve, k: int, P, w: int = 2) -> tuple:
    """[k]P with a sliding base-3 window of up to w digits.

    Window values are never divisible by 3, so only units mod 3^w are
    precomputed; the main loop is all triplings plus one addition per window.
    """
    if k < 0:
        return scalar_mul_base3(ctx, c, -k, h_neg(c, P), w)
    if w < 1:
        raise ValueError("window must be >= 1")
    O = c.identity
    if k == 0:
        return O
    digits = _base3_digits(k)
    table = {1: P}
    if w > 1 or 2 in digits:
        acc = P
        for d in range(2, 3 ** w):
            acc = h_add(ctx, c, acc, P)
            if d % 3:
                table[d] = acc
    R = None
    i = len(digits) - 1
    while i >= 0:
        if digits[i] == 0:
            if R is not None:
                R = triple_h(ctx, c, R)
            i -= 1
            continue
        j = max(i - w + 1, 0)
        while digits[j] == 0:
            j += 1
        val = 0
        for t in range(i, j - 1, -1):
            val = 3 * val + digits[t]
        if R is not None:
            for _ in range(i - j + 1):
                R = triple_h(ctx, c, R)
            R = h_add(ctx, c, R, table[val])
        else:
            R = table[val]
        i = j - 1
    return R


# --- point utilities (uncounted) -------------------------------------------

def points_on_line(c: HessianCurve, t: FieldElement) -> list:
    """Points of H_a other than O on the line Y + Z = tX through O.

    Setting X = 1, Z = t - Y cancels the Y^3 terms and leaves
    (3t + 1) Y^2 - (3t^2 + t) Y + (a + t^3) = 0.
    """
    F = c.spec
    A, B, C = 3 * t + 1, -(3 * t * t + t), c.a + t ** 3
    ys = []
    if A == 0:
        if B != 0:
            ys = [-C / B]
    else:
        r = sqrt(B * B - 4 * A * C)
        if r is not None:
            ys = sorted({int((-B + r) / (2 * A)), int((-B - r) / (2 * A))})
            ys = [F(y) for y in ys]
    return [(F(1), y, t - y) for y in ys]


def x_zero_points(c: HessianCurve) -> list:
    """The points with X = 0: (0 : -zeta : 1) for zeta^3 = 1."""
    F = c.spec
    out = [(F(0), F(-1), F(1))]
    w = cube_root_of_unity(F)
    if w is not None:
        out += [(F(0), -w, F(1)), (F(0), -w * w, F(1))]
    return out


def random_point(c: HessianCurve, stream: SeedStream) -> tuple:
    F = c.spec
    while True:
        if stream.below(F.p + 1) == 0:
            pts = x_zero_points(c)
        else:
            pts = points_on_line(c, sample_uniform(F, stream))
        if pts:
            return pts[stream.below(len(pts))]


def enumerate_points(c: HessianCurve, limit: int = 1000) -> list:
    """All projective points: the (1 : y : z) points, then the X = 0 points."""
    F = c.spec
    if F.p > limit:
        raise FieldError(f"refusing to enumerate H_a over a field of size {F.p} > {limit}")
    pts = []
    for y in F.elements():
        for z in F.elements():
            if c.a + y ** 3 + z ** 3 == y * z:
                pts.append((F(1), y, z))
    return pts + x_zero_points(c)


def h_eq(P, Q) -> bool:
    return proj_eq(P, Q)


def is_identity(c: HessianCurve, P) -> bool:
    return proj_eq(P, c.identity)


def three_torsion(c: HessianCurve, pts: Optional[list] = None) -> list:
    pts = pts if pts is not None else enumerate_points(c)
    ctx = CountingContext(c.spec, c.constants)
    return [P for P in pts if is_identity(c, triple_h(ctx, c, P))]


def check_on_curve(c: HessianCurve, P) -> None:
    if not h_on_curve(c, P):
        raise ContractViolation(f"{P} is not on H_a")
