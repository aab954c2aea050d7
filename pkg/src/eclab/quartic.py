"""Level-2 quartic models and the 2-isogeny decomposition of doubling.

E1: y^2 + xy = x^3 + u x^2 - v x and its 2-isogenous E2 are embedded in P^3
by (x, y) -> (x^2 : x : 1 : y), giving

    Q1: X3^2 + X1 X3 = (X0 + u X1 - v X2) X1,               X1^2 = X0 X2
    Q2: X3^2 + X1 X3 = (X0 + 4v X2)(X1 + u X2) + v X2^2,     X1^2 = X0 X2

with identity (1:0:0:0) and 2-torsion point T = (0:0:1:0) on Q1. Doubling
is phi o psi (on Q1) or psi o phi (on Q2); the fast evaluations replace the
defining quadrics by squares spanning the same space modulo the curve.

The singular plane quartic D1 : (Y^2 - (4u+1)XZ)^2 = 16 XZ (X - vZ)^2 is the
image of Q1 under (X0 : X1 + 2X3 : X2); going through it saves one square.
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
    sqrt,
)
from .wmodel import (
    INF,
    SingularCurveError,
    WeierstrassCurve,
    e1_from_params,
    e2_from_params,
    enumerate_points,
    proj_eq,
)


class MissingTwistParameter(FieldError):
    pass


class SingularInputError(FieldError):
    """A singular point of D1 was passed where a nonsingular one is required."""


def discriminant(u: FieldElement, v: FieldElement) -> FieldElement:
    # Weierstrass discriminant of E1
    return v * v * ((4 * u + 1) ** 2 + 64 * v)


@dataclass(frozen=True)
class Level2Params:
    u: FieldElement
    v: FieldElement
    s: Optional[FieldElement] = None

    @classmethod
    def create(cls, spec: FieldSpec, u, v, s=None, *, twist: bool = False) -> "Level2Params":
        conv = (lambda c: c if isinstance(c, FieldElement) else
                (spec(c) if spec.kind == "binary" else spec.from_int(c)))
        u, v = conv(u), conv(v)
        if discriminant(u, v) == 0:
            raise SingularCurveError(f"Delta = 0 for (u, v) = ({u!r}, {v!r})")
        if s is not None:
            s = conv(s)
            if 4 * u + 1 != -(2 * s + 1) ** 2:
                raise ContractViolation("twist parameter must satisfy 4u + 1 = -(2s + 1)^2")
            if 2 * s + 1 == 0:
                raise ContractViolation("2s + 1 must be invertible")
        params = cls(u, v, s)
        if s is None and twist:
            params = cls(u, v, twist_parameter(params))
        return params

    @property
    def spec(self) -> FieldSpec:
        return self.u.spec

    @property
    def char2(self) -> bool:
        return self.spec.characteristic == 2

    @property
    def v_inv(self) -> FieldElement:
        return self.v.inverse()

    @property
    def constants(self) -> tuple:
        u, v = self.u, self.v
        out = [u, v, self.v_inv, 4 * v, 4 * u + 1, 2 * u + 1, u + 1, 2 - 4 * u - 4 * v]
        if not self.char2:
            out.append((4 * u + 1) * self.v_inv)
        if self.s is not None:
            s = self.s
            out += [s, 2 * s + 1, -2 / (2 * s + 1)]
        return tuple(out)

    def context(self) -> CountingContext:
        """Fresh counting context with this family's constants registered."""
        return CountingContext(self.spec, self.constants)

    def curve(self, model: str) -> WeierstrassCurve:
        if model == "Q1":
            return e1_from_params(self.spec, self.u, self.v)
        if model == "Q2":
            return e2_from_params(self.spec, self.u, self.v)
        raise ValueError(f"unknown model {model!r}")


def twist_parameter(params: Level2Params) -> Optional[FieldElement]:
    """s with (2s + 1)^2 = -(4u + 1), if one exists and 2s + 1 != 0."""
    if params.char2:
        raise UnsupportedOperation("the twist normalization needs characteristic != 2")
    r = sqrt(-(4 * params.u + 1))
    if r is None or r == 0:
        return None
    return (r - 1) / 2


# --- membership ------------------------------------------------------------

def on_q1(params: Level2Params, P) -> bool:
    X0, X1, X2, X3 = P
    u, v = params.u, params.v
    return X3 * X3 + X1 * X3 == (X0 + u * X1 - v * X2) * X1 and X1 * X1 == X0 * X2


def on_q2(params: Level2Params, P) -> bool:
    X0, X1, X2, X3 = P
    u, v = params.u, params.v
    return (X3 * X3 + X1 * X3 == (X0 + 4 * v * X2) * (X1 + u * X2) + v * X2 * X2
            and X1 * X1 == X0 * X2)


def on_model(params: Level2Params, model: str, P) -> bool:
    return on_q1(params, P) if model == "Q1" else on_q2(params, P)


def on_d1(params: Level2Params, P) -> bool:
    X, Y, Z = P
    u, v = params.u, params.v
    return (Y * Y - (4 * u + 1) * X * Z) ** 2 == 16 * X * Z * (X - v * Z) ** 2


def identity(spec: FieldSpec) -> tuple:
    return (spec(1), spec(0), spec(0), spec(0))


def kernel_point(spec: FieldSpec) -> tuple:
    return (spec(0), spec(0), spec(1), spec(0))


def is_identity(P) -> bool:
    return proj_eq(P, identity(P[0].spec))


# --- embeddings ------------------------------------------------------------

def embed(params: Level2Params, model: str, P) -> tuple:
    F = params.spec
    E = params.curve(model)
    if not E.contains(P):
        raise ContractViolation(f"{P} is not on E{model[1]}")
    if P is INF:
        return identity(F)
    x, y = P
    return (x * x, x, F(1), y)


def lift(params: Level2Params, model: str, Q):
    """Left inverse of embed."""
    if not on_model(params, model, Q):
        raise ContractViolation(f"{Q} is not on {model}")
    X0, X1, X2, X3 = Q
    if X2 == 0:
        if X1 == 0 and X3 == 0:
            return INF
        raise AssertionError(f"X2 = 0 off the identity on a smooth {model}: {Q}")
    inv = X2.inverse()
    return (X1 * inv, X3 * inv)


def enumerate_model(params: Level2Params, model: str) -> list:
    return [embed(params, model, P) for P in enumerate_points(params.curve(model))]


def random_point(params: Level2Params, model: str, stream: SeedStream, allow_identity: bool = True):
    E = params.curve(model)
    return embed(params, model, E.random_point(stream, allow_infinity=allow_identity))


# --- 2-isogenies, raw ------------------------------------------------------

def psi_raw(params: Level2Params, P) -> tuple:
    """psi: Q1 -> Q2 with kernel <T>, the quadratic tuple (uncounted)."""
    X0, X1, X2, X3 = P
    v = params.v
    a = X0 - v * X2
    return (a * a, a * X1, X1 * X1, v * X1 * X2 + (X0 + v * X2) * X3)


def phi_raw(params: Level2Params, P) -> tuple:
    """phi: Q2 -> Q1, dual of psi (uncounted)."""
    X0, X1, X2, X3 = P
    u, v = params.u, params.v
    f3 = (u * X1 * X1 - 8 * v * X1 * X2 - (4 * u + 1) * v * X2 * X2 + 2 * X0 * X3
          + 4 * u * X1 * X3 - 8 * v * X2 * X3 - X3 * X3)
    return ((X0 + 4 * v * X2) ** 2, (X1 + 2 * X3) ** 2, (4 * X1 + (4 * u + 1) * X2) ** 2, f3)


# --- square forms and their basis changes ----------------------------------
# Each *_forms function returns the g-tuple; the matching *_transform gives
# the constant matrix T with (scaled) f = T g modulo the domain quadrics.
# The fast evaluators hard-code the same linear combinations.

def psi_forms(params: Level2Params, P) -> tuple:
    X0, X1, X2, X3 = P
    v = params.v
    if params.char2:
        return ((X0 + v * X2) ** 2, (X1 + X3) * X3, X1 * X1, (X0 + v * (X1 + X3)) * (X2 + X3))
    a = X0 - v * X2
    return (a * a, (a + X1) ** 2, X1 * X1, (X0 + X1 + v * X2 + 2 * X3) ** 2)


def psi_transform(params: Level2Params) -> tuple[list[list[FieldElement]], int]:
    """(T, k): k * psi_raw = T * psi_forms."""
    F, u, v = params.spec, params.u, params.v
    one, zero = F(1), F(0)
    if params.char2:
        return [[one, zero, zero, zero],
                [zero, one, u, zero],
                [zero, zero, one, zero],
                [zero, v, one, one]], 1
    c = lambda n: F.from_int(n)
    return [[c(4), zero, zero, zero],
            [c(-2), c(2), c(-2), zero],
            [zero, zero, c(4), zero],
            [c(2), c(-3), 2 - 4 * u - 4 * v, one]], 4


def phi_forms(params: Level2Params, P) -> tuple:
    X0, X1, X2, X3 = P
    u, v = params.u, params.v
    if params.char2:
        return (X0 * X0, X1 * X1, X2 * X2, X3 * X3)
    return ((X0 + 4 * v * X2) ** 2, (X1 + 2 * X3) ** 2, (4 * X1 + (4 * u + 1) * X2) ** 2,
            (X0 + (2 * u + 1) * X1 - 4 * v * X2 + X3) ** 2)


def phi_transform(params: Level2Params) -> tuple[list[list[FieldElement]], int]:
    F, u, v = params.spec, params.u, params.v
    one, zero = F(1), F(0)
    last = [zero, u, v, one] if params.char2 else [-one, -(u + 1), v, one]
    return [[one, zero, zero, zero],
            [zero, one, zero, zero],
            [zero, zero, one, zero],
            last], 1


# --- 2-isogenies, fast (counted) -------------------------------------------

def psi_fast(ctx: CountingContext, params: Level2Params, P) -> tuple:
    """psi: Q1 -> Q2. 4S in odd characteristic, 2M + 2S in characteristic 2."""
    X0, X1, X2, X3 = P
    u, v = params.u, params.v
    if params.char2:
        t = ctx.mul_const(v, X2)
        g0 = ctx.square(ctx.add(X0, t))
        x13 = ctx.add(X1, X3)
        g1 = ctx.mul(x13, X3)
        g2 = ctx.square(X1)
        g3 = ctx.mul(ctx.add(X0, ctx.mul_const(v, x13)), ctx.add(X2, X3))
        f1 = ctx.add(g1, ctx.mul_const(u, g2))
        f3 = ctx.add(g3, ctx.mul_const(v, g1), g2)
        return (g0, f1, g2, f3)
    t = ctx.mul_const(v, X2)
    a = ctx.sub(X0, t)
    g0 = ctx.square(a)
    g1 = ctx.square(ctx.add(a, X1))
    g2 = ctx.square(X1)
    g3 = ctx.square(ctx.add(X0, X1, t, ctx.mul_int(2, X3)))
    # 4f = (4g0, 2(g1 - g0 - g2), 4g2, 2g0 - 3g1 + (2 - 4u - 4v)g2 + g3)
    F = params.spec
    c = F.from_int(2) - 4 * u - 4 * v
    f0 = ctx.mul_int(4, g0)
    f1 = ctx.mul_int(2, ctx.sub(g1, ctx.add(g0, g2)))
    f2 = ctx.mul_int(4, g2)
    f3 = ctx.add(ctx.mul_int(2, g0), ctx.mul_int(-3, g1), ctx.mul_const(c, g2), g3)
    return (f0, f1, f2, f3)


def phi_fast(ctx: CountingContext, params: Level2Params, P) -> tuple:
    """phi: Q2 -> Q1. 4S in every characteristic."""
    X0, X1, X2, X3 = P
    u, v = params.u, params.v
    if params.char2:
        g0, g1, g2, g3 = ctx.square(X0), ctx.square(X1), ctx.square(X2), ctx.square(X3)
        return (g0, g1, g2, ctx.add(ctx.mul_const(u, g1), ctx.mul_const(v, g2), g3))
    F = params.spec
    t = ctx.mul_const(4 * v, X2)
    g0 = ctx.square(ctx.add(X0, t))
    g1 = ctx.square(ctx.add(X1, ctx.mul_int(2, X3)))
    g2 = ctx.square(ctx.add(ctx.mul_int(4, X1), ctx.mul_const(4 * u + 1, X2)))
    g3 = ctx.square(ctx.add(ctx.sub(ctx.add(X0, ctx.mul_const(2 * u + 1, X1)), t), X3))
    f3 = ctx.add(ctx.neg(g0), ctx.neg(ctx.mul_const(u + 1, g1)), ctx.mul_const(v, g2), g3)
    return (g0, g1, g2, f3)


def double_q(ctx: CountingContext, params: Level2Params, model: str, P) -> tuple:
    """[2]P on Q1 (phi o psi) or Q2 (psi o phi). 8S, or 2M + 6S in characteristic 2."""
    if model == "Q1":
        return phi_fast(ctx, params, psi_fast(ctx, params, P))
    if model == "Q2":
        return psi_fast(ctx, params, phi_fast(ctx, params, P))
    raise ValueError(f"unknown model {model!r}")


# --- linear maps on Q1 -----------------------------------------------------

def tau_translate(ctx: CountingContext, params: Level2Params, P) -> tuple:
    """Translation by T = (0:0:1:0): (vX2 : -X1 : v^-1 X0 : X1 + X3)."""
    X0, X1, X2, X3 = P
    return (ctx.mul_const(params.v, X2), ctx.neg(X1), ctx.mul_const(params.v_inv, X0),
            ctx.add(X1, X3))


def negate_q1(ctx: CountingContext, params: Level2Params, P) -> tuple:
    X0, X1, X2, X3 = P
    return (X0, X1, X2, ctx.neg(ctx.add(X1, X3)))


# --- the singular quotient D1 ----------------------------------------------

def _require_odd(params: Level2Params, what: str) -> None:
    if params.char2:
        raise UnsupportedOperation(f"{what} is only defined in characteristic != 2")


def project_d1(ctx: CountingContext, params: Level2Params, P) -> tuple:
    _require_odd(params, "projection to D1")
    X0, X1, X2, X3 = P
    return (X0, ctx.add(X1, ctx.mul_int(2, X3)), X2)


def d1_singular_locus_check(params: Level2Params) -> bool:
    """True when D1's singular points X = vZ, Y^2 = (4u+1)vZ^2 are not rational."""
    _require_odd(params, "the D1 singular locus")
    return not ((4 * params.u + 1) * params.v).is_square()


def d1_singular_points(params: Level2Params) -> list:
    _require_odd(params, "the D1 singular locus")
    F = params.spec
    r = sqrt((4 * params.u + 1) * params.v)
    if r is None:
        return []
    return [(params.v, F(y), F(1)) for y in sorted({int(r), int(-r)})]


def d1_induced_negation(P) -> tuple:
    X, Y, Z = P
    return (X, -Y, Z)


def d1_induced_translation(params: Level2Params, P) -> tuple:
    X, Y, Z = P
    return (params.v * Z, Y, params.v_inv * X)


def psi_d1_raw(params: Level2Params, P) -> tuple:
    """The induced D1 -> Q2 map as a quadratic tuple (uncounted)."""
    X, Y, Z = P
    u, v = params.u, params.v
    w = Y * Y - (4 * u + 1) * X * Z
    return (8 * (X - v * Z) ** 2, 2 * w, 8 * X * Z, 4 * Y * (X + v * Z) - w)


def psi_d1_forms(params: Level2Params, P) -> tuple:
    X, Y, Z = P
    v = params.v
    return ((X - v * Z) ** 2, Y * Y, (X + v * Z) ** 2, (X + Y + v * Z) ** 2)


def psi_d1_transform(params: Level2Params) -> tuple[list[list[FieldElement]], int]:
    """(T, k): k * psi_d1_raw = T * psi_d1_forms, with k = 4v.

    Uses XZ = (g2 - g0)/(4v) and Y(X + vZ) = (g3 - g1 - g2)/2.
    """
    F, u, v = params.spec, params.u, params.v
    c = lambda n: F.from_int(n)
    e = 4 * u + 1
    return [[32 * v, c(0), c(0), c(0)],
            [2 * e, 8 * v, -2 * e, c(0)],
            [c(-8), c(0), c(8), c(0)],
            [-e, -12 * v, e - 8 * v, 8 * v]], 4 * v


def psi_d1(ctx: CountingContext, params: Level2Params, P, strict: bool = True) -> tuple:
    """D1 -> Q2 from four squares. 4S.

    Returns 4 * psi_d1_raw, i.e.
    (32 g0, 8 g1 - 2e h, 8 v^-1 h, 8(g3 - g1 - g2) - 4 g1 + e h) with
    h = g2 - g0, e = (4u+1)/v.

    A singular point of D1 has two preimages P and P + T on Q1; they have the
    same image under psi, and the tuple above evaluates to it. ``strict``
    rejects such inputs since they do not name a unique point of Q1.
    """
    _require_odd(params, "psi_d1")
    X, Y, Z = P
    vz = ctx.mul_const(params.v, Z)
    g0 = ctx.square(ctx.sub(X, vz))
    g1 = ctx.square(Y)
    xv = ctx.add(X, vz)
    g2 = ctx.square(xv)
    g3 = ctx.square(ctx.add(xv, Y))
    h = ctx.sub(g2, g0)
    eh = ctx.mul_const((4 * params.u + 1) * params.v_inv, h)
    f1 = ctx.sub(ctx.mul_int(8, g1), ctx.mul_int(2, eh))
    if strict and g0.value == 0 and f1.value == 0:
        raise SingularInputError(f"{P} is a singular point of D1")
    f0 = ctx.mul_int(32, g0)
    f2 = ctx.mul_int(8, ctx.mul_const(params.v_inv, h))
    f3 = ctx.add(ctx.mul_int(8, ctx.sub(g3, ctx.add(g1, g2))), ctx.mul_int(-4, g1), eh)
    return (f0, f1, f2, f3)


def phi_d1(ctx: CountingContext, params: Level2Params, P, mode: str = "generic") -> tuple:
    """Q2 -> D1. 1M + 2S generic; 3S when 4u + 1 = -(2s + 1)^2."""
    _require_odd(params, "phi_d1")
    X0, X1, X2, X3 = P
    u, v = params.u, params.v
    t = ctx.mul_const(4 * v, X2)
    g0 = ctx.square(ctx.add(X0, t))
    g2 = ctx.square(ctx.add(ctx.mul_int(4, X1), ctx.mul_const(4 * u + 1, X2)))
    if mode == "generic":
        lhs = ctx.add(X1, ctx.mul_int(2, X3))
        rhs = ctx.sub(ctx.add(ctx.mul_int(2, X0), ctx.mul_const(4 * u + 1, X1)), ctx.mul_int(2, t))
        return (g0, ctx.mul(lhs, rhs), g2)
    if mode == "twist":
        s = params.s
        if s is None:
            raise MissingTwistParameter("twist mode needs params.s")
        inner = ctx.mul_const(2 * s + 1, ctx.sub(ctx.mul_const(s, X1), X3))
        g1 = ctx.square(ctx.sub(ctx.sub(X0, t), inner))
        # (2s + 1) f1 = -2(g0 - g1 - v g2)
        f1 = ctx.mul_const(-2 / (2 * s + 1), ctx.sub(ctx.sub(g0, g1), ctx.mul_const(v, g2)))
        return (g0, f1, g2)
    raise ValueError(f"unknown mode {mode!r}")


def phi_d1_raw(params: Level2Params, P) -> tuple:
    X0, X1, X2, X3 = P
    u, v = params.u, params.v
    return ((X0 + 4 * v * X2) ** 2,
            (X1 + 2 * X3) * (2 * X0 + (4 * u + 1) * X1 - 8 * v * X2),
            (4 * X1 + (4 * u + 1) * X2) ** 2)


def phi_d1_twist_forms(params: Level2Params, P) -> tuple:
    X0, X1, X2, X3 = P
    u, v, s = params.u, params.v, params.s
    return ((X0 + 4 * v * X2) ** 2,
            (X0 - 4 * v * X2 - (2 * s + 1) * (s * X1 - X3)) ** 2,
            (4 * X1 + (4 * u + 1) * X2) ** 2)


def phi_d1_twist_transform(params: Level2Params) -> tuple[list[list[FieldElement]], FieldElement]:
    """(T, k): k * phi_d1_raw = T * twist forms, k = 2s + 1."""
    F, v, s = params.spec, params.v, params.s
    k = 2 * s + 1
    z = F(0)
    return [[k, z, z], [F.from_int(-2), F.from_int(2), 2 * v], [z, z, k]], k


def double_q2_fast(ctx: CountingContext, params: Level2Params, P, mode: str = "generic") -> tuple:
    """[2]P on Q2 through D1. 1M + 6S generic, 7S in twist mode."""
    return psi_d1(ctx, params, phi_d1(ctx, params, P, mode), strict=False)


def scalar_mul_base2(ctx: CountingContext, params: Level2Params, k: int, P,
                     mode: str = "generic") -> tuple:
    """[k]P on Q2 by left-to-right double-and-add.

    Doublings are counted; additions go through the Weierstrass oracle and
    are not, since no addition law on Q2 is provided here.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    F = params.spec
    E = params.curve("Q2")
    lifted = lift(params, "Q2", P)
    R = identity(F)
    for bit in bin(k)[2:] if k else "":
        if not is_identity(R):
            R = double_q2_fast(ctx, params, R, mode)
        if bit == "1":
            R = embed(params, "Q2", E.add(lift(params, "Q2", R), lifted))
    return R
