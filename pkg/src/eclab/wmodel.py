"""Weierstrass oracle: affine chord-tangent arithmetic, used as ground truth.

Nothing here is counted. The oracle is deliberately written in the most
direct way (affine coordinates, field inversions) so it shares no code path
with the projective formulas it checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .ffield import (
    ContractViolation,
    FieldElement,
    FieldError,
    FieldSpec,
    SeedStream,
    UnsupportedOperation,
    sample_uniform,
    solve_artin_schreier,
    sqrt,
)


class SingularCurveError(FieldError):
    pass


class CompletenessViolation(RuntimeError):
    """Every defining polynomial of a supposedly complete tuple vanished."""


INF = None  # the point at infinity O


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6"""

    a1: FieldElement
    a2: FieldElement
    a3: FieldElement
    a4: FieldElement
    a6: FieldElement

    @classmethod
    def create(cls, spec: FieldSpec, a1, a2, a3, a4, a6) -> "WeierstrassCurve":
        co = [c if isinstance(c, FieldElement) else spec.from_int(c) for c in (a1, a2, a3, a4, a6)]
        c = cls(*co)
        if c.discriminant() == 0:
            raise SingularCurveError(f"singular Weierstrass curve {c}")
        return c

    @property
    def spec(self) -> FieldSpec:
        return self.a1.spec

    def discriminant(self) -> FieldElement:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def rhs(self, x: FieldElement) -> FieldElement:
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def contains(self, P) -> bool:
        if P is INF:
            return True
        x, y = P
        return y * y + self.a1 * x * y + self.a3 * y == self.rhs(x)

    def neg(self, P):
        if P is INF:
            return INF
        x, y = P
        return (x, -y - self.a1 * x - self.a3)

    def add(self, P, Q):
        if not (self.contains(P) and self.contains(Q)):
            raise ContractViolation("point not on curve")
        return self._add(P, Q)

    def _add(self, P, Q):
        if P is INF:
            return Q
        if Q is INF:
            return P
        a1, a2, a3, a4 = self.a1, self.a2, self.a3, self.a4
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y1 + y2 + a1 * x2 + a3 == 0:
                return INF
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return (x3, y3)

    def sub(self, P, Q):
        return self.add(P, self.neg(Q))

    def scalar_mul(self, k: int, P):
        """[k]P by left-to-right double-and-add."""
        if not self.contains(P):
            raise ContractViolation("point not on curve")
        if k < 0:
            return self.scalar_mul(-k, self.neg(P))
        R = INF
        for bit in bin(k)[2:] if k else "":
            R = self._add(R, R)
            if bit == "1":
                R = self._add(R, P)
        return R

    def order_of(self, P, bound: Optional[int] = None) -> int:
        bound = bound or self.spec.order + 1 + 2 * math.isqrt(self.spec.order) + 2
        R, n = P, 1
        while R is not INF:
            R = self._add(R, P)
            n += 1
            if n > bound:
                raise RuntimeError("order exceeds Hasse bound")
        return n

    def lift_x(self, x: FieldElement) -> list:
        """All points with the given x-coordinate."""
        a1x3 = self.a1 * x + self.a3
        c = self.rhs(x)
        spec = self.spec
        if spec.kind == "odd-prime":
            # (2y + a1x + a3)^2 = 4 rhs + (a1x + a3)^2
            r = sqrt(4 * c + a1x3 * a1x3)
            if r is None:
                return []
            ys = {int((r - a1x3) / 2), int((-r - a1x3) / 2)}
            return [(x, spec(y)) for y in sorted(ys)]
        # y^2 + b y = c in characteristic 2
        if a1x3 == 0:
            # Frobenius is bijective: y = c^(2^(k-1))
            return [(x, c ** (1 << (spec.k - 1)))]
        z = solve_artin_schreier(c / (a1x3 * a1x3))
        if z is None:
            return []
        return [(x, z * a1x3), (x, (z + 1) * a1x3)]

    def random_point(self, stream: SeedStream, allow_infinity: bool = False):
        spec = self.spec
        while True:
            if allow_infinity and stream.below(spec.order + 1) == 0:
                return INF
            pts = self.lift_x(sample_uniform(spec, stream))
            if pts:
                return pts[stream.below(len(pts))]


def e1_from_params(spec: FieldSpec, u, v) -> WeierstrassCurve:
    """E1: y^2 + xy = x^3 + u x^2 - v x"""
    u, v = _elem(spec, u), _elem(spec, v)
    return WeierstrassCurve.create(spec, 1, u, 0, -v, 0)


def e2_from_params(spec: FieldSpec, u, v) -> WeierstrassCurve:
    """E2: y^2 + xy = x^3 + u x^2 + 4v x + (4u + 1)v"""
    u, v = _elem(spec, u), _elem(spec, v)
    return WeierstrassCurve.create(spec, 1, u, 0, 4 * v, (4 * u + 1) * v)


def _elem(spec, c) -> FieldElement:
    # plain ints are residues in F_p and bitmasks in F_2^k
    if isinstance(c, FieldElement):
        return c
    return spec(c) if spec.kind == "binary" else spec.from_int(c)


def velu_quotient_params(a1w: FieldElement, b1w: FieldElement):
    """Quotient of y^2 = x^3 + a x^2 + b x by <(0,0)>: (a, b) -> (-2a, a^2 - 4b)."""
    if a1w.spec.characteristic == 2:
        raise UnsupportedOperation("the 2-isogeny quotient formula needs characteristic != 2")
    return -2 * a1w, a1w * a1w - 4 * b1w


def two_torsion_curve(spec: FieldSpec, a, b) -> WeierstrassCurve:
    """y^2 = x^3 + a x^2 + b x"""
    return WeierstrassCurve.create(spec, 0, a, 0, b, 0)


def enumerate_points(c: WeierstrassCurve, limit: int = 10_000) -> list:
    """All points over the base field, O first."""
    spec = c.spec
    if spec.order > limit:
        raise FieldError(f"refusing to enumerate a field of size {spec.order} > {limit}")
    pts: list = [INF]
    for x in spec.elements():
        pts.extend(c.lift_x(x))
    return pts


def hasse_interval(q: int) -> tuple[int, int]:
    r = math.isqrt(4 * q)
    # |#E - q - 1| <= 2 sqrt(q)  <=>  (#E - q - 1)^2 <= 4q
    return q + 1 - r, q + 1 + r


# --- projective helpers shared by every model ------------------------------

def proj_eq(P: Sequence[FieldElement], Q: Sequence[FieldElement]) -> bool:
    """Projective equality: all 2x2 cross products vanish (no normalization)."""
    if len(P) != len(Q):
        return False
    if all(c == 0 for c in P) or all(c == 0 for c in Q):
        raise ValueError("the zero tuple is not a projective point")
    n = len(P)
    for i in range(n):
        for j in range(i + 1, n):
            if P[i] * Q[j] != P[j] * Q[i]:
                return False
    return True


def normalize(P: Sequence[FieldElement]) -> tuple:
    """Scale so the last nonzero coordinate is 1 (for display and hashing only)."""
    for c in reversed(P):
        if c != 0:
            inv = c.inverse()
            return tuple(x * inv for x in P)
    raise ValueError("the zero tuple is not a projective point")


# --- the degree-3 model of the 2-isogeny on Y^2 Z = X(X^2 + aXZ + bZ^2) ----

def example_isogeny_tuples(a: FieldElement, b: FieldElement, P):
    """The three cubic tuples defining the quotient by <(0:0:1)>."""
    X, Y, Z = P
    q = X * X + a * X * Z + b * Z * Z
    return (
        (Y * Y * Z, (X * X - b * Z * Z) * Y, X * X * Z),
        ((X + a * Z) * Y * Y, (Y * Y - 2 * b * X * Z - a * b * Z * Z) * Y, X * X * (X + a * Z)),
        (q * Y, X * Y * Y - b * q * Z, X * Y * Z),
    )


def example_domain_contains(a, b, P) -> bool:
    X, Y, Z = P
    return Y * Y * Z == X * (X * X + a * X * Z + b * Z * Z)


def example_codomain_contains(a, b, P) -> bool:
    X, Y, Z = P
    return Y * Y * Z == X * ((X - a * Z) ** 2 - 4 * b * Z * Z)


def example_isogeny_eval(a: FieldElement, b: FieldElement, P):
    """Image of P under the quotient isogeny, checked across all three tuples."""
    if not example_domain_contains(a, b, P):
        raise ContractViolation("point not on Y^2 Z = X(X^2 + aXZ + bZ^2)")
    live = [t for t in example_isogeny_tuples(a, b, P) if any(c != 0 for c in t)]
    if not live:
        raise CompletenessViolation(f"all three tuples vanish at {P}")
    for t in live[1:]:
        if not proj_eq(live[0], t):
            raise AssertionError(f"tuples disagree at {P}: {live[0]} vs {t}")
    return live[0]


# --- exactness -------------------------------------------------------------

@dataclass(frozen=True)
class KernelSpec:
    G: tuple
    n: int
    d: int
    T1: object
    S1: object


def _is_subgroup(c: WeierstrassCurve, G: Iterable) -> bool:
    pts = list(G)
    keys = {_key(P) for P in pts}
    if _key(INF) not in keys:
        return False
    return all(_key(c.add(P, Q)) in keys for P in pts for Q in pts)


def _key(P):
    return None if P is INF else (int(P[0]), int(P[1]))


def exactness_check(ks: KernelSpec, c: WeierstrassCurve) -> bool:
    """Whether [n](T1 - S1) == [d](sum of G) in the group of c."""
    for P in (*ks.G, ks.T1, ks.S1):
        if not c.contains(P):
            raise ContractViolation(f"{P} is not on the curve")
    if not _is_subgroup(c, ks.G):
        raise ContractViolation("G is not a subgroup")
    total = INF
    for Q in ks.G:
        total = c.add(total, Q)
    lhs = c.scalar_mul(ks.n, c.sub(ks.T1, ks.S1))
    rhs = c.scalar_mul(ks.d, total)
    return _key(lhs) == _key(rhs)
