"""Acceptance criteria, one test per criterion.

Each criterion records a PASS/FAIL line; the lines are printed in the pytest
terminal summary, and by ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import sys
import time
import traceback

import pytest

from eclab import costkit
from eclab import hessian as H
from eclab import quartic as Q
from eclab import wmodel as W
from eclab import xforms as X
from eclab.cli import DEFAULT_SEED
from eclab.ffield import BinaryField, CountingContext, PrimeField, SeedStream, sample_nonzero, sample_uniform
from eclab.linalg import det, solve_transform
from eclab.registry import OPS, count_op

F13, F101, F1009, GF256 = PrimeField(13), PrimeField(101), PrimeField(1009), BinaryField(8)
N = 1000

REPORT: dict[int, tuple[bool, str]] = {}


def _criterion(n: int, title: str):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as e:  # recorded, then re-raised by the test
                REPORT[n] = (False, f"{title}: {type(e).__name__}: {e}")
                raise
            REPORT[n] = (ok, f"{title}: {detail} ({time.perf_counter() - t0:.1f}s)")
            return ok, detail
        run.number = n
        run.title = title
        return run
    return wrap


def report_lines() -> list[str]:
    return [f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {msg}"
            for n, (ok, msg) in sorted(REPORT.items())]


# --- 1 -------------------------------------------------------------------------

def _count_cases():
    h13, h101 = H.HessianCurve.create(F13, 2), H.HessianCurve.create(F101, 2)
    q13 = Q.Level2Params.create(F13, 6, 2, twist=True)
    q101 = Q.Level2Params.create(F101, 6, 1, twist=True)
    q256 = Q.Level2Params.create(GF256, 0x53, 0x2A)
    for F, h, q in [(F101, h101, q101), (F13, h13, q13), (GF256, None, q256)]:
        for name, op in OPS.items():
            char2 = F.characteristic == 2
            if op.family == "h" and h is None:
                continue
            if char2 and op.claim_char2 is None:
                continue
            yield F, name, op.claim(char2), (h if op.family == "h" else q)


@_criterion(1, "operation counts")
def criterion_1():
    bad, n = [], 0
    for F, name, claim, curve in _count_cases():
        for i in range(5):
            got = count_op(name, curve, SeedStream(DEFAULT_SEED, (1, i)))
            n += 1
            if (got.M, got.S) != tuple(claim):
                bad.append(f"{name}/{F}: got {got.M}M+{got.S}S, claimed {claim}")
    return not bad, f"{n} evaluations, mismatches: {bad or 'none'}"


# --- 2 -------------------------------------------------------------------------

def _oracle_agreement(params: Q.Level2Params, n: int, stream: SeedStream) -> list[str]:
    bad = []
    ctx = params.context()
    E1, E2 = params.curve("Q1"), params.curve("Q2")
    T = (params.spec(0), params.spec(0))
    for i in range(n):
        s = stream.split(i)
        P1 = Q.random_point(params, "Q1", s.split(1))
        P2 = Q.random_point(params, "Q2", s.split(2))
        x1, x2 = Q.lift(params, "Q1", P1), Q.lift(params, "Q2", P2)
        d2 = Q.embed(params, "Q2", E2.add(x2, x2))
        checks = [
            ("double_q/Q1", P1, Q.double_q(ctx, params, "Q1", P1), Q.embed(params, "Q1", E1.add(x1, x1))),
            ("double_q/Q2", P2, Q.double_q(ctx, params, "Q2", P2), d2),
            ("double_q2_fast", P2, Q.double_q2_fast(ctx, params, P2), d2),
            ("tau_T", P1, Q.tau_translate(ctx, params, P1), Q.embed(params, "Q1", E1.add(x1, T))),
            ("negate_q1", P1, Q.negate_q1(ctx, params, P1), Q.embed(params, "Q1", E1.neg(x1))),
        ]
        for name, P, got, want in checks:
            if not W.proj_eq(got, want):
                bad.append(f"{name} at {P}")
    return bad


@_criterion(2, "quartic formulas vs chord-tangent oracle")
def criterion_2():
    parts, ok = [], True
    for F in (F13, F101, F1009):
        for u, v in ((1, 2), (6, 1)):
            tag = f"F_{F.p} (u,v)=({u},{v})"
            try:
                params = Q.Level2Params.create(F, u, v)
            except W.SingularCurveError:
                ok = False
                parts.append(f"{tag}: curve is singular, cannot run")
                continue
            bad = _oracle_agreement(params, N, SeedStream(DEFAULT_SEED, (2, F.p, u, v)))
            ok &= not bad
            parts.append(f"{tag}: {len(bad)} failures, first {bad[0]}" if bad
                         else f"{tag}: {N} points ok")
    return ok, "; ".join(parts)


def test_supplementary_twist_family_f13():
    # nonsingular twist-normalized stand-in for (6, 1) over F_13
    params = Q.Level2Params.create(F13, 6, 2, twist=True)
    assert params.s == 0
    assert _oracle_agreement(params, N, SeedStream(DEFAULT_SEED, (2, 13, 6, 2))) == []


# --- 3 -------------------------------------------------------------------------

@_criterion(3, "isogeny compositions")
def criterion_3():
    bad = []
    stream = SeedStream(DEFAULT_SEED, (3,))
    k = 0
    for params in (Q.Level2Params.create(F101, 1, 2), Q.Level2Params.create(GF256, 0x53, 0x2A)):
        ctx = params.context()
        for model, first, second in (("Q2", Q.phi_fast, Q.psi_fast), ("Q1", Q.psi_fast, Q.phi_fast)):
            E = params.curve(model)
            for _ in range(N):
                k += 1
                P = Q.random_point(params, model, stream.split(k))
                x = Q.lift(params, model, P)
                if not W.proj_eq(second(ctx, params, first(ctx, params, P)),
                                 Q.embed(params, model, E.add(x, x))):
                    bad.append(f"{model}/{params.spec}: {P}")
    c = H.HessianCurve.create(F101, 2)
    ctx = c.context()
    for i in range(N):
        P = H.random_point(c, stream.split(10_000 + i))
        chain = H.h_add(ctx, c, H.h_add(ctx, c, P, P), P)
        if not H.h_eq(H.psi_dual(ctx, c, H.phi_mu3(ctx, c, P)), chain):
            bad.append(f"H_a: {P}")
    return not bad, f"5 x {N} points, failures: {bad[:3] or 'none'}"


# --- 4 -------------------------------------------------------------------------

@_criterion(4, "kernels")
def criterion_4():
    ok = True
    for params in (Q.Level2Params.create(F13, 1, 2), Q.Level2Params.create(F101, 6, 1),
                   Q.Level2Params.create(GF256, 0x53, 0x2A)):
        F = params.spec
        ok &= W.proj_eq(Q.psi_raw(params, Q.kernel_point(F)), Q.identity(F))
    c = H.HessianCurve.create(F13, 2)
    ctx = c.context()
    pts = H.enumerate_points(c)
    killed = [P for P in pts if H.h_eq(H.phi_mu3(ctx, c, P), c.identity)]
    fiber = H.x_zero_points(c)
    same = len(killed) == len(fiber) == 3 and all(any(H.h_eq(P, R) for R in fiber) for P in killed)
    return ok and same, f"psi(T) = O; phi kills {len(killed)} of {len(pts)} points, fiber size {len(fiber)}"


# --- 5 -------------------------------------------------------------------------

def _solved(params, model, forms, raw, k):
    s = SeedStream(DEFAULT_SEED, (5, params.spec.order))
    pts = [Q.random_point(params, model, s.split(i), allow_identity=False) for i in range(12)]
    return solve_transform([forms(params, P) for P in pts],
                           [tuple(k * x for x in raw(params, P)) for P in pts])


@_criterion(5, "basis-change determinants")
def criterion_5():
    parts, ok = [], True
    for params in (Q.Level2Params.create(F101, 1, 2), Q.Level2Params.create(F1009, 6, 1),
                   Q.Level2Params.create(GF256, 0x53, 0x2A)):
        F = params.spec
        _, kpsi = Q.psi_transform(params)
        _, kphi = Q.phi_transform(params)
        dpsi = det(_solved(params, "Q1", Q.psi_forms, Q.psi_raw, kpsi))
        dphi = det(_solved(params, "Q2", Q.phi_forms, Q.phi_raw, kphi))
        want = 1 if params.char2 else 32
        ok &= dpsi == F.from_int(want) and dphi == 1
        parts.append(f"{F}: det psi = {int(dpsi)} (want {want}), det phi = {int(dphi)}")
    return ok, "; ".join(parts)


# --- 6 -------------------------------------------------------------------------

@_criterion(6, "tables")
def criterion_6():
    bad = costkit.check_table(costkit.tripling_table()) + costkit.check_table(costkit.doubling_table())
    n_cells = sum(len(r.expected) for r in costkit.tripling_table() + costkit.doubling_table())
    dims = {(3, 3): (10, 9), (4, 2): (10, 8), (6, 3): (56, 18)}
    dim_ok = all((costkit.dimension_report(d, n).monomial_dim,
                  costkit.dimension_report(d, n).section_dim) == want
                 for (d, n), want in dims.items())
    bideg = [costkit.dimension_report(d, 2, 2).relation_dim for d in (3, 4, 5, 6)]
    ok = not bad and n_cells == 27 and dim_ok and bideg == [0, 36, 125, 297]
    worst = max(abs(x - e) for r in costkit.tripling_table() + costkit.doubling_table()
                for x, e in zip(r.raw, r.expected))
    return ok, f"{n_cells} cells, worst deviation {worst:.4f}; bidegree (2,2) {bideg}"


# --- 7 -------------------------------------------------------------------------

@_criterion(7, "exactness predicate")
def criterion_7():
    E = W.e1_from_params(F13, 1, 2)
    O = W.INF
    P = next(R for R in W.enumerate_points(E) if R is not O and E.order_of(R) == 10)
    cyclic = tuple(E.scalar_mul(k, P) for k in range(10))
    e2 = tuple(R for R in W.enumerate_points(E) if R is O or E.order_of(R) == 2)
    T = (F13(0), F13(0))
    a = W.exactness_check(W.KernelSpec(cyclic, 2, 3, O, O), E)
    b = W.exactness_check(W.KernelSpec(e2, 2, 4, T, T), E)
    c = W.exactness_check(W.KernelSpec((O, T), 2, 4, O, T), E)
    return (not a) and b and c, f"even cyclic kernel {a}, [2] symmetric {b}, psi data {c}"


# --- 8 -------------------------------------------------------------------------

@_criterion(8, "cubic 2-isogeny tuples")
def criterion_8():
    a, b = F13(1), F13(1)
    pts = [(F13(0), F13(1), F13(0))]
    pts += [(x, y, F13(1)) for x in F13.elements() for y in F13.elements()
            if W.example_domain_contains(a, b, (x, y, F13(1)))]
    disagree, empty = [], []
    for P in pts:
        tuples = W.example_isogeny_tuples(a, b, P)
        live = [t for t in tuples if any(c != 0 for c in t)]
        if not live:
            empty.append(P)
        for i in range(len(live)):
            for j in range(i + 1, len(live)):
                if not W.proj_eq(live[i], live[j]):
                    disagree.append(P)
        if live and not W.example_codomain_contains(a, b, live[0]):
            disagree.append(P)
    return not disagree and not empty, \
        f"{len(pts)} points, disagreements {len(disagree)}, common zeros {len(empty)}"


# --- 9 -------------------------------------------------------------------------

@_criterion(9, "property suites")
def criterion_9():
    s = SeedStream(DEFAULT_SEED, (9,))
    fails = []
    for F in (F13, F1009, GF256):
        for i in range(300):
            t = s.split(i)
            x, y, z = (sample_uniform(F, t) for _ in range(3))
            if not ((x + y) * z == x * z + y * z and (x * y) * z == x * (y * z)
                    and x + (-x) == 0 and (x == 0 or x * x.inverse() == 1)):
                fails.append(f"field {F}")
    c = H.HessianCurve.create(F101, 2)
    ctx = c.context()
    for i in range(N):
        t = s.split(1000 + i)
        P, R, T = (H.random_point(c, t.split(j)) for j in range(3))
        add = lambda A, B: H.h_add(ctx, c, A, B)
        if not (H.h_eq(add(P, c.identity), P) and H.is_identity(c, add(P, H.h_neg(c, P)))
                and H.h_eq(add(add(P, R), T), add(P, add(R, T)))):
            fails.append(f"hessian {P} {R} {T}")
    for F in (F101, GF256):
        for i in range(300):
            t = s.split(5000 + i)
            x, y, z = sample_nonzero(F, t), sample_uniform(F, t), sample_nonzero(F, t)
            J = X.WeightedPoint((x, y, z), X.JACOBIAN)
            L = X.WeightedPoint((x, y, z), X.LOPEZ_DAHAB)
            c1, c2 = CountingContext(F), CountingContext(F)
            if not (X.jac_from_p2(X.jac_to_p2(J)) == J and X.ld_from_p3(X.ld_to_p3(L, c1)) == L
                    and X.xld_to_p3(X.xld_from_ld(L), c2) == X.ld_to_p3(L)
                    and c1.counter.S - c2.counter.S == 1):
                fails.append(f"xforms {F}")
    for F, u, v in ((F13, 1, 2), (F101, 6, 1), (F1009, 1, 2), (GF256, 0x53, 0x2A)):
        params = Q.Level2Params.create(F, u, v)
        lo, hi = W.hasse_interval(F.order)
        for model in ("Q1", "Q2"):
            n = len(W.enumerate_points(params.curve(model)))
            if not lo <= n <= hi:
                fails.append(f"hasse {F} {model}: {n}")
    return not fails, f"failures: {fails[:3] or 'none'}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{c.number}" for c in CRITERIA])
def test_criterion(criterion):
    ok, detail = criterion()
    assert ok, detail


def main() -> int:
    for c in CRITERIA:
        try:
            c()
        except Exception:
            traceback.print_exc()
    for line in report_lines():
        print(line)
    return 0 if all(ok for ok, _ in REPORT.values()) and len(REPORT) == len(CRITERIA) else 1


if __name__ == "__main__":
    sys.exit(main())
