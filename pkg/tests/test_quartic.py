import pytest
from hypothesis import given
from hypothesis import strategies as st

from eclab import quartic as Q
from eclab.ffield import BinaryField, ContractViolation, PrimeField, SeedStream, UnsupportedOperation
from eclab.linalg import det, solve_transform
from eclab.wmodel import INF, SingularCurveError, enumerate_points, proj_eq

F13, F101, F1009, GF256 = PrimeField(13), PrimeField(101), PrimeField(1009), BinaryField(8)

P13 = Q.Level2Params.create(F13, 1, 2)
P13T = Q.Level2Params.create(F13, 6, 2, twist=True)  # 4u + 1 = -1, s = 0
P101 = Q.Level2Params.create(F101, 1, 2)
P101T = Q.Level2Params.create(F101, 6, 1, twist=True)
P1009 = Q.Level2Params.create(F1009, 6, 1)
P256 = Q.Level2Params.create(GF256, 0x53, 0x2A)

ALL = [P13, P13T, P101, P101T, P1009, P256]
ODD = [P13, P13T, P101, P101T, P1009]
TWIST = [P13T, P101T]


def pt(F, *c):
    return tuple(F(x) for x in c)


def oracle_double(params, model, P):
    E = params.curve(model)
    x = Q.lift(params, model, P)
    return Q.embed(params, model, E.add(x, x))


def rp(params, model, seed):
    return Q.random_point(params, model, SeedStream(seed))


# --- parameters --------------------------------------------------------------

def test_discriminant_and_rejection():
    assert Q.discriminant(F13(1), F13(2)) == 1
    with pytest.raises(SingularCurveError):
        Q.Level2Params.create(F13, 6, 1)
    with pytest.raises(SingularCurveError):
        Q.Level2Params.create(F13, 1, 12)
    with pytest.raises(SingularCurveError):
        Q.Level2Params.create(F13, 1, 0)


def test_twist_parameter():
    assert P13T.s == 0
    assert Q.twist_parameter(Q.Level2Params(F13(6), F13(2))) == 0
    # -(4u + 1) = -5 = 8 is a non-residue mod 13
    assert Q.twist_parameter(P13) is None
    for p in TWIST:
        assert 4 * p.u + 1 == -(2 * p.s + 1) ** 2
    with pytest.raises(ContractViolation):
        Q.Level2Params.create(F13, 1, 2, s=1)
    with pytest.raises(UnsupportedOperation):
        Q.twist_parameter(P256)


def test_embed_and_lift_examples():
    assert Q.embed(P13, "Q1", INF) == (1, 0, 0, 0)
    assert Q.embed(P13, "Q1", pt(F13, 1, 0)) == (1, 1, 1, 0)
    assert Q.on_q1(P13, pt(F13, 1, 1, 1, 0))
    assert Q.embed(P13, "Q1", pt(F13, 0, 0)) == Q.kernel_point(F13)
    assert Q.lift(P13, "Q1", Q.identity(F13)) is INF
    assert Q.lift(P13, "Q1", pt(F13, 3, 9, 1, 6)) == (9, 6)
    with pytest.raises(ContractViolation):
        Q.embed(P13, "Q1", pt(F13, 1, 1))


@pytest.mark.parametrize("params", [P13, P13T, P256])
def test_embedding_is_a_bijection(params):
    for model in ("Q1", "Q2"):
        E = params.curve(model)
        pts = enumerate_points(E)
        img = Q.enumerate_model(params, model)
        assert all(Q.on_model(params, model, P) for P in img)
        assert [Q.lift(params, model, P) for P in img] == pts


# --- psi and phi -----------------------------------------------------------------

@pytest.mark.parametrize("params", ALL)
def test_psi_kernel(params):
    F = params.spec
    O, T = Q.identity(F), Q.kernel_point(F)
    assert proj_eq(Q.psi_raw(params, T), O)
    assert Q.psi_raw(params, O) == O
    assert proj_eq(Q.phi_raw(params, O), O)
    ctx = params.context()
    assert proj_eq(Q.psi_fast(ctx, params, T), O)
    assert proj_eq(Q.double_q(ctx, params, "Q1", O), O)


@given(st.sampled_from(ALL), st.integers(0, 2**32))
def test_fast_maps_match_raw(params, seed):
    ctx = params.context()
    P1, P2 = rp(params, "Q1", seed), rp(params, "Q2", seed)
    a = Q.psi_fast(ctx, params, P1)
    assert proj_eq(a, Q.psi_raw(params, P1)) and Q.on_q2(params, a)
    b = Q.phi_fast(ctx, params, P2)
    assert proj_eq(b, Q.phi_raw(params, P2)) and Q.on_q1(params, b)


@given(st.sampled_from(ALL), st.integers(0, 2**32))
def test_psi_is_a_homomorphism_killing_T(params, seed):
    s = SeedStream(seed)
    E1, E2 = params.curve("Q1"), params.curve("Q2")
    x, y = E1.random_point(s.split(0), True), E1.random_point(s.split(1), True)
    psi = lambda z: Q.lift(params, "Q2", Q.psi_raw(params, Q.embed(params, "Q1", z)))
    assert psi(E1.add(x, y)) == E2.add(psi(x), psi(y))
    assert psi(E1.add(x, (params.spec(0), params.spec(0)))) == psi(x)


@given(st.sampled_from(ALL), st.integers(0, 2**32))
def test_doubling_matches_oracle(params, seed):
    ctx = params.context()
    for model in ("Q1", "Q2"):
        P = rp(params, model, seed)
        assert proj_eq(Q.double_q(ctx, params, model, P), oracle_double(params, model, P))


def test_double_example():
    ctx = P13.context()
    assert proj_eq(Q.double_q(ctx, P13, "Q1", pt(F13, 1, 1, 1, 0)), pt(F13, 3, 9, 1, 6))


@pytest.mark.parametrize("params, psi, phi, dbl", [
    (P101, (0, 4), (0, 4), (0, 8)),
    (P13, (0, 4), (0, 4), (0, 8)),
    (P256, (2, 2), (0, 4), (2, 6)),
])
def test_counts(params, psi, phi, dbl):
    for fn, model, want in [(Q.psi_fast, "Q1", psi), (Q.phi_fast, "Q2", phi)]:
        ctx = params.context()
        fn(ctx, params, rp(params, model, 3))
        c = ctx.snapshot()
        assert ((c.M, c.S), c.I) == (want, 0)
    for model in ("Q1", "Q2"):
        ctx = params.context()
        Q.double_q(ctx, params, model, rp(params, model, 4))
        c = ctx.snapshot()
        assert (c.M, c.S) == dbl


# --- basis changes -----------------------------------------------------------------

def _solve(params, model, forms, raw, k, n=12):
    s = SeedStream(77)
    pts = [Q.random_point(params, model, s.split(i), allow_identity=False) for i in range(n)]
    return solve_transform([forms(params, P) for P in pts],
                           [tuple(k * x for x in raw(params, P)) for P in pts])


@pytest.mark.parametrize("params", [P13, P101, P1009, P256])
def test_transforms_and_determinants(params):
    F = params.spec
    T, k = Q.psi_transform(params)
    assert _solve(params, "Q1", Q.psi_forms, Q.psi_raw, k) == T
    assert det(T) == F.from_int(1 if params.char2 else 32)
    T, k = Q.phi_transform(params)
    assert _solve(params, "Q2", Q.phi_forms, Q.phi_raw, k) == T
    assert det(T) == 1


def test_char2_psi_transform_entries():
    T, k = Q.psi_transform(P256)
    u, v = P256.u, P256.v
    assert k == 1
    assert T[1] == [0, 1, u, 0]
    assert T[3] == [0, v, 1, 1]


@pytest.mark.parametrize("params", ODD)
def test_psi_d1_transform(params):
    T, k = Q.psi_d1_transform(params)
    s = SeedStream(5)
    pts = [Q.project_d1(params.context(), params,
                        Q.random_point(params, "Q1", s.split(i), allow_identity=False))
           for i in range(12)]
    assert solve_transform([Q.psi_d1_forms(params, P) for P in pts],
                           [tuple(k * x for x in Q.psi_d1_raw(params, P)) for P in pts]) == T


@pytest.mark.parametrize("params", TWIST)
def test_phi_d1_twist_transform(params):
    T, k = Q.phi_d1_twist_transform(params)
    s = SeedStream(6)
    pts = [Q.random_point(params, "Q2", s.split(i), allow_identity=False) for i in range(12)]
    assert solve_transform([Q.phi_d1_twist_forms(params, P) for P in pts],
                           [tuple(k * x for x in Q.phi_d1_raw(params, P)) for P in pts]) == T


# --- linear maps on Q1 ---------------------------------------------------------------

@pytest.mark.parametrize("params", ALL)
def test_tau_special_points(params):
    F = params.spec
    ctx = params.context()
    O, T = Q.identity(F), Q.kernel_point(F)
    assert proj_eq(Q.tau_translate(ctx, params, O), T)
    assert proj_eq(Q.tau_translate(ctx, params, T), O)
    assert proj_eq(Q.negate_q1(ctx, params, O), O)
    assert proj_eq(Q.negate_q1(ctx, params, T), T)
    c = ctx.snapshot()
    assert (c.M, c.S, c.m) == (0, 0, 4)


@given(st.sampled_from(ALL), st.integers(0, 2**32))
def test_tau_and_negation(params, seed):
    ctx = params.context()
    E = params.curve("Q1")
    P = rp(params, "Q1", seed)
    x = Q.lift(params, "Q1", P)
    t = Q.tau_translate(ctx, params, P)
    assert proj_eq(t, Q.embed(params, "Q1", E.add(x, (params.spec(0), params.spec(0)))))
    assert proj_eq(Q.tau_translate(ctx, params, t), P)
    assert proj_eq(Q.negate_q1(ctx, params, P), Q.embed(params, "Q1", E.neg(x)))


def test_negation_example():
    P = Q.embed(P13, "Q1", pt(F13, 9, 6))
    assert Q.negate_q1(P13.context(), P13, P) == Q.embed(P13, "Q1", pt(F13, 9, 11))


# --- D1 -------------------------------------------------------------------------------

def test_project_examples():
    ctx = P13.context()
    assert Q.project_d1(ctx, P13, Q.identity(F13)) == (1, 0, 0)
    assert Q.on_d1(P13, pt(F13, 1, 0, 0))
    d = Q.project_d1(ctx, P13, pt(F13, 3, 9, 1, 6))
    assert d == (3, 8, 1) and Q.on_d1(P13, d)
    with pytest.raises(UnsupportedOperation):
        Q.project_d1(P256.context(), P256, Q.identity(GF256))


def test_singular_locus():
    # (4u + 1)v = 10 = 6^2 mod 13, so the singular points are rational
    assert not Q.d1_singular_locus_check(P13)
    assert Q.d1_singular_points(P13) == [pt(F13, 2, 6, 1), pt(F13, 2, 7, 1)]
    p = Q.Level2Params.create(F13, 1, 1)  # (4u + 1)v = 5, a non-residue
    assert Q.d1_singular_locus_check(p)
    assert Q.d1_singular_points(p) == []


def _d1_points(params):
    F = params.spec
    pts = [pt(F, 1, 0, 0), pt(F, 0, 1, 0)]
    pts += [(F(1), y, F(0)) for y in F.elements()]
    pts += [(x, y, F(1)) for x in F.elements() for y in F.elements()]
    return [P for P in dict.fromkeys(pts) if Q.on_d1(params, P)]


@pytest.mark.parametrize("u, v", [(1, 2), (1, 5), (2, 4)])
def test_psi_d1_rejects_exactly_singular_points(u, v):
    params = Q.Level2Params.create(F13, u, v)
    sing = Q.d1_singular_points(params)
    assert len(sing) == 2
    rejected = []
    for P in _d1_points(params):
        try:
            Q.psi_d1(params.context(), params, P)
        except Q.SingularInputError:
            rejected.append(P)
    assert rejected == sing


def test_singular_points_still_map_correctly():
    # the two preimages P, P + T of a singular point have one common image
    ctx = P13.context()
    for P in Q.enumerate_model(P13, "Q1"):
        d = Q.project_d1(ctx, P13, P)
        want = Q.psi_raw(P13, P)
        assert proj_eq(Q.psi_d1(ctx, P13, d, strict=False), want)


def test_psi_d1_identity():
    ctx = P13.context()
    assert proj_eq(Q.psi_d1(ctx, P13, pt(F13, 1, 0, 0)), Q.identity(F13))
    assert Q.d1_induced_negation(pt(F13, 3, 8, 1)) == (3, 5, 1)


@given(st.sampled_from(ODD), st.integers(0, 2**32))
def test_d1_triangle(params, seed):
    ctx = params.context()
    P = rp(params, "Q1", seed)
    d = Q.project_d1(ctx, params, P)
    assert Q.on_d1(params, d)
    assert proj_eq(Q.psi_d1(ctx, params, d, strict=False), Q.psi_fast(ctx, params, P))
    assert proj_eq(Q.project_d1(ctx, params, Q.negate_q1(ctx, params, P)),
                   Q.d1_induced_negation(d))
    assert proj_eq(Q.project_d1(ctx, params, Q.tau_translate(ctx, params, P)),
                   Q.d1_induced_translation(params, d))


@given(st.sampled_from(ODD), st.integers(0, 2**32))
def test_phi_d1_and_fast_doubling(params, seed):
    ctx = params.context()
    P = rp(params, "Q2", seed)
    g = Q.phi_d1(ctx, params, P)
    assert Q.on_d1(params, g) and proj_eq(g, Q.phi_d1_raw(params, P))
    want = Q.double_q(ctx, params, "Q2", P)
    assert proj_eq(Q.double_q2_fast(ctx, params, P), want)
    if params.s is not None:
        assert proj_eq(Q.phi_d1(ctx, params, P, "twist"), g)
        assert proj_eq(Q.double_q2_fast(ctx, params, P, "twist"), want)


def test_twist_mode_needs_s():
    with pytest.raises(Q.MissingTwistParameter):
        Q.phi_d1(P13.context(), P13, Q.identity(F13), "twist")


@pytest.mark.parametrize("params", TWIST + [P1009])
def test_d1_counts(params):
    cases = [(lambda c, P: Q.phi_d1(c, params, P), (1, 2)),
             (lambda c, P: Q.double_q2_fast(c, params, P), (1, 6))]
    if params.s is not None:
        cases += [(lambda c, P: Q.phi_d1(c, params, P, "twist"), (0, 3)),
                  (lambda c, P: Q.double_q2_fast(c, params, P, "twist"), (0, 7))]
    for fn, want in cases:
        ctx = params.context()
        fn(ctx, rp(params, "Q2", 8))
        c = ctx.snapshot()
        assert (c.M, c.S) == want
    ctx = params.context()
    Q.psi_d1(ctx, params, Q.project_d1(params.context(), params, rp(params, "Q1", 8)))
    assert (ctx.snapshot().M, ctx.snapshot().S) == (0, 4)


def test_d1_identity_images():
    for params in TWIST:
        F = params.spec
        ctx = params.context()
        O = Q.identity(F)
        assert proj_eq(Q.phi_d1(ctx, params, O), pt(F, 1, 0, 0))
        assert proj_eq(Q.phi_d1(ctx, params, O, "twist"), pt(F, 1, 0, 0))
        assert proj_eq(Q.double_q2_fast(ctx, params, O), O)


# --- scalar multiplication ----------------------------------------------------------

def test_scalar_mul_base2():
    s = SeedStream(11)
    E = P13.curve("Q2")
    for i in range(20):
        P = Q.random_point(P13, "Q2", s.split(i))
        ctx = P13.context()
        assert proj_eq(Q.scalar_mul_base2(ctx, P13, 2, P), Q.double_q2_fast(ctx, P13, P))
        want = Q.embed(P13, "Q2", E.scalar_mul(5, Q.lift(P13, "Q2", P)))
        assert proj_eq(Q.scalar_mul_base2(ctx, P13, 5, P), want)


@pytest.mark.parametrize("t", [1, 3, 6])
def test_scalar_mul_power_of_two_cost(t):
    P = Q.random_point(P101, "Q2", SeedStream(12), allow_identity=False)
    ctx = P101.context()
    R = Q.scalar_mul_base2(ctx, P101, 2 ** t, P)
    c = ctx.snapshot()
    assert (c.M, c.S) == (t, 6 * t)
    E = P101.curve("Q2")
    assert proj_eq(R, Q.embed(P101, "Q2", E.scalar_mul(2 ** t, Q.lift(P101, "Q2", P))))
