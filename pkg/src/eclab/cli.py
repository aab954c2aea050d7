"""Command-line front end: verify, count, table, points.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad usage or parameters.
Output depends only on the arguments (including --seed).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from typing import Callable, Optional

from . import costkit, hessian as H, quartic as Q, wmodel as W, xforms as X
from .ffield import (
    CountingContext,
    FieldError,
    FieldSpec,
    SeedStream,
    field_from_selector,
    sample_nonzero,
    sample_uniform,
)
from .linalg import det, solve_transform
from .registry import OPS, count_op

DEFAULT_SEED = 7


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    prime: Optional[int] = None
    binary: Optional[int] = None
    u: Optional[int] = None
    v: Optional[int] = None
    a: Optional[int] = None
    trials: int = 100
    seed: int = DEFAULT_SEED
    format: str = "tsv"
    suite: Optional[str] = None
    op: Optional[str] = None
    which: Optional[str] = None
    check: bool = False
    model: Optional[str] = None

    def field(self) -> FieldSpec:
        try:
            return field_from_selector(self.prime, self.binary)
        except FieldError as e:
            raise UsageError(str(e)) from e


@dataclass
class Result:
    name: str
    status: str
    claimed: object = None
    observed: object = None
    counterexample: Optional[str] = None

    def as_dict(self) -> dict:
        d = {"name": self.name, "status": self.status, "claimed": self.claimed,
             "observed": self.observed}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


def _show(P) -> str:
    if P is None:
        return "O"
    return "(" + ":".join(str(int(c)) for c in P) + ")"


def _trials(name: str, n: int, stream: SeedStream, body: Callable) -> Result:
    """Run body(stream_i) n times; body returns None or a counterexample string."""
    for i in range(n):
        bad = body(stream.split(i))
        if bad is not None:
            return Result(name, "fail", "all", f"{i}/{n}", bad)
    return Result(name, "pass", "all", f"{n}/{n}")


def _check(name: str, ok: bool, claimed=None, observed=None, bad: Optional[str] = None) -> Result:
    return Result(name, "pass" if ok else "fail", claimed, observed, None if ok else bad)


# --- suites ----------------------------------------------------------------

def _need(cfg: RunConfig, *names: str) -> None:
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))


def _hessian_curve(cfg: RunConfig) -> H.HessianCurve:
    _need(cfg, "a")
    return H.HessianCurve.create(cfg.field(), cfg.a)


def _level2(cfg: RunConfig) -> Q.Level2Params:
    _need(cfg, "u", "v")
    F = cfg.field()
    params = Q.Level2Params.create(F, cfg.u, cfg.v)
    if not params.char2 and Q.twist_parameter(params) is not None:
        params = Q.Level2Params.create(F, cfg.u, cfg.v, twist=True)
    return params


def suite_hessian(cfg: RunConfig, stream: SeedStream) -> list[Result]:
    c = _hessian_curve(cfg)
    O = c.identity
    n = cfg.trials
    rp = lambda s: H.random_point(c, s)
    ctx = c.context()
    out = []

    def on_curve(s):
        P = rp(s)
        return None if H.h_on_curve(c, P) else _show(P)

    def identity_law(s):
        P = rp(s)
        return None if H.h_eq(H.h_add(ctx, c, P, O), P) else _show(P)

    def inverse_law(s):
        P = rp(s)
        return None if H.is_identity(c, H.h_add(ctx, c, P, H.h_neg(c, P))) else _show(P)

    def commutative(s):
        P, R = rp(s.split(0)), rp(s.split(1))
        ok = H.h_eq(H.h_add(ctx, c, P, R), H.h_add(ctx, c, R, P))
        return None if ok else f"{_show(P)} {_show(R)}"

    def associative(s):
        P, R, T = rp(s.split(0)), rp(s.split(1)), rp(s.split(2))
        lhs = H.h_add(ctx, c, H.h_add(ctx, c, P, R), T)
        rhs = H.h_add(ctx, c, P, H.h_add(ctx, c, R, T))
        return None if H.h_eq(lhs, rhs) else f"{_show(P)} {_show(R)} {_show(T)}"

    def laws_agree(s):
        P, R = rp(s.split(0)), rp(s.split(1))
        A = H._law_swap(ctx, P, R)
        B = H._law_rotated(ctx, c.a, P, R)
        live = [T for T in (A, B) if any(x != 0 for x in T)]
        if not live or (len(live) == 2 and not H.h_eq(*live)):
            return f"{_show(P)} {_show(R)}"
        return None

    def triple(s):
        P = rp(s)
        chain = H.h_add(ctx, c, H.h_add(ctx, c, P, P), P)
        return None if H.h_eq(H.triple_h(ctx, c, P), chain) else _show(P)

    def phi_lands(s):
        P = rp(s)
        return None if H.eq_on_curve(c, H.phi_mu3(ctx, c, P)) else _show(P)

    def scalar(s):
        P = rp(s.split(0))
        k = 1 + s.below(200)
        R = P
        for _ in range(k - 1):
            R = H.h_add(ctx, c, R, P)
        return None if H.h_eq(H.scalar_mul_base3(ctx, c, k, P), R) else f"k={k} {_show(P)}"

    for name, body in [("on_curve", on_curve), ("identity", identity_law),
                       ("inverse", inverse_law), ("commutative", commutative),
                       ("associative", associative), ("addition_laws_agree", laws_agree),
                       ("triple_eq_chain", triple), ("phi_lands_on_quotient", phi_lands),
                       ("scalar_mul_base3", scalar)]:
        out.append(_trials(name, n, stream.split(len(out)), body))

    fiber = H.x_zero_points(c)
    killed = all(H.is_identity(c, H.triple_h(ctx, c, P)) for P in fiber)
    out.append(_check("mu3_fiber_is_3_torsion", killed, len(fiber), len(fiber) if killed else 0))
    return out


def suite_quartic(cfg: RunConfig, stream: SeedStream) -> list[Result]:
    params = _level2(cfg)
    F = params.spec
    n = cfg.trials
    E1, E2 = params.curve("Q1"), params.curve("Q2")
    out = []
    ctx = params.context()

    def rp(model, s):
        return Q.random_point(params, model, s)

    def doubling(model, E):
        def body(s):
            P = rp(model, s)
            got = Q.double_q(ctx, params, model, P)
            want = Q.embed(params, model, E.add(Q.lift(params, model, P), Q.lift(params, model, P)))
            return None if Q.on_model(params, model, got) and W.proj_eq(got, want) else _show(P)
        return body

    def fast_vs_raw(fast, raw, model):
        def body(s):
            P = rp(model, s)
            return None if W.proj_eq(fast(ctx, params, P), raw(params, P)) else _show(P)
        return body

    def tau(s):
        P = rp("Q1", s)
        want = Q.embed(params, "Q1", E1.add(Q.lift(params, "Q1", P), (F(0), F(0))))
        return None if W.proj_eq(Q.tau_translate(ctx, params, P), want) else _show(P)

    def neg(s):
        P = rp("Q1", s)
        want = Q.embed(params, "Q1", E1.neg(Q.lift(params, "Q1", P)))
        return None if W.proj_eq(Q.negate_q1(ctx, params, P), want) else _show(P)

    checks = [("double_q1_vs_oracle", doubling("Q1", E1)),
              ("double_q2_vs_oracle", doubling("Q2", E2)),
              ("psi_fast_eq_raw", fast_vs_raw(Q.psi_fast, Q.psi_raw, "Q1")),
              ("phi_fast_eq_raw", fast_vs_raw(Q.phi_fast, Q.phi_raw, "Q2")),
              ("tau_translate_vs_oracle", tau),
              ("negate_q1_vs_oracle", neg)]

    if not params.char2:
        def d1_membership(s):
            P = rp("Q1", s)
            return None if Q.on_d1(params, Q.project_d1(ctx, params, P)) else _show(P)

        def d2_fast(mode):
            def body(s):
                P = rp("Q2", s)
                got = Q.double_q2_fast(ctx, params, P, mode)
                want = Q.double_q(ctx, params, "Q2", P)
                return None if W.proj_eq(got, want) else _show(P)
            return body

        checks += [("projection_lands_on_d1", d1_membership),
                   ("double_q2_fast_generic", d2_fast("generic"))]
        if params.s is not None:
            checks.append(("double_q2_fast_twist", d2_fast("twist")))

    for name, body in checks:
        out.append(_trials(name, n, stream.split(len(out)), body))

    K = Q.kernel_point(F)
    out.append(_check("psi_kills_T", Q.is_identity(Q.psi_raw(params, K)),
                      "O", _show(Q.psi_raw(params, K))))
    out.extend(_transform_certificates(params, stream.split(99)))
    return out


def _sample_points(params, model, stream, k=12):
    return [Q.random_point(params, model, stream.split(i), allow_identity=False) for i in range(k)]


def _transform_certificates(params: Q.Level2Params, stream: SeedStream) -> list[Result]:
    """Solve for the basis changes from samples and compare with the hard-coded ones."""
    F = params.spec
    out = []
    for name, model, forms, raw, hard, want_det in [
        ("psi_transform", "Q1", Q.psi_forms, Q.psi_raw, Q.psi_transform,
         1 if params.char2 else 32),
        ("phi_transform", "Q2", Q.phi_forms, Q.phi_raw, Q.phi_transform, 1),
    ]:
        pts = _sample_points(params, model, stream.split(len(out)))
        T_hard, k = hard(params)
        try:
            T = solve_transform([forms(params, P) for P in pts],
                                [tuple(k * x for x in raw(params, P)) for P in pts])
        except ValueError as e:
            out.append(Result(name, "fail", want_det, None, str(e)))
            continue
        d = det(T)
        ok = T == T_hard and d == F.from_int(want_det)
        out.append(_check(name, ok, want_det, int(d), "solved matrix differs from hard-coded one"))
    return out


def suite_xforms(cfg: RunConfig, stream: SeedStream) -> list[Result]:
    F = cfg.field()
    n = cfg.trials

    def nz(s):
        return sample_nonzero(F, s)

    def jac(s):
        P = X.WeightedPoint((sample_uniform(F, s), sample_uniform(F, s), nz(s)), X.JACOBIAN)
        return None if X.jac_from_p2(X.jac_to_p2(P)) == P else str(P.coords)

    def ld(s):
        P = X.WeightedPoint((nz(s), sample_uniform(F, s), nz(s)), X.LOPEZ_DAHAB)
        img = X.ld_to_p3(P)
        ok = X.on_ld_surface(img) and X.ld_from_p3(img) == P
        return None if ok else str(P.coords)

    def xld(s):
        P = X.WeightedPoint((nz(s), sample_uniform(F, s), nz(s)), X.LOPEZ_DAHAB)
        c1, c2 = CountingContext(F), CountingContext(F)
        a = X.ld_to_p3(P, c1)
        b = X.xld_to_p3(X.xld_from_ld(P), c2)
        ok = a == b and c1.counter.S - c2.counter.S == 1 and c1.counter.M == c2.counter.M
        return None if ok else str(P.coords)

    def segre(s):
        a, b, c, d = (sample_uniform(F, s) for _ in range(4))
        if (a == 0 and b == 0) or (c == 0 and d == 0):
            return None
        return None if X.segre_check(X.segre(a, b, c, d)) else str((a, b, c, d))

    out = []
    for name, body in [("jacobian_round_trip", jac), ("ld_round_trip", ld),
                       ("xld_saves_one_square", xld), ("segre_membership", segre)]:
        out.append(_trials(name, n, stream.split(len(out)), body))
    one, zero = F(1), F(0)
    out.append(_check("segre_rejects_(1:0:0:1)", not X.segre_check((one, zero, zero, one))))
    return out


def suite_wmodel(cfg: RunConfig, stream: SeedStream) -> list[Result]:
    params = _level2(cfg)
    F = params.spec
    out = []
    for model in ("Q1", "Q2"):
        E = params.curve(model)
        tag = "E1" if model == "Q1" else "E2"

        def assoc(s, E=E):
            P, R, T = (E.random_point(s.split(i), allow_infinity=True) for i in range(3))
            ok = E.add(E.add(P, R), T) == E.add(P, E.add(R, T))
            return None if ok else f"{_show(P)} {_show(R)} {_show(T)}"

        def inverse(s, E=E):
            P = E.random_point(s, allow_infinity=True)
            return None if E.add(P, E.neg(P)) is W.INF else _show(P)

        out.append(_trials(f"{tag}_associative", cfg.trials, stream.split(len(out)), assoc))
        out.append(_trials(f"{tag}_inverse", cfg.trials, stream.split(len(out)), inverse))
        if F.order <= 10_000:
            N = len(W.enumerate_points(E))
            lo, hi = W.hasse_interval(F.order)
            out.append(_check(f"{tag}_hasse", lo <= N <= hi, [lo, hi], N))
    return out


def suite_counts(cfg: RunConfig, stream: SeedStream) -> list[Result]:
    F = cfg.field()
    out = []
    for i, (name, op) in enumerate(OPS.items()):
        try:
            curve = _hessian_curve(cfg) if op.family == "h" else _level2(cfg)
            claim = op.claim(F.characteristic == 2)
            got = count_op(name, curve, stream.split(i))
        except UsageError:
            continue
        except FieldError:
            continue
        out.append(_count_result(name, claim, got))
    return out


def _count_result(name, claim, got) -> Result:
    ok = (got.M, got.S) == tuple(claim)
    return Result(name, "pass" if ok else "fail", {"M": claim[0], "S": claim[1]}, got.as_dict())


SUITES = {"hessian": suite_hessian, "quartic": suite_quartic, "xforms": suite_xforms,
          "wmodel": suite_wmodel, "counts": suite_counts}


# --- commands --------------------------------------------------------------

def cmd_verify(cfg: RunConfig) -> tuple[list[Result], dict]:
    return SUITES[cfg.suite](cfg, SeedStream(cfg.seed)), {}


def cmd_count(cfg: RunConfig) -> tuple[list[Result], dict]:
    op = OPS[cfg.op]
    F = cfg.field()
    curve = _hessian_curve(cfg) if op.family == "h" else _level2(cfg)
    claim = op.claim(F.characteristic == 2)
    got = count_op(cfg.op, curve, SeedStream(cfg.seed))
    return [_count_result(cfg.op, claim, got)], {}


def cmd_table(cfg: RunConfig) -> tuple[list[Result], dict]:
    if cfg.which == "dimensions":
        out = []
        for r in costkit.dimension_table():
            out.append(Result(f"d={r.d} n={r.n}", "info", None,
                              {"monomial": r.monomial_dim, "sections": r.section_dim,
                               "relations": r.relation_dim}))
        for d in (3, 4, 5, 6):
            r = costkit.dimension_report(d, 2, 2)
            out.append(Result(f"d={d} m=2 n=2", "info", costkit.bidegree22_closed_form(d),
                              {"monomial": r.monomial_dim, "sections": r.section_dim,
                               "relations": r.relation_dim}))
        return out, {}
    rows = costkit.tripling_table() if cfg.which == "tripling" else costkit.doubling_table()
    out = []
    for r in rows:
        bad = [b for b in costkit.check_table([r])]
        status = ("fail" if bad else "pass") if cfg.check else "info"
        obs = {"raw": list(r.raw), "rounded": list(r.rounded)}
        if r.addition is not None:
            obs["addition"] = r.addition.label()
            obs["addition_raw"] = list(r.addition_raw)
        out.append(Result(r.label, status, list(r.expected) if r.expected else None, obs,
                          "; ".join(f"column {i}: {x:.4f} vs {e}" for _, i, x, e in bad)
                          if bad and cfg.check else None))
    return out, {"wS": list(costkit.TABLE_WS)}


def cmd_points(cfg: RunConfig) -> tuple[list[Result], dict]:
    F = cfg.field()
    if F.order > 10_000:
        raise UsageError(f"field of size {F.order} is too large to enumerate (limit 10000)")
    if cfg.model == "h":
        c = _hessian_curve(cfg)
        pts = H.enumerate_points(c)
    else:
        params = _level2(cfg)
        if cfg.model in ("e1", "e2"):
            pts = W.enumerate_points(params.curve("Q1" if cfg.model == "e1" else "Q2"))
        else:
            pts = Q.enumerate_model(params, cfg.model.upper())
    N = len(pts)
    lo, hi = W.hasse_interval(F.order)
    res = [_check("group_order_in_hasse_interval", lo <= N <= hi, [lo, hi], N)]
    return res, {"order": N, "points": [_show(P) for P in pts]}


COMMANDS = {"verify": cmd_verify, "count": cmd_count, "table": cmd_table, "points": cmd_points}


# --- rendering -------------------------------------------------------------

def _tsv_value(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        return f"{x:.2f}"
    if isinstance(x, dict):
        return " ".join(f"{k}={_tsv_value(v)}" for k, v in x.items())
    if isinstance(x, list):
        return ",".join(_tsv_value(v) for v in x)
    return str(x)


def render(cfg: RunConfig, results: list[Result], extra: dict) -> str:
    config = {k: v for k, v in asdict(cfg).items() if v is not None and k != "format"}
    if cfg.format == "json":
        doc = {"command": cfg.command, "config": config,
               "results": [r.as_dict() for r in results]}
        doc.update(extra)
        return json.dumps(doc, indent=2) + "\n"
    lines = []
    if cfg.command == "count":
        r = results[0]
        o, c = r.observed, r.claimed
        lines.append(f"M={o['M']} S={o['S']} m={o['m']} A={o['A']} I={o['I']} "
                     f"claimed M={c['M']} S={c['S']}\t{r.status}")
    elif cfg.command == "table" and cfg.which == "dimensions":
        for r in results:
            o = r.observed
            lines.append(f"{r.name}: {o['monomial']} {o['sections']}\t{o['relations']}")
    elif cfg.command == "table":
        lines.append("row\t" + "\t".join(f"wS={w:.4g}" for w in costkit.TABLE_WS)
                     + "\traw\tstatus")
        for r in results:
            o = r.observed
            lines.append("\t".join([r.name, *(f"{x:.2f}" for x in o["raw"]),
                                    ",".join(f"{x:.6f}" for x in o["raw"]), r.status]))
            if "addition" in o:
                lines.append("\t".join([f"  add {o['addition']}",
                                        *(f"{x:.2f}" for x in o["addition_raw"]),
                                        ",".join(f"{x:.6f}" for x in o["addition_raw"]), "info"]))
    else:
        lines.append("name\tstatus\tclaimed\tobserved\tcounterexample")
        for r in results:
            lines.append("\t".join([r.name, r.status, _tsv_value(r.claimed),
                                    _tsv_value(r.observed), r.counterexample or "-"]))
        if cfg.command == "points":
            lines.append(f"order\t{extra['order']}")
            lines.extend(extra["points"])
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    sel = common.add_mutually_exclusive_group()
    sel.add_argument("--prime", type=int, help="odd prime p for F_p")
    sel.add_argument("--binary", type=int, metavar="K", help="k for F_{2^k}")
    common.add_argument("--u", type=int)
    common.add_argument("--v", type=int)
    common.add_argument("--a", type=int)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--format", choices=("json", "tsv"), default="tsv")
    common.add_argument("--out", metavar="FILE")

    p = argparse.ArgumentParser(prog="eclab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    c = sub.add_parser("count", parents=[common], help="count one operation")
    c.add_argument("--op", required=True, metavar="NAME",
                   help="one of: " + ", ".join(OPS))
    t = sub.add_parser("table", parents=[common], help="emit a comparison table")
    t.add_argument("--which", choices=("tripling", "doubling", "dimensions"), required=True)
    t.add_argument("--check", action="store_true")
    pt = sub.add_parser("points", parents=[common], help="list the points of a model")
    pt.add_argument("--model", choices=("e1", "e2", "q1", "q2", "h"), required=True)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    args = vars(ns)
    out_path = args.pop("out")
    cfg = RunConfig(**args)
    try:
        if cfg.command == "count" and cfg.op not in OPS:
            raise UsageError(f"unknown op {cfg.op!r}; choose from {', '.join(OPS)}")
        if cfg.command in ("verify", "count", "points") and cfg.prime is None and cfg.binary is None:
            raise UsageError("give --prime or --binary")
        if cfg.trials < 1:
            raise UsageError("--trials must be positive")
        results, extra = COMMANDS[cfg.command](cfg)
    except (UsageError, FieldError) as e:
        print(f"eclab: error: {e}", file=sys.stderr)
        return 2
    text = render(cfg, results, extra)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if any(r.status == "fail" for r in results) else 0
