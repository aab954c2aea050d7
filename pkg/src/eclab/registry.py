"""Counted operations and their claimed (M, S) costs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import hessian as H
from . import quartic as Q
from .ffield import CountingContext, OpCounter, SeedStream, UnsupportedOperation


@dataclass(frozen=True)
class OpSpec:
    name: str
    family: str  # "h" for Hessian ops, "q" for the level-2 quartic ops
    claim_odd: tuple
    claim_char2: Optional[tuple]
    run: Callable
    needs_twist: bool = False

    def claim(self, char2: bool) -> tuple:
        if char2:
            if self.claim_char2 is None:
                raise UnsupportedOperation(f"{self.name} is not defined in characteristic 2")
            return self.claim_char2
        return self.claim_odd


def _h_point(c, stream):
    return H.random_point(c, stream)


def _q_point(params, model, stream):
    return Q.random_point(params, model, stream, allow_identity=False)


def _run_triple_h(c, stream):
    P = _h_point(c, stream)
    ctx = c.context()
    return ctx, H.triple_h(ctx, c, P)


def _run_phi_h(c, stream):
    P = _h_point(c, stream)
    ctx = c.context()
    return ctx, H.phi_mu3(ctx, c, P)


def _run_psi_h(c, stream):
    P = H.phi_mu3(c.context(), c, _h_point(c, stream))
    ctx = c.context()
    return ctx, H.psi_dual(ctx, c, P)


def _q(model, fn):
    def run(params, stream):
        P = _q_point(params, model, stream)
        ctx = params.context()
        return ctx, fn(ctx, params, P)
    return run


def _run_psi_d1(params, stream):
    while True:
        P = Q.phi_d1(params.context(), params, _q_point(params, "Q2", stream))
        ctx = params.context()
        try:
            return ctx, Q.psi_d1(ctx, params, P)
        except Q.SingularInputError:
            continue


OPS: dict[str, OpSpec] = {op.name: op for op in [
    OpSpec("triple-h", "h", (8, 4), None, _run_triple_h),
    OpSpec("psi-h", "h", (5, 1), None, _run_psi_h),
    OpSpec("phi-h", "h", (3, 3), None, _run_phi_h),
    OpSpec("psi-q", "q", (0, 4), (2, 2), _q("Q1", Q.psi_fast)),
    OpSpec("phi-q", "q", (0, 4), (0, 4), _q("Q2", Q.phi_fast)),
    OpSpec("double-q1", "q", (0, 8), (2, 6),
           _q("Q1", lambda ctx, p, P: Q.double_q(ctx, p, "Q1", P))),
    OpSpec("double-q2", "q", (0, 8), (2, 6),
           _q("Q2", lambda ctx, p, P: Q.double_q(ctx, p, "Q2", P))),
    OpSpec("double-q2-fast", "q", (1, 6), None, _q("Q2", Q.double_q2_fast)),
    OpSpec("double-q2-twist", "q", (0, 7), None,
           _q("Q2", lambda ctx, p, P: Q.double_q2_fast(ctx, p, P, "twist")), needs_twist=True),
    OpSpec("psi-d1", "q", (0, 4), None, _run_psi_d1),
    OpSpec("phi-d1", "q", (1, 2), None, _q("Q2", Q.phi_d1)),
    OpSpec("phi-d1-twist", "q", (0, 3), None,
           _q("Q2", lambda ctx, p, P: Q.phi_d1(ctx, p, P, "twist")), needs_twist=True),
]}


def count_op(name: str, curve, stream: SeedStream) -> OpCounter:
    """Counter delta for one evaluation of ``name`` at a random point.

    ``curve`` is a HessianCurve for the "h" family and Level2Params otherwise.
    """
    op = OPS[name]
    if op.needs_twist and getattr(curve, "s", None) is None:
        raise Q.MissingTwistParameter(f"{name} needs 4u + 1 = -(2s + 1)^2 to be solvable")
    ctx, _ = op.run(curve, stream)
    return ctx.snapshot()
