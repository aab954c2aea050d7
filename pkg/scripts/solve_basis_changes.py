"""Solve the square-form basis changes numerically and print them.

    python3 scripts/solve_basis_changes.py --prime 101 --u 1 --v 2
    python3 scripts/solve_basis_changes.py --binary 8 --u 83 --v 42
"""
import argparse

from eclab import quartic as Q
from eclab.ffield import SeedStream, field_from_selector
from eclab.linalg import det, solve_transform, to_ints


def solve(params, model, forms, raw, k, seed, n=16):
    s = SeedStream(seed)
    pts = [Q.random_point(params, model, s.split(i), allow_identity=False) for i in range(n)]
    return solve_transform([forms(params, P) for P in pts],
                           [tuple(k * x for x in raw(params, P)) for P in pts])


def show(name, T, k, hard):
    print(f"{name}: k = {int(k)}, det = {int(det(T))}, matches hard-coded: {T == hard}")
    for row in to_ints(T):
        print("   ", row)


def main():
    ap = argparse.ArgumentParser()
    sel = ap.add_mutually_exclusive_group(required=True)
    sel.add_argument("--prime", type=int)
    sel.add_argument("--binary", type=int)
    ap.add_argument("--u", type=int, required=True)
    ap.add_argument("--v", type=int, required=True)
    ap.add_argument("--seed", type=int, default=7)
    a = ap.parse_args()
    F = field_from_selector(a.prime, a.binary)
    params = Q.Level2Params.create(F, a.u, a.v, twist=F.characteristic != 2)
    print(f"{F}, u = {params.u!r}, v = {params.v!r}, s = {params.s!r}")

    T, k = Q.psi_transform(params)
    show("psi (Q1 -> Q2)", solve(params, "Q1", Q.psi_forms, Q.psi_raw, k, a.seed), k, T)
    T, k = Q.phi_transform(params)
    show("phi (Q2 -> Q1)", solve(params, "Q2", Q.phi_forms, Q.phi_raw, k, a.seed), k, T)
    if params.char2:
        return
    T, k = Q.psi_d1_transform(params)
    s = SeedStream(a.seed)
    pts = [Q.project_d1(params.context(), params,
                        Q.random_point(params, "Q1", s.split(i), allow_identity=False))
           for i in range(16)]
    S = solve_transform([Q.psi_d1_forms(params, P) for P in pts],
                        [tuple(k * x for x in Q.psi_d1_raw(params, P)) for P in pts])
    show("psi_d1 (D1 -> Q2)", S, k, T)
    if params.s is not None:
        T, k = Q.phi_d1_twist_transform(params)
        show("phi_d1 twist (Q2 -> D1)",
             solve(params, "Q2", Q.phi_d1_twist_forms, Q.phi_d1_raw, k, a.seed), k, T)


if __name__ == "__main__":
    main()
