"""Counter deltas for every registered operation over a few fields."""
from eclab import hessian as H
from eclab import quartic as Q
from eclab.ffield import BinaryField, FieldError, PrimeField, SeedStream
from eclab.registry import OPS, count_op

CASES = [
    (PrimeField(101), 2, (6, 1)),
    (PrimeField(13), 2, (6, 2)),
    (PrimeField(1009), 7, (6, 1)),
    (BinaryField(8), None, (0x53, 0x2A)),
]


def main():
    print("field      op                 M  S  m   A   claimed  ok")
    for F, a, (u, v) in CASES:
        char2 = F.characteristic == 2
        h = None if a is None else H.HessianCurve.create(F, a)
        q = Q.Level2Params.create(F, u, v, twist=not char2)
        for name, op in OPS.items():
            curve = h if op.family == "h" else q
            try:
                claim = op.claim(char2)
                if curve is None:
                    continue
                c = count_op(name, curve, SeedStream(1))
            except FieldError:
                continue
            ok = (c.M, c.S) == claim
            print(f"{str(F):10} {name:16} {c.M:2d} {c.S:2d} {c.m:2d} {c.A:3d}   "
                  f"{claim[0]}M+{claim[1]}S   {'yes' if ok else 'NO'}")


if __name__ == "__main__":
    main()
